"""Word-pair similarity, identity decisions, and compatibility percentage."""

from dataclasses import dataclass

import numpy as np

from .features import FeatureVector

DEFAULT_THRESHOLD = 0.95


def vector_similarity(a, b) -> float:
    """Cosine similarity of two raw vectors.

    Two zero vectors compare as 1.0 and a single zero vector as 0.0, so the
    measure stays total.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 and norm_b == 0.0:
        return 1.0
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return float(np.clip(np.dot(a, b) / (norm_a * norm_b), -1.0, 1.0))


def similarity(a: FeatureVector, b: FeatureVector) -> float:
    """Cosine similarity of two feature vectors of the same variant."""
    if a.variant_name != b.variant_name:
        raise ValueError(f"variant mismatch: {a.variant_name} vs {b.variant_name}")
    if a.entries.size != b.entries.size:
        raise ValueError(f"length mismatch: {a.entries.size} vs {b.entries.size}")
    return vector_similarity(a.entries, b.entries)


def decide_identity(similarity_value: float, threshold: float) -> bool:
    """True when the similarity reaches the threshold (boundary inclusive)."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")
    return similarity_value >= threshold


@dataclass(frozen=True, eq=False)
class WordPair:
    """Feature vectors of the same word from two recordings."""

    word_id: str
    feature_a: FeatureVector
    feature_b: FeatureVector

    def __post_init__(self):
        if self.feature_a.variant_name != self.feature_b.variant_name:
            raise ValueError(f"word {self.word_id!r}: variant mismatch")
        if self.feature_a.entries.size != self.feature_b.entries.size:
            raise ValueError(f"word {self.word_id!r}: length mismatch")


@dataclass(frozen=True)
class WordResult:
    word_id: str
    similarity: float
    match: bool


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    """Per-word decisions and the overall compatibility percentage."""

    variant_name: str
    threshold: float
    words: tuple
    compatibility_percent: float


def compatibility(pairs, threshold: float = DEFAULT_THRESHOLD) -> ComparisonReport:
    """Score every word pair and compute 100 * matches / words."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("at least one word pair is required")
    variants = {p.feature_a.variant_name for p in pairs}
    if len(variants) != 1:
        raise ValueError(f"pairs mix variants: {sorted(variants)}")
    results = []
    for pair in pairs:
        value = similarity(pair.feature_a, pair.feature_b)
        results.append(WordResult(pair.word_id, value, decide_identity(value, threshold)))
    matches = sum(1 for r in results if r.match)
    return ComparisonReport(
        variant_name=variants.pop(),
        threshold=threshold,
        words=tuple(results),
        compatibility_percent=100.0 * matches / len(results),
    )


def report_csv(report: ComparisonReport) -> str:
    """Render a report as CSV with a trailing compatibility line."""
    lines = ["word_id,similarity,match"]
    for word in report.words:
        lines.append(f"{word.word_id},{float(word.similarity)!r},{str(word.match).lower()}")
    lines.append(f"#compatibility_percent={float(report.compatibility_percent)!r}")
    return "\n".join(lines) + "\n"


def report_table(report: ComparisonReport) -> str:
    """Render a report as a human-readable table."""
    width = max([len("word_id")] + [len(w.word_id) for w in report.words])
    lines = [
        f"variant={report.variant_name} threshold={report.threshold:g}",
        f"{'word_id':<{width}}  similarity  match",
    ]
    for word in report.words:
        lines.append(f"{word.word_id:<{width}}  {word.similarity:10.6f}  {'yes' if word.match else 'no'}")
    lines.append(f"compatibility={report.compatibility_percent:g}%")
    return "\n".join(lines)
