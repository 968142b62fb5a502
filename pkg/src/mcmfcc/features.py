"""Summary statistics over cepstral frames and the flattened feature vector."""

from dataclasses import dataclass

import numpy as np

from .cepstrum import CepstralMatrix
from .errors import MissingChannelError

STAT_ORDER = ("max", "min", "mean", "sd")


@dataclass(eq=False)
class ChannelSummary:
    """Per-coefficient max/min/mean/sd for one channel."""

    channel_index: int
    coeff_max: np.ndarray
    coeff_min: np.ndarray
    coeff_mean: np.ndarray
    coeff_sd: np.ndarray

    @property
    def n_coeffs(self) -> int:
        return self.coeff_max.size


@dataclass(eq=False)
class FeatureVector:
    """Flattened word-level features: channels, then coefficients, then stats."""

    variant_name: str
    entries: np.ndarray
    filter_counts: tuple

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.float64)
        if not np.all(np.isfinite(entries)):
            raise ValueError("feature entries must be finite")
        counts = tuple(int(c) for c in self.filter_counts)
        if entries.size != len(STAT_ORDER) * sum(counts):
            raise ValueError(
                f"expected {len(STAT_ORDER) * sum(counts)} entries for counts {counts}, "
                f"got {entries.size}"
            )
        entries.flags.writeable = False
        self.entries = entries
        self.filter_counts = counts

    def __len__(self):
        return self.entries.size


def summarize(c: CepstralMatrix) -> ChannelSummary:
    """Reduce frames to per-coefficient max, min, mean, and population sd."""
    m = c.coeffs
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError("cepstral matrix has no frames or no coefficients")
    return ChannelSummary(
        channel_index=c.channel_index,
        coeff_max=m.max(axis=0),
        coeff_min=m.min(axis=0),
        coeff_mean=m.mean(axis=0),
        # population sd (divide by L): defined and zero for a single frame
        coeff_sd=m.std(axis=0),
    )


def concat_summaries(summaries, variant_name: str) -> FeatureVector:
    """Flatten summaries into one deterministic vector.

    Channels ascend, coefficients ascend within each channel, and the four
    statistics appear in STAT_ORDER per coefficient. Channel indices must be
    contiguous from 1.
    """
    ordered = sorted(summaries, key=lambda s: s.channel_index)
    indices = [s.channel_index for s in ordered]
    if not indices or indices != list(range(1, len(indices) + 1)):
        raise MissingChannelError(f"channel indices {indices} not contiguous from 1")
    parts = [
        np.column_stack([s.coeff_max, s.coeff_min, s.coeff_mean, s.coeff_sd]).ravel()
        for s in ordered
    ]
    return FeatureVector(variant_name, np.concatenate(parts),
                         tuple(s.n_coeffs for s in ordered))
