"""scikit-learn style wrappers so the pipeline composes with that ecosystem."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .audio_io import PIPELINE_RATE_HZ, Waveform, resample_to_8k
from .comparison import DEFAULT_THRESHOLD, vector_similarity
from .features import STAT_ORDER
from .pipeline import extract, variant_config


def as_waveform(x) -> Waveform:
    """Coerce an input item to an 8 kHz Waveform.

    Accepts a Waveform (resampled when needed) or a 1-D array of samples
    assumed to already be at 8 kHz.
    """
    if isinstance(x, Waveform):
        return resample_to_8k(x)
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sample array, got shape {arr.shape}")
    return Waveform(arr, PIPELINE_RATE_HZ)


class MultichannelMfccExtractor(BaseEstimator, TransformerMixin):
    """Stateless transformer from waveforms to summary feature rows.

    Parameters
    ----------
    variant : str, default="m5fb"
        Extraction model: one of m5fb, m2fb, m1fb, scfb (case-insensitive).
    keep_coeffs : int or None, default=None
        Keep only the first keep_coeffs cepstral coefficients per channel.
    """

    def __init__(self, variant="m5fb", keep_coeffs=None):
        self.variant = variant
        self.keep_coeffs = keep_coeffs

    def fit(self, X=None, y=None):
        # Nothing is estimated; fit only validates the configuration.
        self.config_ = variant_config(self.variant, keep_coeffs=self.keep_coeffs)
        return self

    def transform(self, X) -> np.ndarray:
        """Extract one feature row per input waveform."""
        cfg = variant_config(self.variant, keep_coeffs=self.keep_coeffs)
        rows = [extract(as_waveform(x), cfg).entries for x in X]
        return np.vstack(rows)

    def get_feature_names_out(self, input_features=None):
        cfg = variant_config(self.variant, keep_coeffs=self.keep_coeffs)
        names = []
        for spec_index, spec in enumerate(cfg.channels, start=1):
            count = spec.n_filters if cfg.keep_coeffs is None else min(
                spec.n_filters, cfg.keep_coeffs)
            for k in range(count):
                for stat in STAT_ORDER:
                    names.append(f"ch{spec_index}_c{k:02d}_{stat}")
        return np.asarray(names, dtype=object)


class CosinePairMatcher(BaseEstimator):
    """Threshold classifier over cosine similarity of feature-row pairs.

    Parameters
    ----------
    threshold : float, default=0.95
        Inclusive similarity threshold in (0, 1] for declaring a match.
    """

    def __init__(self, threshold=DEFAULT_THRESHOLD):
        self.threshold = threshold

    def _check_threshold(self):
        if not 0.0 < self.threshold <= 1.0:
            raise ValueError(f"threshold must lie in (0, 1], got {self.threshold}")

    def fit(self, X=None, y=None):
        # Nothing is estimated; fit only validates the threshold.
        self._check_threshold()
        return self

    def decision_function(self, X) -> np.ndarray:
        """Cosine similarity per pair; X is (n, 2, d) or a list of (a, b)."""
        return np.array([vector_similarity(a, b) for a, b in X])

    def predict(self, X) -> np.ndarray:
        self._check_threshold()
        return self.decision_function(X) >= self.threshold
