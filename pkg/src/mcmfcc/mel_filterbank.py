"""Mel-scale conversions and triangular filterbanks over restricted bands."""

from dataclasses import dataclass

import numpy as np

from .dsp_core import SpectrumMatrix
from .errors import DegenerateFilterError, ShapeMismatchError

MEL_SCALE_GAIN = 2595.0
MEL_BREAK_HZ = 700.0


def hz_to_mel(f_hz):
    """Map linear frequency to mel: 2595*log10(1 + f/700). Accepts arrays."""
    f = np.asarray(f_hz, dtype=np.float64)
    if np.any(f < 0):
        raise ValueError("frequency must be non-negative")
    out = MEL_SCALE_GAIN * np.log10(1.0 + f / MEL_BREAK_HZ)
    return float(out) if out.ndim == 0 else out


def mel_to_hz(m):
    """Exact inverse of hz_to_mel: 700*(10^(m/2595) - 1). Accepts arrays."""
    mel = np.asarray(m, dtype=np.float64)
    if np.any(mel < 0):
        raise ValueError("mel value must be non-negative")
    out = MEL_BREAK_HZ * (10.0 ** (mel / MEL_SCALE_GAIN) - 1.0)
    return float(out) if out.ndim == 0 else out


def _triangle_gains(mel_points, mel_values):
    # Triangles linear in mel, peak 1 at mel_points[k+1]; interior triangles
    # on the uniform grid tile to exactly 1.
    lower = mel_points[:-2, None]
    center = mel_points[1:-1, None]
    upper = mel_points[2:, None]
    rising = (mel_values[None, :] - lower) / (center - lower)
    falling = (upper - mel_values[None, :]) / (upper - center)
    return np.clip(np.minimum(rising, falling), 0.0, None)


@dataclass(frozen=True, eq=False)
class MelFilterbank:
    """Triangular filter weights over FFT bins for one band."""

    weights: np.ndarray
    band_lo_hz: float
    band_hi_hz: float
    peak_freqs_hz: np.ndarray
    nfft: int
    sample_rate_hz: int
    mel_points: np.ndarray

    @property
    def n_filters(self) -> int:
        return self.weights.shape[0]

    def gains_at(self, freqs_hz) -> np.ndarray:
        """Triangle gains (n_filters x len(freqs)) at arbitrary frequencies."""
        mels = np.atleast_1d(np.asarray(hz_to_mel(freqs_hz), dtype=np.float64))
        return _triangle_gains(self.mel_points, mels)


def build_filterbank(band_lo_hz: float, band_hi_hz: float, n_filters: int,
                     nfft: int, sample_rate_hz: int) -> MelFilterbank:
    """Build a triangular mel filterbank restricted to [band_lo_hz, band_hi_hz].

    n_filters + 2 boundary points are spaced uniformly in mel between the
    band edges; filter k peaks (gain 1) at point k and falls linearly in mel
    to zero at points k-1 and k+1, evaluated at the FFT bin centres
    bin*fs/nfft. Raises DegenerateFilterError if any filter covers no bin.
    """
    if not 0.0 <= band_lo_hz < band_hi_hz <= sample_rate_hz / 2.0:
        raise ValueError(f"invalid band ({band_lo_hz}, {band_hi_hz}) Hz")
    if n_filters < 1:
        raise ValueError("n_filters must be >= 1")
    if nfft < 2:
        raise ValueError("nfft must be >= 2")
    mel_points = np.linspace(hz_to_mel(band_lo_hz), hz_to_mel(band_hi_hz), n_filters + 2)
    bin_freqs = np.arange(nfft // 2 + 1) * (sample_rate_hz / nfft)
    weights = _triangle_gains(mel_points, hz_to_mel(bin_freqs))
    empty = np.flatnonzero(weights.max(axis=1) <= 0.0)
    if empty.size:
        raise DegenerateFilterError(
            f"filters {empty.tolist()} cover no FFT bin in band "
            f"({band_lo_hz}, {band_hi_hz}) with {n_filters} filters, nfft={nfft}"
        )
    weights.flags.writeable = False
    return MelFilterbank(
        weights=weights,
        band_lo_hz=float(band_lo_hz),
        band_hi_hz=float(band_hi_hz),
        peak_freqs_hz=mel_to_hz(mel_points[1:-1]),
        nfft=nfft,
        sample_rate_hz=sample_rate_hz,
        mel_points=mel_points,
    )


def apply_filterbank(fb: MelFilterbank, s: SpectrumMatrix) -> np.ndarray:
    """Sum spectral power into filter energies: E[l,k] = sum_b w[k,b]*P[l,b]."""
    if fb.nfft != s.nfft or fb.sample_rate_hz != s.sample_rate_hz:
        raise ShapeMismatchError(
            f"filterbank grid (nfft={fb.nfft}, fs={fb.sample_rate_hz}) does not match "
            f"spectrum (nfft={s.nfft}, fs={s.sample_rate_hz})"
        )
    return s.power @ fb.weights.T


def write_filterbank_csv(fb: MelFilterbank, path) -> None:
    """Dump non-zero weights as `filter_index,bin_index,freq_hz,weight` CSV."""
    bin_freqs = np.arange(fb.nfft // 2 + 1) * (fb.sample_rate_hz / fb.nfft)
    lines = ["filter_index,bin_index,freq_hz,weight"]
    for k in range(fb.n_filters):
        for b in np.flatnonzero(fb.weights[k] > 0.0):
            lines.append(f"{k + 1},{b},{bin_freqs[b]:.9g},{fb.weights[k, b]:.9g}")
    with open(path, "w", encoding="utf-8") as out:
        out.write("\n".join(lines) + "\n")
