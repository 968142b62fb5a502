"""Time-domain pipeline stages.

Pre-emphasis, windowed-sinc FIR subband filtering, frame blocking, Hamming
windowing, and the power spectrum, plus filter-response inspection.
"""

from dataclasses import dataclass

import numpy as np

from .audio_io import Waveform
from .errors import RateMismatchError, TooShortError

DEFAULT_PREEMPHASIS = 0.97
DEFAULT_FRAME_MS = 20.0
DEFAULT_OVERLAP_MS = 5.0
DEFAULT_FIR_TAPS = 255
DEFAULT_NFFT = 256
DB_FLOOR = -200.0

# Subband edges for the five-channel split; neighbouring bands overlap 50 Hz.
FIVE_BAND_EDGES_HZ = (
    (20.0, 500.0),
    (450.0, 1000.0),
    (950.0, 2000.0),
    (1950.0, 3000.0),
    (2950.0, 4000.0),
)


@dataclass(frozen=True)
class PreemphasisConfig:
    """First-order pre-emphasis coefficient, default 0.97."""

    coeff: float = DEFAULT_PREEMPHASIS

    def __post_init__(self):
        if not 0.0 <= self.coeff < 1.0:
            raise ValueError("pre-emphasis coefficient must lie in [0, 1)")


@dataclass(frozen=True, eq=False)
class FirFilter:
    """Band-limiting impulse response with its band metadata."""

    taps: np.ndarray
    band_lo_hz: float
    band_hi_hz: float
    sample_rate_hz: int

    def __post_init__(self):
        taps = np.array(self.taps, dtype=np.float64)
        if taps.ndim != 1 or taps.size == 0:
            raise ValueError("taps must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(taps)):
            raise ValueError("taps must be finite")
        if not self.band_lo_hz < self.band_hi_hz <= self.sample_rate_hz / 2.0:
            raise ValueError("band must satisfy lo < hi <= sample_rate/2")
        taps.flags.writeable = False
        object.__setattr__(self, "taps", taps)


@dataclass(frozen=True)
class ChannelPlan:
    """Ordered (lo_hz, hi_hz) subband edges."""

    bands: tuple

    def __post_init__(self):
        bands = tuple((float(lo), float(hi)) for lo, hi in self.bands)
        if not bands:
            raise ValueError("plan needs at least one band")
        for lo, hi in bands:
            if not lo < hi <= 4000.0:
                raise ValueError(f"band ({lo}, {hi}) must satisfy lo < hi <= 4000")
        if any(bands[i][0] >= bands[i + 1][0] for i in range(len(bands) - 1)):
            raise ValueError("bands must be ordered by lower edge")
        object.__setattr__(self, "bands", bands)


@dataclass(eq=False)
class FrameMatrix:
    """Frame rows of a blocked signal (L x frame_len)."""

    frames: np.ndarray
    frame_len: int
    hop: int
    sample_rate_hz: int

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=np.float64)
        if self.frames.ndim != 2 or self.frames.shape[0] < 1:
            raise ValueError("frames must be a non-empty 2-D matrix")
        if self.frames.shape[1] != self.frame_len:
            raise ValueError("frame_len does not match row width")
        if self.hop < 1:
            raise ValueError("hop must be >= 1 sample")


@dataclass(eq=False)
class SpectrumMatrix:
    """Per-frame power spectrum rows (L x (nfft/2 + 1))."""

    power: np.ndarray
    nfft: int
    sample_rate_hz: int

    def __post_init__(self):
        self.power = np.asarray(self.power, dtype=np.float64)
        if self.power.ndim != 2 or self.power.shape[1] != self.nfft // 2 + 1:
            raise ValueError("power must be L x (nfft/2 + 1)")
        if np.any(self.power < 0):
            raise ValueError("power entries must be non-negative")


def preemphasize(w: Waveform, cfg: PreemphasisConfig | None = None) -> Waveform:
    """High-pass y[n] = x[n] - coeff*x[n-1], with x[-1] taken as 0."""
    coeff = (cfg or PreemphasisConfig()).coeff
    x = w.samples
    out = np.concatenate(([x[0]], x[1:] - coeff * x[:-1]))
    return Waveform(out, w.sample_rate_hz)


def _sinc_lowpass(cutoff_hz, offsets, sample_rate_hz):
    fc = 2.0 * cutoff_hz / sample_rate_hz
    return fc * np.sinc(fc * offsets)


def design_bandpass(lo_hz: float, hi_hz: float, taps: int, sample_rate_hz: int) -> FirFilter:
    """Design a linear-phase Hamming-windowed sinc band-pass filter.

    lo_hz <= 0 degenerates to a pure low-pass at hi_hz; hi_hz may reach the
    Nyquist frequency. taps must be odd and >= 3 so the group delay is an
    integer number of samples.
    """
    nyquist = sample_rate_hz / 2.0
    if not 0.0 <= lo_hz < hi_hz <= nyquist:
        raise ValueError(f"invalid band ({lo_hz}, {hi_hz}) Hz at fs={sample_rate_hz}")
    if taps < 3 or taps % 2 == 0:
        raise ValueError("taps must be odd and >= 3")
    offsets = np.arange(taps) - (taps - 1) // 2
    h = _sinc_lowpass(hi_hz, offsets, sample_rate_hz)
    if lo_hz > 0.0:
        h = h - _sinc_lowpass(lo_hz, offsets, sample_rate_hz)
    h = h * np.hamming(taps)
    return FirFilter(h, lo_hz, hi_hz, sample_rate_hz)


def apply_fir(f: FirFilter, w: Waveform) -> Waveform:
    """Convolve with zero-padded edges and trim the group delay.

    Output sample n is time-aligned with input sample n and the output has
    the input's length, so filtered channels stay frame-synchronous.
    """
    if f.sample_rate_hz != w.sample_rate_hz:
        raise RateMismatchError(
            f"filter at {f.sample_rate_hz} Hz applied to {w.sample_rate_hz} Hz signal"
        )
    if f.taps.size % 2 == 0:
        raise ValueError("group-delay compensation requires an odd tap count")
    delay = (f.taps.size - 1) // 2
    full = np.convolve(w.samples, f.taps, mode="full")
    return Waveform(full[delay:delay + w.samples.size], w.sample_rate_hz)


def split_channels(w: Waveform, plan: ChannelPlan, taps: int = DEFAULT_FIR_TAPS) -> list:
    """Filter the signal into one band-limited waveform per plan band."""
    out = []
    for lo, hi in plan.bands:
        f = design_bandpass(lo, hi, taps, w.sample_rate_hz)
        out.append(apply_fir(f, w))
    return out


def frame_blocks(w: Waveform, frame_ms: float = DEFAULT_FRAME_MS,
                 overlap_ms: float = DEFAULT_OVERLAP_MS) -> FrameMatrix:
    """Block a signal into overlapping frames, dropping any trailing partial frame."""
    if not 0.0 <= overlap_ms < frame_ms:
        raise ValueError("overlap must satisfy 0 <= overlap < frame length")
    n = int(round(frame_ms * w.sample_rate_hz / 1000.0))
    hop = int(round((frame_ms - overlap_ms) * w.sample_rate_hz / 1000.0))
    if hop < 1:
        raise ValueError("hop rounds to zero samples")
    if w.samples.size < n:
        raise TooShortError(f"signal of {w.samples.size} samples shorter than one {n}-sample frame")
    count = (w.samples.size - n) // hop + 1
    index = np.arange(n) + hop * np.arange(count)[:, None]
    return FrameMatrix(w.samples[index], n, hop, w.sample_rate_hz)


def hamming_window(m: FrameMatrix) -> FrameMatrix:
    """Multiply each frame by 0.54 - 0.46*cos(2*pi*n/(N-1))."""
    window = np.hamming(m.frame_len)
    return FrameMatrix(m.frames * window, m.frame_len, m.hop, m.sample_rate_hz)


def power_spectrum(m: FrameMatrix, nfft: int = DEFAULT_NFFT) -> SpectrumMatrix:
    """Zero-pad frames to nfft and return unnormalized |X[k]|^2 rows."""
    if nfft < m.frame_len or nfft <= 0 or nfft & (nfft - 1) != 0:
        raise ValueError(f"nfft must be a power of two >= frame length, got {nfft}")
    spectrum = np.abs(np.fft.rfft(m.frames, n=nfft, axis=1)) ** 2
    return SpectrumMatrix(spectrum, nfft, m.sample_rate_hz)


def frequency_response(f: FirFilter, n_points: int,
                       lo_hz: float = 0.0, hi_hz: float | None = None) -> np.ndarray:
    """Magnitude response in dB on a uniform inclusive frequency grid.

    Defaults to [0, fs/2]. Returns an (n_points, 2) array of
    (freq_hz, magnitude_db) rows, floored at -200 dB.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if hi_hz is None:
        hi_hz = f.sample_rate_hz / 2.0
    freqs = np.linspace(lo_hz, hi_hz, n_points)
    k = np.arange(f.taps.size)
    response = np.exp(-2j * np.pi * np.outer(freqs, k) / f.sample_rate_hz) @ f.taps
    magnitude = np.abs(response)
    db = np.full(magnitude.shape, DB_FLOOR)
    audible = magnitude > 10.0 ** (DB_FLOOR / 20.0)
    db[audible] = 20.0 * np.log10(magnitude[audible])
    return np.column_stack([freqs, db])


def write_response_csv(response: np.ndarray, path) -> None:
    """Dump a frequency_response array as `freq_hz,magnitude_db` CSV."""
    lines = ["freq_hz,magnitude_db"]
    for freq, db in response:
        lines.append(f"{freq:.9g},{db:.9g}")
    with open(path, "w", encoding="utf-8") as out:
        out.write("\n".join(lines) + "\n")
