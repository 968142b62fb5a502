"""Waveform loading, resampling, synthesis, and WAV output.

Everything downstream runs at 8 kHz; this module is the only place where
other rates or file encodings are allowed to appear.
"""

import errno
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyAudioError, UnsupportedRateError, WavFormatError

PIPELINE_RATE_HZ = 8000
NYQUIST_HZ = PIPELINE_RATE_HZ // 2

# int16 full scale; dividing by 32768 keeps power-of-two samples exact.
_PCM_SCALE = 32768.0

_RESAMPLE_CUTOFF_HZ = 3800.0
_RESAMPLE_TAPS = 255

_VOWEL_BANDWIDTH_HZ = 150.0
_VOWEL_DECAY = 3.0
_DEFAULT_FORMANTS_HZ = (800.0, 1200.0, 2600.0)


@dataclass(frozen=True, eq=False)
class Waveform:
    """Mono signal with nominal amplitudes in [-1, 1]."""

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise EmptyAudioError("waveform needs at least one sample")
        if not np.all(np.isfinite(samples)):
            raise ValueError("waveform samples must be finite")
        if int(self.sample_rate_hz) <= 0:
            raise ValueError("sample rate must be positive")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", int(self.sample_rate_hz))

    def __len__(self):
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


def load_wav(path) -> Waveform:
    """Read a mono 16-bit PCM WAV file into a Waveform.

    Raises FileNotFoundError if the path is missing, WavFormatError for
    stereo/non-PCM/non-16-bit content, EmptyAudioError for an empty data
    chunk. Samples are scaled by 1/32768.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(errno.ENOENT, "no such WAV file", str(path))
    try:
        with wave.open(str(path), "rb") as reader:
            n_channels = reader.getnchannels()
            sample_width = reader.getsampwidth()
            comp_type = reader.getcomptype()
            rate = reader.getframerate()
            raw = reader.readframes(reader.getnframes())
    except (wave.Error, EOFError) as exc:
        raise WavFormatError(f"{path}: {exc}") from exc
    if comp_type != "NONE":
        raise WavFormatError(f"{path}: compressed WAV ({comp_type}) not supported")
    if n_channels != 1:
        raise WavFormatError(f"{path}: expected mono, got {n_channels} channels")
    if sample_width != 2:
        raise WavFormatError(f"{path}: expected 16-bit PCM, got {8 * sample_width}-bit")
    data = np.frombuffer(raw, dtype="<i2")
    if data.size == 0:
        raise EmptyAudioError(f"{path}: no samples")
    return Waveform(data / _PCM_SCALE, rate)


def write_wav(w: Waveform, path) -> None:
    """Write a waveform as mono 16-bit PCM, clipping to the int16 range."""
    data = np.clip(np.rint(w.samples * _PCM_SCALE), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as writer:
        writer.setnchannels(1)
        writer.setsampwidth(2)
        writer.setframerate(w.sample_rate_hz)
        writer.writeframes(data.tobytes())


def resample_to_8k(w: Waveform) -> Waveform:
    """Bring a waveform to the 8 kHz pipeline rate.

    8 kHz input is returned unchanged; 16 kHz input is low-passed at 3.8 kHz
    (windowed sinc, 255 taps, delay compensated) and decimated by 2, so the
    output has ceil(n/2) samples. Any other rate raises UnsupportedRateError.
    """
    if w.sample_rate_hz == PIPELINE_RATE_HZ:
        return w
    if w.sample_rate_hz != 2 * PIPELINE_RATE_HZ:
        raise UnsupportedRateError(
            f"cannot resample from {w.sample_rate_hz} Hz; expected 8000 or 16000"
        )
    # Imported here: dsp_core depends on Waveform from this module.
    from .dsp_core import apply_fir, design_bandpass

    lowpass = design_bandpass(0.0, _RESAMPLE_CUTOFF_HZ, _RESAMPLE_TAPS, w.sample_rate_hz)
    filtered = apply_fir(lowpass, w)
    # Filter ringing can push hot samples past full scale; pin to [-1, 1].
    return Waveform(np.clip(filtered.samples[::2], -1.0, 1.0), PIPELINE_RATE_HZ)


def synth_signal(kind, *, freq_hz=None, f0_hz=None, formants_hz=None,
                 seed=None, duration_s=1.0, amplitude=1.0) -> Waveform:
    """Generate a deterministic 8 kHz test signal.

    kind "tone" needs freq_hz, "vowel" needs f0_hz (formants_hz optional),
    "noise" needs seed. All frequencies must lie strictly below the 4 kHz
    Nyquist. Same parameters always produce bitwise-identical output.
    """
    if duration_s <= 0:
        raise ValueError("duration_s must be positive")
    if amplitude <= 0:
        raise ValueError("amplitude must be positive")
    n = int(round(duration_s * PIPELINE_RATE_HZ))
    t = np.arange(n) / PIPELINE_RATE_HZ
    if kind == "tone":
        if freq_hz is None:
            raise ValueError("tone requires freq_hz")
        if not 0.0 < freq_hz < NYQUIST_HZ:
            raise ValueError(f"tone frequency {freq_hz} Hz outside (0, {NYQUIST_HZ})")
        samples = amplitude * np.sin(2.0 * np.pi * freq_hz * t)
    elif kind == "vowel":
        if f0_hz is None:
            raise ValueError("vowel requires f0_hz")
        formants = tuple(_DEFAULT_FORMANTS_HZ if formants_hz is None else formants_hz)
        if not 0.0 < f0_hz < NYQUIST_HZ or any(not 0.0 < f < NYQUIST_HZ for f in formants):
            raise ValueError(f"vowel frequencies must lie in (0, {NYQUIST_HZ}) Hz")
        samples = _vowel(t, f0_hz, formants, duration_s)
        samples *= amplitude / np.max(np.abs(samples))
    elif kind == "noise":
        if seed is None:
            raise ValueError("noise requires a seed")
        rng = np.random.default_rng(seed)
        samples = rng.uniform(-amplitude, amplitude, n)
    else:
        raise ValueError(f"unknown signal kind: {kind!r}")
    return Waveform(samples, PIPELINE_RATE_HZ)


def _vowel(t, f0_hz, formants_hz, duration_s):
    # Harmonic source shaped by resonance peaks; a test fixture, not a
    # claim about speech production.
    envelope = np.exp(-_VOWEL_DECAY * t / duration_s)
    out = np.zeros_like(t)
    k = 1
    while k * f0_hz < NYQUIST_HZ:
        f = k * f0_hz
        gain = sum(1.0 / (1.0 + ((f - peak) / _VOWEL_BANDWIDTH_HZ) ** 2)
                   for peak in formants_hz)
        out += gain * np.sin(2.0 * np.pi * f * t)
        k += 1
    return out * envelope
