"""Variant configuration tables and end-to-end feature extraction."""

import os
import re
import tempfile
from dataclasses import dataclass, replace

import numpy as np

from .audio_io import PIPELINE_RATE_HZ, Waveform
from .cepstrum import CepstralMatrix, DEFAULT_LOG_FLOOR, dct2, log_energies
from .dsp_core import (
    DEFAULT_FIR_TAPS,
    DEFAULT_FRAME_MS,
    DEFAULT_NFFT,
    DEFAULT_OVERLAP_MS,
    DEFAULT_PREEMPHASIS,
    ChannelPlan,
    FIVE_BAND_EDGES_HZ,
    PreemphasisConfig,
    frame_blocks,
    hamming_window,
    power_spectrum,
    preemphasize,
    split_channels,
)
from .errors import ParseError, UnknownVariantError, UnsupportedRateError
from .features import FeatureVector, concat_summaries, summarize
from .mel_filterbank import MelFilterbank, apply_filterbank, build_filterbank

VARIANT_NAMES = ("M5FB", "M2FB", "M1FB", "SCFB")
MULTICHANNEL_FILTER_COUNTS = (18, 15, 12, 10, 8)
SINGLE_CHANNEL_FILTER_COUNT = 22
FULL_RANGE_HZ = (20.0, 4000.0)
LOW_RANGE_HZ = (20.0, 1000.0)
HIGH_RANGE_HZ = (950.0, 4000.0)

FEATURE_FILE_MAGIC = "#mcmfcc v1"

_HEADER_RE = re.compile(r"^#mcmfcc v1 variant=(\S+)$")
_COUNTS_RE = re.compile(r"^#channels=(\d+) filters=([0-9,]+)$")
_ENTRY_RE = re.compile(
    r"^ch=(\d+) k=(\d+) max=(\S+) min=(\S+) mean=(\S+) sd=(\S+)$"
)


@dataclass(frozen=True)
class ChannelSpec:
    """One channel of a variant: FIR band (None = no split), mel band, filter count."""

    fir_band: tuple | None
    mel_band: tuple
    n_filters: int


@dataclass(frozen=True)
class VariantConfig:
    """Full parameter set for one extraction model."""

    name: str
    channels: tuple
    frame_ms: float = DEFAULT_FRAME_MS
    overlap_ms: float = DEFAULT_OVERLAP_MS
    preemph: float = DEFAULT_PREEMPHASIS
    nfft: int = DEFAULT_NFFT
    fir_taps: int = DEFAULT_FIR_TAPS
    log_floor: float = DEFAULT_LOG_FLOOR
    keep_coeffs: int | None = None


def variant_config(name: str, keep_coeffs: int | None = None) -> VariantConfig:
    """Return the configuration table for m5fb, m2fb, m1fb, or scfb."""
    key = str(name).strip().upper()
    counts = MULTICHANNEL_FILTER_COUNTS
    if key == "M5FB":
        channels = tuple(
            ChannelSpec(band, band, k) for band, k in zip(FIVE_BAND_EDGES_HZ, counts)
        )
    elif key == "M2FB":
        # Low channels share a <1 kHz mel range, high channels a >1 kHz one.
        channels = tuple(
            ChannelSpec(band, LOW_RANGE_HZ if i < 2 else HIGH_RANGE_HZ, k)
            for i, (band, k) in enumerate(zip(FIVE_BAND_EDGES_HZ, counts))
        )
    elif key == "M1FB":
        channels = tuple(
            ChannelSpec(band, FULL_RANGE_HZ, k)
            for band, k in zip(FIVE_BAND_EDGES_HZ, counts)
        )
    elif key == "SCFB":
        channels = (ChannelSpec(None, FULL_RANGE_HZ, SINGLE_CHANNEL_FILTER_COUNT),)
    else:
        raise UnknownVariantError(f"unknown variant {name!r}; expected one of {VARIANT_NAMES}")
    return VariantConfig(name=key, channels=channels, keep_coeffs=keep_coeffs)


def channel_plan(cfg: VariantConfig) -> ChannelPlan | None:
    """FIR split plan for the variant, or None when it runs unsplit."""
    bands = tuple(spec.fir_band for spec in cfg.channels if spec.fir_band is not None)
    return ChannelPlan(bands) if bands else None


@dataclass(eq=False)
class ChannelAnalysis:
    """Intermediate products of one channel's extraction."""

    channel_index: int
    filterbank: MelFilterbank
    energies: np.ndarray
    log_energies: np.ndarray
    cepstra: CepstralMatrix

    @property
    def mean_log_energies(self) -> np.ndarray:
        return self.log_energies.mean(axis=0)


def analyze(w: Waveform, cfg: VariantConfig) -> list:
    """Run the per-channel pipeline and keep the intermediate matrices.

    Stages per channel: frame blocking, Hamming window, power spectrum,
    mel filterbank, log, DCT. The FIR split happens first unless the
    variant runs single-channel.
    """
    if w.sample_rate_hz != PIPELINE_RATE_HZ:
        raise UnsupportedRateError(
            f"pipeline expects {PIPELINE_RATE_HZ} Hz input, got {w.sample_rate_hz} Hz"
        )
    emphasized = preemphasize(w, PreemphasisConfig(cfg.preemph))
    plan = channel_plan(cfg)
    if plan is not None:
        channels = split_channels(emphasized, plan, cfg.fir_taps)
    else:
        channels = [emphasized]
    out = []
    for index, (channel, spec) in enumerate(zip(channels, cfg.channels), start=1):
        frames = hamming_window(frame_blocks(channel, cfg.frame_ms, cfg.overlap_ms))
        spectrum = power_spectrum(frames, cfg.nfft)
        fb = build_filterbank(spec.mel_band[0], spec.mel_band[1], spec.n_filters,
                              cfg.nfft, PIPELINE_RATE_HZ)
        energies = apply_filterbank(fb, spectrum)
        logs = log_energies(energies, cfg.log_floor)
        cepstra = dct2(logs, channel_index=index)
        if cfg.keep_coeffs is not None:
            cepstra = CepstralMatrix(cepstra.coeffs[:, :cfg.keep_coeffs], index)
        out.append(ChannelAnalysis(index, fb, energies, logs, cepstra))
    return out


def extract(w: Waveform, cfg: VariantConfig) -> FeatureVector:
    """Extract the word-level feature vector for one waveform."""
    summaries = [summarize(a.cepstra) for a in analyze(w, cfg)]
    return concat_summaries(summaries, cfg.name)


def _atomic_write_text(path, text: str) -> None:
    # Write-then-rename so a crash never leaves a truncated file behind.
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as out:
            out.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_feature_file(fv: FeatureVector, path) -> None:
    """Serialize a feature vector as line-oriented UTF-8 text.

    Values use shortest round-trip decimals, so read(write(fv)) is exact.
    """
    counts = ",".join(str(k) for k in fv.filter_counts)
    lines = [
        f"{FEATURE_FILE_MAGIC} variant={fv.variant_name}",
        f"#channels={len(fv.filter_counts)} filters={counts}",
    ]
    position = 0
    for channel, count in enumerate(fv.filter_counts, start=1):
        for k in range(count):
            vmax, vmin, vmean, vsd = (float(v) for v in fv.entries[position:position + 4])
            position += 4
            lines.append(f"ch={channel} k={k} max={vmax!r} min={vmin!r} mean={vmean!r} sd={vsd!r}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


def read_feature_file(path) -> FeatureVector:
    """Parse a feature file written by write_feature_file."""
    with open(path, "r", encoding="utf-8") as src:
        lines = src.read().splitlines()
    if len(lines) < 2:
        raise ParseError(f"{path}: missing header lines")
    header = _HEADER_RE.match(lines[0])
    if header is None:
        raise ParseError(f"{path}: bad magic line {lines[0]!r}")
    counts_line = _COUNTS_RE.match(lines[1])
    if counts_line is None:
        raise ParseError(f"{path}: bad counts line {lines[1]!r}")
    variant = header.group(1)
    n_channels = int(counts_line.group(1))
    try:
        counts = tuple(int(c) for c in counts_line.group(2).split(","))
    except ValueError as exc:
        raise ParseError(f"{path}: bad filter counts") from exc
    if len(counts) != n_channels:
        raise ParseError(f"{path}: {n_channels} channels declared, {len(counts)} counts given")
    body = lines[2:]
    expected = sum(counts)
    if len(body) != expected:
        raise ParseError(f"{path}: expected {expected} entry lines, found {len(body)}")
    entries = []
    row = 0
    for channel, count in enumerate(counts, start=1):
        for k in range(count):
            match = _ENTRY_RE.match(body[row])
            if match is None:
                raise ParseError(f"{path}: malformed entry line {body[row]!r}")
            if int(match.group(1)) != channel or int(match.group(2)) != k:
                raise ParseError(f"{path}: entry {body[row]!r} out of order")
            try:
                values = [float(g) for g in match.group(3, 4, 5, 6)]
            except ValueError as exc:
                raise ParseError(f"{path}: non-numeric value in {body[row]!r}") from exc
            if not all(np.isfinite(values)):
                raise ParseError(f"{path}: non-finite value in {body[row]!r}")
            entries.extend(values)
            row += 1
    return FeatureVector(variant, np.array(entries), counts)


def with_mel_band(cfg: VariantConfig, band: tuple) -> VariantConfig:
    """Copy of cfg with every channel's mel band replaced (test/inspection aid)."""
    channels = tuple(replace(spec, mel_band=(float(band[0]), float(band[1])))
                     for spec in cfg.channels)
    return replace(cfg, channels=channels)
