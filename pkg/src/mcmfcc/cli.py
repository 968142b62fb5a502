"""Command-line interface: extract, compare, filters, synth."""

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .audio_io import (
    NYQUIST_HZ,
    PIPELINE_RATE_HZ,
    load_wav,
    resample_to_8k,
    synth_signal,
    write_wav,
)
from .comparison import DEFAULT_THRESHOLD, WordPair, compatibility, report_csv, report_table
from .dsp_core import design_bandpass, frequency_response, write_response_csv
from .errors import McmfccError, ParseError
from .mel_filterbank import build_filterbank, write_filterbank_csv
from .pipeline import extract, variant_config, write_feature_file

VARIANT_CHOICES = ("m5fb", "m2fb", "m1fb", "scfb")
RESPONSE_POINTS = 512

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _threshold_arg(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError("threshold must lie in (0, 1]")
    return value


def _formants_arg(text):
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated Hz values, got {text!r}")


def read_manifest(path) -> dict:
    """Parse `word_id<TAB>path` lines; relative paths resolve against the manifest."""
    manifest = Path(path)
    base = manifest.parent
    entries = {}
    for lineno, raw in enumerate(manifest.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        word_id, sep, wav = line.partition("\t")
        word_id = word_id.strip()
        wav = wav.strip()
        if not sep or not word_id or not wav:
            raise ParseError(f"{manifest}:{lineno}: expected 'word_id<TAB>path'")
        if word_id in entries:
            raise ParseError(f"{manifest}:{lineno}: duplicate word_id {word_id!r}")
        entries[word_id] = base / wav
    if not entries:
        raise ParseError(f"{manifest}: no entries")
    return entries


def _extract_file(wav_path, cfg):
    return extract(resample_to_8k(load_wav(wav_path)), cfg)


def cmd_extract(args) -> int:
    cfg = variant_config(args.variant)
    write_feature_file(_extract_file(args.input, cfg), args.output)
    return EXIT_OK


def cmd_compare(args) -> int:
    manifest_a = read_manifest(args.a)
    manifest_b = read_manifest(args.b)
    shared = [word for word in manifest_a if word in manifest_b]
    if not shared:
        print("error: manifests share no word_id", file=sys.stderr)
        return EXIT_RUNTIME
    cfg = variant_config(args.variant)
    pairs = [
        WordPair(word, _extract_file(manifest_a[word], cfg), _extract_file(manifest_b[word], cfg))
        for word in shared
    ]
    report = compatibility(pairs, threshold=args.threshold)
    print(report_table(report))
    if args.report:
        _atomic_write(args.report, report_csv(report))
    return EXIT_OK


def cmd_filters(args) -> int:
    cfg = variant_config(args.variant)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for index, spec in enumerate(cfg.channels, start=1):
        if spec.fir_band is not None:
            fir = design_bandpass(spec.fir_band[0], spec.fir_band[1],
                                  cfg.fir_taps, PIPELINE_RATE_HZ)
            write_response_csv(frequency_response(fir, RESPONSE_POINTS),
                               out_dir / f"fir_ch{index}_response.csv")
        fb = build_filterbank(spec.mel_band[0], spec.mel_band[1], spec.n_filters,
                              cfg.nfft, PIPELINE_RATE_HZ)
        write_filterbank_csv(fb, out_dir / f"filterbank_ch{index}.csv")
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        w = synth_signal(
            args.kind,
            freq_hz=args.freq,
            f0_hz=args.f0,
            formants_hz=args.formants,
            seed=args.seed,
            duration_s=args.duration,
            amplitude=args.amplitude,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    directory = os.path.dirname(os.fspath(args.out)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".wav.tmp")
    os.close(fd)
    try:
        write_wav(w, tmp)
        os.replace(tmp, args.out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return EXIT_OK


def _atomic_write(path, text) -> None:
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


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcmfcc",
        description="Multichannel MFCC extraction and voice compatibility scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract a feature file from one WAV")
    p_extract.add_argument("--variant", required=True, type=str.lower, choices=VARIANT_CHOICES)
    p_extract.add_argument("--input", required=True, help="mono 16-bit PCM WAV (8 or 16 kHz)")
    p_extract.add_argument("--output", required=True, help="feature file to write")
    p_extract.set_defaults(func=cmd_extract)

    p_compare = sub.add_parser("compare", help="compare two word manifests")
    p_compare.add_argument("--variant", required=True, type=str.lower, choices=VARIANT_CHOICES)
    p_compare.add_argument("--a", required=True, help="manifest of recording A")
    p_compare.add_argument("--b", required=True, help="manifest of recording B")
    p_compare.add_argument("--threshold", type=_threshold_arg, default=DEFAULT_THRESHOLD)
    p_compare.add_argument("--report", help="write the per-word CSV report here")
    p_compare.set_defaults(func=cmd_compare)

    p_filters = sub.add_parser("filters", help="dump FIR responses and filterbank weights")
    p_filters.add_argument("--variant", required=True, type=str.lower, choices=VARIANT_CHOICES)
    p_filters.add_argument("--out", required=True, help="output directory for CSV files")
    p_filters.set_defaults(func=cmd_filters)

    p_synth = sub.add_parser("synth", help="generate a synthetic test WAV")
    p_synth.add_argument("--kind", required=True, choices=("tone", "vowel", "noise"))
    p_synth.add_argument("--freq", type=float, help=f"tone frequency in Hz (< {NYQUIST_HZ})")
    p_synth.add_argument("--f0", type=float, help="vowel fundamental in Hz")
    p_synth.add_argument("--formants", type=_formants_arg,
                         help="comma-separated vowel resonances in Hz")
    p_synth.add_argument("--seed", type=int, help="RNG seed (required for noise)")
    p_synth.add_argument("--duration", type=float, default=1.0, help="seconds")
    p_synth.add_argument("--amplitude", type=float, default=0.9)
    p_synth.add_argument("--out", required=True, help="WAV file to write")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (McmfccError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
