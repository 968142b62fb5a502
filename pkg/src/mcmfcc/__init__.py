"""Multichannel MFCC feature extraction and voice compatibility scoring.

The signal is band-split with FIR filters, each channel gets its own mel
filterbank and log-DCT cepstra, and per-coefficient summary statistics form
the word-level feature vector. Feature vectors from two recordings are
compared word by word to yield a compatibility percentage.
"""

from .audio_io import (
    NYQUIST_HZ,
    PIPELINE_RATE_HZ,
    Waveform,
    load_wav,
    resample_to_8k,
    synth_signal,
    write_wav,
)
from .cepstrum import CepstralMatrix, dct2, log_energies
from .comparison import (
    ComparisonReport,
    DEFAULT_THRESHOLD,
    WordPair,
    compatibility,
    decide_identity,
    similarity,
    vector_similarity,
)
from .dsp_core import (
    ChannelPlan,
    FIVE_BAND_EDGES_HZ,
    FirFilter,
    FrameMatrix,
    PreemphasisConfig,
    SpectrumMatrix,
    apply_fir,
    design_bandpass,
    frame_blocks,
    frequency_response,
    hamming_window,
    power_spectrum,
    preemphasize,
    split_channels,
)
from .errors import (
    DegenerateFilterError,
    EmptyAudioError,
    McmfccError,
    MissingChannelError,
    ParseError,
    RateMismatchError,
    ShapeMismatchError,
    TooShortError,
    UnknownVariantError,
    UnsupportedRateError,
    WavFormatError,
)
from .estimators import CosinePairMatcher, MultichannelMfccExtractor, as_waveform
from .features import ChannelSummary, FeatureVector, concat_summaries, summarize
from .mel_filterbank import (
    MelFilterbank,
    apply_filterbank,
    build_filterbank,
    hz_to_mel,
    mel_to_hz,
)
from .pipeline import (
    ChannelAnalysis,
    ChannelSpec,
    VariantConfig,
    analyze,
    channel_plan,
    extract,
    read_feature_file,
    variant_config,
    write_feature_file,
)

__version__ = "0.1.0"
