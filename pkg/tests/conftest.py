import pytest

from mcmfcc import synth_signal

# Ten vowel-like resonance triplets cycled over the 20-word corpus.
FORMANT_TABLE = (
    (310.0, 2020.0, 2960.0),
    (360.0, 640.0, 2760.0),
    (500.0, 1500.0, 2500.0),
    (570.0, 840.0, 2410.0),
    (660.0, 1720.0, 2410.0),
    (730.0, 1090.0, 2440.0),
    (270.0, 2290.0, 3010.0),
    (440.0, 1020.0, 2240.0),
    (530.0, 1840.0, 2480.0),
    (390.0, 1990.0, 2550.0),
)


def make_word_corpus(f0_scale=1.0, n_words=20):
    """Deterministic vowel corpus; f0_scale < 1 emulates an aged speaker."""
    words = {}
    for i in range(n_words):
        words[f"word{i:02d}"] = synth_signal(
            "vowel",
            f0_hz=(105.0 + 6.0 * i) * f0_scale,
            formants_hz=FORMANT_TABLE[i % len(FORMANT_TABLE)],
            duration_s=0.5 + 0.02 * (i % 5),
            amplitude=0.8,
        )
    return words


@pytest.fixture(scope="session")
def word_corpus():
    return make_word_corpus


@pytest.fixture(scope="session")
def tone_1k():
    return synth_signal("tone", freq_hz=1000.0, duration_s=1.0, amplitude=1.0)


@pytest.fixture(scope="session")
def tone_250():
    return synth_signal("tone", freq_hz=250.0, duration_s=1.0, amplitude=1.0)
