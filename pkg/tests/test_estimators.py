import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from mcmfcc import (
    CosinePairMatcher,
    MultichannelMfccExtractor,
    UnknownVariantError,
    Waveform,
    as_waveform,
    extract,
    synth_signal,
    variant_config,
)


@pytest.fixture(scope="module")
def three_words():
    return [
        synth_signal("vowel", f0_hz=110.0, duration_s=0.4, amplitude=0.8),
        synth_signal("vowel", f0_hz=150.0, duration_s=0.4, amplitude=0.8),
        synth_signal("tone", freq_hz=500.0, duration_s=0.4, amplitude=0.8),
    ]


class TestAsWaveform:
    def test_waveform_passthrough(self):
        w = Waveform(np.zeros(100), 8000)
        assert as_waveform(w) is w

    def test_16k_waveform_resampled(self):
        w = Waveform(np.zeros(16000), 16000)
        assert as_waveform(w).sample_rate_hz == 8000

    def test_array_assumed_8k(self):
        out = as_waveform(np.linspace(-0.5, 0.5, 256))
        assert out.sample_rate_hz == 8000

    def test_rejects_2d(self):
        with pytest.raises(ValueError):
            as_waveform(np.zeros((2, 100)))


class TestExtractorEstimator:
    def test_get_set_params_and_clone(self):
        est = MultichannelMfccExtractor(variant="scfb", keep_coeffs=5)
        assert est.get_params() == {"variant": "scfb", "keep_coeffs": 5}
        twin = clone(est)
        assert twin.get_params() == est.get_params()
        est.set_params(variant="m5fb")
        assert est.variant == "m5fb"

    def test_transform_shape_and_values(self, three_words):
        est = MultichannelMfccExtractor(variant="m5fb")
        matrix = est.transform(three_words)
        assert matrix.shape == (3, 252)
        cfg = variant_config("m5fb")
        for row, word in zip(matrix, three_words):
            assert np.array_equal(row, extract(word, cfg).entries)

    def test_fit_transform(self, three_words):
        est = MultichannelMfccExtractor(variant="scfb")
        matrix = est.fit_transform(three_words)
        assert matrix.shape == (3, 88)

    def test_accepts_raw_arrays(self):
        est = MultichannelMfccExtractor(variant="scfb")
        rng = np.random.default_rng(40)
        matrix = est.transform([rng.normal(size=4000), rng.normal(size=2000)])
        assert matrix.shape == (2, 88)

    def test_feature_names_match_width(self, three_words):
        est = MultichannelMfccExtractor(variant="m2fb")
        names = est.get_feature_names_out()
        assert len(names) == est.transform(three_words[:1]).shape[1]
        assert len(set(names)) == len(names)
        assert names[0] == "ch1_c00_max"

    def test_sklearn_pipeline_compose(self, three_words):
        pipe = Pipeline([("mfcc", MultichannelMfccExtractor(variant="scfb"))])
        matrix = pipe.fit(three_words).transform(three_words)
        assert matrix.shape == (3, 88)

    def test_unknown_variant_raises_on_fit(self):
        with pytest.raises(UnknownVariantError):
            MultichannelMfccExtractor(variant="m9fb").fit()


class TestCosinePairMatcher:
    def test_decision_function(self):
        matcher = CosinePairMatcher()
        pairs = [
            (np.array([1.0, 0.0]), np.array([1.0, 0.0])),
            (np.array([1.0, 0.0]), np.array([0.0, 1.0])),
        ]
        scores = matcher.decision_function(pairs)
        assert np.allclose(scores, [1.0, 0.0])

    def test_predict_threshold_inclusive(self):
        matcher = CosinePairMatcher(threshold=1.0)
        pairs = [(np.array([2.0, 0.0]), np.array([1.0, 0.0]))]
        assert matcher.predict(pairs).tolist() == [True]

    def test_predict_on_stacked_array(self):
        matcher = CosinePairMatcher(threshold=0.9)
        stacked = np.array([
            [[1.0, 0.0], [1.0, 0.1]],
            [[1.0, 0.0], [0.0, 1.0]],
        ])
        assert matcher.predict(stacked).tolist() == [True, False]

    def test_invalid_threshold(self):
        with pytest.raises(ValueError):
            CosinePairMatcher(threshold=1.5).fit()
        with pytest.raises(ValueError):
            CosinePairMatcher(threshold=0.0).predict([])

    def test_clone(self):
        matcher = CosinePairMatcher(threshold=0.8)
        assert clone(matcher).threshold == 0.8

    def test_end_to_end_with_extractor(self, three_words):
        est = MultichannelMfccExtractor(variant="m5fb")
        rows = est.transform(three_words)
        matcher = CosinePairMatcher(threshold=0.95)
        pairs = [(rows[0], rows[0]), (rows[0], rows[2])]
        decisions = matcher.fit().predict(pairs)
        assert decisions[0]
