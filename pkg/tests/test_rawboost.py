import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoofkit.audio import AudioClip
from spoofkit.rawboost import (
    AugmentationRecipe,
    ConvolutiveParams,
    ImpulsiveParams,
    RecipeError,
    apply_recipe,
    convolutive_noise,
    impulsive_noise,
    recipe_from_dict,
)


def tone(n=8192, freq=300.0, amp=0.3, rate=16000):
    t = np.arange(n) / rate
    return AudioClip(rate, amp * np.sin(2 * np.pi * freq * t) + 0.05)


class TestConvolutive:
    def test_silence_to_silence(self):
        out = convolutive_noise(AudioClip(16000, np.zeros(4000)),
                                ConvolutiveParams(), seed=3)
        assert np.all(out.samples == 0.0)

    def test_deterministic(self):
        clip = tone()
        a = convolutive_noise(clip, ConvolutiveParams(), seed=42)
        b = convolutive_noise(clip, ConvolutiveParams(), seed=42)
        assert np.array_equal(a.samples, b.samples)

    def test_length_preserved(self):
        clip = tone(5000)
        assert len(convolutive_noise(clip, ConvolutiveParams(), 1).samples) == 5000

    def test_peak_normalized_to_input(self):
        clip = tone()
        out = convolutive_noise(clip, ConvolutiveParams(), seed=9)
        peak_in = np.max(np.abs(clip.samples))
        assert np.max(np.abs(out.samples)) == pytest.approx(peak_in, rel=1e-12)

    def test_impulse_matches_direct_convolution_oracle(self):
        # Linear-only config on a unit impulse: output is the (normalized)
        # FIR kernel itself, which the direct-convolution oracle reproduces.
        params = ConvolutiveParams(n_bands_range=(1, 1), nonlinearity_order=1)
        n = 8192  # long enough to exercise the FFT convolution path
        x = np.zeros(n)
        x[0] = 1.0
        clip = AudioClip(16000, x)
        out = convolutive_noise(clip, params, seed=17)

        from spoofkit.rawboost import _random_notch_kernel
        from spoofkit.sampling import SplitMix64
        rng = SplitMix64(17)
        n_bands = rng.randint(1, 1)
        h = _random_notch_kernel(rng, params, n_bands, 16000)
        # direct (time-domain) convolution oracle vs the FFT path inside
        oracle = np.convolve(x, h)[:n]
        oracle *= 1.0 / np.max(np.abs(oracle))
        assert np.max(np.abs(out.samples - oracle)) < 1e-6

    def test_empty_clip_rejected(self):
        with pytest.raises(RecipeError):
            convolutive_noise(AudioClip(16000, np.zeros(0)),
                              ConvolutiveParams(), 0)


class TestImpulsive:
    def test_silence_to_silence(self):
        out = impulsive_noise(AudioClip(16000, np.zeros(1000)),
                              ImpulsiveParams(), seed=4)
        assert np.all(out.samples == 0.0)

    def test_p_zero_identity(self):
        clip = tone(1000)
        out = impulsive_noise(clip, ImpulsiveParams(p_percent_range=(0, 0)), 8)
        assert np.array_equal(out.samples, clip.samples)

    def test_p10_changes_exactly_100_of_1000(self):
        clip = AudioClip(16000, np.full(1000, 0.25))
        out = impulsive_noise(clip, ImpulsiveParams(p_percent_range=(10, 10)), 5)
        assert int(np.sum(out.samples != clip.samples)) == 100

    def test_untouched_positions_bit_identical(self):
        clip = tone(1000)
        out = impulsive_noise(clip, ImpulsiveParams(p_percent_range=(10, 10)), 5)
        changed = out.samples != clip.samples
        assert np.array_equal(out.samples[~changed], clip.samples[~changed])

    def test_deterministic(self):
        clip = tone(2000)
        params = ImpulsiveParams()
        a = impulsive_noise(clip, params, 31)
        b = impulsive_noise(clip, params, 31)
        assert np.array_equal(a.samples, b.samples)


class TestApplyRecipe:
    def test_none_is_identity(self):
        clip = tone()
        assert apply_recipe(clip, AugmentationRecipe(mode="none")) is clip

    def test_series_equals_manual_chain(self):
        clip = tone()
        recipe = AugmentationRecipe(mode="series_conv_then_imp", seed=9)
        out = apply_recipe(clip, recipe)
        manual = impulsive_noise(
            convolutive_noise(clip, recipe.conv_params, 9),
            recipe.imp_params, 9 ^ 1)
        assert np.array_equal(out.samples, np.clip(manual.samples, -1.0, 1.0))

    def test_output_clamped(self):
        clip = AudioClip(16000, np.full(2000, 0.99))
        recipe = AugmentationRecipe(
            mode="impulsive",
            imp_params=ImpulsiveParams(p_percent_range=(50, 50),
                                       gain_db_range=(5, 5)),
            seed=2,
        )
        out = apply_recipe(clip, recipe)
        assert np.max(np.abs(out.samples)) <= 1.0

    def test_unknown_mode_rejected(self):
        with pytest.raises(RecipeError):
            AugmentationRecipe(mode="mystery")

    def test_recipe_from_dict_round_trip(self):
        doc = {
            "mode": "series_conv_then_imp",
            "conv_params": {"n_bands_range": [2, 3], "nonlinearity_order": 2},
            "imp_params": {"p_percent_range": [1, 5]},
            "seed": 77,
        }
        recipe = recipe_from_dict(doc)
        assert recipe.conv_params.n_bands_range == (2, 3)
        assert recipe.imp_params.p_percent_range == (1, 5)
        assert recipe.seed == 77

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**64 - 1),
           mode=st.sampled_from(["convolutive", "impulsive",
                                 "series_conv_then_imp"]))
    def test_length_finite_clamped_property(self, seed, mode):
        clip = tone(3000)
        recipe = AugmentationRecipe(
            mode=mode,
            conv_params=ConvolutiveParams(nonlinearity_order=2),
            seed=seed,
        )
        out = apply_recipe(clip, recipe)
        assert len(out.samples) == 3000
        assert np.all(np.isfinite(out.samples))
        assert np.max(np.abs(out.samples)) <= 1.0
