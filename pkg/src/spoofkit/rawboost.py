"""Waveform boosting: convolutive and signal-dependent impulsive noise.

Two noise families applied directly to raw waveforms during training:
multi-band notch filtering of the signal and its harmonic powers
(linear + non-linear convolutive noise), and impulsive noise added in
proportion to the local signal value.  Every draw comes from a SplitMix64
stream, so augmentation is a pure function of (clip, params, seed).

Parameter defaults are implementation defaults for logical-access style
training, not published values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve, firwin2

from .audio import AudioClip
from .sampling import SplitMix64

_KERNEL_TAPS = 1024
# Direct convolution below this work estimate, FFT convolution above; both
# paths must agree within 1e-6 absolute.
_FFT_THRESHOLD = 1 << 22

MODES = ("none", "convolutive", "impulsive", "series_conv_then_imp")


class RecipeError(ValueError):
    pass


@dataclass(frozen=True)
class ConvolutiveParams:
    n_bands_range: tuple[int, int] = (1, 5)
    notch_min_width_hz: float = 20.0
    notch_max_width_hz: float = 1000.0
    band_freq_range_hz: tuple[float, float] = (20.0, 8000.0)
    band_gain_db_range: tuple[float, float] = (-5.0, 5.0)
    nonlinearity_order: int = 5
    order_gain_decay_db: float = 10.0

    def __post_init__(self):
        for lo, hi in (self.n_bands_range, self.band_gain_db_range,
                       self.band_freq_range_hz):
            if lo > hi:
                raise RecipeError(f"range [{lo}, {hi}] is not well ordered")
        if self.notch_min_width_hz > self.notch_max_width_hz:
            raise RecipeError("notch width range is not well ordered")
        if self.nonlinearity_order < 1:
            raise RecipeError("nonlinearity_order must be >= 1")


@dataclass(frozen=True)
class ImpulsiveParams:
    p_percent_range: tuple[float, float] = (0.0, 10.0)
    gain_db_range: tuple[float, float] = (-5.0, 5.0)

    def __post_init__(self):
        lo, hi = self.p_percent_range
        if lo > hi or lo < 0 or hi > 100:
            raise RecipeError("p_percent_range must satisfy 0 <= min <= max <= 100")
        if self.gain_db_range[0] > self.gain_db_range[1]:
            raise RecipeError("gain_db_range is not well ordered")


@dataclass(frozen=True)
class AugmentationRecipe:
    mode: str = "series_conv_then_imp"
    conv_params: ConvolutiveParams = field(default_factory=ConvolutiveParams)
    imp_params: ImpulsiveParams = field(default_factory=ImpulsiveParams)
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise RecipeError(f"unknown mode {self.mode!r}; have {list(MODES)}")


def recipe_from_dict(doc: dict) -> AugmentationRecipe:
    def pair(v):
        return (v[0], v[1]) if v is not None else None

    conv = doc.get("conv_params") or {}
    imp = doc.get("imp_params") or {}
    conv_kwargs = {}
    for key in ("n_bands_range", "band_gain_db_range", "band_freq_range_hz"):
        if key in conv:
            conv_kwargs[key] = pair(conv[key])
    for key in ("notch_min_width_hz", "notch_max_width_hz",
                "nonlinearity_order", "order_gain_decay_db"):
        if key in conv:
            conv_kwargs[key] = conv[key]
    imp_kwargs = {}
    if "p_percent_range" in imp:
        imp_kwargs["p_percent_range"] = pair(imp["p_percent_range"])
    if "gain_db_range" in imp:
        imp_kwargs["gain_db_range"] = pair(imp["gain_db_range"])
    return AugmentationRecipe(
        mode=doc.get("mode", "series_conv_then_imp"),
        conv_params=ConvolutiveParams(**conv_kwargs),
        imp_params=ImpulsiveParams(**imp_kwargs),
        seed=int(doc.get("seed", 0)),
    )


def _convolve_same_length(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Causal convolution truncated to len(x)."""
    if len(x) * len(h) < _FFT_THRESHOLD:
        return np.convolve(x, h)[:len(x)]
    return fftconvolve(x, h)[:len(x)]


def _random_notch_kernel(rng: SplitMix64, params: ConvolutiveParams,
                         n_bands: int, rate_hz: int) -> np.ndarray:
    """Frequency-sampled FIR whose response carves n_bands random notches."""
    nyquist = rate_hz / 2.0
    grid = np.linspace(0.0, 1.0, 513)
    gains = np.ones_like(grid)
    f_lo, f_hi = params.band_freq_range_hz
    f_hi = min(f_hi, nyquist)
    for _ in range(n_bands):
        width = rng.uniform(params.notch_min_width_hz, params.notch_max_width_hz)
        center = rng.uniform(f_lo, f_hi)
        gain_db = rng.uniform(*params.band_gain_db_range)
        lo = max((center - width / 2) / nyquist, 0.0)
        hi = min((center + width / 2) / nyquist, 1.0)
        band = (grid >= lo) & (grid <= hi)
        gains[band] *= 10.0 ** (gain_db / 20.0)
    gains[-1] = 0.0  # even-length FIR needs a null at Nyquist
    return firwin2(_KERNEL_TAPS, grid, gains)


def convolutive_noise(clip: AudioClip, params: ConvolutiveParams,
                      seed: int) -> AudioClip:
    """Filter the signal and its harmonic powers with random notch FIRs.

    Each power x^k gets an independently drawn kernel and a gain decaying
    by `order_gain_decay_db` per order; the result is peak-normalized back
    to the input peak.
    """
    x = clip.samples
    if len(x) == 0:
        raise RecipeError("convolutive noise needs a non-empty clip")
    peak_in = float(np.max(np.abs(x)))
    if peak_in == 0.0:
        return AudioClip(clip.sample_rate_hz, x.copy())

    rng = SplitMix64(seed)
    n_bands = rng.randint(*params.n_bands_range)
    y = np.zeros_like(x)
    for k in range(1, params.nonlinearity_order + 1):
        order_gain = 10.0 ** (-(k - 1) * params.order_gain_decay_db / 20.0)
        h = _random_notch_kernel(rng, params, n_bands, clip.sample_rate_hz)
        y += _convolve_same_length(order_gain * np.power(x, k), h)
    peak_out = float(np.max(np.abs(y)))
    if peak_out > 0.0:
        y *= peak_in / peak_out
    return AudioClip(clip.sample_rate_hz, y)


def impulsive_noise(clip: AudioClip, params: ImpulsiveParams,
                    seed: int) -> AudioClip:
    """Perturb floor(p% * n) seeded positions proportionally to the signal.

    Untouched positions stay bit-identical; silence maps to silence because
    the added noise is multiplicative in the local sample value.
    """
    x = clip.samples
    n = len(x)
    rng = SplitMix64(seed)
    p = rng.uniform(*params.p_percent_range)
    count = int(p / 100.0 * n)
    if count == 0:
        return AudioClip(clip.sample_rate_hz, x.copy())
    # partial Fisher-Yates over the index range, matching manifest sampling
    indices = np.arange(n)
    for i in range(count):
        j = i + rng.randbelow(n - i)
        indices[i], indices[j] = indices[j], indices[i]
    y = x.copy()
    for idx in indices[:count]:
        gain = 10.0 ** (rng.uniform(*params.gain_db_range) / 20.0)
        y[idx] += rng.sign() * gain * x[idx]
    return AudioClip(clip.sample_rate_hz, y)


def apply_recipe(clip: AudioClip, recipe: AugmentationRecipe) -> AudioClip:
    """Dispatch on recipe mode; series runs convolutive then impulsive.

    The impulsive stage of series mode uses seed XOR 1 so the two stages
    draw from unrelated streams.  Output is clamped to [-1, 1]; mode "none"
    is bit-exact identity.
    """
    if recipe.mode == "none":
        return clip
    if recipe.mode == "convolutive":
        out = convolutive_noise(clip, recipe.conv_params, recipe.seed)
    elif recipe.mode == "impulsive":
        out = impulsive_noise(clip, recipe.imp_params, recipe.seed)
    else:
        out = convolutive_noise(clip, recipe.conv_params, recipe.seed)
        out = impulsive_noise(out, recipe.imp_params, recipe.seed ^ 1)
    return AudioClip(out.sample_rate_hz, np.clip(out.samples, -1.0, 1.0))
