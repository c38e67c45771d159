"""Audio decoding, resampling, and fixed-length segmenting.

Native ingestion is RIFF/WAVE only (16-bit PCM or 32-bit IEEE float, mono
or stereo); anything else must be pre-converted.  Output is always mono
float at a known rate, amplitudes nominally in [-1, 1].
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np
from scipy.signal import firwin

from .sampling import SplitMix64

TARGET_RATE_HZ = 16000

# Resampler design: Kaiser-windowed sinc, fixed taps per polyphase branch,
# cutoff at 90% of the narrower Nyquist.
_TAPS_PER_PHASE = 64
_KAISER_BETA = 8.6
_CUTOFF_FRACTION = 0.9


class AudioError(ValueError):
    pass


@dataclass
class AudioClip:
    """Mono waveform with a known sample rate; samples are float64."""

    sample_rate_hz: int
    samples: np.ndarray

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise AudioError("sample_rate_hz must be positive")
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise AudioError("samples must be one-dimensional (mono)")
        if self.samples.size and not np.all(np.isfinite(self.samples)):
            raise AudioError("samples must be finite")

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz


@dataclass(frozen=True)
class SegmentSpec:
    """Fixed-length segmenting policy (pad short inputs, crop long ones)."""

    target_length_s: float
    pad_mode: str = "repeat"        # "repeat" | "zero"
    crop_mode: str = "head"         # "head" | "seeded_random"
    crop_seed: int = 0

    def __post_init__(self):
        if self.target_length_s <= 0:
            raise AudioError("target_length_s must be positive")
        if self.pad_mode not in ("repeat", "zero"):
            raise AudioError(f"unknown pad_mode {self.pad_mode!r}")
        if self.crop_mode not in ("head", "seeded_random"):
            raise AudioError(f"unknown crop_mode {self.crop_mode!r}")


# --- WAV I/O --------------------------------------------------------------

_FMT_PCM = 1
_FMT_FLOAT = 3


def decode_wav(data: bytes) -> AudioClip:
    """Decode a RIFF/WAVE file to a mono clip.

    16-bit PCM is scaled by 1/32768; stereo is down-mixed by channel mean.
    """
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise AudioError("not a RIFF/WAVE file")
    pos = 12
    fmt = None
    payload = None
    while pos + 8 <= len(data):
        cid = data[pos:pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8:pos + 8 + size]
        if len(body) < size:
            raise AudioError(f"truncated {cid.decode('ascii', 'replace')} chunk")
        if cid == b"fmt ":
            if size < 16:
                raise AudioError("truncated fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned
    if fmt is None:
        raise AudioError("missing fmt chunk")
    if payload is None:
        raise AudioError("missing data chunk")

    format_code, channels, rate, _byte_rate, _block_align, bits = fmt
    if channels == 0:
        raise AudioError("zero channels")
    if channels > 2:
        raise AudioError(f"unsupported channel count {channels}")
    if format_code == _FMT_PCM and bits == 16:
        usable = len(payload) - len(payload) % (2 * channels)
        raw = np.frombuffer(payload[:usable], dtype="<i2").astype(np.float64)
        samples = raw / 32768.0
    elif format_code == _FMT_FLOAT and bits == 32:
        usable = len(payload) - len(payload) % (4 * channels)
        samples = np.frombuffer(payload[:usable], dtype="<f4").astype(np.float64)
    else:
        raise AudioError(
            f"unsupported codec (format {format_code}, {bits}-bit); "
            "only PCM 16-bit and IEEE float 32-bit are supported"
        )
    if channels == 2:
        samples = samples.reshape(-1, 2).mean(axis=1)
    return AudioClip(sample_rate_hz=rate, samples=samples)


def encode_wav_float32(clip: AudioClip) -> bytes:
    """Encode a clip as mono IEEE float-32 WAV."""
    payload = clip.samples.astype("<f4").tobytes()
    rate = clip.sample_rate_hz
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, _FMT_FLOAT, 1, rate, rate * 4, 4, 32,
        b"data", len(payload),
    )
    return header + payload


# --- resampling -----------------------------------------------------------

def _design_kernel(up: int, down: int) -> np.ndarray:
    # Cutoff normalized to the Nyquist of the conceptual upsampled rate.
    cutoff = _CUTOFF_FRACTION * min(1.0 / up, 1.0 / down)
    taps = _TAPS_PER_PHASE * up
    return firwin(taps, cutoff, window=("kaiser", _KAISER_BETA)) * up


def resample(clip: AudioClip, target_hz: int) -> AudioClip:
    """Polyphase windowed-sinc resampling to `target_hz`.

    Identity (bit-exact copy) when the target equals the source rate.
    Output length is round(n * target / source).
    """
    if target_hz <= 0:
        raise AudioError("target_hz must be positive")
    src = clip.sample_rate_hz
    if target_hz == src:
        return AudioClip(src, clip.samples.copy())
    g = math.gcd(src, target_hz)
    up, down = target_hz // g, src // g
    x = clip.samples
    n = len(x)
    out_len = (2 * n * up + down) // (2 * down)  # round(n * up / down)
    if n == 0:
        return AudioClip(target_hz, np.zeros(0))

    h = _design_kernel(up, down)
    delay = (len(h) - 1) // 2
    m = np.arange(out_len)
    q = m * down + delay          # position in the conceptual upsampled stream
    phase = q % up
    base = (q - phase) // up      # newest input sample under the kernel

    out = np.empty(out_len)
    pad = _TAPS_PER_PHASE
    xp = np.concatenate([np.zeros(pad), x, np.zeros(pad)])
    for ph in range(up):
        sel = np.nonzero(phase == ph)[0]
        if sel.size == 0:
            continue
        sub = h[ph::up]
        # full convolution of x with this phase's sub-kernel, evaluated at base
        conv = np.convolve(xp, sub)
        out[sel] = conv[base[sel] + pad]
    return AudioClip(target_hz, out)


# --- fixed-length segmenting ---------------------------------------------

def fix_length(clip: AudioClip, spec: SegmentSpec) -> AudioClip:
    """Pad or crop a clip to exactly target_length_s * sample_rate samples."""
    target = int(round(spec.target_length_s * clip.sample_rate_hz))
    x = clip.samples
    n = len(x)
    if n == target:
        return AudioClip(clip.sample_rate_hz, x.copy())
    if n < target:
        if spec.pad_mode == "zero":
            out = np.concatenate([x, np.zeros(target - n)])
        else:
            if n == 0:
                raise AudioError("cannot repeat-pad an empty clip")
            reps = -(-target // n)  # ceil
            out = np.tile(x, reps)[:target]
        return AudioClip(clip.sample_rate_hz, out)
    if spec.crop_mode == "head":
        offset = 0
    else:
        rng = SplitMix64(spec.crop_seed)
        offset = rng.randbelow(n - target + 1)
    return AudioClip(clip.sample_rate_hz, x[offset:offset + target].copy())
