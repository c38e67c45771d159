"""spoofkit: corpus integration and evaluation toolkit for audio deepfake
detection.

Builds deterministic multilingual train/validation manifests from dataset
catalogs, preprocesses and augments raw audio, and scores detector backends
with balanced accuracy, EER, and per-source breakdowns.
"""

from .audio import AudioClip, SegmentSpec, decode_wav, encode_wav_float32, fix_length, resample
from .catalog import Catalog, CatalogEntry, load_catalog, parse_catalog, serialize_catalog
from .manifest import (
    Manifest,
    ManifestEntry,
    build_manifest,
    build_mlaad_split,
    parse_manifest,
    serialize_manifest,
    validate_manifest,
)
from .metrics import (
    ScoreRecord,
    balanced_accuracy,
    compute_eer,
    per_source_metrics,
    reference_scorer,
    threshold_sweep,
)
from .presets import CompositionPreset, load_bundled_preset, load_preset
from .rawboost import (
    AugmentationRecipe,
    ConvolutiveParams,
    ImpulsiveParams,
    apply_recipe,
    convolutive_noise,
    impulsive_noise,
)

__version__ = "0.1.0"

__all__ = [
    "AudioClip", "SegmentSpec", "decode_wav", "encode_wav_float32",
    "fix_length", "resample",
    "Catalog", "CatalogEntry", "load_catalog", "parse_catalog",
    "serialize_catalog",
    "Manifest", "ManifestEntry", "build_manifest", "build_mlaad_split",
    "parse_manifest", "serialize_manifest", "validate_manifest",
    "ScoreRecord", "balanced_accuracy", "compute_eer", "per_source_metrics",
    "reference_scorer", "threshold_sweep",
    "CompositionPreset", "load_bundled_preset", "load_preset",
    "AugmentationRecipe", "ConvolutiveParams", "ImpulsiveParams",
    "apply_recipe", "convolutive_noise", "impulsive_noise",
]
