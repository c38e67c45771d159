"""Composition presets: per-dataset quotas, MLAAD split rules, declared totals.

Presets are plain JSON files.  The four bundled iteration presets encode the
published multilingual training compositions; `load_bundled_preset("iter1")`
etc. return them ready to feed into manifest building.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .catalog import DATASETS, LABELS

BUNDLED_PRESETS = ("iter1", "iter2", "iter3", "iter4")


class PresetError(ValueError):
    pass


@dataclass(frozen=True)
class QuotaLine:
    """One sampling quota: exactly `count` entries matching the filters."""

    dataset: str
    label: str
    language: str  # lowercase ISO-639-1 code or "any"
    split: str     # "train" | "val"
    count: int
    systems: tuple[str, ...] | None = None  # eligible source systems, or any

    def __post_init__(self):
        if self.dataset not in DATASETS:
            raise PresetError(f"unknown dataset {self.dataset!r}")
        if self.label not in LABELS:
            raise PresetError(f"unknown label {self.label!r}")
        if self.split not in ("train", "val"):
            raise PresetError(f"unknown split {self.split!r}")
        if self.count < 0:
            raise PresetError("quota count must be >= 0")

    def describe(self) -> str:
        tag = f"{self.dataset}/{self.label}/{self.language}/{self.split}"
        if self.systems is not None:
            tag += f"/systems={','.join(self.systems)}"
        return tag


@dataclass(frozen=True)
class MlaadLanguageRule:
    """Per-language system-level split rule for the MLAAD partition.

    `val_systems` is the number of distinct systems reserved for validation,
    or "all" to route the whole language to validation.
    """

    val_systems: int | str
    val_count: int
    train_count: int

    def __post_init__(self):
        if isinstance(self.val_systems, str) and self.val_systems != "all":
            raise PresetError(f"bad val_systems {self.val_systems!r}")
        if isinstance(self.val_systems, int) and self.val_systems < 0:
            raise PresetError("val_systems must be >= 0")
        if self.val_count < 0 or self.train_count < 0:
            raise PresetError("rule counts must be >= 0")


@dataclass(frozen=True)
class DeclaredTotals:
    """Published totals to validate against; None means not declared."""

    train_total: int | None = None
    train_bonafide: int | None = None
    train_spoof: int | None = None
    val_total: int | None = None
    val_bonafide: int | None = None
    val_spoof: int | None = None


@dataclass(frozen=True)
class CompositionPreset:
    iteration: int
    segment_length_s: int
    quotas: tuple[QuotaLine, ...]
    mlaad_rules: dict[str, MlaadLanguageRule] | None = None
    declared_totals: DeclaredTotals | None = None
    name: str = ""

    def __post_init__(self):
        if not 1 <= self.iteration <= 4:
            raise PresetError(f"iteration must be 1..4, got {self.iteration}")
        if self.segment_length_s <= 0:
            raise PresetError("segment_length_s must be positive")

    def quota_sums(self) -> dict[str, int]:
        """Sum quota lines (plus MLAAD rule counts) per split and label."""
        sums = {
            "train_total": 0, "train_bonafide": 0, "train_spoof": 0,
            "val_total": 0, "val_bonafide": 0, "val_spoof": 0,
        }
        for q in self.quotas:
            sums[f"{q.split}_total"] += q.count
            sums[f"{q.split}_{q.label}"] += q.count
        if self.mlaad_rules:
            for rule in self.mlaad_rules.values():
                sums["train_total"] += rule.train_count
                sums["train_spoof"] += rule.train_count
                sums["val_total"] += rule.val_count
                sums["val_spoof"] += rule.val_count
        return sums


def preset_from_dict(doc: dict, name: str = "") -> CompositionPreset:
    try:
        quotas = tuple(
            QuotaLine(
                dataset=q["dataset"],
                label=q["label"],
                language=q.get("language", "any"),
                split=q["split"],
                count=int(q["count"]),
                systems=tuple(q["systems"]) if q.get("systems") else None,
            )
            for q in doc["quotas"]
        )
        rules = None
        if doc.get("mlaad_rules"):
            rules = {
                lang: MlaadLanguageRule(
                    val_systems=r["val_systems"],
                    val_count=int(r["val_count"]),
                    train_count=int(r["train_count"]),
                )
                for lang, r in doc["mlaad_rules"].items()
            }
        declared = None
        if doc.get("declared_totals"):
            declared = DeclaredTotals(**doc["declared_totals"])
        return CompositionPreset(
            iteration=int(doc["iteration"]),
            segment_length_s=int(doc["segment_length_s"]),
            quotas=quotas,
            mlaad_rules=rules,
            declared_totals=declared,
            name=name or doc.get("name", ""),
        )
    except KeyError as exc:
        raise PresetError(f"preset missing field {exc}") from None


def load_preset(path) -> CompositionPreset:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return preset_from_dict(doc, name=str(path))


def load_bundled_preset(name: str) -> CompositionPreset:
    if name not in BUNDLED_PRESETS:
        raise PresetError(
            f"unknown bundled preset {name!r}; have {list(BUNDLED_PRESETS)}"
        )
    text = resources.files("spoofkit.data").joinpath(f"{name}.json").read_text(
        encoding="utf-8"
    )
    return preset_from_dict(json.loads(text), name=name)


def resolve_preset(spec: str) -> CompositionPreset:
    """Accept either a bundled preset id or a path to a preset file."""
    if spec in BUNDLED_PRESETS:
        return load_bundled_preset(spec)
    return load_preset(spec)
