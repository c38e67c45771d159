"""Deterministic manifest construction, validation, and TSV round-trip.

A manifest is the concrete, reproducible realization of a composition
preset: exactly which samples land in train and val.  Candidates are always
canonically sorted by (dataset, sample_id) before seeded Fisher-Yates
selection, so the result is independent of catalog row order and platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .catalog import (
    CATALOG_COLUMNS,
    Catalog,
    CatalogEntry,
    CatalogError,
    format_duration,
)
from .presets import CompositionPreset, MlaadLanguageRule, QuotaLine
from .sampling import SplitMix64, derive_seed, fnv1a64, sample_without_replacement

MANIFEST_COLUMNS = CATALOG_COLUMNS + ("split", "iteration", "selection_seed")


class ManifestError(ValueError):
    pass


class QuotaShortfallError(ManifestError):
    """A quota line asked for more eligible samples than the catalog holds."""

    def __init__(self, description: str, wanted: int, available: int):
        self.description = description
        self.wanted = wanted
        self.available = available
        super().__init__(
            f"quota {description}: wanted {wanted}, only {available} eligible "
            f"(shortfall {wanted - available})"
        )


@dataclass(frozen=True)
class ManifestEntry:
    sample_id: str
    path: str
    label: str
    dataset: str
    language: str
    source_system: str
    duration_s: float | None
    split: str
    iteration: int
    selection_seed: int

    @classmethod
    def from_catalog(cls, entry: CatalogEntry, split: str, iteration: int,
                     selection_seed: int) -> "ManifestEntry":
        return cls(
            sample_id=entry.sample_id,
            path=entry.path,
            label=entry.label,
            dataset=entry.dataset,
            language=entry.language,
            source_system=entry.source_system,
            duration_s=entry.duration_s,
            split=split,
            iteration=iteration,
            selection_seed=selection_seed,
        )

    def sort_key(self) -> tuple[str, str]:
        return (self.dataset, self.sample_id)


@dataclass
class Manifest:
    iteration: int
    seed: int
    entries: list[ManifestEntry]

    def split_entries(self, split: str) -> list[ManifestEntry]:
        return [e for e in self.entries if e.split == split]

    def counts(self) -> dict[str, int]:
        out = {
            "train_total": 0, "train_bonafide": 0, "train_spoof": 0,
            "val_total": 0, "val_bonafide": 0, "val_spoof": 0,
        }
        for e in self.entries:
            out[f"{e.split}_total"] += 1
            out[f"{e.split}_{e.label}"] += 1
        return out


def _canonical_candidates(catalog: Catalog) -> list[CatalogEntry]:
    return sorted(catalog.entries, key=CatalogEntry.sort_key)


def _eligible(entry: CatalogEntry, quota: QuotaLine) -> bool:
    if entry.dataset != quota.dataset or entry.label != quota.label:
        return False
    if quota.language != "any" and entry.language != quota.language:
        return False
    if quota.systems is not None and entry.source_system not in quota.systems:
        return False
    return True


def build_mlaad_split(
    catalog: Catalog,
    rules: dict[str, MlaadLanguageRule],
    seed: int,
) -> tuple[list[CatalogEntry], list[CatalogEntry]]:
    """Split the MLAAD portion of a catalog by per-language system rules.

    For each language, a seeded draw reserves `val_systems` distinct systems
    for validation; validation samples come only from those systems and
    training samples only from the rest, so the system sets stay disjoint.
    Languages are processed in sorted order with per-language sub-seeds.
    """
    entries = [e for e in _canonical_candidates(catalog) if e.dataset == "MLAAD"]
    by_lang: dict[str, list[CatalogEntry]] = {}
    for e in entries:
        by_lang.setdefault(e.language, []).append(e)

    train: list[CatalogEntry] = []
    val: list[CatalogEntry] = []
    for lang in sorted(rules):
        rule = rules[lang]
        if lang not in by_lang:
            raise ManifestError(f"MLAAD language {lang!r} absent from catalog")
        lang_entries = by_lang[lang]
        systems = sorted({e.source_system for e in lang_entries})
        rng = SplitMix64(derive_seed(seed, fnv1a64(lang)))

        if rule.val_systems == "all":
            val_systems = set(systems)
        else:
            needed = rule.val_systems + (1 if rule.train_count > 0 else 0)
            if len(systems) < needed:
                raise ManifestError(
                    f"MLAAD language {lang!r}: {len(systems)} distinct systems, "
                    f"need at least {needed}"
                )
            val_systems = set(
                sample_without_replacement(systems, rule.val_systems, rng)
            )

        val_pool = [e for e in lang_entries if e.source_system in val_systems]
        train_pool = [e for e in lang_entries if e.source_system not in val_systems]
        if len(val_pool) < rule.val_count:
            raise QuotaShortfallError(
                f"MLAAD/{lang}/val", rule.val_count, len(val_pool)
            )
        if len(train_pool) < rule.train_count:
            raise QuotaShortfallError(
                f"MLAAD/{lang}/train", rule.train_count, len(train_pool)
            )
        val.extend(sample_without_replacement(val_pool, rule.val_count, rng))
        train.extend(sample_without_replacement(train_pool, rule.train_count, rng))
    return train, val


def build_manifest(catalog: Catalog, preset: CompositionPreset, seed: int) -> Manifest:
    """Build a manifest by seeded sampling of every quota line.

    Quota lines are processed in preset order; a sample already selected by
    an earlier line is no longer eligible, which keeps train and val disjoint
    even for overlapping quotas.
    """
    candidates = _canonical_candidates(catalog)
    used: set[str] = set()
    selected: list[ManifestEntry] = []

    for index, quota in enumerate(preset.quotas):
        pool = [
            e for e in candidates
            if e.sample_id not in used and _eligible(e, quota)
        ]
        if len(pool) < quota.count:
            raise QuotaShortfallError(quota.describe(), quota.count, len(pool))
        rng = SplitMix64(derive_seed(seed, index))
        for e in sample_without_replacement(pool, quota.count, rng):
            used.add(e.sample_id)
            selected.append(
                ManifestEntry.from_catalog(e, quota.split, preset.iteration, seed)
            )

    if preset.mlaad_rules:
        remaining = Catalog(
            e for e in candidates
            if e.dataset == "MLAAD" and e.sample_id not in used
        )
        mlaad_seed = derive_seed(seed, fnv1a64("mlaad_rules"))
        train, val = build_mlaad_split(remaining, preset.mlaad_rules, mlaad_seed)
        for split, part in (("train", train), ("val", val)):
            for e in part:
                used.add(e.sample_id)
                selected.append(
                    ManifestEntry.from_catalog(e, split, preset.iteration, seed)
                )

    selected.sort(key=ManifestEntry.sort_key)
    return Manifest(iteration=preset.iteration, seed=seed, entries=selected)


# --- validation -----------------------------------------------------------

@dataclass(frozen=True)
class QuotaCheck:
    description: str
    expected: int
    actual: int

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class ValidationReport:
    checks: list[QuotaCheck]
    arithmetic_notes: list[str]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[QuotaCheck]:
        return [c for c in self.checks if not c.passed]


def validate_manifest(manifest: Manifest, preset: CompositionPreset) -> ValidationReport:
    """Compare a manifest against its preset's quotas and declared totals.

    Pure: never mutates the manifest.  Internal inconsistencies in the
    declared totals (component quotas not summing to them) are reported as
    arithmetic notes, not pass/fail lines.
    """
    checks: list[QuotaCheck] = []
    notes: list[str] = []

    for quota in preset.quotas:
        actual = sum(
            1 for e in manifest.entries
            if e.split == quota.split
            and _eligible_manifest(e, quota)
        )
        checks.append(QuotaCheck(quota.describe(), quota.count, actual))

    if preset.mlaad_rules:
        mlaad = [e for e in manifest.entries if e.dataset == "MLAAD"]
        for lang in sorted(preset.mlaad_rules):
            rule = preset.mlaad_rules[lang]
            for split, expected in (("train", rule.train_count),
                                    ("val", rule.val_count)):
                actual = sum(
                    1 for e in mlaad
                    if e.language == lang and e.split == split
                )
                checks.append(QuotaCheck(f"MLAAD/{lang}/{split}", expected, actual))
            train_sys = {e.source_system for e in mlaad
                         if e.language == lang and e.split == "train"}
            val_sys = {e.source_system for e in mlaad
                       if e.language == lang and e.split == "val"}
            overlap = train_sys & val_sys
            checks.append(
                QuotaCheck(f"MLAAD/{lang}/system-overlap", 0, len(overlap))
            )

    train_ids = {e.sample_id for e in manifest.entries if e.split == "train"}
    val_ids = {e.sample_id for e in manifest.entries if e.split == "val"}
    checks.append(QuotaCheck("train/val id overlap", 0, len(train_ids & val_ids)))

    declared = preset.declared_totals
    if declared is not None:
        sums = preset.quota_sums()
        actuals = manifest.counts()
        for key in sums:
            want = getattr(declared, key)
            if want is None:
                continue
            if sums[key] == want:
                checks.append(QuotaCheck(f"declared {key}", want, actuals[key]))
            else:
                notes.append(
                    f"declared {key} is {want} but component quotas sum to "
                    f"{sums[key]} (manifest has {actuals[key]}); declared "
                    f"totals kept as the authoritative target"
                )
    return ValidationReport(checks=checks, arithmetic_notes=notes)


def _eligible_manifest(e: ManifestEntry, quota: QuotaLine) -> bool:
    if e.dataset != quota.dataset or e.label != quota.label:
        return False
    if quota.language != "any" and e.language != quota.language:
        return False
    if quota.systems is not None and e.source_system not in quota.systems:
        return False
    return True


# --- serialization --------------------------------------------------------

def serialize_manifest(manifest: Manifest) -> str:
    """Render a manifest as TSV with canonical (dataset, sample_id) order."""
    lines = ["\t".join(MANIFEST_COLUMNS)]
    for e in sorted(manifest.entries, key=ManifestEntry.sort_key):
        lines.append("\t".join([
            e.sample_id, e.path, e.label, e.dataset, e.language,
            e.source_system, format_duration(e.duration_s),
            e.split, str(e.iteration), str(e.selection_seed),
        ]))
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> Manifest:
    entries: list[ManifestEntry] = []
    seen_header = False
    iteration = None
    seed = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not seen_header:
            if tuple(fields) != MANIFEST_COLUMNS:
                raise ManifestError(
                    f"line {lineno}: bad header, expected {list(MANIFEST_COLUMNS)}"
                )
            seen_header = True
            continue
        if len(fields) != len(MANIFEST_COLUMNS):
            raise ManifestError(
                f"line {lineno}: expected {len(MANIFEST_COLUMNS)} columns, "
                f"got {len(fields)}"
            )
        (sample_id, path, label, dataset, language, system, dur,
         split, it, sel_seed) = fields
        if split not in ("train", "val"):
            raise ManifestError(f"line {lineno}: unknown split {split!r}")
        try:
            base = CatalogEntry(
                sample_id=sample_id, path=path, label=label, dataset=dataset,
                language=language, source_system=system,
                duration_s=float(dur) if dur else None,
            )
            iteration = int(it)
            seed = int(sel_seed)
        except (CatalogError, ValueError) as exc:
            raise ManifestError(f"line {lineno}: {exc}") from None
        entries.append(
            ManifestEntry.from_catalog(base, split, iteration, seed)
        )
    if not seen_header:
        raise ManifestError("missing header line")
    seen: set[str] = set()
    dupes: set[str] = set()
    for e in entries:
        if e.sample_id in seen:
            dupes.add(e.sample_id)
        seen.add(e.sample_id)
    if dupes:
        raise ManifestError(f"duplicate sample_id in manifest: {sorted(dupes)[:5]}")
    return Manifest(
        iteration=iteration if iteration is not None else 1,
        seed=seed if seed is not None else 0,
        entries=entries,
    )


def load_manifest(path) -> Manifest:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_manifest(fh.read())


def write_manifest(manifest: Manifest, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_manifest(manifest))
