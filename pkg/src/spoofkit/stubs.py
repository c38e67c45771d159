"""Synthetic stub catalogs with the cardinalities the bundled presets need.

Real corpora are user-supplied; these generators exist so manifests,
splits, and counts can be exercised hermetically in tests and demos.
"""

from __future__ import annotations

from .catalog import Catalog, CatalogEntry
from .presets import CompositionPreset, MlaadLanguageRule

FAMOUS_SPEAKERS = ("donald_trump", "jd_vance", "joe_biden", "kamala_harris")
FAMOUS_TTS = ("donald_trump", "jd_vance")  # spoof coverage per speaker rule


def _entries(dataset: str, label: str, count: int, language: str = "und",
             system: str | None = None, prefix: str = "") -> list[CatalogEntry]:
    system = system if system is not None else (
        "stub_tts" if label == "spoof" else "stub_source"
    )
    tag = prefix or f"{dataset}_{label}_{language}_{system}"
    return [
        CatalogEntry(
            sample_id=f"{tag}_{i:06d}",
            path=f"{dataset}/{tag}_{i:06d}.wav",
            label=label,
            dataset=dataset,
            language=language,
            source_system=system,
        )
        for i in range(count)
    ]


def mlaad_stub_entries(rules: dict[str, MlaadLanguageRule]) -> list[CatalogEntry]:
    """MLAAD stub with enough systems/samples for any seeded rule draw.

    Every system gets the same sample count, sized so that any subset of
    `val_systems` systems covers val_count and the rest covers train_count.
    English gets 36 distinct systems to mirror the published pool.
    """
    entries: list[CatalogEntry] = []
    for lang in sorted(rules):
        rule = rules[lang]
        if lang == "en":
            n_systems = 36
        elif rule.val_systems == "all":
            n_systems = 3
        else:
            n_systems = max(int(rule.val_systems) + 3, 4)
        if rule.val_systems == "all":
            val_sys = n_systems
        else:
            val_sys = int(rule.val_systems)
        train_sys = n_systems - val_sys
        per_system = 1
        if val_sys:
            per_system = max(per_system, -(-rule.val_count // val_sys))
        if train_sys:
            per_system = max(per_system, -(-rule.train_count // train_sys))
        per_system += 2  # slack so sampling is a strict subset
        for s in range(n_systems):
            entries.extend(_entries(
                "MLAAD", "spoof", per_system, language=lang,
                system=f"{lang}_tts_{s:02d}",
                prefix=f"mlaad_{lang}_{s:02d}",
            ))
    return entries


def famous_figures_stub_entries(n_bonafide: int, n_spoof: int) -> list[CatalogEntry]:
    """Bonafide across several speakers; spoof only for the two cloneable ones."""
    entries: list[CatalogEntry] = []
    per = -(-n_bonafide // len(FAMOUS_SPEAKERS))
    for speaker in FAMOUS_SPEAKERS:
        entries.extend(_entries(
            "FamousFigures", "bonafide", per, language="en", system=speaker,
            prefix=f"ff_bona_{speaker}",
        ))
    per = -(-n_spoof // len(FAMOUS_TTS))
    for speaker in FAMOUS_TTS:
        entries.extend(_entries(
            "FamousFigures", "spoof", per, language="en", system=speaker,
            prefix=f"ff_spoof_{speaker}",
        ))
    return entries


def stub_catalog_for_preset(preset: CompositionPreset, slack: int = 50) -> Catalog:
    """Catalog with enough eligible entries for every quota of a preset."""
    entries: list[CatalogEntry] = []
    needed: dict[tuple[str, str], int] = {}
    famous = {"bonafide": 0, "spoof": 0}
    for q in preset.quotas:
        if q.dataset == "FamousFigures":
            famous[q.label] += q.count
        else:
            lang = "und" if q.language == "any" else q.language
            key = (q.dataset, q.label, lang)
            needed[key] = needed.get(key, 0) + q.count
    for (dataset, label, lang), count in sorted(needed.items()):
        entries.extend(_entries(dataset, label, count + slack, language=lang))
    if famous["bonafide"] or famous["spoof"]:
        entries.extend(famous_figures_stub_entries(
            famous["bonafide"] + slack, famous["spoof"] + slack,
        ))
    if preset.mlaad_rules:
        entries.extend(mlaad_stub_entries(preset.mlaad_rules))
    return Catalog(entries)
