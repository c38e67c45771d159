"""Source-dataset catalogs: entry types, controlled vocabularies, and TSV I/O.

A catalog is the inventory of every available sample in a source dataset,
before any quota sampling.  The on-disk format is UTF-8 TSV with a required
header line; `#`-prefixed lines are comments.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable

LABELS = ("bonafide", "spoof")

DATASETS = (
    "ASVspoof19LA",
    "MAILABS",
    "MLAAD",
    "CodecFakeA2",
    "FamousFigures",
    "SpoofCeleb",
    "Other",
)

# Controlled source-name vocabulary for the evaluation tasks (real sources,
# generator systems, processing and laundering conditions).
TASK1_REAL_SOURCES = (
    "Mandarin Podcast", "FLEURS German", "VSP Semi-professional",
    "YouTube phonecall", "VSP Documentary", "Arabic Speech Corpus",
    "High Quality Podcasts", "Japanese Shortwave", "Conference",
    "English Podcast", "FLEURS English", "Djeco", "Digitized Cassette",
    "Librivox", "Old Radio", "phone home", "Russian Audiobook",
    "VSP Home Mic", "Radio Drama", "VSP Professional",
)
TASK1_TTS_SYSTEMS = (
    "elevenlabs", "fish", "hierspeech", "kokoro", "parler", "seamless",
    "style", "cartesia", "edge", "f5", "metavoice", "openai", "zonos",
)
TASK2_PROCESSED_SOURCES = (
    "aac 16k", "encodec", "focalcodec", "mp3-aac-mp3 16k", "mp3-aac 16k",
    "mp3 16k", "mp3 VBR", "noise", "opus 16k", "phone audio", "pitch shift",
    "resample down/up", "semanticodec", "snac", "speech filter",
    "time stretch", "vorbis 16k",
)
TASK3_LAUNDERED_SOURCES = ("car", "played", "played reverb car", "reverb")

CATALOG_COLUMNS = (
    "sample_id", "path", "label", "dataset", "language",
    "source_system", "duration_s",
)


class CatalogError(ValueError):
    """Malformed catalog content; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class CatalogEntry:
    """One audio sample in a source dataset."""

    sample_id: str
    path: str
    label: str
    dataset: str
    language: str
    source_system: str
    duration_s: float | None = None

    def __post_init__(self):
        if not self.sample_id:
            raise CatalogError("empty sample_id")
        if self.label not in LABELS:
            raise CatalogError(f"unknown label {self.label!r}")
        if self.dataset not in DATASETS:
            raise CatalogError(f"unknown dataset {self.dataset!r}")
        if self.label == "spoof" and not self.source_system:
            raise CatalogError(
                f"spoof entry {self.sample_id!r} has empty source_system"
            )
        if self.duration_s is not None and self.duration_s < 0:
            raise CatalogError(
                f"entry {self.sample_id!r} has negative duration"
            )

    def sort_key(self) -> tuple[str, str]:
        return (self.dataset, self.sample_id)


class Catalog:
    """Immutable collection of catalog entries with unique sample ids."""

    def __init__(self, entries: Iterable[CatalogEntry]):
        self.entries: list[CatalogEntry] = list(entries)
        self.by_id: dict[str, CatalogEntry] = {}
        for e in self.entries:
            if e.sample_id in self.by_id:
                raise CatalogError(f"duplicate sample_id {e.sample_id!r}")
            self.by_id[e.sample_id] = e

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def subset(self, dataset: str) -> "Catalog":
        return Catalog(e for e in self.entries if e.dataset == dataset)


def _parse_duration(token: str, line: int) -> float | None:
    if token == "":
        return None
    try:
        return float(token)
    except ValueError:
        raise CatalogError(f"bad duration_s {token!r}", line) from None


def parse_catalog(text: str) -> Catalog:
    """Parse catalog TSV text; raises CatalogError with line diagnostics."""
    entries = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not seen_header:
            if tuple(fields) != CATALOG_COLUMNS:
                raise CatalogError(
                    f"bad header, expected {list(CATALOG_COLUMNS)}", lineno
                )
            seen_header = True
            continue
        if len(fields) != len(CATALOG_COLUMNS):
            raise CatalogError(
                f"expected {len(CATALOG_COLUMNS)} columns, got {len(fields)}",
                lineno,
            )
        sample_id, path, label, dataset, language, source_system, dur = fields
        try:
            entry = CatalogEntry(
                sample_id=sample_id,
                path=path,
                label=label,
                dataset=dataset,
                language=language,
                source_system=source_system,
                duration_s=_parse_duration(dur, lineno),
            )
        except CatalogError as exc:
            raise CatalogError(str(exc), lineno) from None
        entries.append(entry)
    if not seen_header:
        raise CatalogError("missing header line")
    return Catalog(entries)


def load_catalog(path) -> Catalog:
    """Load a catalog from a TSV file."""
    with io.open(path, "r", encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def format_duration(duration_s: float | None) -> str:
    return "" if duration_s is None else repr(duration_s)


def serialize_catalog(catalog: Catalog) -> str:
    """Render a catalog back to TSV, sorted canonically."""
    lines = ["\t".join(CATALOG_COLUMNS)]
    for e in sorted(catalog.entries, key=CatalogEntry.sort_key):
        lines.append("\t".join([
            e.sample_id, e.path, e.label, e.dataset, e.language,
            e.source_system, format_duration(e.duration_s),
        ]))
    return "\n".join(lines) + "\n"
