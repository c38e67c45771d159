"""Plain-text result tables with deterministic emphasis rules.

Emphasis is rendered by wrapping a cell in asterisks (`*0.810*`).  In the
iteration table the best value per metric column is emphasized; in source
tables any metric at or below 0.60 is emphasized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .metrics import LOW_METRIC_THRESHOLD

MISSING_CELL = "—"  # em dash for absent metrics


class ReportError(ValueError):
    pass


@dataclass(frozen=True)
class IterationResult:
    iteration: int
    frontend_name: str
    task1_ba: float | None = None
    task2_ba: float | None = None
    task3_ba: float | None = None
    itw_ba: float | None = None
    itw_eer_percent: float | None = None

    def __post_init__(self):
        if not 1 <= self.iteration <= 4:
            raise ReportError("iteration must be 1..4")
        metrics = (self.task1_ba, self.task2_ba, self.task3_ba,
                   self.itw_ba, self.itw_eer_percent)
        if all(m is None for m in metrics):
            raise ReportError("at least one metric must be present")


def _fmt(value: float | None, decimals: int) -> str:
    return MISSING_CELL if value is None else f"{value:.{decimals}f}"


def _render_rows(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows
              else len(header[i]) for i in range(len(header))]
    def line(cells):
        return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    sep = "-+-".join("-" * w for w in widths)
    return "\n".join([line(header), sep] + [line(r) for r in rows]) + "\n"


def render_iteration_table(results: list[IterationResult]) -> str:
    """Progression table: one row per (iteration, frontend) result."""
    if not results:
        raise ReportError("no results to render")
    columns = [
        ("Task1", lambda r: r.task1_ba, 3, max),
        ("Task2", lambda r: r.task2_ba, 3, max),
        ("Task3", lambda r: r.task3_ba, 3, max),
        ("ITW BA", lambda r: r.itw_ba, 3, max),
        ("ITW EER", lambda r: r.itw_eer_percent, 2, min),
    ]
    best = {}
    for name, get, _dec, pick in columns:
        values = [get(r) for r in results if get(r) is not None]
        best[name] = pick(values) if values else None

    rows = []
    for r in results:
        cells = [str(r.iteration), r.frontend_name]
        for name, get, dec, _pick in columns:
            value = get(r)
            text = _fmt(value, dec)
            if value is not None and value == best[name]:
                text = f"*{text}*"
            cells.append(text)
        rows.append(cells)
    header = ["Iter", "SSL Model"] + [c[0] for c in columns]
    return _render_rows(header, rows)


@dataclass(frozen=True)
class SourceTableRow:
    source: str
    category: str  # e.g. "pristine", "generated", "processed", "laundered"
    metric: float
    n: int | None = None


def render_source_table(rows: list[SourceTableRow]) -> str:
    """Per-source metric table grouped by category, low rows emphasized."""
    if not rows:
        raise ReportError("no rows to render")
    categories: list[str] = []
    for r in rows:
        if r.category not in categories:
            categories.append(r.category)
    sections = []
    for cat in categories:
        section_rows = []
        for r in rows:
            if r.category != cat:
                continue
            text = f"{r.metric:.2f}"
            if r.metric <= LOW_METRIC_THRESHOLD:
                text = f"*{text}*"
            section_rows.append([r.source, text, "" if r.n is None else str(r.n)])
        header = [cat.capitalize(), "Metric", "N"]
        sections.append(_render_rows(header, section_rows))
    return "\n".join(sections)


def load_reported_results() -> dict:
    """Bundled externally reported benchmark figures (layout fixtures)."""
    text = (resources.files("spoofkit.data")
            .joinpath("reported_results.json").read_text(encoding="utf-8"))
    return json.loads(text)


def bundled_iteration_results() -> list[IterationResult]:
    doc = load_reported_results()
    return [
        IterationResult(
            iteration=row["iteration"],
            frontend_name=row["frontend_name"],
            task1_ba=row.get("task1_ba"),
            task2_ba=row.get("task2_ba"),
            task3_ba=row.get("task3_ba"),
            itw_ba=row.get("itw_ba"),
            itw_eer_percent=row.get("itw_eer_percent"),
        )
        for row in doc["iteration_progression"]
    ]


def bundled_source_rows(which: str) -> list[SourceTableRow]:
    """Source rows for `which` in {"task1_sources", "tasks23_sources"}."""
    doc = load_reported_results()
    if which not in doc:
        raise ReportError(f"unknown source table {which!r}")
    rows = []
    for category, pairs in doc[which].items():
        for source, metric in pairs:
            rows.append(SourceTableRow(source=source, category=category,
                                       metric=metric))
    return rows


def emphasized_values(table: str) -> list[str]:
    """Extract emphasized cell texts from a rendered table (test helper)."""
    out = []
    for token in table.split():
        if len(token) > 2 and token.startswith("*") and token.endswith("*"):
            out.append(token.strip("*"))
    return out
