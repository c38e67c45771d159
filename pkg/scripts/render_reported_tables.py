#!/usr/bin/env python3
"""Render the bundled externally reported benchmark figures as text tables.

These numbers ship with the package purely as layout fixtures for the
report renderer; nothing here is computed from audio.
"""

from spoofkit.reporting import (
    bundled_iteration_results,
    bundled_source_rows,
    render_iteration_table,
    render_source_table,
)


def main():
    print(render_iteration_table(bundled_iteration_results()))
    print(render_source_table(bundled_source_rows("task1_sources")))
    print(render_source_table(bundled_source_rows("tasks23_sources")))


if __name__ == "__main__":
    main()
