#!/usr/bin/env python3
"""Write a synthetic stub catalog sized for a bundled or custom preset.

Useful for exercising manifest builds without any real corpora on disk:

    python scripts/make_stub_catalog.py --preset iter2 --out /tmp/catalog.tsv
"""

import argparse

from spoofkit.catalog import serialize_catalog
from spoofkit.presets import resolve_preset
from spoofkit.stubs import stub_catalog_for_preset


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", required=True,
                        help="bundled preset id (iter1..iter4) or JSON file")
    parser.add_argument("--slack", type=int, default=50,
                        help="extra entries per quota beyond the exact need")
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    preset = resolve_preset(args.preset)
    catalog = stub_catalog_for_preset(preset, slack=args.slack)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_catalog(catalog))
    print(f"wrote {len(catalog.entries)} stub entries to {args.out}")


if __name__ == "__main__":
    main()
