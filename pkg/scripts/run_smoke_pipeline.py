#!/usr/bin/env python3
"""End-to-end smoke run in a scratch directory.

Generates a tiny separable corpus (low-frequency tones as bonafide,
high-frequency tones as spoof), then drives the CLI through manifest
build, preprocessing, reference scoring, and evaluation.  Expected
outcome: balanced accuracy 1.000 and EER 0.00%.
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

import numpy as np

from spoofkit.audio import AudioClip, encode_wav_float32
from spoofkit.catalog import Catalog, CatalogEntry, serialize_catalog
from spoofkit.cli import main as cli_main


def make_corpus(root: Path, n_per_class: int):
    entries = []
    t = np.arange(32000) / 16000.0
    for label, freq in (("bonafide", 250.0), ("spoof", 6500.0)):
        for i in range(n_per_class):
            sid = f"smoke_{label}_{i:04d}"
            rel = f"smoke/{sid}.wav"
            entries.append(CatalogEntry(
                sample_id=sid,
                path=rel,
                label=label,
                dataset="ASVspoof19LA",
                language="und",
                source_system="smoke_tts" if label == "spoof" else "smoke_mic",
            ))
            samples = 0.4 * np.sin(2 * np.pi * freq * t)
            path = root / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(encode_wav_float32(AudioClip(16000, samples)))
    return Catalog(entries)


def run(workdir: Path, n_per_class: int, seed: int) -> int:
    audio_root = workdir / "audio"
    catalog = make_corpus(audio_root, n_per_class)
    catalog_path = workdir / "catalog.tsv"
    catalog_path.write_text(serialize_catalog(catalog), encoding="utf-8")

    preset_path = workdir / "preset.json"
    preset_path.write_text(json.dumps({
        "iteration": 1,
        "segment_length_s": 4,
        "quotas": [
            {"dataset": "ASVspoof19LA", "label": "bonafide",
             "language": "any", "split": "train", "count": n_per_class},
            {"dataset": "ASVspoof19LA", "label": "spoof",
             "language": "any", "split": "train", "count": n_per_class},
        ],
    }), encoding="utf-8")

    steps = [
        ["manifest", "build", "--preset", str(preset_path),
         "--catalog", str(catalog_path), "--seed", str(seed),
         "--out", str(workdir / "manifest.tsv")],
        ["manifest", "validate", "--preset", str(preset_path),
         "--manifest", str(workdir / "manifest.tsv")],
        ["preprocess", "--manifest", str(workdir / "manifest.tsv"),
         "--audio-root", str(audio_root),
         "--out-dir", str(workdir / "segments"),
         "--segment-seconds", "4", "--seed", str(seed)],
        ["score", "--manifest", str(workdir / "manifest.tsv"),
         "--segments-dir", str(workdir / "segments"),
         "--out", str(workdir / "scores.tsv")],
        ["evaluate", "--scores", str(workdir / "scores.tsv"),
         "--manifest", str(workdir / "manifest.tsv"),
         "--out-prefix", str(workdir / "report")],
    ]
    for step in steps:
        print(f"$ spoofkit {' '.join(step)}")
        rc = cli_main(step)
        if rc != 0:
            print(f"step failed with exit code {rc}", file=sys.stderr)
            return rc
    print((workdir / "report.txt").read_text())
    return 0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", help="defaults to a fresh temp dir")
    parser.add_argument("--per-class", type=int, default=10)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    if args.workdir:
        workdir = Path(args.workdir)
        workdir.mkdir(parents=True, exist_ok=True)
        sys.exit(run(workdir, args.per_class, args.seed))
    with tempfile.TemporaryDirectory(prefix="spoofkit_smoke_") as tmp:
        sys.exit(run(Path(tmp), args.per_class, args.seed))


if __name__ == "__main__":
    main()
