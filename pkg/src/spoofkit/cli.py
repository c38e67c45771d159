"""Command-line entry point: manifests, preprocessing, scoring, evaluation.

Exit codes are a stable contract: 0 success, 1 input error, 2 constraint
violation, 3 internal failure.  All randomness flows from --seed / recipe
seeds, so every subcommand is deterministic given its flags and inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .audio import (
    AudioError,
    SegmentSpec,
    TARGET_RATE_HZ,
    decode_wav,
    encode_wav_float32,
    fix_length,
    resample,
)
from .catalog import CatalogError, load_catalog
from .embeddings import (
    EmbeddingError,
    parse_embeddings,
    pca_project,
    scatter_svg,
    separability_scores,
)
from .evaluation import EvaluationError, evaluate_scores
from .manifest import (
    ManifestError,
    QuotaShortfallError,
    build_manifest,
    load_manifest,
    validate_manifest,
    write_manifest,
)
from .metrics import (
    MetricsError,
    ScoreRecord,
    parse_score_file,
    reference_scorer,
    serialize_scores,
)
from .presets import PresetError, resolve_preset
from .rawboost import RecipeError, apply_recipe, recipe_from_dict
from .sampling import SplitMix64, derive_seed, fnv1a64

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONSTRAINT = 2
EXIT_INTERNAL = 3

_INPUT_ERRORS = (
    CatalogError, ManifestError, PresetError, MetricsError,
    EvaluationError, AudioError, RecipeError, EmbeddingError,
    FileNotFoundError, json.JSONDecodeError,
)


def _cmd_manifest_build(args) -> int:
    preset = resolve_preset(args.preset)
    catalog = load_catalog(args.catalog)
    manifest = build_manifest(catalog, preset, args.seed)
    write_manifest(manifest, args.out)
    counts = manifest.counts()
    print(
        f"wrote {args.out}: {counts['train_total']} train "
        f"({counts['train_bonafide']} bonafide, {counts['train_spoof']} spoof), "
        f"{counts['val_total']} val"
    )
    return EXIT_OK


def _cmd_manifest_validate(args) -> int:
    preset = resolve_preset(args.preset)
    manifest = load_manifest(args.manifest)
    report = validate_manifest(manifest, preset)
    for check in report.checks:
        status = "ok" if check.passed else "FAIL"
        print(f"[{status}] {check.description}: expected {check.expected}, "
              f"actual {check.actual}")
    for note in report.arithmetic_notes:
        print(f"[note] {note}")
    if not report.passed:
        return EXIT_CONSTRAINT
    print("validation passed")
    return EXIT_OK


def _load_recipe(path):
    with open(path, "r", encoding="utf-8") as fh:
        return recipe_from_dict(json.load(fh))


def _preprocess_one(entry, args, recipe):
    src = Path(args.audio_root) / entry.path
    dst = Path(args.out_dir) / f"{entry.sample_id}.seg.wav"
    if dst.exists():
        return ("skipped", entry.sample_id, None)
    clip = decode_wav(src.read_bytes())
    clip = resample(clip, TARGET_RATE_HZ)
    spec = SegmentSpec(
        target_length_s=args.segment_seconds,
        pad_mode=args.pad_mode,
        crop_mode=args.crop_mode,
        crop_seed=derive_seed(args.seed, fnv1a64(entry.sample_id)),
    )
    clip = fix_length(clip, spec)
    if recipe is not None:
        sample_seed = derive_seed(recipe.seed, fnv1a64(entry.sample_id))
        if args.augment_prob >= 1.0 or (
            SplitMix64(sample_seed ^ 0xA5).uniform(0.0, 1.0) < args.augment_prob
        ):
            from dataclasses import replace
            clip = apply_recipe(clip, replace(recipe, seed=sample_seed))
    dst.write_bytes(encode_wav_float32(clip))
    return ("written", entry.sample_id, None)


def _cmd_preprocess(args) -> int:
    manifest = load_manifest(args.manifest)
    Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    recipe = _load_recipe(args.augment) if args.augment else None

    def run(entry):
        try:
            return _preprocess_one(entry, args, recipe)
        except (OSError, AudioError, RecipeError) as exc:
            return ("failed", entry.sample_id, str(exc))

    entries = sorted(manifest.entries, key=lambda e: e.sample_id)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run, entries))
    else:
        results = [run(e) for e in entries]

    results.sort(key=lambda r: r[1])  # deterministic log order by sample_id
    log = [
        {"sample_id": sid, "action": action, **({"error": err} if err else {})}
        for action, sid, err in results
    ]
    log_path = Path(args.out_dir) / "preprocess_log.json"
    log_path.write_text(json.dumps(
        {"format_version": 1, "entries": log}, indent=2) + "\n",
        encoding="utf-8")
    failures = [r for r in results if r[0] == "failed"]
    written = sum(1 for r in results if r[0] == "written")
    skipped = sum(1 for r in results if r[0] == "skipped")
    print(f"{written} written, {skipped} skipped, {len(failures)} failed")
    if failures:
        failures_path = Path(args.out_dir) / "failures.json"
        failures_path.write_text(json.dumps(
            {"format_version": 1,
             "failures": [{"sample_id": sid, "error": err}
                          for _, sid, err in failures]}, indent=2) + "\n",
            encoding="utf-8")
        print(f"failure report: {failures_path}", file=sys.stderr)
        if not args.keep_going:
            return EXIT_CONSTRAINT
    return EXIT_OK


def _cmd_score(args) -> int:
    manifest = load_manifest(args.manifest)
    records = []
    for entry in sorted(manifest.entries, key=lambda e: e.sample_id):
        if args.segments_dir:
            path = Path(args.segments_dir) / f"{entry.sample_id}.seg.wav"
        else:
            path = Path(args.audio_root) / entry.path
        clip = decode_wav(path.read_bytes())
        records.append(ScoreRecord(entry.sample_id, reference_scorer(clip)))
    Path(args.out).write_text(serialize_scores(records), encoding="utf-8")
    print(f"wrote {len(records)} scores to {args.out}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    manifest = load_manifest(args.manifest)
    records = parse_score_file(Path(args.scores).read_text(encoding="utf-8"))
    report = evaluate_scores(records, manifest, threshold=args.threshold)
    out_json = Path(f"{args.out_prefix}.json")
    out_txt = Path(f"{args.out_prefix}.txt")
    out_json.write_text(report.to_json(), encoding="utf-8")
    out_txt.write_text(report.render_text(), encoding="utf-8")
    print(f"BA {report.balanced_accuracy:.3f}  EER {report.eer_percent:.2f}%")
    if not report.polarity_ok:
        print("WARNING: score polarity sanity check failed", file=sys.stderr)
    if report.coverage_missing:
        print(f"WARNING: {len(report.coverage_missing)} manifest rows unscored",
              file=sys.stderr)
    return EXIT_OK


def _cmd_analyze_embeddings(args) -> int:
    embeddings = parse_embeddings(Path(args.embeddings).read_text(encoding="utf-8"))
    fisher, silhouette = separability_scores(embeddings)
    points = pca_project(embeddings, k=2)
    doc = {
        "format_version": 1,
        "n": len(embeddings.sample_ids),
        "dim": embeddings.dim,
        "fisher_ratio": fisher,
        "silhouette": silhouette,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.json_out:
        Path(args.json_out).write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if args.svg_out:
        labels = dict(zip(embeddings.sample_ids, embeddings.labels))
        Path(args.svg_out).write_text(scatter_svg(points, labels),
                                      encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spoofkit",
        description="Corpus integration and evaluation toolkit for audio "
                    "deepfake detection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    man = sub.add_parser("manifest", help="build or validate manifests")
    man_sub = man.add_subparsers(dest="action", required=True)

    p = man_sub.add_parser("build")
    p.add_argument("--preset", required=True,
                   help="bundled preset id (iter1..iter4) or preset file")
    p.add_argument("--catalog", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_manifest_build)

    p = man_sub.add_parser("validate")
    p.add_argument("--preset", required=True)
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=_cmd_manifest_validate)

    p = sub.add_parser("preprocess", help="resample, segment, and augment audio")
    p.add_argument("--manifest", required=True)
    p.add_argument("--audio-root", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--segment-seconds", type=float, default=4.0)
    p.add_argument("--pad-mode", choices=("repeat", "zero"), default="repeat")
    p.add_argument("--crop-mode", choices=("head", "seeded_random"),
                   default="head")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--augment", help="augmentation recipe JSON file")
    p.add_argument("--augment-prob", type=float, default=1.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--keep-going", action="store_true")
    p.set_defaults(func=_cmd_preprocess)

    p = sub.add_parser("score", help="score a manifest with the reference backend")
    p.add_argument("--manifest", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--audio-root")
    group.add_argument("--segments-dir",
                       help="directory of <sample_id>.seg.wav files")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("evaluate", help="compute metrics from a score file")
    p.add_argument("--scores", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("analyze-embeddings",
                       help="PCA projection and separability scores")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--json-out")
    p.add_argument("--svg-out")
    p.set_defaults(func=_cmd_analyze_embeddings)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuotaShortfallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - stable exit-code contract
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
