import { execFileSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export function python(code: string): string {
  return execFileSync("python3", ["-c", code], { encoding: "utf-8" });
}

export function tempDir(prefix = "adapter-test-"): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

/** Hand-written manifest TSV with just the columns the adapter reads. */
export function writeStubManifest(
  dir: string,
  n: number,
  name = "manifest.tsv",
): string {
  const lines = ["sample_id\tpath\tlabel"];
  for (let i = 0; i < n; i++) {
    const label = i % 2 === 0 ? "bonafide" : "spoof";
    const sid = `stub_${label}_${String(i).padStart(4, "0")}`;
    lines.push(`${sid}\taudio/${sid}.wav\t${label}`);
  }
  const path = join(dir, name);
  writeFileSync(path, lines.join("\n") + "\n", "utf-8");
  return path;
}

/** Full-format manifest produced by the Python toolkit itself. */
export function writePrimaryManifest(dir: string, perClass: number): string {
  const out = join(dir, "primary_manifest.tsv");
  python(`
from spoofkit.catalog import Catalog, CatalogEntry
from spoofkit.manifest import build_manifest, write_manifest
from spoofkit.presets import CompositionPreset, QuotaLine

entries = []
for label in ("bonafide", "spoof"):
    for i in range(${perClass}):
        sid = f"acc_{label}_{i:04d}"
        entries.append(CatalogEntry(
            sample_id=sid, path=f"audio/{sid}.wav", label=label,
            dataset="ASVspoof19LA", language="und",
            source_system="tts" if label == "spoof" else "mic"))
preset = CompositionPreset(
    iteration=1, segment_length_s=4,
    quotas=(
        QuotaLine("ASVspoof19LA", "bonafide", "any", "train", ${perClass}),
        QuotaLine("ASVspoof19LA", "spoof", "any", "train", ${perClass}),
    ))
write_manifest(build_manifest(Catalog(entries), preset, seed=3), ${JSON.stringify(out)})
`);
  return out;
}
