/** Embedding export in the toolkit's analysis format. */

import { readFileSync, writeFileSync } from "node:fs";
import { resolve as resolvePath } from "node:path";

import type { BackendDescriptor } from "./backend.js";
import {
  FormatError,
  parseManifest,
  serializeEmbeddings,
  type EmbeddingRow,
} from "./formats.js";

export interface EmbeddingRunResult {
  written: number;
  dim: number;
  outPath: string;
}

export async function exportEmbeddings(
  manifestPath: string,
  descriptor: BackendDescriptor,
  outPath: string,
  options: { audioRoot?: string } = {},
): Promise<EmbeddingRunResult> {
  const hook = descriptor.embeddingHook;
  if (!hook) {
    throw new FormatError(`backend ${descriptor.name} has no embedding hook`);
  }
  const manifest = parseManifest(readFileSync(manifestPath, "utf-8")).sort(
    (a, b) => (a.sampleId < b.sampleId ? -1 : 1),
  );
  if (manifest.length === 0) {
    throw new FormatError("manifest has no rows");
  }

  const rows: EmbeddingRow[] = [];
  let dim: number | null = null;
  for (const item of manifest) {
    const audioPath = options.audioRoot
      ? resolvePath(options.audioRoot, item.path)
      : item.path;
    const vector = await hook(audioPath, item.sampleId);
    if (!vector.every(Number.isFinite)) {
      throw new FormatError(`non-finite embedding for ${item.sampleId}`);
    }
    if (dim === null) {
      dim = vector.length;
    } else if (vector.length !== dim) {
      throw new FormatError(
        `dimension mismatch for ${item.sampleId}: ${vector.length} != ${dim}`,
      );
    }
    rows.push({ sampleId: item.sampleId, label: item.label, vector });
  }
  writeFileSync(outPath, serializeEmbeddings(rows), "utf-8");
  return { written: rows.length, dim: dim ?? 0, outPath };
}
