/**
 * Resumable manifest scoring.
 *
 * The output file is always rewritten in full, sorted by sample_id, so a
 * resumed run is byte-identical to an uninterrupted one. Backend failures
 * go to a `.failures.json` sidecar and the run continues; a non-finite
 * score is a hard error because it means the backend contract is broken,
 * not just one file.
 */

import { existsSync, readFileSync, writeFileSync } from "node:fs";
import { resolve as resolvePath } from "node:path";

import type { BackendDescriptor } from "./backend.js";
import {
  FormatError,
  parseManifest,
  parseScores,
  serializeScores,
  type ScoreRow,
} from "./formats.js";

export interface ScoreRunResult {
  written: number;
  resumed: number;
  failed: number;
  outPath: string;
  failuresPath: string | null;
}

export interface ScoreOptions {
  audioRoot?: string;
}

async function scoreBatch(
  descriptor: BackendDescriptor,
  batch: Array<{ sampleId: string; path: string }>,
  audioRoot: string | undefined,
  failures: Array<{ sample_id: string; error: string }>,
): Promise<ScoreRow[]> {
  const rows: ScoreRow[] = [];
  for (const item of batch) {
    const audioPath = audioRoot ? resolvePath(audioRoot, item.path) : item.path;
    let score: number;
    try {
      score = await descriptor.scorer(audioPath, item.sampleId);
    } catch (err) {
      failures.push({
        sample_id: item.sampleId,
        error: err instanceof Error ? err.message : String(err),
      });
      continue;
    }
    if (!Number.isFinite(score)) {
      throw new FormatError(
        `backend ${descriptor.name} returned non-finite score for ${item.sampleId}`,
      );
    }
    rows.push({ sampleId: item.sampleId, score });
  }
  return rows;
}

export async function scoreManifest(
  manifestPath: string,
  descriptor: BackendDescriptor,
  outPath: string,
  options: ScoreOptions = {},
): Promise<ScoreRunResult> {
  if (descriptor.batchSize < 1) {
    throw new FormatError("batchSize must be a positive integer");
  }
  const manifest = parseManifest(readFileSync(manifestPath, "utf-8"));

  const done = new Map<string, ScoreRow>();
  if (existsSync(outPath)) {
    for (const row of parseScores(readFileSync(outPath, "utf-8"))) {
      done.set(row.sampleId, row);
    }
  }
  const todo = manifest
    .filter((row) => !done.has(row.sampleId))
    .sort((a, b) => (a.sampleId < b.sampleId ? -1 : 1));

  const failures: Array<{ sample_id: string; error: string }> = [];
  const fresh: ScoreRow[] = [];
  for (let i = 0; i < todo.length; i += descriptor.batchSize) {
    const batch = todo.slice(i, i + descriptor.batchSize);
    fresh.push(
      ...(await scoreBatch(descriptor, batch, options.audioRoot, failures)),
    );
  }

  const all = [...done.values(), ...fresh];
  writeFileSync(outPath, serializeScores(all), "utf-8");

  let failuresPath: string | null = null;
  if (failures.length > 0) {
    failuresPath = `${outPath}.failures.json`;
    failures.sort((a, b) => (a.sample_id < b.sample_id ? -1 : 1));
    writeFileSync(
      failuresPath,
      JSON.stringify({ format_version: 1, failures }, null, 2) + "\n",
      "utf-8",
    );
  }
  return {
    written: fresh.length,
    resumed: done.size,
    failed: failures.length,
    outPath,
    failuresPath,
  };
}
