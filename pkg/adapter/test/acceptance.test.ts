/**
 * Adapter conformance gate: output interoperates with the Python toolkit
 * through files alone, and resumability never changes file content.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { constantScorer, type BackendDescriptor } from "../src/backend.js";
import { exportEmbeddings } from "../src/embeddings.js";
import { scoreManifest } from "../src/scoring.js";
import { python, tempDir, writePrimaryManifest } from "./helpers.js";

describe("adapter conformance", () => {
  it("stub-scorer output passes the Python toolkit's format validation", async () => {
    const dir = tempDir();
    const manifest = writePrimaryManifest(dir, 5);
    const out = join(dir, "scores.tsv");
    const result = await scoreManifest(
      manifest,
      { name: "stub", scorer: constantScorer(0.5), batchSize: 4 },
      out,
    );
    expect(result.written).toBe(10);

    const check = python(
      "import json\n" +
        "from spoofkit.manifest import load_manifest\n" +
        "from spoofkit.metrics import parse_score_file\n" +
        `records = parse_score_file(open(${JSON.stringify(out)}).read())\n` +
        `manifest = load_manifest(${JSON.stringify(manifest)})\n` +
        "ids = {e.sample_id for e in manifest.entries}\n" +
        "assert {r.sample_id for r in records} == ids\n" +
        "assert all(r.score == 0.5 for r in records)\n" +
        "print(json.dumps({'n': len(records)}))",
    );
    expect(JSON.parse(check).n).toBe(10);
  });

  it("resumed run is byte-identical to a fresh run", async () => {
    const dir = tempDir();
    const manifest = writePrimaryManifest(dir, 8);
    const scorer = async (_path: string, sampleId: string) =>
      sampleId.includes("bonafide") ? 0.85 : 0.15;
    const descriptor: BackendDescriptor = {
      name: "tone",
      scorer,
      batchSize: 3,
    };

    const freshOut = join(dir, "fresh.tsv");
    await scoreManifest(manifest, descriptor, freshOut);

    // simulate an interrupted run that only covered part of the manifest
    const lines = readFileSync(manifest, "utf-8").trimEnd().split("\n");
    const partialManifest = join(dir, "partial.tsv");
    writeFileSync(
      partialManifest,
      lines.slice(0, 1 + 6).join("\n") + "\n",
      "utf-8",
    );
    const resumedOut = join(dir, "resumed.tsv");
    await scoreManifest(partialManifest, descriptor, resumedOut);
    const result = await scoreManifest(manifest, descriptor, resumedOut);
    expect(result.resumed).toBe(6);
    expect(readFileSync(resumedOut, "utf-8")).toBe(
      readFileSync(freshOut, "utf-8"),
    );
  });

  it("exported 1024-dim embeddings analyze cleanly in the Python toolkit", async () => {
    const dir = tempDir();
    const manifest = writePrimaryManifest(dir, 6);
    const out = join(dir, "emb.tsv");
    const hook = async (_path: string, sampleId: string) => {
      // linearly separable classes in a 1024-dim space
      const base = sampleId.includes("bonafide") ? 5.0 : -5.0;
      const vec = new Array(1024).fill(0.01);
      vec[0] = base + (sampleId.charCodeAt(sampleId.length - 1) % 5) / 10;
      vec[1] = base / 2;
      return vec;
    };
    const result = await exportEmbeddings(
      manifest,
      { name: "wav-emb", scorer: constantScorer(0.5), batchSize: 2, embeddingHook: hook },
      out,
    );
    expect(result.dim).toBe(1024);

    const check = python(
      "import json\n" +
        "from spoofkit.embeddings import parse_embeddings, separability_scores\n" +
        `emb = parse_embeddings(open(${JSON.stringify(out)}).read())\n` +
        "fisher, sil = separability_scores(emb)\n" +
        "print(json.dumps({'dim': emb.dim, 'n': len(emb.sample_ids), " +
        "'silhouette': sil}))",
    );
    const doc = JSON.parse(check);
    expect(doc.dim).toBe(1024);
    expect(doc.n).toBe(12);
    expect(doc.silhouette).toBeGreaterThan(0.9);
  });
});
