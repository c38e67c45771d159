/**
 * Backend descriptors: an in-process scoring function or an external
 * process speaking one JSON object per line over stdio.
 */

import { spawn, type ChildProcessByStdio } from "node:child_process";
import type { Readable, Writable } from "node:stream";
import { createInterface, type Interface } from "node:readline";

export class BackendError extends Error {}

export type Scorer = (audioPath: string, sampleId: string) => Promise<number>;
export type EmbeddingHook = (
  audioPath: string,
  sampleId: string,
) => Promise<number[]>;

export interface BackendDescriptor {
  name: string;
  scorer: Scorer;
  batchSize: number;
  embeddingHook?: EmbeddingHook;
}

export interface SubprocessSpec {
  command: string;
  args?: string[];
}

interface WireResponse {
  sample_id?: string;
  score?: number;
  error?: string;
}

/**
 * Host a scorer in an external process. Requests are written as
 * `{"sample_id": ..., "path": ...}` lines; the process must answer each
 * with one `{"sample_id": ..., "score": ...}` line (or `{"error": ...}`).
 */
export class SubprocessScorer {
  private child: ChildProcessByStdio<Writable, Readable, null>;
  private lines: Interface;
  private pending: Array<(line: string) => void> = [];
  private exited: Error | null = null;

  constructor(spec: SubprocessSpec) {
    this.child = spawn(spec.command, spec.args ?? [], {
      stdio: ["pipe", "pipe", "inherit"],
    });
    this.lines = createInterface({ input: this.child.stdout });
    this.lines.on("line", (line) => {
      const resolve = this.pending.shift();
      if (resolve) resolve(line);
    });
    this.child.on("exit", (code) => {
      this.exited = new BackendError(`backend process exited (code ${code})`);
    });
  }

  score: Scorer = async (audioPath, sampleId) => {
    if (this.exited && this.pending.length === 0) throw this.exited;
    const reply = await new Promise<string>((resolve) => {
      this.pending.push(resolve);
      this.child.stdin.write(
        JSON.stringify({ sample_id: sampleId, path: audioPath }) + "\n",
      );
    });
    const doc = JSON.parse(reply) as WireResponse;
    if (doc.error !== undefined) {
      throw new BackendError(doc.error);
    }
    if (doc.sample_id !== sampleId) {
      throw new BackendError(
        `response for ${doc.sample_id} does not match request ${sampleId}`,
      );
    }
    if (typeof doc.score !== "number") {
      throw new BackendError(`missing score for ${sampleId}`);
    }
    return doc.score;
  };

  close(): void {
    this.child.stdin.end();
  }
}

export function constantScorer(value: number): Scorer {
  return async () => value;
}
