/**
 * File-format plumbing shared with the Python toolkit.
 *
 * The adapter deliberately understands only the columns it needs
 * (sample_id, path, label); all dataset policy lives upstream. Output
 * files must be byte-compatible with the Python writers, which format
 * floats with Python's repr() -- see pyFloatRepr below.
 */

export class FormatError extends Error {}

export interface ManifestRow {
  sampleId: string;
  path: string;
  label: "bonafide" | "spoof";
}

export interface ScoreRow {
  sampleId: string;
  score: number;
}

const SCORE_HEADER = "sample_id\tscore";

/**
 * Render a finite float exactly as Python's repr() would.
 *
 * Both runtimes compute shortest round-trip digits; only the surface
 * format differs (exponent thresholds, ".0" suffix, two-digit exponents).
 */
export function pyFloatRepr(x: number): string {
  if (!Number.isFinite(x)) {
    throw new FormatError(`non-finite value ${x}`);
  }
  if (x === 0) {
    return Object.is(x, -0) ? "-0.0" : "0.0";
  }
  const sign = x < 0 ? "-" : "";
  // toExponential() without an argument emits the shortest unique digits.
  const [mantissa, expStr] = Math.abs(x).toExponential().split("e");
  const digits = mantissa.replace(".", "");
  const exp = parseInt(expStr, 10);
  if (exp < -4 || exp >= 16) {
    const m = digits.length === 1 ? digits : `${digits[0]}.${digits.slice(1)}`;
    const eSign = exp < 0 ? "-" : "+";
    const eAbs = String(Math.abs(exp)).padStart(2, "0");
    return `${sign}${m}e${eSign}${eAbs}`;
  }
  if (exp >= 0) {
    if (exp >= digits.length - 1) {
      return `${sign}${digits.padEnd(exp + 1, "0")}.0`;
    }
    return `${sign}${digits.slice(0, exp + 1)}.${digits.slice(exp + 1)}`;
  }
  return `${sign}0.${"0".repeat(-exp - 1)}${digits}`;
}

export function parseManifest(text: string): ManifestRow[] {
  const rows: ManifestRow[] = [];
  let columns: string[] | null = null;
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (!line.trim() || line.trimStart().startsWith("#")) continue;
    const fields = line.split("\t");
    if (columns === null) {
      columns = fields;
      for (const needed of ["sample_id", "path", "label"]) {
        if (!columns.includes(needed)) {
          throw new FormatError(`manifest header missing column ${needed}`);
        }
      }
      continue;
    }
    if (fields.length !== columns.length) {
      throw new FormatError(
        `line ${i + 1}: expected ${columns.length} columns, got ${fields.length}`,
      );
    }
    const get = (name: string) => fields[columns!.indexOf(name)];
    const label = get("label");
    if (label !== "bonafide" && label !== "spoof") {
      throw new FormatError(`line ${i + 1}: unknown label ${label}`);
    }
    rows.push({ sampleId: get("sample_id"), path: get("path"), label });
  }
  if (columns === null) {
    throw new FormatError("manifest has no header line");
  }
  return rows;
}

export function parseScores(text: string): ScoreRow[] {
  const rows: ScoreRow[] = [];
  let seenHeader = false;
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (!line.trim() || line.trimStart().startsWith("#")) continue;
    if (!seenHeader) {
      if (line !== SCORE_HEADER) {
        throw new FormatError(`line ${i + 1}: bad score header`);
      }
      seenHeader = true;
      continue;
    }
    const fields = line.split("\t");
    if (fields.length !== 2) {
      throw new FormatError(`line ${i + 1}: expected 2 columns`);
    }
    const score = Number(fields[1]);
    if (!Number.isFinite(score)) {
      throw new FormatError(`line ${i + 1}: non-finite score`);
    }
    rows.push({ sampleId: fields[0], score });
  }
  if (!seenHeader) {
    throw new FormatError("missing score header line");
  }
  return rows;
}

export function serializeScores(rows: ScoreRow[]): string {
  const sorted = [...rows].sort((a, b) =>
    a.sampleId < b.sampleId ? -1 : a.sampleId > b.sampleId ? 1 : 0,
  );
  const lines = [SCORE_HEADER];
  for (const row of sorted) {
    if (!Number.isFinite(row.score)) {
      throw new FormatError(`non-finite score for ${row.sampleId}`);
    }
    lines.push(`${row.sampleId}\t${pyFloatRepr(row.score)}`);
  }
  return lines.join("\n") + "\n";
}

export interface EmbeddingRow {
  sampleId: string;
  label: string;
  vector: number[];
}

export function serializeEmbeddings(rows: EmbeddingRow[]): string {
  if (rows.length === 0) {
    throw new FormatError("no embedding rows");
  }
  const dim = rows[0].vector.length;
  const header = ["sample_id", "label", ...Array.from({ length: dim }, (_, i) => `v${i}`)];
  const lines = [header.join("\t")];
  for (const row of rows) {
    if (row.vector.length !== dim) {
      throw new FormatError(
        `dimension mismatch for ${row.sampleId}: ${row.vector.length} != ${dim}`,
      );
    }
    lines.push(
      [row.sampleId, row.label, ...row.vector.map(pyFloatRepr)].join("\t"),
    );
  }
  return lines.join("\n") + "\n";
}
