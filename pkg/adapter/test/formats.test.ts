import { describe, expect, it } from "vitest";

import {
  FormatError,
  parseManifest,
  parseScores,
  pyFloatRepr,
  serializeEmbeddings,
  serializeScores,
} from "../src/formats.js";
import { python } from "./helpers.js";

describe("pyFloatRepr", () => {
  it("matches Python repr on tricky fixed values", () => {
    const values = [
      0.5, 0.1, 1.0, -1.0, 100.0, 123456.789, 0.0001, 0.00001, 1e15, 1e16,
      1.5e20, 2.5e-10, -3.141592653589793, 5e-324, 1.7976931348623157e308,
      9007199254740992.0, 0.30000000000000004,
    ];
    const reprs = python(
      "import json\n" +
        `vals = json.loads('''${JSON.stringify(values)}''')\n` +
        "print(json.dumps([repr(float(v)) for v in vals]))",
    );
    const oracle = JSON.parse(reprs) as string[];
    values.forEach((v, i) => {
      expect(pyFloatRepr(v), `value ${v}`).toBe(oracle[i]);
    });
  });

  it("matches Python repr on random floats", () => {
    const values: number[] = [];
    let state = 123456789;
    const next = () => {
      state = (state * 1103515245 + 12345) % 2147483648;
      return state / 2147483648;
    };
    for (let i = 0; i < 300; i++) {
      const exp = Math.floor(next() * 60) - 30;
      values.push((next() * 2 - 1) * Math.pow(10, exp));
    }
    const reprs = python(
      "import json\n" +
        `vals = json.loads('''${JSON.stringify(values)}''')\n` +
        "print(json.dumps([repr(float(v)) for v in vals]))",
    );
    const oracle = JSON.parse(reprs) as string[];
    values.forEach((v, i) => {
      expect(pyFloatRepr(v), `value ${v}`).toBe(oracle[i]);
    });
  });

  it("handles zeros and rejects non-finite values", () => {
    expect(pyFloatRepr(0)).toBe("0.0");
    expect(pyFloatRepr(-0)).toBe("-0.0");
    expect(() => pyFloatRepr(Number.NaN)).toThrow(FormatError);
    expect(() => pyFloatRepr(Infinity)).toThrow(FormatError);
  });
});

describe("score files", () => {
  it("serializes sorted with header and round-trips", () => {
    const text = serializeScores([
      { sampleId: "b", score: 0.25 },
      { sampleId: "a", score: 0.5 },
    ]);
    expect(text).toBe("sample_id\tscore\na\t0.5\nb\t0.25\n");
    const parsed = parseScores(text);
    expect(parsed.map((r) => r.sampleId)).toEqual(["a", "b"]);
    expect(serializeScores(parsed)).toBe(text);
  });

  it("rejects non-finite scores and bad headers", () => {
    expect(() =>
      serializeScores([{ sampleId: "a", score: Number.NaN }]),
    ).toThrow(FormatError);
    expect(() => parseScores("id\tvalue\na\t0.5\n")).toThrow(FormatError);
  });
});

describe("manifest parsing", () => {
  it("reads only id, path, and label from a wide manifest", () => {
    const text =
      "sample_id\tpath\tlabel\tdataset\tlanguage\tsource_system\tduration_s\tsplit\titeration\tselection_seed\n" +
      "x1\taudio/x1.wav\tbonafide\tASVspoof19LA\tund\tmic\t\ttrain\t1\t3\n";
    const rows = parseManifest(text);
    expect(rows).toEqual([
      { sampleId: "x1", path: "audio/x1.wav", label: "bonafide" },
    ]);
  });

  it("rejects manifests missing required columns", () => {
    expect(() => parseManifest("sample_id\tlabel\nx\tbonafide\n")).toThrow(
      /path/,
    );
  });

  it("rejects unknown labels", () => {
    expect(() =>
      parseManifest("sample_id\tpath\tlabel\nx\ta.wav\tgenuine\n"),
    ).toThrow(/label/);
  });
});

describe("embedding files", () => {
  it("rejects dimension drift between rows", () => {
    expect(() =>
      serializeEmbeddings([
        { sampleId: "a", label: "bonafide", vector: [1, 2] },
        { sampleId: "b", label: "spoof", vector: [1, 2, 3] },
      ]),
    ).toThrow(/dimension mismatch/);
  });
});
