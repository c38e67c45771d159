export {
  FormatError,
  parseManifest,
  parseScores,
  pyFloatRepr,
  serializeEmbeddings,
  serializeScores,
} from "./formats.js";
export type { EmbeddingRow, ManifestRow, ScoreRow } from "./formats.js";
export {
  BackendError,
  SubprocessScorer,
  constantScorer,
} from "./backend.js";
export type {
  BackendDescriptor,
  EmbeddingHook,
  Scorer,
  SubprocessSpec,
} from "./backend.js";
export { scoreManifest } from "./scoring.js";
export type { ScoreOptions, ScoreRunResult } from "./scoring.js";
export { exportEmbeddings } from "./embeddings.js";
export type { EmbeddingRunResult } from "./embeddings.js";
