"""Embedding-set analysis: PCA projection and class-separability scores.

Stands in for manifold visualizations when choosing a front-end: project
externally supplied embeddings to 2-D with a deterministic power-iteration
PCA and quantify bonafide/spoof separability with a Fisher ratio and the
mean silhouette.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.metrics import silhouette_score

POWER_TOL = 1e-10
POWER_MAX_ITER = 1000


class EmbeddingError(ValueError):
    pass


class ZeroVarianceError(EmbeddingError):
    pass


@dataclass
class EmbeddingSet:
    sample_ids: list[str]
    labels: list[str]          # "bonafide" | "spoof"
    vectors: np.ndarray        # shape (n, d)

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2:
            raise EmbeddingError("vectors must be a 2-D array")
        n = len(self.sample_ids)
        if len(self.labels) != n or self.vectors.shape[0] != n:
            raise EmbeddingError("ids, labels, and vectors must align")
        if n and not np.all(np.isfinite(self.vectors)):
            raise EmbeddingError("vectors must be finite")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def _start_vector(d: int) -> np.ndarray:
    # Deterministic, symmetry-breaking start for power iteration.
    v = 1.0 + 0.001 * np.arange(d)
    return v / np.linalg.norm(v)


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    for x in v:
        if abs(x) > 1e-12:
            return v if x > 0 else -v
    return v


def top_components(X: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Top-k eigenpairs of the sample covariance by deflated power iteration.

    Returns (eigenvalues, components) with components as rows, each sign-
    canonicalized so its first nonzero loading is positive.
    """
    X = np.asarray(X, dtype=np.float64)
    n, d = X.shape
    Xc = X - X.mean(axis=0)
    cov = Xc.T @ Xc / max(n - 1, 1)
    if float(np.max(np.abs(cov))) == 0.0:
        raise ZeroVarianceError("zero variance: all embeddings identical")
    values = np.zeros(k)
    components = np.zeros((k, d))
    work = cov.copy()
    for comp in range(k):
        v = _start_vector(d)
        for _ in range(POWER_MAX_ITER):
            w = work @ v
            norm = np.linalg.norm(w)
            if norm == 0.0:
                break  # remaining spectrum is zero; keep current direction
            w /= norm
            if np.linalg.norm(w - v) < POWER_TOL:
                v = w
                break
            v = w
        lam = float(v @ work @ v)
        v = _canonical_sign(v)
        values[comp] = max(lam, 0.0)
        components[comp] = v
        work = work - lam * np.outer(v, v)
    return values, components


def pca_project(embeddings: EmbeddingSet, k: int = 2) -> list[tuple[str, np.ndarray]]:
    """Project onto the top-k principal directions (mean-centered)."""
    if len(embeddings.sample_ids) < 2:
        raise EmbeddingError("need at least 2 records")
    if embeddings.dim < k:
        raise EmbeddingError(f"dimension {embeddings.dim} < k={k}")
    _, components = top_components(embeddings.vectors, k)
    centered = embeddings.vectors - embeddings.vectors.mean(axis=0)
    proj = centered @ components.T
    return list(zip(embeddings.sample_ids, proj))


def explained_variance_shares(embeddings: EmbeddingSet, k: int) -> np.ndarray:
    values, _ = top_components(embeddings.vectors, k)
    centered = embeddings.vectors - embeddings.vectors.mean(axis=0)
    total = float(np.sum(centered ** 2)) / max(len(centered) - 1, 1)
    return values / total


def separability_scores(embeddings: EmbeddingSet) -> tuple[float, float]:
    """(fisher_ratio, mean silhouette) between bonafide and spoof.

    The Fisher ratio is between-class over within-class variance along the
    class-mean axis; silhouette uses Euclidean distance.
    """
    y = np.asarray([lab == "bonafide" for lab in embeddings.labels])
    if y.sum() < 2 or (~y).sum() < 2:
        raise EmbeddingError("need at least 2 samples per class")
    X = embeddings.vectors
    mu_b = X[y].mean(axis=0)
    mu_s = X[~y].mean(axis=0)
    axis = mu_b - mu_s
    norm = np.linalg.norm(axis)
    if norm == 0.0:
        fisher = 0.0
    else:
        axis = axis / norm
        pb = X[y] @ axis
        ps = X[~y] @ axis
        between = (pb.mean() - ps.mean()) ** 2
        within = (pb.var(ddof=1) + ps.var(ddof=1)) / 2.0
        fisher = float(between / within) if within > 0 else float("inf")
    sil = float(silhouette_score(X, y, metric="euclidean"))
    return fisher, sil


# --- file I/O and scatter -------------------------------------------------

def parse_embeddings(text: str) -> EmbeddingSet:
    """Parse `sample_id\\tlabel\\tv0\\tv1...` TSV with a header line."""
    ids: list[str] = []
    labels: list[str] = []
    rows: list[list[float]] = []
    dim = None
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not seen_header:
            if fields[:2] != ["sample_id", "label"]:
                raise EmbeddingError(f"line {lineno}: bad header")
            seen_header = True
            continue
        if len(fields) < 3:
            raise EmbeddingError(f"line {lineno}: expected id, label, values")
        if fields[1] not in ("bonafide", "spoof"):
            raise EmbeddingError(f"line {lineno}: unknown label {fields[1]!r}")
        try:
            vec = [float(v) for v in fields[2:]]
        except ValueError as exc:
            raise EmbeddingError(f"line {lineno}: {exc}") from None
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise EmbeddingError(
                f"line {lineno}: dimension {len(vec)} != {dim}"
            )
        ids.append(fields[0])
        labels.append(fields[1])
        rows.append(vec)
    if not seen_header:
        raise EmbeddingError("missing header line")
    return EmbeddingSet(ids, labels, np.asarray(rows, dtype=np.float64))


def serialize_embeddings(embeddings: EmbeddingSet) -> str:
    dim = embeddings.dim
    header = ["sample_id", "label"] + [f"v{i}" for i in range(dim)]
    lines = ["\t".join(header)]
    for sid, lab, vec in zip(embeddings.sample_ids, embeddings.labels,
                             embeddings.vectors):
        lines.append("\t".join([sid, lab] + [repr(float(v)) for v in vec]))
    return "\n".join(lines) + "\n"


def scatter_svg(points: list[tuple[str, np.ndarray]], labels: dict[str, str],
                width: int = 640, height: int = 480) -> str:
    """Minimal deterministic SVG scatter of a 2-D projection."""
    xs = np.array([p[1][0] for p in points])
    ys = np.array([p[1][1] for p in points])
    span_x = (xs.max() - xs.min()) or 1.0
    span_y = (ys.max() - ys.min()) or 1.0
    margin = 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    for sid, (x, y) in points:
        px = margin + (x - xs.min()) / span_x * (width - 2 * margin)
        py = height - margin - (y - ys.min()) / span_y * (height - 2 * margin)
        color = "#2a9d2a" if labels.get(sid) == "bonafide" else "#d04040"
        parts.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{color}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
