"""
Co-occurrence vectors at desk scale: windowed counting, PPMI, column
clustering and least-squares learning of linear maps (adjective
matrices).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from .core import PregroupError


class DistributionalError(PregroupError, ValueError):
    pass


@dataclass(frozen=True)
class CooccurrenceTable:
    targets: Tuple[str, ...]
    contexts: Tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "contexts", tuple(self.contexts))
        counts = np.array(self.counts, dtype=float).reshape(len(self.targets), len(self.contexts))
        if len(set(self.targets)) != len(self.targets):
            raise DistributionalError("duplicate target labels")
        if len(set(self.contexts)) != len(self.contexts):
            raise DistributionalError("duplicate context labels")
        if not np.all(np.isfinite(counts)) or np.any(counts < 0):
            raise DistributionalError("counts must be finite and non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    def row(self, target: str) -> np.ndarray:
        return self.counts[self.targets.index(target)]

    def __eq__(self, other):
        return (isinstance(other, CooccurrenceTable)
                and self.targets == other.targets
                and self.contexts == other.contexts
                and np.array_equal(self.counts, other.counts))

    __hash__ = None


def build_cooccurrence(corpus: Iterable[Sequence[str]], targets: Sequence[str],
                       contexts: Sequence[str], k: int = 5) -> CooccurrenceTable:
    """
    Count, for every occurrence of a target word, the context words at
    most ``k`` positions away in the same document.  A token is never its
    own context, but two equal tokens see each other.
    """
    if k < 1:
        raise DistributionalError("window radius must be >= 1")
    t_index = {w: i for i, w in enumerate(targets)}
    c_index = {w: i for i, w in enumerate(contexts)}
    counts = np.zeros((len(targets), len(contexts)))
    for doc in corpus:
        doc = list(doc)
        for i, tok in enumerate(doc):
            row = t_index.get(tok)
            if row is None:
                continue
            for j in range(max(0, i - k), min(len(doc), i + k + 1)):
                if j != i:
                    col = c_index.get(doc[j])
                    if col is not None:
                        counts[row, col] += 1
    return CooccurrenceTable(targets, contexts, counts)


def ppmi(table: CooccurrenceTable) -> CooccurrenceTable:
    """Positive pointwise mutual information, natural log."""
    counts = table.counts
    total = counts.sum()
    if total <= 0:
        raise DistributionalError("PPMI of an all-zero table")
    p_tc = counts / total
    p_t = p_tc.sum(axis=1, keepdims=True)
    p_c = p_tc.sum(axis=0, keepdims=True)
    out = np.zeros_like(counts)
    nz = counts > 0
    out[nz] = np.log(p_tc[nz] / (p_t @ p_c)[nz])
    return CooccurrenceTable(table.targets, table.contexts, np.maximum(out, 0.0))


@dataclass(frozen=True)
class ClusterMap:
    assignment: Mapping[str, str]
    clusters: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))
        object.__setattr__(self, "clusters", tuple(self.clusters))
        for ctx, cl in self.assignment.items():
            if cl not in self.clusters:
                raise DistributionalError("context {!r} mapped to unknown cluster {!r}"
                                          .format(ctx, cl))

    @classmethod
    def from_groups(cls, groups: Mapping[str, Sequence[str]]) -> "ClusterMap":
        return cls({c: name for name, members in groups.items() for c in members},
                   tuple(groups))


def cluster_columns(table: CooccurrenceTable, cmap: ClusterMap) -> CooccurrenceTable:
    out = np.zeros((len(table.targets), len(cmap.clusters)))
    col = {c: k for k, c in enumerate(cmap.clusters)}
    for j, ctx in enumerate(table.contexts):
        try:
            out[:, col[cmap.assignment[ctx]]] += table.counts[:, j]
        except KeyError:
            raise DistributionalError("context {!r} has no cluster".format(ctx)) from None
    return CooccurrenceTable(table.targets, cmap.clusters, out)


def learn_linear_map(pairs: Sequence[Tuple[Sequence[float], Sequence[float]]]) -> np.ndarray:
    """
    Least-squares matrix ``M`` with ``M @ x ~ y`` over all pairs, from the
    normal equations; a rank deficient system gets the minimum-norm
    solution through the pseudo-inverse.
    """
    if not pairs:
        raise DistributionalError("need at least one (input, output) pair")
    xs = [np.asarray(x, dtype=float).ravel() for x, _ in pairs]
    ys = [np.asarray(y, dtype=float).ravel() for _, y in pairs]
    if len({x.shape for x in xs}) != 1 or len({y.shape for y in ys}) != 1:
        raise DistributionalError("inconsistent vector dimensions")
    X, Y = np.vstack(xs), np.vstack(ys)
    gram = X.T @ X
    return (np.linalg.pinv(gram, hermitian=True) @ X.T @ Y).T


# --- files -------------------------------------------------------------------

def read_corpus(path) -> List[List[str]]:
    """Blank-line separated documents, whitespace tokens, lowercased."""
    docs, cur = [], []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            if cur:
                docs.append(cur)
                cur = []
            continue
        cur.extend(line.lower().split())
    if cur:
        docs.append(cur)
    return docs


def read_table(path) -> CooccurrenceTable:
    lines = [l for l in Path(path).read_text(encoding="utf-8").splitlines()
             if l.strip() and not l.startswith("#")]
    if not lines:
        raise DistributionalError("{}: empty table".format(path))
    header = lines[0].split("\t")
    contexts = header[1:]
    targets, rows = [], []
    for lineno, line in enumerate(lines[1:], 2):
        cols = line.split("\t")
        if len(cols) != len(header):
            raise DistributionalError("{}: row {} has {} columns, header has {}".format(
                path, lineno, len(cols), len(header)))
        targets.append(cols[0])
        rows.append([float(x) for x in cols[1:]])
    return CooccurrenceTable(targets, contexts, np.array(rows).reshape(len(targets), len(contexts)))


def format_number(x: float) -> str:
    return "{:.10g}".format(float(x) + 0.0)


def format_table(table: CooccurrenceTable, corner: str = "word") -> str:
    lines = ["\t".join([corner] + list(table.contexts))]
    for t, row in zip(table.targets, table.counts):
        lines.append("\t".join([t] + [format_number(x) for x in row]))
    return "\n".join(lines) + "\n"


def read_cluster_map(path) -> ClusterMap:
    """Tab separated ``context<TAB>cluster`` lines; clusters in first-seen order."""
    assignment: Dict[str, str] = {}
    clusters: List[str] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        ctx, cl = line.split("\t")
        assignment[ctx.strip()] = cl.strip()
        if cl.strip() not in clusters:
            clusters.append(cl.strip())
    return ClusterMap(assignment, tuple(clusters))
