"""Gallai partitions, reduced graphs and blow-ups.

Every rainbow-triangle-free coloring of K_n (n >= 2) has a nontrivial vertex
partition where each pair of parts is joined in a single color and at most
two colors occur between parts. This module finds such a partition, checks
one, collapses it to the reduced graph, and runs the inverse operation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .coloring import ColoredCompleteGraph, from_matrix
from .detect import find_rainbow_triangle
from .errors import InternalInconsistency, PaletteError, PartitionShapeError, RainbowPresent


@dataclass(frozen=True)
class GallaiPartition:
    parts: tuple[tuple[int, ...], ...]
    between_colors: tuple[int, ...]
    pair_color: dict[tuple[int, int], int]

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def to_json(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "between_colors": list(self.between_colors),
            "pair_colors": [
                {"i": i, "j": j, "c": c} for (i, j), c in sorted(self.pair_color.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GallaiPartition":
        return cls(
            tuple(tuple(p) for p in obj["parts"]),
            tuple(obj["between_colors"]),
            {(d["i"], d["j"]): d["c"] for d in obj["pair_colors"]},
        )


def _check_shape(n: int, parts: Sequence[Sequence[int]]) -> None:
    seen = [False] * n
    for p in parts:
        if len(p) == 0:
            raise PartitionShapeError("empty part")
        for v in p:
            if not 0 <= v < n:
                raise PartitionShapeError(f"vertex {v} outside 0..{n - 1}")
            if seen[v]:
                raise PartitionShapeError(f"vertex {v} in two parts")
            seen[v] = True
    if not all(seen):
        missing = seen.index(False)
        raise PartitionShapeError(f"vertex {missing} not covered")


def _block_extremes(mat: np.ndarray, labels: np.ndarray, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Min and max color on the edges between each pair of parts."""
    order = np.argsort(labels, kind="stable")
    sizes = np.bincount(labels, minlength=t)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    ms = mat[np.ix_(order, order)]
    lo = np.minimum.reduceat(np.minimum.reduceat(ms, starts, axis=0), starts, axis=1)
    hi = np.maximum.reduceat(np.maximum.reduceat(ms, starts, axis=0), starts, axis=1)
    return lo, hi


def _make_partition(mat: np.ndarray, labels: np.ndarray) -> GallaiPartition:
    # renumber parts by smallest member so output is canonical
    firsts = {}
    for v, lab in enumerate(labels.tolist()):
        firsts.setdefault(lab, len(firsts))
    labels = np.array([firsts[lab] for lab in labels.tolist()])
    t = len(firsts)
    parts = tuple(tuple(np.flatnonzero(labels == i).tolist()) for i in range(t))
    reps = [p[0] for p in parts]
    pair_color = {(i, j): int(mat[reps[i], reps[j]]) for i, j in itertools.combinations(range(t), 2)}
    between = tuple(sorted(set(pair_color.values())))
    return GallaiPartition(parts, between, pair_color)


def _candidate(mat: np.ndarray, a: int, b: int) -> np.ndarray | None:
    """Finest partition with between-colors inside {a, b}, if nontrivial."""
    n = mat.shape[0]
    other = (mat != a) & (mat != b)
    np.fill_diagonal(other, False)
    t, labels = connected_components(csr_matrix(other), directed=False)
    while t >= 2:
        lo, hi = _block_extremes(mat, labels, t)
        mixed = np.argwhere(np.triu(lo != hi, 1))
        if mixed.size == 0:
            return labels
        ds = DisjointSet(range(t))
        for i, j in mixed.tolist():
            ds.merge(i, j)
        roots = {}
        remap = np.array([roots.setdefault(ds[i], len(roots)) for i in range(t)])
        labels = remap[labels]
        t = len(roots)
    return None


def find_gallai_partition(g: ColoredCompleteGraph) -> GallaiPartition:
    """A nontrivial Gallai partition of ``g``, preferring the most parts."""
    if g.n < 2:
        raise PartitionShapeError("need at least two vertices")
    cert = find_rainbow_triangle(g)
    if cert is not None:
        raise RainbowPresent(cert)
    mat = g.matrix()
    used = g.colors_used()
    if len(used) <= 2:
        return _make_partition(mat, np.arange(g.n))
    best = None
    for a, b in itertools.combinations(used, 2):
        labels = _candidate(mat, a, b)
        if labels is None:
            continue
        t = int(labels.max()) + 1
        if best is None or t > best[0]:
            best = (t, labels)
    if best is None:
        raise InternalInconsistency("rainbow-free coloring without a Gallai partition")
    return _make_partition(mat, best[1])


def validate_partition(g: ColoredCompleteGraph, p: GallaiPartition) -> bool:
    """Check every Gallai-partition condition of ``p`` against ``g``."""
    _check_shape(g.n, p.parts)
    t = len(p.parts)
    if t < 2:
        return False
    if len(set(p.between_colors)) > 2:
        return False
    mat = g.matrix()
    labels = np.empty(g.n, dtype=np.int64)
    for i, part in enumerate(p.parts):
        labels[list(part)] = i
    lo, hi = _block_extremes(mat, labels, t)
    for i, j in itertools.combinations(range(t), 2):
        c = p.pair_color.get((i, j))
        if c is None or c not in p.between_colors:
            return False
        if lo[i, j] != c or hi[i, j] != c:
            return False
    return True


def quotient(g: ColoredCompleteGraph, p: GallaiPartition) -> ColoredCompleteGraph:
    """Reduced graph: one vertex per part, colored by the between-part color."""
    if not validate_partition(g, p):
        raise PartitionShapeError("not a valid Gallai partition of this graph")
    t = len(p.parts)
    red = ColoredCompleteGraph(t, g.k)
    for (i, j), c in p.pair_color.items():
        red.set_color(i, j, c)
    return red.freeze()


def blow_up(reduced: ColoredCompleteGraph, parts: Sequence[ColoredCompleteGraph]) -> ColoredCompleteGraph:
    """Substitute ``parts[i]`` for vertex i of ``reduced``.

    Vertices are numbered by concatenating the parts in order.
    """
    if len(parts) != reduced.n:
        raise ValueError(f"need {reduced.n} parts, got {len(parts)}")
    k = reduced.k
    for h in parts:
        if h.k != k:
            raise PaletteError(f"part palette {h.k} differs from reduced palette {k}")
    sizes = [h.n for h in parts]
    offs = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offs[-1])
    mat = np.zeros((total, total), dtype=np.uint8)
    rmat = reduced.matrix()
    for i, h in enumerate(parts):
        si = slice(offs[i], offs[i + 1])
        mat[si, si] = h.matrix()
        for j in range(i + 1, len(parts)):
            sj = slice(offs[j], offs[j + 1])
            mat[si, sj] = rmat[i, j]
            mat[sj, si] = rmat[i, j]
    return from_matrix(mat, k)


def pentagon_coloring(a: int, b: int, k: int | None = None) -> ColoredCompleteGraph:
    """K_5 with color a on the cycle 0-1-2-3-4-0 and color b on its complement."""
    if a == b:
        raise PaletteError("pentagon needs two distinct colors")
    k = max(a, b) if k is None else k
    g = ColoredCompleteGraph(5, k)
    for i in range(5):
        g.set_color(i, (i + 1) % 5, a)
        g.set_color(i, (i + 2) % 5, b)
    return g.freeze()
