"""Edge-colorings of complete graphs and the ``.gcg`` text format.

A :class:`ColoredCompleteGraph` stores one color per unordered pair in a flat
upper-triangular array. Colors are 1-based; 0 only ever appears on the
diagonal of :meth:`ColoredCompleteGraph.matrix`.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    FormatError,
    FrozenGraphError,
    LengthError,
    PaletteError,
    SelfLoopError,
)

MAX_ORDER = 65535
MAX_COLORS = 255
MAGIC = "gcg 1"


def tri_index(n: int, u: int, v: int) -> int:
    """Position of pair (u, v), u < v, in row-major upper-triangular order."""
    return u * n - u * (u + 1) // 2 + (v - u - 1)


class ColoredCompleteGraph:
    """A k-edge-coloring of K_n.

    The graph is mutable while being built and becomes read-only after
    :meth:`freeze`. Derived views (the dense matrix, per-color bitmasks) are
    cached and dropped on every write.
    """

    __slots__ = ("_n", "_k", "_tri", "_frozen", "_matrix", "_masks")

    def __init__(self, n: int, k: int, colors: Iterable[int] | np.ndarray | None = None):
        if not 1 <= n <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {n}")
        if not 1 <= k <= MAX_COLORS:
            raise PaletteError(f"palette size must be in 1..{MAX_COLORS}, got {k}")
        self._n = n
        self._k = k
        size = n * (n - 1) // 2
        if colors is None:
            tri = np.ones(size, dtype=np.uint8)
        else:
            arr = np.asarray(colors, dtype=np.int64).ravel()
            if arr.size != size:
                raise LengthError(f"expected {size} colors for n={n}, got {arr.size}")
            if arr.size and (arr.min() < 1 or arr.max() > k):
                raise PaletteError(f"colors must lie in 1..{k}")
            tri = arr.astype(np.uint8)
        self._tri = tri
        self._frozen = False
        self._matrix = None
        self._masks = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def k(self) -> int:
        return self._k

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def num_edges(self) -> int:
        return self._tri.size

    def __len__(self) -> int:
        return self._n

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoopError(f"no edge ({u}, {u})")
        if not (0 <= u < self._n and 0 <= v < self._n):
            raise IndexError(f"vertex out of range for n={self._n}: ({u}, {v})")

    def color(self, u: int, v: int) -> int:
        self._check_pair(u, v)
        if u > v:
            u, v = v, u
        return int(self._tri[tri_index(self._n, u, v)])

    def set_color(self, u: int, v: int, c: int) -> "ColoredCompleteGraph":
        if self._frozen:
            raise FrozenGraphError("graph is frozen")
        self._check_pair(u, v)
        if not 1 <= c <= self._k:
            raise PaletteError(f"color {c} outside palette 1..{self._k}")
        if u > v:
            u, v = v, u
        self._tri[tri_index(self._n, u, v)] = c
        self._matrix = None
        self._masks = None
        return self

    def freeze(self) -> "ColoredCompleteGraph":
        self._frozen = True
        self._tri.flags.writeable = False
        return self

    def copy(self) -> "ColoredCompleteGraph":
        """Unfrozen copy."""
        return ColoredCompleteGraph(self._n, self._k, self._tri.copy())

    @property
    def triangle(self) -> np.ndarray:
        """Read-only view of the flat color array."""
        view = self._tri.view()
        view.flags.writeable = False
        return view

    def matrix(self) -> np.ndarray:
        """Dense symmetric n x n color matrix with zeros on the diagonal."""
        if self._matrix is None:
            n = self._n
            m = np.zeros((n, n), dtype=np.uint8)
            iu = np.triu_indices(n, 1)
            m[iu] = self._tri
            m.T[iu] = self._tri
            m.flags.writeable = False
            self._matrix = m
        return self._matrix

    def color_masks(self) -> list[list[int]]:
        """``masks[c][v]`` is the bitmask of color-c neighbours of v.

        Index 0 is an empty placeholder so colors index directly.
        """
        if self._masks is None:
            mat = self.matrix()
            n = self._n
            masks: list[list[int]] = [[0] * n]
            for c in range(1, self._k + 1):
                packed = np.packbits(mat == c, axis=1, bitorder="little")
                masks.append([int.from_bytes(row.tobytes(), "little") for row in packed])
            self._masks = masks
        return self._masks

    def colors_used(self) -> list[int]:
        return sorted(int(c) for c in np.unique(self._tri))

    def edges(self, c: int | None = None) -> Iterator[tuple[int, int]]:
        """Pairs (u, v), u < v, in row-major order, optionally of one color."""
        iu, iv = np.triu_indices(self._n, 1)
        if c is not None:
            sel = self._tri == c
            iu, iv = iu[sel], iv[sel]
        return zip(iu.tolist(), iv.tolist())

    def relabel(self, perm: Sequence[int]) -> "ColoredCompleteGraph":
        """Image under the vertex map ``u -> perm[u]``.

        The result satisfies ``out.color(perm[u], perm[v]) == self.color(u, v)``.
        """
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self._n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self._n)
        mat = self.matrix()[np.ix_(inv, inv)]
        return from_matrix(mat, self._k)

    def permute_palette(self, mapping: dict[int, int] | Sequence[int]) -> "ColoredCompleteGraph":
        """Recolor every edge by ``mapping[c]``; sequences are indexed from 1."""
        if isinstance(mapping, dict):
            table = np.zeros(self._k + 1, dtype=np.int64)
            for a, b in mapping.items():
                table[a] = b
            for c in range(1, self._k + 1):
                if c not in mapping:
                    table[c] = c
        else:
            table = np.concatenate([[0], np.asarray(mapping, dtype=np.int64)])
        k = int(table.max())
        return ColoredCompleteGraph(self._n, max(k, self._k), table[self._tri])

    def with_palette(self, k: int) -> "ColoredCompleteGraph":
        """Same coloring declared over a larger palette."""
        if k < self._k and self._tri.size and int(self._tri.max()) > k:
            raise PaletteError(f"graph uses colors above {k}")
        return ColoredCompleteGraph(self._n, k, self._tri.copy())

    def induced(self, vertices: Sequence[int]) -> "ColoredCompleteGraph":
        idx = np.asarray(vertices, dtype=np.int64)
        return from_matrix(self.matrix()[np.ix_(idx, idx)], self._k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredCompleteGraph):
            return NotImplemented
        return (
            self._n == other._n
            and self._k == other._k
            and np.array_equal(self._tri, other._tri)
        )

    def __hash__(self) -> int:
        return hash((self._n, self._k, self._tri.tobytes()))

    def __repr__(self) -> str:
        return f"ColoredCompleteGraph(n={self._n}, k={self._k})"


def new_uniform(n: int, k: int, c: int) -> ColoredCompleteGraph:
    """K_n with every edge colored c."""
    if not 1 <= c <= k:
        raise PaletteError(f"color {c} outside palette 1..{k}")
    g = ColoredCompleteGraph(n, k)
    g._tri[:] = c
    return g


def from_matrix(mat: np.ndarray, k: int) -> ColoredCompleteGraph:
    mat = np.asarray(mat)
    n = mat.shape[0]
    return ColoredCompleteGraph(n, k, mat[np.triu_indices(n, 1)])


def from_edge_colors(n: int, k: int, colored: dict[tuple[int, int], int], default: int) -> ColoredCompleteGraph:
    """Uniform ``default`` coloring with the listed pairs overridden."""
    g = new_uniform(n, k, default)
    for (u, v), c in colored.items():
        g.set_color(u, v, c)
    return g


def parse(data: bytes | str) -> ColoredCompleteGraph:
    """Read a graph from ``.gcg`` text."""
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise FormatError("gcg input must be ASCII") from exc
    head, sep, rest = data.partition("\n")
    if head.strip().split() != MAGIC.split():
        raise FormatError(f"bad magic/version line: {head!r}")
    tokens = rest.split()
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise FormatError("non-integer token in gcg body") from exc
    if len(values) < 2:
        raise FormatError("missing '<n> <k>' header")
    n, k = values[0], values[1]
    if not 1 <= n <= MAX_ORDER:
        raise FormatError(f"order {n} outside 1..{MAX_ORDER}")
    if not 1 <= k <= MAX_COLORS:
        raise FormatError(f"palette size {k} outside 1..{MAX_COLORS}")
    body = values[2:]
    expected = n * (n - 1) // 2
    if len(body) != expected:
        raise LengthError(f"expected {expected} colors for n={n}, got {len(body)}")
    return ColoredCompleteGraph(n, k, np.asarray(body, dtype=np.int64))


def serialize(g: ColoredCompleteGraph) -> bytes:
    """Canonical ``.gcg`` bytes: one row per line, single spaces."""
    out = io.StringIO()
    out.write(f"{MAGIC}\n{g.n} {g.k}\n")
    tri = g.triangle
    n = g.n
    pos = 0
    for u in range(n - 1):
        width = n - u - 1
        out.write(" ".join(map(str, tri[pos:pos + width].tolist())))
        out.write("\n")
        pos += width
    return out.getvalue().encode("ascii")


def load(path: str | os.PathLike) -> ColoredCompleteGraph:
    with open(path, "rb") as fh:
        return parse(fh.read())


def dump(g: ColoredCompleteGraph, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(g))
