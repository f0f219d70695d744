"""Detection of rainbow triangles and monochromatic fans.

A fan F_m is a center joined to m pairwise disjoint edges. F_m in color c
centered at v exists iff the color-c graph induced on the color-c
neighbourhood of v has a matching of size m, so fan detection reduces to a
bounded matching question on bitmask adjacency.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .coloring import ColoredCompleteGraph
from .errors import OracleSizeError, PaletteError

ORACLE_MAX_ORDER = 12

RAINBOW = "rainbow_triangle"
MONO_FAN = "mono_fan"


# -- bitmask matching kernel -------------------------------------------------

def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def greedy_matching(adj: Sequence[int], free: int, limit: int = 0) -> list[tuple[int, int]]:
    """Maximal matching taking edges in lexicographic order.

    Stops early once ``limit`` edges are found (0 means no limit).
    """
    out = []
    rest = free
    while rest:
        low = rest & -rest
        rest ^= low
        nb = adj[low.bit_length() - 1] & rest
        if nb:
            wlow = nb & -nb
            rest ^= wlow
            out.append((low.bit_length() - 1, wlow.bit_length() - 1))
            if len(out) == limit:
                break
    return out


def find_matching(adj: Sequence[int], free: int, need: int) -> list[tuple[int, int]] | None:
    """A matching of ``need`` edges inside ``free``, or None.

    A maximal matching is at least half a maximum one, so the exact search
    below only runs when the greedy size g satisfies g < need <= 2g.
    """
    if need <= 0:
        return []
    greedy = greedy_matching(adj, free, need)
    if len(greedy) >= need:
        return greedy
    if 2 * len(greedy) < need:
        return None
    if need == 2:
        # one maximal edge ab covers all others: pair a and b with distinct partners
        a, b = greedy[0]
        rest = free & ~((1 << a) | (1 << b))
        na, nb = adj[a] & rest, adj[b] & rest
        if not na or not nb or (na == nb and na & (na - 1) == 0):
            return None
        if nb & (nb - 1) == 0:
            z = nb.bit_length() - 1
            y = na & ~nb
        else:
            y = na
            z = None
        y = (y & -y).bit_length() - 1
        if z is None:
            z = nb & ~(1 << y)
            z = (z & -z).bit_length() - 1
        return sorted([(min(a, y), max(a, y)), (min(b, z), max(b, z))])
    return _exact_matching(adj, free, need, greedy)


def _exact_matching(adj, free, need, greedy=None):
    if need <= 0:
        return []
    if greedy is None:
        greedy = greedy_matching(adj, free, need)
        if len(greedy) >= need:
            return greedy
        if 2 * len(greedy) < need:
            return None
    cover = 0
    for a, b in greedy:
        cover |= (1 << a) | (1 << b)
    # greedy-matched vertices cover every edge, so x is matched or dropped
    x = (cover & -cover).bit_length() - 1
    rest = free & ~(1 << x)
    seen = set()
    for w in iter_bits(adj[x] & rest):
        wb = 1 << w
        if not cover & wb:
            # uncovered neighbours with equal neighbourhoods are twins
            sig = adj[w] & rest
            if sig in seen:
                continue
            seen.add(sig)
        sub = _exact_matching(adj, rest & ~wb, need - 1)
        if sub is not None:
            return sorted([(min(x, w), max(x, w))] + sub)
    return _exact_matching(adj, rest, need)


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Witness for a rainbow triangle or a monochromatic fan."""

    kind: str
    vertices: tuple[int, ...] = ()
    color: int = 0
    center: int = -1
    edges: tuple[tuple[int, int], ...] = ()

    @classmethod
    def rainbow(cls, u: int, v: int, w: int) -> "Certificate":
        return cls(RAINBOW, vertices=tuple(sorted((u, v, w))))

    @classmethod
    def mono_fan(cls, color: int, center: int, edges: Iterable[tuple[int, int]]) -> "Certificate":
        pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        return cls(MONO_FAN, color=color, center=center, edges=pairs)

    @property
    def order(self) -> int:
        """Number of fan blades (m of F_m)."""
        return len(self.edges)

    def to_json(self) -> dict:
        if self.kind == RAINBOW:
            return {"kind": RAINBOW, "vertices": list(self.vertices)}
        return {
            "kind": MONO_FAN,
            "color": self.color,
            "center": self.center,
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        if obj["kind"] == RAINBOW:
            return cls.rainbow(*obj["vertices"])
        if obj["kind"] == MONO_FAN:
            return cls.mono_fan(obj["color"], obj["center"], [tuple(e) for e in obj["edges"]])
        raise ValueError(f"unknown certificate kind {obj['kind']!r}")

    def validate(self, g: ColoredCompleteGraph) -> bool:
        """Re-check the witness against ``g`` by direct color lookups."""
        n = g.n
        if self.kind == RAINBOW:
            if len(set(self.vertices)) != 3 or not all(0 <= x < n for x in self.vertices):
                return False
            u, v, w = self.vertices
            return len({g.color(u, v), g.color(u, w), g.color(v, w)}) == 3
        if self.kind == MONO_FAN:
            c, x = self.color, self.center
            used = [x] + [y for e in self.edges for y in e]
            if not self.edges or len(set(used)) != len(used):
                return False
            if not all(0 <= y < n for y in used):
                return False
            return all(
                g.color(a, b) == c and g.color(x, a) == c and g.color(x, b) == c
                for a, b in self.edges
            )
        return False


# -- detectors ---------------------------------------------------------------

def find_rainbow_triangle(g: ColoredCompleteGraph) -> Certificate | None:
    """Lexicographically first triple u < v < w with three distinct colors."""
    n = g.n
    if n < 3 or g.k < 3:
        return None
    mat = g.matrix()
    for u in range(n - 2):
        row = mat[u, u + 1:]
        sub = mat[u + 1:, u + 1:]
        hit = (row[:, None] != row[None, :]) & (sub != row[:, None]) & (sub != row[None, :])
        hit = np.triu(hit, 1)
        if hit.any():
            flat = int(np.argmax(hit))
            v, w = divmod(flat, hit.shape[1])
            return Certificate.rainbow(u, u + 1 + v, u + 1 + w)
    return None


def _check_color(g: ColoredCompleteGraph, c: int) -> None:
    if not 1 <= c <= g.k:
        raise PaletteError(f"color {c} outside palette 1..{g.k}")


def find_mono_fan(g: ColoredCompleteGraph, m: int, c: int) -> Certificate | None:
    """F_m in color c: smallest center, then the first matching found there."""
    _check_color(g, c)
    if m < 1:
        raise ValueError("fan order must be >= 1")
    masks = g.color_masks()[c]
    for v in range(g.n):
        nbhd = masks[v]
        if nbhd.bit_count() < 2 * m:
            continue
        match = find_matching(masks, nbhd, m)
        if match is not None:
            return Certificate.mono_fan(c, v, match[:m])
    return None


def find_any_mono_fan(g: ColoredCompleteGraph, m: int) -> Certificate | None:
    """F_m in the smallest color that has one."""
    for c in range(1, g.k + 1):
        cert = find_mono_fan(g, m, c)
        if cert is not None:
            return cert
    return None


def max_fan_order(g: ColoredCompleteGraph, c: int) -> int:
    """Largest m such that F_m appears in color c (0 if none)."""
    _check_color(g, c)
    lo, hi = 0, (g.n - 1) // 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if find_mono_fan(g, mid, c) is not None:
            lo = mid
        else:
            hi = mid - 1
    return lo


def count_useful_colors(g: ColoredCompleteGraph) -> int:
    """Colors whose edge set has a vertex of degree at least 2."""
    if g.n < 3:
        return 0
    mat = g.matrix()
    useful = 0
    for c in range(1, g.k + 1):
        if int((mat == c).sum(axis=1).max()) >= 2:
            useful += 1
    return useful


def brute_fan_oracle(g: ColoredCompleteGraph, m: int, c: int) -> Certificate | None:
    """Exhaustive F_m search over every center and every m-set of edges."""
    if g.n > ORACLE_MAX_ORDER:
        raise OracleSizeError(f"oracle limited to n <= {ORACLE_MAX_ORDER}, got {g.n}")
    _check_color(g, c)
    n = g.n
    for x in range(n):
        nbrs = [y for y in range(n) if y != x and g.color(x, y) == c]
        blades = [(a, b) for a, b in itertools.combinations(nbrs, 2) if g.color(a, b) == c]
        for combo in itertools.combinations(blades, m):
            ends = [y for e in combo for y in e]
            if len(set(ends)) == 2 * m:
                return Certificate.mono_fan(c, x, combo)
    return None


@dataclass
class VerifyReport:
    rainbow: Certificate | None
    fans: dict[int, Certificate | None]
    fan_order: int
    max_fan_order: dict[int, int] | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.rainbow is None and all(c is None for c in self.fans.values())

    def certificates(self) -> list[Certificate]:
        certs = [] if self.rainbow is None else [self.rainbow]
        certs += [c for _, c in sorted(self.fans.items()) if c is not None]
        return certs

    def to_json(self) -> dict:
        out = {
            "ok": self.ok,
            "fan_order": self.fan_order,
            "rainbow": None if self.rainbow is None else self.rainbow.to_json(),
            "fans": {str(c): (None if cert is None else cert.to_json()) for c, cert in sorted(self.fans.items())},
        }
        if self.max_fan_order is not None:
            out["max_fan_order"] = {str(c): v for c, v in sorted(self.max_fan_order.items())}
        return out


def verify(g: ColoredCompleteGraph, m: int, rainbow: bool = True, orders: bool = False) -> VerifyReport:
    """Run the rainbow check and an F_m check in every color."""
    tri = find_rainbow_triangle(g) if rainbow else None
    fans = {c: find_mono_fan(g, m, c) for c in range(1, g.k + 1)}
    mfo = {c: max_fan_order(g, c) for c in range(1, g.k + 1)} if orders else None
    return VerifyReport(tri, fans, m, mfo)


# -- small-graph classification ---------------------------------------------

def edge_list(pairs: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    """Normalize to sorted (small, large) pairs, rejecting loops and repeats."""
    out = set()
    for a, b in pairs:
        if a == b:
            raise ValueError(f"loop at {a}")
        e = (min(a, b), max(a, b))
        if e in out:
            raise ValueError(f"duplicate edge {e}")
        out.add(e)
    return tuple(sorted(out))


_SINGLE_OK = {("P", 2), ("P", 3), ("P", 4), ("P", 5), ("C", 3), ("C", 4), ("C", 5)}
_PAIR_OK = {("P", 2), ("P", 3), ("C", 3)}


def embeds_in_c4_c5_2k3(edges: Iterable[Sequence[int]]) -> bool:
    """Whether the graph spanned by ``edges`` is a subgraph of C4, C5 or 2K3."""
    es = edge_list(edges)
    adj = defaultdict(set)
    for a, b in es:
        adj[a].add(b)
        adj[b].add(a)
    if any(len(nb) > 2 for nb in adj.values()):
        return False
    seen = set()
    shapes = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        ne = sum(len(adj[x]) for x in comp) // 2
        shapes.append(("C" if ne == len(comp) else "P", len(comp)))
    if len(shapes) <= 1:
        return all(s in _SINGLE_OK for s in shapes)
    if len(shapes) == 2:
        return all(s in _PAIR_OK for s in shapes)
    return False
