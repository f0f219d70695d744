"""Exhaustive searches behind the finite claims about fans.

``ramsey2_decide`` runs a depth-first search over 2-colorings of K_n, cutting
a branch as soon as the partial coloring holds a monochromatic F_m. Holding
F_m is monotone under extension, so the cut never loses an avoiding
coloring. The only symmetry used is the color swap: the first edge is fixed
to color 1.

``check_fact_k7``, ``check_claim_f1`` and ``check_claim_f2k8`` enumerate the
restricted colorings of three small-case claims and look for counterexamples.
A search that runs out of budget reports ``BUDGET_EXCEEDED`` and never a
verdict.
"""

from __future__ import annotations

import itertools
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .coloring import ColoredCompleteGraph
from .detect import embeds_in_c4_c5_2k3, find_matching, iter_bits

EXHAUSTED = "exhausted"
WITNESS = "witness"
BUDGET_EXCEEDED = "budget_exceeded"

_TIME_CHECK_EVERY = 4096


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    max_seconds: float | None = None

    @classmethod
    def unlimited(cls) -> "SearchBudget":
        return cls()

    @property
    def is_unlimited(self) -> bool:
        return self.max_nodes is None and self.max_seconds is None

    def to_json(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    leaves: int = 0
    elapsed: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"nodes": self.nodes, "prunes": self.prunes, "leaves": self.leaves}
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out


@dataclass
class SearchOutcome:
    verdict: str
    witness: ColoredCompleteGraph | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    detail: dict = field(default_factory=dict)

    @property
    def exhausted(self) -> bool:
        return self.verdict == EXHAUSTED


class _BudgetHit(Exception):
    pass


class _Clock:
    def __init__(self, budget: SearchBudget, shared=None):
        self.budget = budget
        self.start = time.monotonic()
        self.shared = shared
        self._flushed = 0

    def tick(self, stats: SearchStats) -> None:
        b = self.budget
        if b.max_nodes is not None and self.shared is None and stats.nodes > b.max_nodes:
            raise _BudgetHit
        if stats.nodes % _TIME_CHECK_EVERY == 0:
            if self.shared is not None:
                counter, cancel = self.shared
                with counter.get_lock():
                    counter.value += stats.nodes - self._flushed
                    total = counter.value
                self._flushed = stats.nodes
                if cancel.is_set():
                    raise _BudgetHit
                if b.max_nodes is not None and total > b.max_nodes:
                    cancel.set()
                    raise _BudgetHit
            if b.max_seconds is not None and time.monotonic() - self.start > b.max_seconds:
                raise _BudgetHit


# -- fan pruning kernel ------------------------------------------------------

def fan_at(adj: Sequence[int], x: int, m: int) -> bool:
    nbhd = adj[x]
    return nbhd.bit_count() >= 2 * m and find_matching(adj, nbhd, m) is not None


def fan_through(adj: Sequence[int], u: int, v: int, m: int) -> bool:
    """Whether some F_m in ``adj`` uses the edge uv (as spoke or blade)."""
    if fan_at(adj, u, m) or fan_at(adj, v, m):
        return True
    for x in iter_bits(adj[u] & adj[v]):
        if fan_at(adj, x, m):
            return True
    return False


def any_fan(adj: Sequence[int], m: int) -> bool:
    return any(fan_at(adj, x, m) for x in range(len(adj)))


class _EdgeSearch:
    """DFS over decisions, each coloring a group of edges one color."""

    def __init__(self, n, m, palette, decisions, choices, fixed=(), prune=True, fan_colors=None):
        self.n = n
        self.m = m
        self.palette = palette
        self.adj = [[0] * n for _ in range(palette + 1)]
        self.decisions = decisions
        self.choices = choices
        self.prune = prune
        self.fan_colors = tuple(fan_colors or range(1, palette + 1))
        self.fixed = tuple(fixed)
        for (u, v), c in fixed:
            self._set(u, v, c)
        self.stats = SearchStats()
        self.colors: list[int] = []

    def _set(self, u, v, c):
        a = self.adj[c]
        a[u] |= 1 << v
        a[v] |= 1 << u

    def _clear(self, u, v, c):
        a = self.adj[c]
        a[u] &= ~(1 << v)
        a[v] &= ~(1 << u)

    def apply(self, i: int, c: int) -> bool:
        """Color decision i; False (and nothing applied) if it makes a fan."""
        edges = self.decisions[i]
        for u, v in edges:
            self._set(u, v, c)
        if self.prune and c in self.fan_colors:
            a = self.adj[c]
            if any(fan_through(a, u, v, self.m) for u, v in edges):
                for u, v in edges:
                    self._clear(u, v, c)
                return False
        self.colors.append(c)
        return True

    def undo(self, i: int) -> None:
        c = self.colors.pop()
        for u, v in self.decisions[i]:
            self._clear(u, v, c)

    def leaf_ok(self) -> bool:
        if self.prune:
            return True
        return not any(any_fan(self.adj[c], self.m) for c in self.fan_colors)

    def graph(self) -> ColoredCompleteGraph:
        g = ColoredCompleteGraph(self.n, self.palette)
        for c in range(1, self.palette + 1):
            for u in range(self.n):
                for v in iter_bits(self.adj[c][u] >> (u + 1) << (u + 1)):
                    g.set_color(u, v, c)
        return g.freeze()

    def run(self, start: int, clock: _Clock, count_all: bool) -> ColoredCompleteGraph | None:
        stats = self.stats
        decisions = len(self.decisions)

        def dfs(i):
            stats.nodes += 1
            clock.tick(stats)
            if i == decisions:
                if self.leaf_ok():
                    stats.leaves += 1
                    return not count_all
                return False
            for c in self.choices[i]:
                if self.apply(i, c):
                    if dfs(i + 1):
                        return True
                    self.undo(i)
                else:
                    stats.prunes += 1
            return False

        if dfs(start):
            return self.graph()
        return None


def _edge_order(n: int, order: str) -> list[tuple[int, int]]:
    if order == "lex":
        return [(u, v) for u in range(n) for v in range(u + 1, n)]
    if order == "vertex":
        return [(u, v) for v in range(n) for u in range(v)]
    raise ValueError(f"unknown edge order {order!r}")


def _ramsey_kernel(m, n, order, prune, symmetry):
    edges = _edge_order(n, order)
    decisions = [(e,) for e in edges]
    choices = [(1, 2)] * len(edges)
    if symmetry and choices:
        choices[0] = (1,)
    return _EdgeSearch(n, m, 2, decisions, choices, prune=prune)


# -- parallel subtrees -------------------------------------------------------

_worker_shared = None


def _init_worker(counter, cancel):
    global _worker_shared
    _worker_shared = (counter, cancel)


def _run_subtree(args):
    m, n, order, prune, symmetry, prefix, budget, count_all = args
    kern = _ramsey_kernel(m, n, order, prune, symmetry)
    clock = _Clock(budget, _worker_shared)
    for i, c in enumerate(prefix):
        if not kern.apply(i, c):
            return "pruned", None, kern.stats
    try:
        w = kern.run(len(prefix), clock, count_all)
    except _BudgetHit:
        return BUDGET_EXCEEDED, None, kern.stats
    if w is not None:
        _worker_shared[1].set()
        return WITNESS, w, kern.stats
    return EXHAUSTED, None, kern.stats


def _thread_count(threads: int | None) -> int:
    if threads:
        return max(1, threads)
    env = os.environ.get("GFL_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def ramsey2_decide(
    m: int,
    n: int,
    budget: SearchBudget = SearchBudget(),
    *,
    order: str = "lex",
    prune: bool = True,
    symmetry: bool = True,
    count_all: bool = False,
    threads: int | None = 1,
    split_depth: int = 4,
    deterministic: bool = True,
) -> SearchOutcome:
    """Decide whether every 2-coloring of K_n holds a monochromatic F_m.

    ``EXHAUSTED`` means R(F_m, F_m) <= n. ``WITNESS`` carries an avoiding
    coloring. With ``count_all`` the search visits every avoiding coloring
    (reported in ``stats.leaves``) and the verdict is ``WITNESS`` iff there
    was at least one; no witness graph is attached in that mode.
    """
    if m < 1 or n < 2:
        raise ValueError("need m >= 1 and n >= 2")
    t0 = time.monotonic()
    workers = 1 if deterministic else _thread_count(threads)
    if workers > 1 and not count_all:
        out = _ramsey_parallel(m, n, budget, order, prune, symmetry, workers, split_depth)
    else:
        kern = _ramsey_kernel(m, n, order, prune, symmetry)
        clock = _Clock(budget)
        try:
            w = kern.run(0, clock, count_all)
        except _BudgetHit:
            out = SearchOutcome(BUDGET_EXCEEDED, None, kern.stats)
        else:
            if count_all:
                verdict = WITNESS if kern.stats.leaves else EXHAUSTED
            else:
                verdict = WITNESS if w is not None else EXHAUSTED
            out = SearchOutcome(verdict, w, kern.stats)
    out.stats.elapsed = time.monotonic() - t0
    out.detail.update({"fan": m, "order_n": n, "edge_order": order, "symmetry": symmetry})
    return out


def _ramsey_parallel(m, n, budget, order, prune, symmetry, workers, split_depth):
    total_edges = n * (n - 1) // 2
    depth = min(split_depth + 1, total_edges)
    first = (1,) if symmetry else (1, 2)
    prefixes = [p for p in itertools.product(*([first] + [(1, 2)] * (depth - 1)))]
    counter = mp.Value("q", 0)
    cancel = mp.Event()
    jobs = [(m, n, order, prune, symmetry, p, budget, False) for p in prefixes]
    stats = SearchStats()
    results = []
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(counter, cancel)) as pool:
        for res in pool.map(_run_subtree, jobs):
            results.append(res)
    witness = None
    over = False
    for verdict, w, st in results:
        stats.nodes += st.nodes
        stats.prunes += st.prunes + (1 if verdict == "pruned" else 0)
        stats.leaves += st.leaves
        if verdict == WITNESS and witness is None:
            witness = w
        if verdict == BUDGET_EXCEEDED:
            over = True
    if witness is not None:
        return SearchOutcome(WITNESS, witness, stats)
    if over:
        return SearchOutcome(BUDGET_EXCEEDED, None, stats)
    return SearchOutcome(EXHAUSTED, None, stats)


def brute_force_count(m: int, n: int) -> int:
    """Number of 2-colorings of K_n with no monochromatic F_m (no pruning)."""
    edges = _edge_order(n, "lex")
    total = 0
    for mask in range(1 << len(edges)):
        adj = [[0] * n for _ in range(3)]
        for i, (u, v) in enumerate(edges):
            c = 1 + ((mask >> i) & 1)
            adj[c][u] |= 1 << v
            adj[c][v] |= 1 << u
        if not any_fan(adj[1], m) and not any_fan(adj[2], m):
            total += 1
    return total


# -- small-case claims -------------------------------------------------------

def small_degree_edge_sets(n: int, avoid: frozenset = frozenset()) -> Iterator[tuple[tuple[int, int], ...]]:
    """Edge sets on n labeled vertices that embed in C4, C5 or 2K3.

    Branches are cut once the maximum degree exceeds 2 or three disjoint
    edges appear; survivors are filtered by ``embeds_in_c4_c5_2k3``.
    """
    edges = [e for e in _edge_order(n, "lex") if e not in avoid]
    deg = [0] * n
    adj = [0] * n
    full = (1 << n) - 1
    chosen: list[tuple[int, int]] = []

    def rec(start):
        if embeds_in_c4_c5_2k3(chosen):
            yield tuple(chosen)
        for j in range(start, len(edges)):
            a, b = edges[j]
            if deg[a] == 2 or deg[b] == 2:
                continue
            deg[a] += 1
            deg[b] += 1
            adj[a] |= 1 << b
            adj[b] |= 1 << a
            chosen.append((a, b))
            if find_matching(adj, full, 3) is None:
                yield from rec(j + 1)
            chosen.pop()
            adj[a] &= ~(1 << b)
            adj[b] &= ~(1 << a)
            deg[a] -= 1
            deg[b] -= 1

    yield from rec(0)


def _masks(n: int, edges) -> list[int]:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def _graph_from_classes(n: int, classes: dict[int, Sequence[tuple[int, int]]], default: int, palette: int):
    g = ColoredCompleteGraph(n, palette)
    for u, v in itertools.combinations(range(n), 2):
        g.set_color(u, v, default)
    for c, es in classes.items():
        for u, v in es:
            g.set_color(u, v, c)
    return g.freeze()


def check_fact_k7() -> SearchOutcome:
    """Every color-1 graph on K7 embedding in C4/C5/2K3 leaves F_3 in color 2."""
    t0 = time.monotonic()
    n = 7
    full = (1 << n) - 1
    stats = SearchStats()
    bad = []
    for es in small_degree_edge_sets(n):
        stats.nodes += 1
        one = _masks(n, es)
        two = [full & ~one[x] & ~(1 << x) for x in range(n)]
        if any_fan(two, 3):
            stats.leaves += 1
        else:
            bad.append(es)
    stats.elapsed = time.monotonic() - t0
    witness = _graph_from_classes(n, {1: bad[0]}, 2, 2) if bad else None
    verdict = WITNESS if bad else EXHAUSTED
    return SearchOutcome(verdict, witness, stats, {"instances": stats.nodes, "counterexamples": len(bad)})


def _shape_key(edges) -> tuple:
    """Complete isomorphism invariant for graphs of maximum degree 2."""
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen, shapes = set(), []
    for s in adj:
        if s in seen:
            continue
        comp, stack = set(), [s]
        while stack:
            x = stack.pop()
            if x not in comp:
                comp.add(x)
                stack.extend(adj[x])
        seen |= comp
        ne = sum(len(adj[x]) for x in comp) // 2
        shapes.append((len(comp), ne))
    return tuple(sorted(shapes))


def orbit_representatives(n: int) -> list[tuple[tuple[int, int], ...]]:
    """One labeled edge set per isomorphism class of C4/C5/2K3 subgraphs on n vertices."""
    reps = {}
    for es in small_degree_edge_sets(n):
        reps.setdefault(_shape_key(es), es)
    return list(reps.values())


def _rainbow_in(n, one, two, three, red_edges) -> bool:
    # every rainbow triangle has exactly one color-1 edge
    for a, b in red_edges:
        if (two[a] & three[b]) | (three[a] & two[b]):
            return True
    return False


def check_claim_f1(budget: SearchBudget = SearchBudget()) -> SearchOutcome:
    """Gallai 3-colored K9 with colors 1, 2 each inside C4/C5/2K3 holds F_3 in color 3.

    Color 1 ranges over isomorphism-class representatives; color 2 over all
    labeled edge-disjoint placements.
    """
    t0 = time.monotonic()
    n = 9
    full = (1 << n) - 1
    clock = _Clock(budget)
    stats = SearchStats()
    reps = orbit_representatives(n)
    gallai = 0
    bad = None
    try:
        for e1 in reps:
            one = _masks(n, e1)
            for e2 in small_degree_edge_sets(n, frozenset(e1)):
                stats.nodes += 1
                clock.tick(stats)
                two = _masks(n, e2)
                three = [full & ~(one[x] | two[x] | (1 << x)) for x in range(n)]
                if _rainbow_in(n, one, two, three, e1):
                    stats.prunes += 1
                    continue
                gallai += 1
                if any_fan(three, 3):
                    stats.leaves += 1
                elif bad is None:
                    bad = (e1, e2)
    except _BudgetHit:
        stats.elapsed = time.monotonic() - t0
        return SearchOutcome(BUDGET_EXCEEDED, None, stats, {"representatives": len(reps)})
    stats.elapsed = time.monotonic() - t0
    detail = {"representatives": len(reps), "gallai_colorings": gallai, "counterexamples": 0 if bad is None else 1}
    if bad is not None:
        return SearchOutcome(WITNESS, _graph_from_classes(n, {1: bad[0], 2: bad[1]}, 3, 3), stats, detail)
    return SearchOutcome(EXHAUSTED, None, stats, detail)


GREEN = 3


def _f2k8_kernel(n: int, prune: bool) -> _EdgeSearch:
    # green edge (0, 1); rainbow-freeness forces color(0, w) == color(1, w)
    decisions = [((0, w), (1, w)) for w in range(2, n)]
    decisions += [((u, v),) for u in range(2, n) for v in range(u + 1, n)]
    choices = [(1, 2)] * len(decisions)
    return _EdgeSearch(n, 2, 3, decisions, choices, fixed=[((0, 1), GREEN)], prune=prune, fan_colors=(1, 2))


def gallai_constraint_ok(g: ColoredCompleteGraph) -> bool:
    """The rainbow-free condition around the green edge (0, 1)."""
    return all(g.color(0, w) == g.color(1, w) for w in range(2, g.n))


def check_claim_f2k8(budget: SearchBudget = SearchBudget(), *, n: int = 9, prune: bool = True) -> SearchOutcome:
    """Gallai K9 with one green edge, all others red/blue, holds a mono F_2.

    Only the case with a green edge is searched here; with no green edge the
    coloring is a 2-coloring of K9, which is ``ramsey2_decide(2, 9)``.
    The K10 statement with two single-edge colors reduces to this one by
    contracting one of those edges. ``n`` and ``prune`` exist for control runs.
    """
    t0 = time.monotonic()
    kern = _f2k8_kernel(n, prune)
    clock = _Clock(budget)
    try:
        w = kern.run(0, clock, count_all=False)
    except _BudgetHit:
        kern.stats.elapsed = time.monotonic() - t0
        return SearchOutcome(BUDGET_EXCEEDED, None, kern.stats)
    kern.stats.elapsed = time.monotonic() - t0
    detail = {"order_n": n, "counterexamples": 0 if w is None else 1}
    return SearchOutcome(WITNESS if w is not None else EXHAUSTED, w, kern.stats, detail)


CLAIMS = ("f2k8", "fact-k7", "claim-f1", "r-f1", "r-f2", "r-f3")

# (m, n) with R(F_m, F_m) = n: exhaust K_n, find a witness on K_{n-1}
RAMSEY_VALUES = {"r-f1": (1, 6), "r-f2": (2, 9), "r-f3": (3, 13)}


def check_claim(name: str, budget: SearchBudget = SearchBudget(), **kw) -> SearchOutcome:
    if name == "f2k8":
        return check_claim_f2k8(budget)
    if name == "fact-k7":
        return check_fact_k7()
    if name == "claim-f1":
        return check_claim_f1(budget)
    if name in RAMSEY_VALUES:
        m, n = RAMSEY_VALUES[name]
        low = ramsey2_decide(m, n - 1, budget, **kw)
        if low.verdict != WITNESS:
            low.detail["lower_bound_failed"] = True
            return low
        high = ramsey2_decide(m, n, budget, **kw)
        high.detail["lower_witness_nodes"] = low.stats.nodes
        high.detail["lower_witness"] = low.witness
        return high
    raise ValueError(f"unknown claim {name!r}; expected one of {CLAIMS}")
