"""Acceptance gate: one test per criterion, each reporting PASS or FAIL.

The lines are collected by conftest.py and printed in the pytest summary
(and echoed to stdout when this file is run as a script).
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from conftest import ACCEPTANCE
from gallai_fans import bounds, constructions as C
from gallai_fans.coloring import ColoredCompleteGraph
from gallai_fans.detect import brute_fan_oracle, embeds_in_c4_c5_2k3, find_mono_fan, find_rainbow_triangle
from gallai_fans.gallai import GallaiPartition, blow_up, find_gallai_partition, pentagon_coloring, quotient, validate_partition
from gallai_fans.search import (
    EXHAUSTED,
    WITNESS,
    SearchBudget,
    check_claim_f1,
    check_claim_f2k8,
    check_fact_k7,
    ramsey2_decide,
)

import generators
from graphgen import graphs


def record(num, ok, detail):
    line = f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


FAMILY_CASES = (
    [("f2-odd", k, None, 2) for k in (1, 3, 5, 7)]
    + [("f2-even", k, None, 2) for k in (2, 4, 6)]
    + [("f2-useful", i, None, 2) for i in (1, 2, 3)]
    + [("f3", k, None, 3) for k in range(1, 8)]
    + [("fn", k, n, n) for n in range(1, 6) for k in range(1, 6)]
)


@lru_cache(maxsize=None)
def build(family, k, n=None):
    return C.construct(C.ConstructionSpec(family, k, n))


def test_criterion_1_freeness():
    t0 = time.monotonic()
    bad = []
    for family, k, n, m in FAMILY_CASES:
        g = build(family, k, n)
        if find_rainbow_triangle(g) is not None or any(find_mono_fan(g, m, c) for c in range(1, g.k + 1)):
            bad.append((family, k, n))
    dt = time.monotonic() - t0
    record(1, not bad and dt <= 60, f"{len(FAMILY_CASES)} builds free, {len(bad)} violations, {dt:.1f}s (limit 60s)")


def test_criterion_2_orders():
    expected = {("f2-odd", 3): 20, ("f2-odd", 5): 100, ("f2-odd", 7): 500}
    expected.update({("f2-even", 2): 8, ("f2-even", 4): 41, ("f2-even", 6): 207})
    expected.update({("f3", k): v for k, v in zip(range(2, 8), (12, 32, 68, 164, 348, 824))})
    wrong = [(key, build(*key).n, v) for key, v in expected.items() if build(*key).n != v]
    for n in range(1, 6):
        for k in range(1, 6):
            v = 4 * n * 5 ** ((k - 2) // 2) if k % 2 == 0 else 2 * n * 5 ** ((k - 1) // 2)
            if build("fn", k, n).n != v:
                wrong.append((("fn", k, n), build("fn", k, n).n, v))
    record(2, not wrong, f"{len(expected) + 25} orders checked, mismatches {wrong}")


def _rational_f2(k):
    if k == 2:
        return Fraction(9)
    if k % 2 == 0:
        return Fraction(83, 2) * Fraction(5) ** ((k - 4) // 2) + Fraction(1, 2)
    return 4 * Fraction(5) ** ((k - 1) // 2) + 1


def _rational_f3(k):
    if k % 2 == 0:
        v = 14 * Fraction(5) ** ((k - 2) // 2) - 1
        return v, v
    lo = 33 * Fraction(5) ** ((k - 3) // 2)
    if k in (3, 5):
        return lo, lo
    return lo, lo + Fraction(3, 4) * Fraction(5) ** ((k - 5) // 2) - Fraction(3, 4)


def _rational_fn(n, k):
    if k % 2 == 0:
        p = Fraction(5) ** ((k - 2) // 2)
        return 4 * n * p + 1, 10 * n * p - Fraction(5, 2) * n + 1
    p = Fraction(5) ** ((k - 1) // 2)
    return 2 * n * p + 1, Fraction(9, 2) * n * p - Fraction(5, 2) * n + 1


def test_criterion_3_bound_tables():
    errs = []
    for r in bounds.bound_table("f2", 10):
        if r.exact != _rational_f2(r.k):
            errs.append(("f2", r.k))
    for r in bounds.bound_table("f2prime", 10):
        kp = r.k
        want = 2 * 5 ** (kp // 2) + 1 if kp % 2 == 0 else 4 * 5 ** ((kp - 1) // 2) + 1
        if r.exact != want:
            errs.append(("f2prime", kp))
    f3 = {r.k: r for r in bounds.bound_table("f3", 9)}
    for k, r in f3.items():
        lo, hi = _rational_f3(k)
        if (r.lower, r.upper) != (lo, hi):
            errs.append(("f3", k))
    if (f3[7].lower, f3[7].upper) != (825, 828):
        errs.append(("f3", 7, "825/828"))
    for n in (2, 3, 4, 5):
        for r in bounds.bound_table("fn", 8, n):
            lo, hi = _rational_fn(n, r.k)
            # an upper bound that is a half-integer admits its floor
            if r.lower != lo or r.upper != int(hi):
                errs.append(("fn", n, r.k))
    ram = {r.k: r for r in bounds.bound_table("ramsey", 5)}
    if ram[2].exact != 9 or ram[3].exact != 13:
        errs.append("ramsey")

    # lower(k) - 1 equals the order of the matching construction
    tight = []
    for k in range(2, 8):
        fam = "f2-even" if k % 2 == 0 else "f2-odd"
        tight.append((fam, k, bounds.gr_f2(k) - 1, build(fam, k).n))
        tight.append(("f3", k, f3[k].lower - 1, build("f3", k).n))
    for kp in range(1, 8):
        g = build("f2-useful", kp // 2) if kp % 2 == 0 else build("f2-odd", kp)
        tight.append(("f2prime", kp, bounds.gr_prime_f2(kp) - 1, g.n))
    for n in (2, 3, 4, 5):
        for k in range(2, 8):
            tight.append(("fn", (n, k), bounds.gr_fn_bounds(n, k)[0] - 1, C.construct_fn(n, k).n))
    tight.append(("ramsey", 2, ram[2].lower - 1, build("f2-even", 2).n))
    tight.append(("ramsey", 3, ram[3].lower - 1, build("f3", 2).n))
    errs += [t for t in tight if t[2] != t[3]]
    record(3, not errs, f"tables exact, {len(tight)} lower-1 identities, errors {errs}")


def test_criterion_4_ramsey():
    rows = []
    for m, n, want, limit in [(1, 6, EXHAUSTED, 1), (1, 5, WITNESS, 1), (2, 8, WITNESS, 10)]:
        out = ramsey2_decide(m, n)
        ok = out.verdict == want and out.stats.elapsed < limit
        if out.witness is not None:
            ok &= all(find_mono_fan(out.witness, m, c) is None for c in (1, 2))
        rows.append((m, n, out.verdict, round(out.stats.elapsed, 2), ok))
    out = ramsey2_decide(2, 9, SearchBudget(max_seconds=600))
    rows.append((2, 9, out.verdict, round(out.stats.elapsed, 1), out.verdict == EXHAUSTED))
    record(4, all(r[-1] for r in rows), f"(m, n, verdict, seconds): {[r[:4] for r in rows]}")


def test_criterion_5_claims():
    k7 = check_fact_k7()
    f2k8 = check_claim_f2k8(SearchBudget(max_seconds=600))
    f1 = check_claim_f1(SearchBudget(max_seconds=1800))
    ok = (
        k7.verdict == EXHAUSTED
        and k7.detail["counterexamples"] == 0
        and k7.stats.elapsed < 60
        and f2k8.verdict == EXHAUSTED
        and f1.verdict == EXHAUSTED
    )
    record(
        5,
        ok,
        f"fact-k7 {k7.verdict} {k7.stats.elapsed:.1f}s ({k7.detail['instances']} sets); "
        f"f2k8 {f2k8.verdict} {f2k8.stats.elapsed:.1f}s; "
        f"claim-f1 {f1.verdict} {f1.stats.elapsed:.1f}s ({f1.detail.get('gallai_colorings')} Gallai colorings)",
    )


def test_criterion_6_oracle():
    mismatches = 0
    cases = 0
    for mask in range(1 << 10):
        g = ColoredCompleteGraph(5, 2, [1 + (mask >> i & 1) for i in range(10)])
        for m in (1, 2):
            for c in (1, 2):
                cases += 1
                mismatches += (find_mono_fan(g, m, c) is None) != (brute_fan_oracle(g, m, c) is None)
    rng = random.Random(20240601)
    for _ in range(200):
        n, k = rng.randint(2, 7), rng.randint(1, 4)
        g = ColoredCompleteGraph(n, k, [rng.randint(1, k) for _ in range(n * (n - 1) // 2)])
        for m in (1, 2, 3):
            for c in range(1, k + 1):
                cases += 1
                mismatches += (find_mono_fan(g, m, c) is None) != (brute_fan_oracle(g, m, c) is None)
    record(6, mismatches == 0, f"{cases} (graph, m, color) cases, {mismatches} mismatches")


def _random_gallai_piece(rng, k):
    s = rng.randint(1, 4)
    a, b = rng.sample(range(1, k + 1), 2)
    return ColoredCompleteGraph(s, k, [rng.choice((a, b)) for _ in range(s * (s - 1) // 2)])


def test_criterion_7_gallai():
    problems = []
    for family, k, n, _ in FAMILY_CASES:
        g = build(family, k, n)
        if g.n < 2:
            continue
        p = find_gallai_partition(g)
        if not (validate_partition(g, p) and p.num_parts >= 2 and len(quotient(g, p).colors_used()) <= 2):
            problems.append((family, k, n))
    rng = random.Random(77)
    blowups = 0
    while blowups < 100:
        k = 5
        a, b = rng.sample(range(1, k + 1), 2)
        if rng.random() < 0.5:
            red = pentagon_coloring(a, b, k)
        else:
            t = rng.randint(2, 6)
            red = ColoredCompleteGraph(t, k, [rng.choice((a, b)) for _ in range(t * (t - 1) // 2)])
        parts = [_random_gallai_piece(rng, k) for _ in range(red.n)]
        g = blow_up(red, parts)
        if find_rainbow_triangle(g) is not None:
            continue
        blowups += 1
        p = find_gallai_partition(g)
        if not (validate_partition(g, p) and p.num_parts >= 2 and len(quotient(g, p).colors_used()) <= 2):
            problems.append(("blow-up", blowups))
        offs = np.cumsum([0] + [h.n for h in parts])
        own = GallaiPartition(
            tuple(tuple(range(offs[i], offs[i + 1])) for i in range(red.n)),
            tuple(red.colors_used()),
            {(i, j): red.color(i, j) for i in range(red.n) for j in range(i + 1, red.n)},
        )
        if quotient(g, own) != red:
            problems.append(("identity", blowups))
    record(7, not problems, f"constructions and {blowups} random blow-ups, problems {problems}")


def test_criterion_8_classification():
    checked = 0
    diffs = []
    for n in range(1, 9):
        for es in graphs(n):
            checked += 1
            deg = [0] * n
            for a, b in es:
                deg[a] += 1
                deg[b] += 1
            small = max(deg, default=0) <= 2 and not any(
                len({x for e in c for x in e}) == 6 for c in itertools.combinations(es, 3)
            )
            if small != embeds_in_c4_c5_2k3(es):
                diffs.append(es)
    record(8, checked == 13598 and not diffs, f"{checked} graphs on <= 8 vertices, {len(diffs)} discrepancies")


def test_criterion_9_properties():
    rng = random.Random(9)
    fails = {}
    for name, gen in generators.GENERATORS.items():
        fails[name] = 0
        for _ in range(1000):
            g, c, m = gen(rng)
            if find_mono_fan(g, m, c) is None:
                fails[name] += 1
    boundary = (
        brute_fan_oracle(generators.deg2_boundary(), 3, 1) is None,
        brute_fan_oracle(generators.two_disjoint_boundary(), 3, 1) is None,
    )
    record(
        9,
        not any(fails.values()),
        f"1000 instances each, violations {fails}; literal size boundaries without F3 "
        f"(Deg2 |Y|=3, 2disjoint |X|=4): {boundary}",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
