"""Extremal Gallai colorings avoiding monochromatic fans.

Each builder returns a frozen :class:`ColoredCompleteGraph` with no rainbow
triangle and no monochromatic F_m for the family's target m:

* ``f2-odd``    -- F_2-free, k odd, order 4 * 5^((k-1)/2)
* ``f2-useful`` -- F_2-free with 2i useful colors, order 2 * 5^i
* ``f2-even``   -- F_2-free, k even, order 8 or (83 * 5^((k-4)/2) - 1) / 2
* ``f3``        -- F_3-free, order 14 * 5^((k-2)/2) - 2 or 33 * 5^((k-3)/2) - 1
* ``fn``        -- F_n-free, order 4n * 5^((k-2)/2) or 2n * 5^((k-1)/2)

The recursive families are assembled as trees of :class:`Block` so that
gadget replacements can address a sub-block by path. Vertex numbering is the
depth-first concatenation order of the tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .coloring import ColoredCompleteGraph, new_uniform
from .detect import find_mono_fan, find_rainbow_triangle
from .errors import InternalInconsistency, ParamError
from .gallai import blow_up, pentagon_coloring

FAMILIES = ("f2-odd", "f2-even", "f2-useful", "f3", "fn")

# Placements the block recursion leaves open; each is the first candidate
# (in the enumeration order of ``layout_candidates``) that the detectors
# certify free. tests/test_constructions.py re-runs the search.
A4P_LAYOUT: tuple[int, ...] = (1, 2, 3, 4, 0)       # K2 colors on pentagon(1,2); 0 is the lone K1
AJ_LAYOUT: tuple[int, ...] = (1, 2, 3, 4, -1)       # -1 stands for the K2 of color j
G3_LAYOUT: tuple[str, ...] = ("G33", "G1", "G1", "G1", "G1")
F3_EVEN_LAYOUT: tuple[str, ...] = ("X", "Y", "Y", "X", "Z")
F3_ODD_LAYOUT: tuple[str, ...] = ("P", "Q", "T", "T", "T")


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    k: int
    n: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParamError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "fn" and self.n is None:
            raise ParamError("family fn needs a fan order n")

    @property
    def fan_order(self) -> int:
        if self.family == "f3":
            return 3
        if self.family == "fn":
            return self.n
        return 2


# -- block trees -------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """A leaf graph, or a template whose vertices are substituted by children."""

    tag: str
    graph: ColoredCompleteGraph | None = None
    template: ColoredCompleteGraph | None = None
    children: tuple["Block", ...] = field(default=())

    @property
    def order(self) -> int:
        if self.graph is not None:
            return self.graph.n
        return sum(c.order for c in self.children)

    def render(self) -> ColoredCompleteGraph:
        if self.graph is not None:
            return self.graph
        return blow_up(self.template, [c.render() for c in self.children])

    def walk(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], "Block"]]:
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.walk(path + (i,))

    def at(self, path: Sequence[int]) -> "Block":
        node = self
        for i in path:
            node = node.children[i]
        return node

    def replace(self, path: Sequence[int], new: "Block") -> "Block":
        if not path:
            return new
        i = path[0]
        kids = list(self.children)
        kids[i] = kids[i].replace(path[1:], new)
        return Block(self.tag, self.graph, self.template, tuple(kids))


def leaf(tag: str, g: ColoredCompleteGraph) -> Block:
    return Block(tag, graph=g.freeze())


def node(tag: str, template: ColoredCompleteGraph, children: Sequence[Block]) -> Block:
    return Block(tag, template=template, children=tuple(children))


def _mono_k2(c: int, palette: int) -> ColoredCompleteGraph:
    return new_uniform(2, palette, c).freeze()


def is_free(g: ColoredCompleteGraph, m: int) -> bool:
    """No rainbow triangle and no monochromatic F_m in any color."""
    if find_rainbow_triangle(g) is not None:
        return False
    return all(find_mono_fan(g, m, c) is None for c in range(1, g.k + 1))


def _orders_with_check(value: int) -> int:
    if value >= 1 << 63:
        raise ParamError("order overflows 64 bits")
    return value


# -- F2 families -------------------------------------------------------------

def _pentagon_tower(base: ColoredCompleteGraph, levels: int, first_color: int, palette: int) -> ColoredCompleteGraph:
    g = base
    for i in range(levels):
        a = first_color + 2 * i
        g = blow_up(pentagon_coloring(a, a + 1, palette), [g] * 5)
    return g.freeze()


def construct_f2_odd(k: int) -> ColoredCompleteGraph:
    """Order 4 * 5^((k-1)/2), k odd: pentagon blow-ups over a color-1 K4."""
    if k < 1 or k % 2 == 0:
        raise ParamError(f"f2-odd needs odd k >= 1, got {k}")
    _orders_with_check(4 * 5 ** ((k - 1) // 2))
    return _pentagon_tower(new_uniform(4, k, 1), (k - 1) // 2, 2, k)


def construct_f2_useful(i: int) -> ColoredCompleteGraph:
    """Order 2 * 5^i with 2i useful colors; color 1 is a perfect matching."""
    if i < 1:
        raise ParamError(f"f2-useful needs i >= 1, got {i}")
    _orders_with_check(2 * 5 ** i)
    return _pentagon_tower(new_uniform(2, 2 * i + 1, 1), i, 2, 2 * i + 1)


def gadget_a(layout: Sequence[int], palette: int, j: int | None = None) -> ColoredCompleteGraph:
    """Pentagon(1, 2) blow-up of K2s in the given colors (0 means a K1).

    ``-1`` in the layout is replaced by ``j``.
    """
    parts = []
    for c in layout:
        if c == -1:
            c = j
        parts.append(new_uniform(1, palette, 1) if c == 0 else _mono_k2(c, palette))
    return blow_up(pentagon_coloring(1, 2, palette), parts).freeze()


def _f2_g2(palette: int) -> Block:
    k4 = new_uniform(4, palette, 1)
    return node("G2", _mono_k2(2, palette), [leaf("G1", k4), leaf("G1", k4)])


def _a4p_sites(tree: Block) -> list[tuple[int, ...]]:
    return [p for p, b in tree.walk() if b.tag == "A4P"]


def _f2_even_tree(k: int, a4p: Sequence[int] = A4P_LAYOUT, aj: Sequence[int] = AJ_LAYOUT) -> Block:
    g2 = _f2_g2(k)
    if k == 2:
        return g2
    # G4: five G2 copies on pentagon(3, 4), the first replaced by A'_4
    kids = [leaf("A4P", gadget_a(a4p, k))] + [g2] * 4
    tree = node("G4", pentagon_coloring(3, 4, k), kids)
    for i in range(3, k // 2 + 1):
        tree = node(f"G{2 * i}", pentagon_coloring(2 * i - 1, 2 * i, k), [tree] * 5)
        sites = _a4p_sites(tree)
        first = sites[0]
        second = next((s for s in sites if s[0] != first[0]), None)
        if second is None:
            raise InternalInconsistency("no A'_4 copy left in a second subcopy")
        tree = tree.replace(first, leaf("AJ", gadget_a(aj, k, 2 * i - 1)))
        tree = tree.replace(second, leaf("AJ", gadget_a(aj, k, 2 * i)))
    return tree


def construct_f2_even(k: int) -> ColoredCompleteGraph:
    """Order 8 for k = 2, else (83 * 5^((k-4)/2) - 1) / 2."""
    if k < 2 or k % 2:
        raise ParamError(f"f2-even needs even k >= 2, got {k}")
    if k >= 4:
        _orders_with_check((83 * 5 ** ((k - 4) // 2) - 1) // 2)
    return _f2_even_tree(k).render().freeze()


# -- F3 family ---------------------------------------------------------------

def gadget_k8(cycle_color: int, triangle_color: int, palette: int) -> ColoredCompleteGraph:
    """K8: C5 on 0..4 in ``cycle_color``, triangle on 5..7, other edges color 1."""
    g = new_uniform(8, palette, 1)
    for i in range(5):
        g.set_color(i, (i + 1) % 5, cycle_color)
    for u, v in ((5, 6), (5, 7), (6, 7)):
        g.set_color(u, v, triangle_color)
    return g.freeze()


def _f3_g1(palette: int) -> Block:
    return leaf("G1", new_uniform(6, palette, 1))


def _f3_g2(palette: int) -> Block:
    return node("G2", _mono_k2(2, palette), [_f3_g1(palette), _f3_g1(palette)])


def _f3_g3(palette: int, layout: Sequence[str] = G3_LAYOUT) -> Block:
    g33 = leaf("K8", gadget_k8(2, 3, palette))
    kids = [g33 if lab == "G33" else _f3_g1(palette) for lab in layout]
    return node("G3", pentagon_coloring(2, 3, palette), kids)


def _pristine(b: Block) -> bool:
    return all(c.tag == "G1" for c in b.children)


def even_sites(tree: Block) -> list[tuple[int, ...]]:
    """G1 leaves inside a G2 whose halves are both still G1."""
    out = []
    for p, b in tree.walk():
        if b.tag == "G2" and _pristine(b):
            out += [p + (i,) for i in range(len(b.children))]
    return out


def odd_sites(tree: Block) -> list[tuple[int, ...]]:
    """G1 leaves of an untouched G3 joined in color 2 to its K8 gadget."""
    out = []
    for p, b in tree.walk():
        if b.tag != "G3":
            continue
        labels = [c.tag for c in b.children]
        if labels.count("K8") != 1:
            continue
        g33 = labels.index("K8")
        for i, lab in enumerate(labels):
            if lab == "G1" and b.template.color(i, g33) == 2:
                out.append(p + (i,))
    return out


def g1_sites(tree: Block) -> list[tuple[int, ...]]:
    return [p for p, b in tree.walk() if b.tag == "G1"]


def first_valid_site(
    tree: Block,
    sites: Sequence[tuple[int, ...]],
    gadget: ColoredCompleteGraph,
    m: int,
) -> tuple[int, ...] | None:
    """First site whose replacement by ``gadget`` keeps the build free."""
    for s in sites:
        if is_free(tree.replace(s, leaf("K8", gadget)).render(), m):
            return s
    return None


def _replace_g1(tree: Block, sites: Sequence[tuple[int, ...]], gadget: ColoredCompleteGraph) -> Block:
    site = first_valid_site(tree, sites[:1], gadget, 3)
    if site is None:
        raise InternalInconsistency("replacement site rejected by the fan detector")
    return tree.replace(site, leaf("K8", gadget))


def _arrange(template: ColoredCompleteGraph, layout: Sequence[str], blocks: dict[str, Block], tag: str) -> Block:
    return node(tag, template, [blocks[lab] for lab in layout])


def _f3_tree(k: int, layouts: dict | None = None, palette: int | None = None) -> Block:
    lay = {"G3": G3_LAYOUT, "even": F3_EVEN_LAYOUT, "odd": F3_ODD_LAYOUT}
    lay.update(layouts or {})
    pal = k if palette is None else palette
    if k == 1:
        return _f3_g1(pal)
    if k % 2 == 0:
        tree = _f3_g2(pal)
        for i in range(2, k // 2 + 1):
            a, b = 2 * i - 1, 2 * i
            x = _replace_g1(tree, even_sites(tree), gadget_k8(2, a, pal))
            y = _replace_g1(tree, even_sites(tree), gadget_k8(2, b, pal))
            tree = _arrange(pentagon_coloring(a, b, pal), lay["even"], {"X": x, "Y": y, "Z": tree}, f"G{b}")
        return tree
    tree = _f3_g3(pal, lay["G3"])
    for i in range(2, (k - 1) // 2 + 1):
        a, b = 2 * i, 2 * i + 1
        p = _replace_g1(tree, odd_sites(tree), gadget_k8(a, 3, pal))
        q = _replace_g1(tree, odd_sites(tree), gadget_k8(b, 3, pal))
        tree = _arrange(pentagon_coloring(a, b, pal), lay["odd"], {"P": p, "Q": q, "T": tree}, f"G{b}")
    return tree


def construct_f3(k: int) -> ColoredCompleteGraph:
    """F_3-free Gallai coloring with k colors."""
    if k < 1:
        raise ParamError(f"f3 needs k >= 1, got {k}")
    if k >= 2:
        _orders_with_check(14 * 5 ** ((k - 2) // 2) if k % 2 == 0 else 33 * 5 ** ((k - 3) // 2))
    return _f3_tree(k).render().freeze()


# -- general fans ------------------------------------------------------------

def construct_fn(n: int, k: int) -> ColoredCompleteGraph:
    """F_n-free Gallai coloring: pentagon blow-ups over a color-1 K_{2n},
    doubled once in color k when k is even."""
    if n < 1 or k < 1:
        raise ParamError(f"fn needs n >= 1 and k >= 1, got n={n}, k={k}")
    _orders_with_check(2 * n * 5 ** ((k - 1) // 2) * (2 if k % 2 == 0 else 1))
    g = _pentagon_tower(new_uniform(2 * n, k, 1), (k - 1) // 2, 2, k)
    if k % 2 == 0:
        g = blow_up(_mono_k2(k, k), [g, g])
    return g.freeze()


def construct(spec: ConstructionSpec) -> ColoredCompleteGraph:
    if spec.family == "f2-odd":
        return construct_f2_odd(spec.k)
    if spec.family == "f2-even":
        return construct_f2_even(spec.k)
    if spec.family == "f2-useful":
        return construct_f2_useful(spec.k)
    if spec.family == "f3":
        return construct_f3(spec.k)
    return construct_fn(spec.n, spec.k)


# -- layout search -----------------------------------------------------------

def _distinct_perms(items: Sequence) -> list[tuple]:
    return sorted(set(itertools.permutations(items)), key=lambda p: [items.index(x) for x in p])


def _even_layout_ok(layout: Sequence[str]) -> bool:
    # X copies (triangle in color a) joined in color b, Y copies in color a
    pent = pentagon_coloring(1, 2)
    xs = [i for i, lab in enumerate(layout) if lab == "X"]
    ys = [i for i, lab in enumerate(layout) if lab == "Y"]
    return pent.color(*xs) == 2 and pent.color(*ys) == 1


def layout_candidates(name: str) -> list[tuple]:
    """Candidate placements in the order the layout search tries them."""
    if name == "A4P":
        return _distinct_perms((1, 2, 3, 4, 0))
    if name == "AJ":
        return _distinct_perms((1, 2, 3, 4, -1))
    if name == "G3":
        return _distinct_perms(("G33", "G1", "G1", "G1", "G1"))
    if name == "F3_EVEN":
        return [p for p in _distinct_perms(("X", "X", "Y", "Y", "Z")) if _even_layout_ok(p)]
    if name == "F3_ODD":
        return _distinct_perms(("P", "Q", "T", "T", "T"))
    raise KeyError(name)


def _layout_context(name: str) -> tuple[Callable[[tuple], ColoredCompleteGraph], int]:
    if name == "A4P":
        return (lambda lay: _f2_even_tree(4, a4p=lay).render(), 2)
    if name == "AJ":
        return (lambda lay: _f2_even_tree(6, aj=lay).render(), 2)
    if name == "G3":
        return (lambda lay: _f3_tree(3, {"G3": lay}).render(), 3)
    if name == "F3_EVEN":
        return (lambda lay: _f3_tree(4, {"even": lay}).render(), 3)
    if name == "F3_ODD":
        return (lambda lay: _f3_tree(5, {"odd": lay}).render(), 3)
    raise KeyError(name)


def search_layout(name: str) -> tuple | None:
    """First candidate placement whose smallest host build is free."""
    build, m = _layout_context(name)
    for lay in layout_candidates(name):
        if is_free(build(lay), m):
            return lay
    return None
