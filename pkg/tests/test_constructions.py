import pytest

from gallai_fans import constructions as C
from gallai_fans.bounds import gr_f3_bounds, gr_fn_bounds
from gallai_fans.coloring import new_uniform
from gallai_fans.detect import count_useful_colors, find_rainbow_triangle
from gallai_fans.errors import InternalInconsistency, ParamError
from gallai_fans.gallai import blow_up, pentagon_coloring


@pytest.mark.parametrize("k, order", [(1, 4), (3, 20), (5, 100)])
def test_f2_odd(k, order):
    g = C.construct_f2_odd(k)
    assert g.n == order
    assert C.is_free(g, 2)


@pytest.mark.parametrize("i, order", [(1, 10), (2, 50)])
def test_f2_useful(i, order):
    g = C.construct_f2_useful(i)
    assert g.n == order
    assert count_useful_colors(g) == 2 * i
    assert C.is_free(g, 2)


@pytest.mark.parametrize("k, order", [(2, 8), (4, 41), (6, 207)])
def test_f2_even(k, order):
    g = C.construct_f2_even(k)
    assert g.n == order
    assert C.is_free(g, 2)


def test_f2_even_base_is_two_k4():
    k8 = blow_up(new_uniform(2, 2, 2), [new_uniform(4, 2, 1)] * 2)
    assert C.construct_f2_even(2) == k8


@pytest.mark.parametrize("k, order", [(1, 6), (2, 12), (3, 32), (4, 68), (5, 164)])
def test_f3(k, order):
    g = C.construct_f3(k)
    assert g.n == order
    assert C.is_free(g, 3)
    if k >= 2:
        assert g.n == gr_f3_bounds(k)[0] - 1


@pytest.mark.parametrize("n, k", [(5, 4), (3, 3), (1, 2), (2, 2), (4, 5)])
def test_fn(n, k):
    g = C.construct_fn(n, k)
    assert g.n == gr_fn_bounds(n, k)[0] - 1
    assert C.is_free(g, n)


def test_fn_examples():
    assert C.construct_fn(5, 4).n == 100
    assert C.construct_fn(3, 3).n == 30
    g = C.construct_fn(1, 2)
    assert g.n == 4 and g.color(0, 1) == 1 and g.color(2, 3) == 1 and g.color(0, 2) == 2


def test_spec_validation():
    with pytest.raises(ParamError):
        C.ConstructionSpec("f4", 3)
    with pytest.raises(ParamError):
        C.ConstructionSpec("fn", 3)
    assert C.ConstructionSpec("fn", 3, 4).fan_order == 4
    assert C.ConstructionSpec("f3", 3).fan_order == 3
    assert C.construct(C.ConstructionSpec("f2-odd", 3)).n == 20


def test_gadget_k8_shape():
    g = C.gadget_k8(4, 3, 5)
    assert g.n == 8
    assert all(g.color(i, (i + 1) % 5) == 4 for i in range(5))
    assert g.color(5, 6) == g.color(6, 7) == g.color(5, 7) == 3
    assert find_rainbow_triangle(g) is None


@pytest.mark.parametrize("name", ["A4P", "AJ", "G3", "F3_EVEN", "F3_ODD"])
def test_layouts_reproduce(name):
    frozen = {
        "A4P": C.A4P_LAYOUT,
        "AJ": C.AJ_LAYOUT,
        "G3": C.G3_LAYOUT,
        "F3_EVEN": C.F3_EVEN_LAYOUT,
        "F3_ODD": C.F3_ODD_LAYOUT,
    }[name]
    assert C.search_layout(name) == frozen


def _site_case(k):
    # the tree the recursion holds before building level k, and its first gadget
    if k % 2 == 0:
        tree = C._f3_tree(k - 2, palette=k)
        return tree, C.even_sites(tree), C.gadget_k8(2, k - 1, k)
    tree = C._f3_tree(k - 2, palette=k)
    return tree, C.odd_sites(tree), C.gadget_k8(k - 1, 3, k)


@pytest.mark.parametrize("k", [4, 5, 6])
def test_structural_site_is_first_detector_site(k):
    tree, structural, gadget = _site_case(k)
    assert structural
    found = C.first_valid_site(tree, C.g1_sites(tree), gadget, 3)
    assert found == structural[0]


def test_bad_site_rejected():
    tree = C._f3_tree(3, palette=5)
    bad = [s for s in C.g1_sites(tree) if s not in C.odd_sites(tree)]
    assert bad
    with pytest.raises(InternalInconsistency):
        C._replace_g1(tree, bad, C.gadget_k8(4, 3, 5))


def test_pentagon_blow_up_of_k4s():
    g = blow_up(pentagon_coloring(2, 3), [new_uniform(4, 3, 1)] * 5)
    assert C.construct_f2_odd(3) == g


def test_rejects_bad_params():
    with pytest.raises(ParamError):
        C.construct_f3(0)
    with pytest.raises(ParamError):
        C.construct_fn(0, 2)


def test_blocks_render_order():
    tree = C._f3_tree(4)
    assert tree.order == tree.render().n == 68
    for path, b in tree.walk():
        assert tree.at(path) is b
