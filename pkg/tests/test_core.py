"""Category representation: construction, validation, counting."""

import math

import pytest
from hypothesis import given

from relcat.core import (
    CostGuard,
    CostGuardExceeded,
    RelCategory,
    RelFunctor,
    count_functors,
    enumerate_functors,
    exponential,
    find_isomorphism,
    inclusion_functor,
    karrow,
    make_maximal,
    opposite_functor,
    terminal_category,
)
from relcat.gen import rel_poset_strategy


def diamond():
    return RelCategory.from_poset(
        "abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")], [("b", "d")]
    )


def test_poset_closure_and_covers():
    c = RelCategory.from_poset([0, 1, 2], [(0, 1), (1, 2)])
    assert c.leq(0, 2)
    assert sorted(c.covers()) == [(0, 1), (1, 2)]
    assert c.n_morphisms() == 6


def test_poset_antisymmetry_rejected():
    with pytest.raises(ValueError):
        RelCategory.from_poset([0, 1], [(0, 1), (1, 0)])


def test_we_must_be_closed_unless_asked():
    rels = [(0, 1), (1, 2), (0, 2)]
    with pytest.raises(ValueError):
        RelCategory.from_poset([0, 1, 2], rels, [(0, 1), (1, 2)])
    c = RelCategory.from_poset([0, 1, 2], rels, [(0, 1), (1, 2)], close_we=True)
    assert c.is_we((0, 2))
    c.validate()


def test_we_outside_order_rejected():
    with pytest.raises(ValueError):
        RelCategory.from_poset([0, 1], [(0, 1)], [(1, 0)])


def test_table_unit_laws_filled_in():
    c = RelCategory.from_table(
        ["x"], {"e": ("x", "x"), "i": ("x", "x")}, {"x": "i"}, {("e", "e"): "e"}
    )
    c.validate()
    assert c.compose("e", "i") == "e"
    assert c.compose("i", "e") == "e"


def test_table_missing_composite_reported():
    c = RelCategory.from_table(
        [0, 1, 2],
        {"f": (0, 1), "g": (1, 2), "i0": (0, 0), "i1": (1, 1), "i2": (2, 2)},
        {0: "i0", 1: "i1", 2: "i2"},
        {},
    )
    report = c.validation_report()
    assert any("composite" in line for line in report)


def test_karrow_shapes():
    assert karrow(2, "minimal").n_we_morphisms() == 3  # identities only
    m = karrow(2, "maximal")
    assert m.n_we_morphisms() == m.n_morphisms() == 6
    assert m.is_maximal() and not m.is_minimal()


def test_opposite_involution_on_diamond():
    d = diamond()
    assert d.opposite().opposite().same_structure(d)
    assert d.opposite().leq("d", "a")
    assert d.opposite().is_we(("d", "b"))


def test_product_matches_grid():
    from relcat.bisimplicial import grid_category

    p = karrow(1, "minimal").product(karrow(2, "maximal"))
    assert p.same_structure(grid_category(1, 2))
    # we of the product is componentwise
    assert p.is_we(((0, 0), (0, 2)))
    assert not p.is_we(((0, 0), (1, 0)))


def test_as_table_round_trip():
    d = diamond()
    t = d.as_table()
    assert not t.is_poset_backed
    t.validate()
    assert t.as_poset().same_structure(d)


def test_same_structure_ignores_object_order():
    a = RelCategory.from_poset([0, 1], [(0, 1)], [(0, 1)])
    b = RelCategory.from_poset([1, 0], [(0, 1)], [(0, 1)])
    assert a.same_structure(b)
    assert not a.same_structure(karrow(1, "minimal"))


# a functor count with a closed form: monotone maps from an n x n grid to
# the 2-chain are up-sets, counted by the central binomial coefficient
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_grid_upset_count(n):
    grid = karrow(n, "minimal").product(karrow(n, "minimal"))
    want = math.comb(2 * n + 2, n + 1)
    assert count_functors(grid, karrow(1, "minimal")) == want


def test_we_collapse_constraint():
    # a functor out of the weak arrow into a minimal target must collapse it
    fs = list(enumerate_functors(karrow(1, "maximal"), karrow(1, "minimal")))
    assert len(fs) == 2
    assert all(f(0) == f(1) for f in fs)


def test_guard_refusal_carries_lower_bound():
    antichain = RelCategory.from_poset(range(8), [])
    with pytest.raises(CostGuardExceeded) as exc:
        enumerate_functors(
            antichain, karrow(1, "maximal"), guard=CostGuard(100, 100)
        )
    assert exc.value.lower_bound is not None
    assert exc.value.lower_bound > 100


def test_exponential_object_count():
    e = exponential(karrow(1, "minimal"), karrow(1, "maximal"))
    assert e.n_objects == 3
    e.validate()
    with pytest.raises(TypeError):
        exponential(karrow(1, "minimal").as_table(), karrow(1, "maximal"))


def test_find_isomorphism_distinguishes_we():
    assert find_isomorphism(karrow(1, "maximal"), karrow(1, "minimal")) is None
    iso = find_isomorphism(diamond(), diamond().relabel(lambda x: x * 2))
    assert iso is not None
    iso.validate()


def test_functor_validate_checks_we():
    with pytest.raises(AssertionError):
        RelFunctor(
            karrow(1, "maximal"), karrow(1, "minimal"), {0: 0, 1: 1}
        ).validate()


def test_inclusion_must_reflect_we():
    amb = karrow(1, "maximal")
    sub = karrow(1, "minimal")
    f = RelFunctor(sub, amb, {0: 0, 1: 1})
    f.validate()  # fine as a functor
    from relcat.core import is_relative_inclusion

    assert not is_relative_inclusion(f)
    assert is_relative_inclusion(
        inclusion_functor(amb.full_subcategory([0, 1]), amb)
    )


def test_terminal_category_is_unit_for_product():
    d = diamond()
    p = d.product(terminal_category())
    assert p.n_objects == d.n_objects
    assert find_isomorphism(p, d) is not None


@given(rel_poset_strategy(max_objects=6))
def test_poset_validates_and_opposite_round_trips(c):
    c.validate()
    assert c.opposite().opposite().same_structure(c)
    assert c.n_we_morphisms() == c.opposite().n_we_morphisms()


@given(rel_poset_strategy(max_objects=5))
def test_relabel_preserves_structure_up_to_iso(c):
    r = c.relabel(lambda x: f"v{x}")
    r.validate()
    assert find_isomorphism(c, r) is not None


@given(rel_poset_strategy(max_objects=5))
def test_make_maximal_dominates(c):
    m = make_maximal(c)
    m.validate()
    assert m.n_we_morphisms() == m.n_morphisms()
    assert opposite_functor(RelFunctor.identity(m)).dom.same_structure(
        m.opposite()
    )
