import pytest

from corpus import cycle3, linear
from quiver_cy import Arrow, GradedQuiver, IceQuiver, double, ginzburg_quiver, relative_double, relative_ginzburg_quiver
from quiver_cy.errors import NameClash, UnsupportedDimension


def arrows(q):
    return {(a.name, a.source, a.target, a.degree) for a in q.arrows}


def test_double_of_a2():
    assert arrows(double(linear(2))) == {("a1", "1", "2", 0), ("a1*", "2", "1", 0)}


def test_double_without_arrows_is_unchanged():
    q = GradedQuiver(("1", "2"), ())
    assert double(q) == q


def test_double_of_three_cycle():
    assert len(double(cycle3()).arrows) == 6


def test_relative_double_all_frozen():
    q = cycle3()
    ice = IceQuiver(q, frozenset(q.vertices), frozenset(q.arrow_names))
    assert relative_double(ice) == q


def test_relative_double_a2_frozen_arrow():
    q = linear(2)
    assert relative_double(IceQuiver(q, frozenset({"1", "2"}), frozenset({"a1"}))) == q


def test_relative_double_one_frozen_arrow():
    q = cycle3()
    ice = IceQuiver(q, frozenset({"1", "2"}), frozenset({"a"}))
    assert {a.name for a in relative_double(ice).arrows} == {"a", "b", "c", "b*", "c*"}


def test_ginzburg_quiver_three_cycle():
    degrees = sorted(a.degree for a in ginzburg_quiver(cycle3(), 3).arrows)
    assert degrees == [-2] * 3 + [-1] * 3 + [0] * 3


def test_ginzburg_quiver_single_vertex_d2():
    q = GradedQuiver(("1",), ())
    assert arrows(ginzburg_quiver(q, 2)) == {("t1", "1", "1", -1)}


def test_ginzburg_quiver_a2_d2():
    got = {(a.name, a.degree) for a in ginzburg_quiver(linear(2), 2).arrows}
    assert got == {("a1", 0), ("a1*", 0), ("t1", -1), ("t2", -1)}


def test_relative_ginzburg_all_frozen():
    q = cycle3()
    ice = IceQuiver(q, frozenset(q.vertices), frozenset(q.arrow_names))
    assert relative_ginzburg_quiver(ice, 3) == q


def test_relative_ginzburg_a2_one_frozen_vertex():
    q = linear(2)
    added = {a.name for a in relative_ginzburg_quiver(IceQuiver(q, frozenset({"1"})), 3).arrows} - {"a1"}
    assert added == {"a1*", "t2"}


def test_relative_ginzburg_three_cycle_frozen_c():
    q = cycle3()
    g = relative_ginzburg_quiver(IceQuiver(q, frozenset({"3", "1"}), frozenset({"c"})), 3)
    added = arrows(g) - arrows(q)
    assert added == {("a*", "2", "1", -1), ("b*", "3", "2", -1), ("t2", "2", "2", -2)}


def test_name_clash_is_reported():
    with pytest.raises(NameClash):
        GradedQuiver(("1",), (Arrow("a", "1", "1"), Arrow("a", "1", "1")))
    with pytest.raises(NameClash):
        ginzburg_quiver(GradedQuiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("a*", "2", "1"))), 3)


def test_unsupported_dimension():
    with pytest.raises(UnsupportedDimension):
        ginzburg_quiver(cycle3(), 4)
