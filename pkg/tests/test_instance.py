from fractions import Fraction

import pytest
from hypothesis import given

from conftest import complete, cycle, instances, tripartite333
from listcolor.instance import (
    FULL,
    InstanceError,
    build_instance,
    check_hypothesis,
    colors_of,
    disjoint_union,
    list3_neighbor_count,
    measure,
    to_mask,
    verify_assignment,
)
from listcolor.reductions import assign_color, restrict


def test_single_vertex():
    inst = build_instance(["a"], [], {"a": [1]})
    assert len(inst) == 1
    assert inst.list_of("a") == (1,)
    assert not inst.trivially_unsat


def test_self_loop_rejected():
    with pytest.raises(InstanceError, match="self-loop"):
        build_instance(["a"], [("a", "a")])


def test_unknown_vertex_rejected():
    with pytest.raises(InstanceError, match="unknown"):
        build_instance(["a"], [("a", "b")])


def test_bad_color_rejected():
    with pytest.raises(InstanceError):
        build_instance(["a"], [], {"a": [4]})


def test_reversed_duplicates_collapse():
    inst = build_instance(["a", "b"], [("a", "b"), ("b", "a"), ("a", "b")])
    assert inst.num_edges() == 1
    assert inst.edges() == [("a", "b")]


def test_empty_list_is_flagged_not_raised():
    inst = build_instance([1, 2], [(1, 2)], {1: []})
    assert inst.trivially_unsat


def test_mask_roundtrip():
    for m in range(8):
        assert to_mask(colors_of(m)) == m


def _sized(n3, n2, n1):
    lists = {}
    v = 0
    for size, count in ((3, n3), (2, n2), (1, n1)):
        for _ in range(count):
            lists[v] = list(range(1, size + 1))
            v += 1
    return build_instance(range(v), [], lists)


@pytest.mark.parametrize(
    "n3,n2,n1,expected",
    [(4, 3, 0, Fraction(11, 2)), (0, 0, 0, Fraction(0)), (0, 6, 0, Fraction(3)), (1, 1, 5, Fraction(3, 2))],
)
def test_measure(n3, n2, n1, expected):
    mu = measure(_sized(n3, n2, n1))
    assert mu == expected
    assert isinstance(mu, Fraction)


def test_list3_neighbor_count():
    star = build_instance(range(7), [(0, i) for i in range(1, 7)])
    assert list3_neighbor_count(star, 0) == 6
    assert list3_neighbor_count(build_instance([0], []), 0) == 0
    inst = build_instance(range(4), [(0, 1), (0, 2), (0, 3)], {1: [1, 2], 2: [1, 3]})
    assert list3_neighbor_count(inst, 0) == 1
    with pytest.raises(InstanceError):
        list3_neighbor_count(inst, 99)


def test_check_hypothesis():
    assert check_hypothesis(complete(7)) == set()
    star = build_instance(range(4), [(0, 1), (0, 2), (0, 3)], {i: [1, 2] for i in (1, 2, 3)})
    assert check_hypothesis(star) == set()
    star3 = build_instance(range(4), [(0, 1), (0, 2), (0, 3)])
    # the leaves are low-degree 3-list vertices too
    assert check_hypothesis(star3) == {0, 1, 2, 3}
    assert 0 in check_hypothesis(star3)


def test_verify_assignment():
    p3 = build_instance("uvw", [("u", "v"), ("v", "w")], {x: [1, 2] for x in "uvw"})
    assert verify_assignment(p3, {"u": 1, "v": 2, "w": 1})
    assert not verify_assignment(p3, {"u": 1, "v": 1, "w": 2})
    assert not verify_assignment(p3, {"u": 3, "v": 2, "w": 1})
    tri = cycle(3, {i: [1, 2] for i in range(3)})
    assert not any(
        verify_assignment(tri, {0: a, 1: b, 2: c}) for a in (1, 2) for b in (1, 2) for c in (1, 2)
    )
    assert verify_assignment(tripartite333(), {v: v // 3 + 1 for v in range(9)})
    with pytest.raises(InstanceError):
        verify_assignment(p3, {"u": 1})


@given(instances(), instances())
def test_measure_additive(a, b):
    assert measure(disjoint_union(a, b)) == measure(a) + measure(b)


@given(instances(max_n=7, masks=[FULL, 3, 5, 6]))
def test_measure_drops(inst):
    for v in inst.vertices:
        m = inst.lists[v]
        if m == FULL:
            assert measure(inst) - measure(restrict(inst, v, 0b011)) == Fraction(1, 2)
            # removing v with its color 3 also shrinks 3-list neighbors
            after = assign_color(inst, v, 3)
            drop = 1 + Fraction(sum(1 for u in inst.adj[v] if inst.lists[u] & 0b100 and inst.lists[u] != 0b100), 2)
            assert measure(inst) - measure(after) == drop
        else:
            assert measure(inst) - measure(restrict(inst, v, m & -m)) == Fraction(1, 2)


@given(instances(max_n=9))
def test_min_degree_six_means_no_violations(inst):
    if all(inst.degree(v) >= 6 for v in inst.vertices):
        assert check_hypothesis(inst) == set()
