import random

import pytest

from oracles import closure
from ringgroups.errors import IncompleteTable, OutOfSpace, UnknownGenerator
from ringgroups.presentation import Presentation
from ringgroups.todd_coxeter import (
    CosetTable,
    closure_order,
    element_order,
    enumerate_cosets,
    group_order,
    quotient_by,
)
from ringgroups.words import GroupSpec, Word

# unit quaternions as integer 4-tuples, for an independent order-8 check
ONE, I, J = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)


def qmul(a, b):
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2, w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2, w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)


def test_small_orders(group):
    assert group_order(Presentation.from_strings("Z2", "tau", ["tau^2"])) == 2
    assert group_order(group("OrderHopf")) == 4
    assert group_order(group("HopfB")) == 8


def test_quaternion_table_by_brute_force(group):
    elems = {ONE}
    frontier = [ONE]
    while frontier:
        frontier = [qmul(a, g) for a in frontier for g in (I, J) if qmul(a, g) not in elems]
        elems.update(frontier)
    assert len(elems) == group_order(group("HopfB")) == 8


@pytest.mark.parametrize("name", ["RingC", "OrderHopf", "OrderHopfE", "HopfB", "HopfBQuat", "Z2"])
def test_order_matches_closure(group, name):
    t = enumerate_cosets(group(name))
    perms = list(t.generator_permutations().values())
    assert closure_order(perms) == t.index
    assert len(closure(perms, tuple(range(t.index)))) == t.index


def test_random_presentations_against_closure():
    rnd = random.Random(3)
    checked = 0
    for _ in range(60):
        rels = ["a^%d" % rnd.randint(2, 6), "b^%d" % rnd.randint(2, 4)]
        rels.append(" ".join(rnd.choice(["a", "b", "a^-1", "b^-1"]) for _ in range(rnd.randint(2, 6))))
        p = Presentation.from_strings("G", "a b", rels)
        try:
            t = enumerate_cosets(p, max_cosets=300)
        except OutOfSpace:
            continue
        if t.index > 64:
            continue
        checked += 1
        assert closure_order(list(t.generator_permutations().values())) == t.index
        assert all(t.relator_closes(r) for r in p.relators)
    assert checked >= 20


def test_table_invariants(group):
    p = group("HopfB")
    t = enumerate_cosets(p)
    for pm in t.generator_permutations().values():
        assert sorted(pm) == list(range(t.index))
    for k, row in enumerate(t.rows):
        for c, target in enumerate(row):
            assert t.rows[target][c ^ 1] == k
    assert all(t.relator_closes(r) for r in p.relators)


def test_relator_order_does_not_matter(group):
    p = group("R11")
    q = quotient_by(p, ["g_a", "g_b", "eps_C"])
    rev = Presentation(q.name, q.generators, tuple(reversed(q.relators)))
    assert group_order(q) == group_order(rev) == 16


def test_deterministic(group):
    p = group("HopfBQuat")
    assert enumerate_cosets(p).rows == enumerate_cosets(p).rows


def test_subgroup_index(group):
    p = group("HopfB")
    assert enumerate_cosets(p, [Word.parse("tau_H")]).index == 2
    assert enumerate_cosets(p, [Word.parse("tau_H^2")]).index == 4
    assert enumerate_cosets(p, [Word.parse("s"), Word.parse("tau_H")]).index == 1


def test_element_orders(group):
    t = enumerate_cosets(group("HopfB"))
    assert element_order(t, Word.parse("tau_H")) == 4
    assert element_order(t, Word()) == 1
    e = enumerate_cosets(group("OrderHopfE"))
    assert element_order(e, Word.parse("tau_H^2")) == 2
    assert element_order(e, Word.parse("ell")) == 2


def test_element_order_needs_complete_table():
    t = CosetTable(("a",), ((0, 0),), complete=False)
    with pytest.raises(IncompleteTable):
        element_order(t, Word.parse("a"))


def test_out_of_space(group):
    with pytest.raises(OutOfSpace) as info:
        enumerate_cosets(group("R11"), max_cosets=200)
    assert info.value.max_cosets == 200
    with pytest.raises(OutOfSpace):
        enumerate_cosets(group("F2"), max_cosets=50)


def test_quotients(group):
    r11 = group("R11")
    assert group_order(quotient_by(r11, ["g_a", "g_b", "eps_C", "tau_C"])) == 8
    assert group_order(quotient_by(r11, ["g_a", "g_b", "eps_C"])) == 16
    assert group_order(quotient_by(Presentation.from_strings("Z2", "tau", ["tau^2"]), ["tau"])) == 1
    with pytest.raises(UnknownGenerator):
        quotient_by(r11, ["zz"])


def test_group_spec_input():
    z2 = GroupSpec.free_abelian(["a", "b"])
    t = enumerate_cosets(z2, [Word.parse("a^3"), Word.parse("b^2")])
    assert t.index == 6


@pytest.mark.parametrize("backend", ["python", "numba"])
def test_backends_agree(group, backend):
    for name in ["HopfB", "HopfBQuat", "OrderHopfE"]:
        p = group(name)
        assert enumerate_cosets(p, backend=backend).rows == enumerate_cosets(p, backend="python").rows
    q = quotient_by(group("R11"), ["g_a", "g_b", "eps_C"])
    assert enumerate_cosets(q, backend=backend).index == 16
