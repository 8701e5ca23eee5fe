import random
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import abelian_counts, det, determinant_divisors
from ringgroups.abelianization import (
    AbelianInvariants,
    IntMatrix,
    abelianization,
    relation_matrix,
    smith_normal_form,
)
from ringgroups.errors import OutOfSpace
from ringgroups.presentation import Presentation
from ringgroups.todd_coxeter import enumerate_cosets

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)))


def check_snf(rows):
    m = IntMatrix(rows)
    d, u, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert d.is_diagonal()
    assert abs(det(u.tolist())) == 1 and abs(det(v.tolist())) == 1
    diag = d.diagonal()
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return diag


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_properties(rows):
    diag = check_snf(rows)
    factors, rank = determinant_divisors(rows, len(rows[0]))
    assert [x for x in diag if x] == factors
    assert sum(1 for x in diag if x) == rank


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_snf_permutation_invariant(rows, rnd):
    shuffled = [r[:] for r in rows]
    rnd.shuffle(shuffled)
    cols = list(range(len(rows[0])))
    rnd.shuffle(cols)
    shuffled = [[r[c] for c in cols] for r in shuffled]
    assert smith_normal_form(IntMatrix(rows))[0].diagonal() == smith_normal_form(IntMatrix(shuffled))[0].diagonal()


def test_snf_examples():
    assert check_snf([[2, 0], [0, 2]]) == [2, 2]
    assert check_snf([[0]]) == [0]
    assert check_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_snf_big_entries():
    rows = [[10**30, 3], [7, 10**25]]
    check_snf(rows)


def test_quaternion_relation_matrix(group):
    p = group("HopfBQuat")
    inv = abelianization(p)
    assert inv == AbelianInvariants((2, 2), 0)
    t = enumerate_cosets(p)
    q, counts = abelian_counts(list(t.generator_permutations().values()))
    assert q == 4 and counts[1] == 4


@pytest.mark.parametrize("name, expected", [
    ("RingC", "Z/2"),
    ("OrderHopf", "Z/4"),
    ("HopfB", "Z/2 + Z/2"),
    ("F2", "Z^2"),
    ("A", "Z^3"),
    ("R11", "Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2"),
    ("R11_theorem_literal", "Z + Z/2 + Z/2 + Z/2 + Z/2 + Z/2"),
])
def test_corpus_invariants(group, name, expected):
    assert str(abelianization(group(name))) == expected


@pytest.mark.parametrize("name", ["R11", "R11_theorem_literal", "HopfB", "Presentation_H"])
def test_determinant_divisor_oracle(group, name):
    p = group(name)
    m = relation_matrix(p)
    factors, rank = determinant_divisors(m.tolist(), m.cols)
    inv = abelianization(p)
    assert inv.torsion == tuple(x for x in factors if x > 1)
    assert inv.free_rank == m.cols - rank


@pytest.mark.parametrize("name", ["RingC", "OrderHopf", "OrderHopfE", "HopfB", "HopfBQuat", "Z2"])
def test_matches_permutation_model(group, name):
    p = group(name)
    t = enumerate_cosets(p)
    q, counts = abelian_counts(list(t.generator_permutations().values()))
    inv = abelianization(p)
    assert inv.free_rank == 0 and inv.order == q
    assert counts == [prod(gcd(k, d) for d in inv.torsion) for k in range(1, q + 1)]


def test_random_finite_presentations():
    rnd = random.Random(7)
    tested = 0
    for _ in range(30):
        rels = [" ".join(f"{rnd.choice('xy')}^{rnd.choice([1, 2, 3, -1, -2])}" for _ in range(rnd.randint(1, 4)))
                for _ in range(2)]
        p = Presentation.from_strings("G", "x y", rels + ["x^4", "y^6"])
        try:
            t = enumerate_cosets(p, max_cosets=500)
        except OutOfSpace:
            continue
        if t.index > 64:
            continue
        tested += 1
        q, counts = abelian_counts(list(t.generator_permutations().values()))
        inv = abelianization(p)
        assert inv.order == q
        assert counts == [prod(gcd(k, d) for d in inv.torsion) for k in range(1, q + 1)]
    assert tested >= 10


def test_invariants_format():
    assert str(AbelianInvariants((), 0)) == "0"
    assert str(AbelianInvariants((2, 4), 2)) == "Z^2 + Z/2 + Z/4"
    assert AbelianInvariants((2, 4), 1).order is None


def test_matrix_shape_checks():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    assert IntMatrix([], 3).cols == 3
