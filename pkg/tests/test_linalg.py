import random

import pytest
from hypothesis import given, settings, strategies as st

from jgrass.gf import make_field
from jgrass.linalg import (
    annihilator, between, complement_basis, conjugate, extend, galois_orbit, gaussian_binomial,
    is_rational, eta_descent_holds, meet, pencil, random_between, rank, rational_closure,
    rational_interior, reduce_against, rref, span, subspaces, sum_, unit, whole, zero,
)

F4 = make_field(2, 2)
F3 = make_field(3, 1)


def vec_lists(F, N, max_rows=4):
    return st.lists(st.lists(st.integers(0, F.q - 1), min_size=N, max_size=N), max_size=max_rows)


def _meet_by_annihilators(U, V):
    return annihilator(sum_(annihilator(U), annihilator(V)))


@given(vec_lists(F4, 5), vec_lists(F4, 5))
@settings(max_examples=200)
def test_meet_against_annihilator_formula(a, b):
    U, V = span(a, F4, 5), span(b, F4, 5)
    M = meet(U, V)
    assert M == _meet_by_annihilators(U, V)
    assert M.dim + sum_(U, V).dim == U.dim + V.dim


@given(vec_lists(F3, 4, 6))
@settings(max_examples=200)
def test_rref_canonical_and_idempotent(a):
    U = span(a, F3, 4)
    rows, piv = rref(F3, U.rows, 4)
    assert rows == U.rows and piv == U.pivots
    shuffled = list(a)
    random.Random(1).shuffle(shuffled)
    assert span(shuffled, F3, 4) == U
    assert U.dim == rank(F3, a) if a else U.dim == 0
    for r, c in zip(U.rows, U.pivots):
        assert r[c] == 1
        assert all(r[j] == 0 for j in range(c))


@pytest.mark.parametrize("F,N", [(make_field(2, 1), 4), (F4, 3), (F3, 3), (F4, 4)])
def test_enumeration_counts(F, N):
    for d in range(N + 1):
        found = list(subspaces(F, N, d))
        assert len(found) == gaussian_binomial(N, d, F.q)
        assert len(set(found)) == len(found)


def test_between_counts():
    F = F4
    X = span([unit(5, 0)], F, 5)
    W = span([unit(5, i) for i in range(4)], F, 5)
    for d in range(1, 5):
        got = list(between(X, W, d))
        assert len(got) == gaussian_binomial(3, d - 1, F.q)
        assert all(X <= Y <= W for Y in got)


def test_pencil_matches_between():
    rng = random.Random(5)
    F = F4
    for _ in range(50):
        W = random_between(zero(F, 5), whole(F, 5), rng.randint(2, 5), rng)
        X = random_between(zero(F, 5), W, W.dim - 2, rng)
        got = pencil(X, W)
        assert len(got) == F.q + 1
        assert set(got) == set(between(X, W, X.dim + 1))


def test_complement_and_extend():
    rng = random.Random(2)
    for _ in range(30):
        W = random_between(zero(F4, 6), whole(F4, 6), 4, rng)
        X = random_between(zero(F4, 6), W, 2, rng)
        c = complement_basis(X, W)
        assert len(c) == 2 and sum_(X, span(c, F4, 6)) == W
        w = reduce_against(X, c[0])
        lead = next(x for x in w if x)
        w = [F4.mul(F4.inv(lead), x) for x in w]
        assert extend(X, w) == sum_(X, span([c[0]], F4, 6))


def test_annihilator_dimension():
    rng = random.Random(9)
    for _ in range(40):
        U = random_between(zero(F3, 5), whole(F3, 5), rng.randint(0, 5), rng)
        A = annihilator(U)
        assert A.dim == 5 - U.dim
        assert all(sum(x * y for x, y in zip(u, v)) % 3 == 0 for u in U.rows for v in A.rows)
        assert annihilator(A) == U


def test_rational_closure_and_interior():
    F = make_field(2, 4)
    rng = random.Random(3)
    for a in (1, 2):
        for _ in range(40):
            U = random_between(zero(F, 4), whole(F, 4), rng.randint(1, 3), rng)
            c, i = rational_closure(U, a), rational_interior(U, a)
            assert i <= U <= c
            assert is_rational(c, a) and is_rational(i, a)
            orbit = galois_orbit(U, a)
            assert len(orbit) in (1, 2, 4) and (len(orbit) == 1) == is_rational(U, a)
            assert conjugate(conjugate(U, a), 4 - a if a != 4 else a) == U if a == 2 else True


def test_rational_subspaces_are_frobenius_fixed():
    F = make_field(2, 2)
    rat = set(subspaces(F, 3, 2, scalars=F.subfield(1)))
    allsp = [U for U in subspaces(F, 3, 2) if is_rational(U, 1)]
    assert rat == set(allsp) and len(rat) == 7


def test_lemma32_examples():
    F = F4
    eta = F.generator
    v = [1, eta, 0, 0]
    assert eta_descent_holds(span([v], F, 4), 1, 0, 1, eta)
    assert eta_descent_holds(span([unit(4, 0), unit(4, 1)], F, 4), 1, 0, 1, eta)
