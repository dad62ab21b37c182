import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jgrass.gf import (
    FieldElement, FieldError, conway_polynomial, frobenius, is_irreducible, is_primitive,
    is_subfield_rational, make_field, minimal_subfield_degree, subfield_embedding,
)

SMALL = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 2)]


@pytest.mark.parametrize("p,k", SMALL)
def test_field_axioms_exhaustive(p, k):
    F = make_field(p, k)
    els = list(F.elements())
    assert len(els) == p ** k == F.q
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.q - 1) == 1


@pytest.mark.parametrize("p,k", SMALL)
def test_generator_is_primitive(p, k):
    F = make_field(p, k)
    g = F.generator
    assert len({F.pow(g, e) for e in range(F.q - 1)}) == F.q - 1


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
@settings(max_examples=300)
def test_distributive_gf16(a, b, c):
    F = make_field(2, 4)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_same_object_for_same_parameters():
    assert make_field(2, 2) is make_field(2, 2)


def test_gf4_encoding():
    F = make_field(2, 2)
    eta = F.generator
    assert eta == 2
    assert F.inv(eta) == 3
    assert F.add(F.mul(eta, eta), F.add(eta, 1)) == 0


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)])
def test_conway_search_matches_table(p, k):
    F = make_field(p, k)
    assert tuple(F.modulus) == conway_polynomial(p, k)
    assert is_irreducible(F.modulus, p) and is_primitive(F.modulus, p)


@pytest.mark.parametrize("p,k", [(2, 4), (2, 6), (3, 4)])
def test_subfields_and_frobenius(p, k):
    F = make_field(p, k)
    for a in range(1, k + 1):
        if k % a:
            with pytest.raises(FieldError):
                F.subfield(a)
            continue
        sub = F.subfield(a)
        assert len(sub) == p ** a
        for x in sub:
            assert F.frob(x, a) == x
    x = FieldElement(F, F.generator)
    y = x
    for _ in range(k):
        y = frobenius(y, 1)
    assert y == x and frobenius(x, 1) != x
    assert not is_subfield_rational(x, 1)
    assert minimal_subfield_degree([x]) == k
    assert minimal_subfield_degree([FieldElement(F, 1)]) == 1


def test_subfield_embedding_is_homomorphism():
    small, big = make_field(2, 2), make_field(2, 4)
    emb = subfield_embedding(small, big)
    assert sorted(emb) == sorted(big.subfield(2))
    for a, b in itertools.product(range(4), repeat=2):
        assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])
        assert emb[small.add(a, b)] == big.add(emb[a], emb[b])


def test_field_element_operators():
    F = make_field(3, 2)
    x, y = FieldElement(F, 4), FieldElement(F, 7)
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * x.inverse() == FieldElement(F, 1)
    assert -x + x == FieldElement(F, 0)


def test_errors():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(2, 0)
    with pytest.raises(FieldError):
        FieldElement(make_field(2, 1), 5)
