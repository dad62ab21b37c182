import random

import pytest

from jgrass.checks import omega_oracle
from jgrass.gf import make_field
from jgrass.grassmann import GeometrySpec
from jgrass.linalg import is_rational
from jgrass.quadform import HyperbolicSpace
from jgrass.rational_geom import (
    RationalContext, check_at_hypothesis, iota, iota_inverse, is_rational_point, nearly_rational,
    nearly_rational_at, nearly_rational_at_bruteforce, nearly_rational_bruteforce, rational_points,
    witness_at, witness_outside_omega,
)

F4 = make_field(2, 2)


def ctx(family, n, J, F=F4, a=1):
    return RationalContext(GeometrySpec(family, n, F, J), a)


SUPPORTED = [
    ("A", 3, "1,3"), ("A", 4, "1,3"), ("A", 4, "1,4"), ("A", 4, "2,4"), ("A", 5, "2,5"),
    ("D", 3, "+,-"), ("D", 3, "1,+,-"), ("D", 3, "1,-"), ("D", 3, "1,+"),
    ("D", 4, "+,-"), ("D", 4, "1,-"), ("D", 4, "1,+"), ("D", 4, "1,+,-"),
    ("D", 5, "+,-"), ("D", 5, "1,-"), ("D", 5, "1,3"), ("D", 5, "1,+,-"),
    ("B", 3, "2"), ("B", 4, "3"),
]


@pytest.mark.parametrize("family,n,J", SUPPORTED)
def test_witness_outside_omega(family, n, J):
    c = ctx(family, n, J)
    W = witness_outside_omega(c)
    assert c.geometry.is_point(W)
    assert not nearly_rational(W, c)
    if family != "B" and n <= 4:
        assert not nearly_rational_bruteforce(W, c)


def test_witness_over_gf16():
    c = ctx("A", 3, "1,3", make_field(2, 4), 2)
    W = witness_outside_omega(c)
    assert not nearly_rational(W, c) and not nearly_rational_bruteforce(W, c)


def test_oracle_exhaustive_a3():
    r = omega_oracle(family="A", n=3, J="1,3")
    assert r["mode"] == "exhaustive" and r["points"] == 1785
    assert r["omega"] == 665 and r["disagreements"] == 0


@pytest.mark.parametrize("J", ["+,-", "1,-", "1,+,-"])
def test_oracle_sampled_d4(J):
    r = omega_oracle(family="D", n=4, J=J, samples=1000)
    assert r["points"] >= 1000 and r["disagreements"] == 0 and 0 < r["omega"] < r["points"]


def test_oracle_omega_at_a4():
    c = ctx("A", 4, "1,3")
    rng = random.Random(7)
    for _ in range(200):
        P = c.geometry.random_point(rng)
        assert nearly_rational_at(P, c, 1, 3) == nearly_rational_at_bruteforce(P, c, 1, 3)
    W = witness_at(c, 1, 3)
    assert not nearly_rational_at(W, c, 1, 3)


def test_rational_points_are_nearly_rational():
    c = ctx("D", 3, "1,+,-")
    pts = rational_points(c)
    assert len(pts) == 315
    assert all(is_rational_point(P, c) and nearly_rational(P, c) for P in pts)


def test_iota_round_trip_and_rationality():
    S = HyperbolicSpace(F4, 3)
    for X in S.totally_singular(2):
        P = iota(X, S)
        assert P.types == ("+", "-")
        assert iota_inverse(P, S) == X
        assert is_rational(X, 1) == (is_rational(P["+"], 1) and is_rational(P["-"], 1))


def test_context_validation():
    with pytest.raises(ValueError):
        ctx("A", 3, "1,3", F4, 2)
    with pytest.raises(ValueError):
        ctx("A", 3, "1,3", make_field(2, 3), 2)
    with pytest.raises(ValueError):
        check_at_hypothesis(ctx("A", 4, "1,3").geometry, 1, 2)
    with pytest.raises(ValueError):
        witness_outside_omega(ctx("A", 3, "1,2"))
