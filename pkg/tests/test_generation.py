import random

import pytest

from jgrass.generation import (
    closure, extend_to_generating, generates, greedy_generating_set, k0_generated, minimal_coordinate_field,
)
from jgrass.gf import make_field
from jgrass.grassmann import GeometrySpec, make_geometry
from jgrass.rational_geom import RationalContext, omega_predicate, rational_points

F2, F4 = make_field(2, 1), make_field(2, 2)


def naive_closure(seed, G):
    """Reference fixpoint: add shadows of all lines through pairs until stable."""
    S = set(seed)
    changed = True
    while changed:
        changed = False
        for P in list(S):
            for L in G.lines_through_point(P):
                sh = G.line_shadow(L)
                if sum(1 for X in sh if X in S) >= 2 and not all(X in S for X in sh):
                    S.update(sh)
                    changed = True
    return S


@pytest.mark.parametrize("family,n,J", [("A", 3, "1,3"), ("D", 3, "+,-"), ("A", 3, "2")])
def test_closure_matches_naive(family, n, J):
    G = make_geometry(GeometrySpec(family, n, F2, J))
    pts = G.enumerate_points()
    rng = random.Random(3)
    for size in (2, 3, 5):
        seed = rng.sample(pts, size)
        assert closure(seed, G).closure == naive_closure(seed, G)


def test_rational_closure_a3_f4():
    c = RationalContext(GeometrySpec("A", 3, F4, "1,3"), 1)
    gen, res = k0_generated(c, certify=omega_predicate(c))
    assert gen is False and res.saturated
    assert len(res.closure) == 665 and res.added_per_round == [420, 140] and res.rounds == 2
    assert not res.violations
    assert minimal_coordinate_field(rational_points(c)) == 1


def test_thread_independence_and_idempotence():
    c = RationalContext(GeometrySpec("D", 3, F4, "+,-"), 1)
    seed = rational_points(c)
    a = closure(seed, c.geometry)
    b = closure(seed, c.geometry, threads=3, chunk_size=11)
    assert a.closure == b.closure and a.added_per_round == b.added_per_round
    assert closure(a.closure, c.geometry).rounds == 0


def test_budgets():
    c = RationalContext(GeometrySpec("A", 3, F4, "1,3"), 1)
    seed = rational_points(c)
    r = closure(seed, c.geometry, max_points=150)
    assert not r.saturated and len(r.closure) < 665
    r = closure(seed, c.geometry, time_limit=0.0)
    assert not r.saturated
    r = closure(seed, c.geometry, stop_at=200)
    assert len(r.closure) >= 200


def test_incremental_base_equals_fresh():
    G = make_geometry(GeometrySpec("A", 3, F2, "1,3"))
    pts = G.enumerate_points()
    base = closure(pts[:3], G, keep_state=True)
    inc = closure([pts[50]], G, base=base)
    assert inc.closure == closure(pts[:3] + [pts[50]], G).closure


def test_rank_search_small():
    G = make_geometry(GeometrySpec("A", 2, F2, "1,2"))
    rs = greedy_generating_set(G, rng_seed=0, restarts=5, target=8)
    assert rs.size == 8
    assert generates(rs.seed, G)


def test_extend_rational_points():
    c = RationalContext(GeometrySpec("A", 3, F4, "1,3"), 1)
    extra = extend_to_generating(rational_points(c), c.geometry, max_extra=1)
    assert extra is not None and len(extra) == 1
    assert generates(rational_points(c) + extra, c.geometry)
