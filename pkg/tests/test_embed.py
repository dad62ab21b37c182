import itertools

import pytest

from jgrass.checks import exterior_square
from jgrass.embed import (
    embedding_dim, klein_inverse, klein_point, klein_transport, lie_embed, line_of_klein_point,
    matrix_trace, plucker, to_klein, wedge_basis_change,
)
from jgrass.gf import make_field
from jgrass.grassmann import GeometrySpec, make_geometry
from jgrass.linalg import subspaces
from jgrass.quadform import HyperbolicSpace

F2, F3, F4 = make_field(2, 1), make_field(3, 1), make_field(2, 2)


@pytest.mark.parametrize("F,n", [(F2, 3), (F3, 2), (F2, 2), (F4, 2)])
def test_lie_embedding_injective_trace_zero_full_rank(F, n):
    G = make_geometry(GeometrySpec("A", n, F, (1, n)))
    pts = G.enumerate_points()
    imgs = [lie_embed(P) for P in pts]
    assert len(set(imgs)) == len(pts)
    assert all(matrix_trace(F, M, n + 1) == 0 for M in imgs)
    assert embedding_dim(pts) == (n + 1) ** 2 - 1


def test_lie_embedding_maps_lines_to_lines():
    G = make_geometry(GeometrySpec("A", 3, F2, (1, 3)))
    for P in G.enumerate_points()[:20]:
        for L in G.lines_through_point(P):
            sh = G.line_shadow(L)
            assert embedding_dim(sh) == 2


@pytest.mark.parametrize("F", [F2, F3, F4])
def test_klein_quadric(F):
    S = HyperbolicSpace(F, 3)
    B = wedge_basis_change(F)
    for L in subspaces(F, 4, 2):
        X = klein_point(L)
        assert S.q_value(X.rows[0]) == 0
        assert line_of_klein_point(X) == L
        p = plucker(L)
        Bp = tuple(_dot(F, row, p) for row in B)
        assert Bp == to_klein(F, p)


def _dot(F, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def test_klein_transport_is_bijection_gf2():
    A = make_geometry(GeometrySpec("A", 3, F2, (1, 3)))
    D = make_geometry(GeometrySpec("D", 3, F2, ("+", "-")))
    image = [klein_transport(P) for P in A.enumerate_points()]
    assert set(image) == set(D.enumerate_points())
    assert all(klein_inverse(Q) == P for P, Q in zip(A.enumerate_points(), image))


def test_klein_transport_preserves_lines_gf2():
    A = make_geometry(GeometrySpec("A", 3, F2, (1, 3)))
    D = make_geometry(GeometrySpec("D", 3, F2, ("+", "-")))
    pts = A.enumerate_points()
    for P, Q in itertools.islice(itertools.combinations(pts, 2), 3000):
        la = A.line_through(P, Q) is not None
        ld = D.line_through(klein_transport(P), klein_transport(Q)) is not None
        assert la == ld


def test_exterior_rationality_exhaustive():
    r = exterior_square()
    assert r["verdict"]
    assert r["part1_lines"] == {"subspaces": 357, "rational": 35, "violations": 0}
    assert r["part2_points"]["subspaces"] == r["part3_planes"]["subspaces"] == 85
