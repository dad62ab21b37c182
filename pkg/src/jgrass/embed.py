"""The Lie embedding of Gr_{1,n}(A_n) and the Klein correspondence A_3 ~ D_3.

e_Lie sends a point-hyperplane flag (p, H) to the rank-one trace-zero matrix
v * phi, where p = <v> and H = ker(phi).  Matrices are flattened row-major and
scaled so the first nonzero entry is 1.

Plucker coordinates of a 2-space <u, w> of K^4 use the ordered basis
(e12, e13, e14, e23, e24, e34).  The fixed change of basis to the hyperbolic
coordinates of the 6-space is

    x1 = p12, x2 = p34, x3 = p13, x4 = -p24, x5 = p14, x6 = p23,

which turns the Klein relation p12 p34 - p13 p24 + p14 p23 into
x1 x2 + x3 x4 + x5 x6.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .building import Flag
from .gf import FieldSpec
from .linalg import LinalgError, Subspace, annihilator, is_rational, meet, rank, span, unit

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _normalize(F: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
    for x in v:
        if x:
            inv = F.inv(x)
            return tuple(F.mul(inv, y) for y in v)
    raise LinalgError("zero vector has no projective point")


# -- e_Lie -----------------------------------------------------------------------

def lie_embed(P: Flag) -> tuple[int, ...]:
    """Normalized flattened matrix v * phi for the (1, n)-flag P = (p, H)."""
    if len(P.types) != 2 or P.types[0] != 1:
        raise LinalgError("lie_embed needs a (1, n)-flag")
    p, H = P.bodies
    N = p.ambient_dim
    if p.dim != 1 or H.dim != N - 1 or not H.contains(p.rows[0]):
        raise LinalgError("not a point-hyperplane flag")
    F = p.field
    v = p.rows[0]
    phi = annihilator(H).rows[0]
    return _normalize(F, [F.mul(a, b) for a in v for b in phi])


def matrix_trace(F: FieldSpec, M: Sequence[int], size: int) -> int:
    acc = 0
    for i in range(size):
        acc = F.add(acc, M[i * size + i])
    return acc


def embedding_dim(points: Iterable[Flag]) -> int:
    """Vector dimension of the span of the e_Lie images."""
    points = list(points)
    if not points:
        return 0
    F = points[0].bodies[0].field
    return rank(F, [lie_embed(P) for P in points])


# -- Plucker and Klein -------------------------------------------------------------

def plucker(U: Subspace) -> tuple[int, ...]:
    """Plucker vector of a 2-space of K^4 (unnormalized, from its RREF rows)."""
    if U.dim != 2 or U.ambient_dim != 4:
        raise LinalgError("wedge needs a 2-dimensional subspace of a 4-space")
    F = U.field
    u, w = U.rows
    return tuple(F.sub(F.mul(u[i], w[j]), F.mul(u[j], w[i])) for i, j in PLUCKER_PAIRS)


def wedge(U: Subspace) -> Subspace:
    """[u ^ w] as a projective point of the 6-space in the e_ij basis."""
    return span([plucker(U)], U.field, 6)


def wedge_vectors(F: FieldSpec, u: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
    return tuple(F.sub(F.mul(u[i], w[j]), F.mul(u[j], w[i])) for i, j in PLUCKER_PAIRS)


def wedge_basis_change(F: FieldSpec) -> list[list[int]]:
    """6x6 matrix B with x = B p (rows index x1..x6, columns p12..p34)."""
    m1 = F.neg(1)
    B = [[0] * 6 for _ in range(6)]
    B[0][0] = 1   # x1 = p12
    B[1][5] = 1   # x2 = p34
    B[2][1] = 1   # x3 = p13
    B[3][4] = m1  # x4 = -p24
    B[4][2] = 1   # x5 = p14
    B[5][3] = 1   # x6 = p23
    return B


def to_klein(F: FieldSpec, p: Sequence[int]) -> tuple[int, ...]:
    return (p[0], p[5], p[1], F.neg(p[4]), p[2], p[3])


def from_klein(F: FieldSpec, x: Sequence[int]) -> tuple[int, ...]:
    # inverse of to_klein: p12 p13 p14 p23 p24 p34
    return (x[0], x[2], x[4], x[5], F.neg(x[3]), x[1])


def line_of_klein_point(X: Subspace) -> Subspace:
    """The 2-space of K^4 whose Klein image is the singular point X."""
    F = X.field
    p = from_klein(F, X.rows[0])
    P = [[0] * 4 for _ in range(4)]
    for (i, j), c in zip(PLUCKER_PAIRS, p):
        P[i][j] = c
        P[j][i] = F.neg(c)
    L = span(P, F, 4)
    if L.dim != 2:
        raise LinalgError("point is not on the Klein quadric")
    return L


def klein_point(L: Subspace) -> Subspace:
    """Type-2 element of A_3 to type-1 element (singular point) of D_3."""
    return span([to_klein(L.field, plucker(L))], L.field, 6)


def klein_point_space(p: Subspace) -> Subspace:
    """S_v = <v ^ x : x in V> in Klein coordinates (a maximal of class +)."""
    F = p.field
    v = p.rows[0]
    return span([to_klein(F, wedge_vectors(F, v, unit(4, i))) for i in range(4)], F, 6)


def klein_plane_space(H: Subspace) -> Subspace:
    """The wedge square of a 3-space of K^4 (a maximal of class -)."""
    F = H.field
    r = H.rows
    return span([to_klein(F, wedge_vectors(F, r[i], r[j])) for i in range(3) for j in range(i + 1, 3)], F, 6)


_A_TO_D = {1: "+", 2: 1, 3: "-"}
_D_TO_A = {"+": 1, 1: 2, "-": 3}


def klein_transport(P: Flag) -> Flag:
    """A flag of A_3 (types among 1, 2, 3) to the corresponding flag of D_3."""
    out = {}
    for t, b in P:
        if b.ambient_dim != 4:
            raise LinalgError("klein_transport needs flags of A_3")
        if t == 1:
            out[_A_TO_D[t]] = klein_point_space(b)
        elif t == 2:
            out[_A_TO_D[t]] = klein_point(b)
        elif t == 3:
            out[_A_TO_D[t]] = klein_plane_space(b)
        else:
            raise LinalgError(f"bad A_3 type {t}")
    return Flag(out)


def klein_inverse(P: Flag) -> Flag:
    """A flag of D_3 back to A_3."""
    out = {}
    for t, b in P:
        if t == 1:
            out[2] = line_of_klein_point(b)
        elif t in ("+", "-"):
            lines = [line_of_klein_point(span([r], b.field, 6)) for r in b.rows[:2]]
            if t == "+":
                out[1] = meet(lines[0], lines[1])
            else:
                out[3] = lines[0] + lines[1]
        else:
            raise LinalgError(f"bad D_3 type {t}")
    return Flag(out)


# -- Lemma-style rationality equivalences ----------------------------------------------

def wedge_triple_span(U: Subspace) -> Subspace:
    """<u^v, u^w, v^w> in the e_ij basis for a 3-space U = <u, v, w> of K^4."""
    F = U.field
    r = U.rows
    return span([wedge_vectors(F, r[i], r[j]) for i in range(3) for j in range(i + 1, 3)], F, 6)


def point_wedge_space(p: Subspace) -> Subspace:
    """S_v in the e_ij basis."""
    F = p.field
    v = p.rows[0]
    return span([wedge_vectors(F, v, unit(4, i)) for i in range(4)], F, 6)


def exterior_rationality(U: Subspace, a: int) -> tuple[bool, bool]:
    """(rationality of U, rationality of its exterior image) for dim U in {1, 2, 3}."""
    if U.dim == 1:
        img = point_wedge_space(U)
    elif U.dim == 2:
        img = wedge(U)
    elif U.dim == 3:
        img = wedge_triple_span(U)
    else:
        raise LinalgError("exterior image defined for dimensions 1, 2, 3")
    return is_rational(U, a), is_rational(img, a)
