"""Rational subgeometries, nearly rational points, and the Omega sets.

Everything here is relative to a :class:`RationalContext`: a geometry over
K = GF(p^k) together with a proper subfield K0 = GF(p^a).  Rationality is
with respect to the standard basis.
"""

from __future__ import annotations

import functools
from typing import Callable, Iterable

from .building import Flag
from .grassmann import GeometrySpec, Grassmannian, PolarGrassmannian, make_geometry
from .linalg import (
    LinalgError, Subspace, between, is_rational, is_subspace, meet, rational_closure,
    rational_interior, span, unit, whole, zero,
)
from .quadform import MINUS, PLUS, HyperbolicSpace


class RationalContext:
    """A geometry Gamma(K) and a proper subfield K0 of order p^a."""

    def __init__(self, spec: GeometrySpec, a: int):
        k = spec.field.k
        if a < 1 or k % a:
            raise ValueError(f"subfield degree {a} does not divide {k}")
        if a == k:
            raise ValueError("K0 must be a proper subfield (a < k)")
        self.spec = spec
        self.a = a
        self.geometry = make_geometry(spec)
        self.field = spec.field
        self.scalars = self.field.subfield(a)

    def __repr__(self):
        return f"RationalContext({self.spec.label}, a={self.a})"

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "a": self.a}

    @property
    def eta(self) -> int:
        """A fixed element of K outside K0: the Conway generator x."""
        g = self.field.generator
        assert self.field.frob(g, self.a) != g
        return g


def rational_points(ctx: RationalContext, budget: int | None = None) -> list[Flag]:
    kwargs = {} if budget is None else {"budget": budget}
    return ctx.geometry.enumerate_points(scalars=ctx.scalars, **kwargs)


def is_rational_point(P: Flag, ctx: RationalContext) -> bool:
    return all(is_rational(b, ctx.a) for b in P.bodies)


# -- nearly rational -----------------------------------------------------------

def _sandwich(low: Subspace, high: Subspace, a: int, dmin: int, dmax: int) -> bool:
    """Is there a rational X with low <= X <= high and dmin <= dim X <= dmax?"""
    lo = rational_closure(low, a)
    hi = rational_interior(high, a)
    if lo.dim > dmax or hi.dim < dmin or lo.dim > hi.dim:
        return False
    return is_subspace(lo, hi) and max(lo.dim, dmin) <= min(hi.dim, dmax)


def _bounds(P: Flag, t: int, geom) -> tuple[Subspace, Subspace]:
    """Largest element of P below numeric type t and smallest element above it."""
    N, F = geom.N, geom.field
    low = zero(F, N)
    high = None
    signs = []
    for s, b in P:
        if isinstance(s, str):
            signs.append(b)
        elif s < t:
            low = b
        elif s > t and high is None:
            high = b
    if high is None:
        if signs:
            high = signs[0]
            for b in signs[1:]:
                high = meet(high, b)
        else:
            high = whole(F, N)
    return low, high


def nearly_rational(P: Flag, ctx: RationalContext) -> bool:
    """Membership in Omega: P has a rational element, or a rational element of
    splitting type is incident with P."""
    a = ctx.a
    geom = ctx.geometry
    if isinstance(geom, PolarGrassmannian):
        return polar_nearly_rational(P, ctx)
    if any(is_rational(b, a) for b in P.bodies):
        return True
    for t in geom.building.splitting_types(geom.J):
        low, high = _bounds(P, t, geom)
        if _sandwich(low, high, a, t, t):
            return True
    return False


def omega_predicate(ctx: RationalContext) -> Callable[[Flag], bool]:
    return lambda P: nearly_rational(P, ctx)


def omega_points(ctx: RationalContext, budget: int | None = None) -> list[Flag]:
    kwargs = {} if budget is None else {"budget": budget}
    return [P for P in ctx.geometry.enumerate_points(**kwargs) if nearly_rational(P, ctx)]


def check_at_hypothesis(geom: Grassmannian, j1: int, j2: int) -> None:
    J = geom.J
    if not (isinstance(j1, int) and isinstance(j2, int)):
        raise ValueError("j1 and j2 must be numeric types")
    if j1 not in J or j2 not in J:
        raise ValueError("j1 and j2 must belong to J")
    if not j1 + 1 < j2:
        raise ValueError("j1 and j2 must be non-adjacent with j1 < j2")
    if geom.is_D and j2 > geom.n - 2:
        raise ValueError("for D_n the types must be at most n-2")
    if any(isinstance(t, int) and j1 < t < j2 for t in J):
        raise ValueError("J contains types strictly between j1 and j2")


def nearly_rational_at(P: Flag, ctx: RationalContext, j1: int, j2: int) -> bool:
    """Some rational element X incident with P has j1 <= dim X <= j2."""
    check_at_hypothesis(ctx.geometry, j1, j2)
    return _sandwich(P[j1], P[j2], ctx.a, j1, j2)


# -- brute-force oracles ---------------------------------------------------------

@functools.lru_cache(maxsize=64)
def _rational_elements(ctx_key, t: int) -> tuple[Subspace, ...]:
    spec, a = ctx_key
    geom = make_geometry(spec)
    scalars = spec.field.subfield(a)
    if geom.spec.family == "A":
        it = between(zero(geom.field, geom.N), whole(geom.field, geom.N), t, scalars)
    else:
        it = geom.space.totally_singular(t, None, scalars)
    return tuple(it)


def rational_elements(ctx: RationalContext, t: int) -> tuple[Subspace, ...]:
    """All rational building elements of numeric type t (enumerated)."""
    return _rational_elements((ctx.spec, ctx.a), t)


def _incident_with_flag(X: Subspace, P: Flag) -> bool:
    for s, b in P:
        if b.dim <= X.dim:
            if not is_subspace(b, X):
                return False
        elif not is_subspace(X, b):
            return False
    return True


def nearly_rational_bruteforce(P: Flag, ctx: RationalContext) -> bool:
    """Oracle for :func:`nearly_rational` by search over all rational elements."""
    if any(is_rational(b, ctx.a) for b in P.bodies):
        return True
    geom = ctx.geometry
    for t in geom.building.splitting_types(geom.J):
        if any(_incident_with_flag(X, P) for X in rational_elements(ctx, t)):
            return True
    return False


def nearly_rational_at_bruteforce(P: Flag, ctx: RationalContext, j1: int, j2: int) -> bool:
    check_at_hypothesis(ctx.geometry, j1, j2)
    for t in range(j1, j2 + 1):
        if any(_incident_with_flag(X, P) for X in rational_elements(ctx, t)):
            return True
    return False


# -- witnesses -----------------------------------------------------------------

def _vec(N: int, terms: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Vector sum of coefficient * e_i (1-based i)."""
    v = [0] * N
    for i, c in terms:
        v[i - 1] = c
    return tuple(v)


def _witness_A(ctx: RationalContext, j1: int, j2: int) -> Flag:
    geom = ctx.geometry
    F, N, eta = ctx.field, geom.N, ctx.eta
    head = _vec(N, [(1, 1), (2, eta)])
    out = {}
    for t in geom.J:
        if t < j1:
            X = span([unit(N, i) for i in range(2, t + 2)], F, N)
        elif t > j2:
            X = span([unit(N, i) for i in range(t)], F, N)
        else:
            X = span([head] + [unit(N, i) for i in range(2, t + 1)], F, N)
        out[t] = X
    return Flag(out)


def _witness_D_numeric(ctx: RationalContext, j1: int, j2: int) -> Flag:
    geom = ctx.geometry
    F, N, eta, n = ctx.field, geom.N, ctx.eta, geom.n
    head = _vec(N, [(1, 1), (3, eta)])
    odd = [unit(N, 2 * i) for i in range(2, n)]  # e5, e7, ..., e_{2n-1}
    out = {}
    for t in geom.J:
        if isinstance(t, str):
            base = [unit(N, 2 * i) for i in range(n - 1)]
            last = unit(N, 2 * n - 2) if t == PLUS else unit(N, 2 * n - 1)
            out[t] = span(base + [last], F, N)
        elif t < j1:
            out[t] = span(odd[:t], F, N)
        elif t > j2:
            out[t] = span([unit(N, 2 * i) for i in range(t)], F, N)
        else:
            out[t] = span([head] + odd[: t - 1], F, N)
    return Flag(out)


def witness_at(ctx: RationalContext, j1: int, j2: int) -> Flag:
    """A point outside Omega_{K0,j1,j2} built by the A_n pattern at (j1, j2)."""
    geom = ctx.geometry
    check_at_hypothesis(geom, j1, j2)
    W = _witness_A(ctx, j1, j2) if not geom.is_D else _witness_D_numeric(ctx, j1, j2)
    if not geom.is_point(W):
        raise AssertionError("witness construction produced an invalid flag")
    return W


def _swap_last_pair(U: Subspace, n: int) -> Subspace:
    """Image under the class-swapping isometry e_{2n-1} <-> e_{2n}."""
    rows = []
    for r in U.rows:
        r = list(r)
        r[2 * n - 2], r[2 * n - 1] = r[2 * n - 1], r[2 * n - 2]
        rows.append(r)
    return span(rows, U.field, U.ambient_dim)


def _lemma_D_one(ctx: RationalContext) -> tuple[Subspace, Subspace, Subspace]:
    """(p, M1, M2): p = <e1 + e3 eta>, M1 through e_{2n-1}, M2 through e_{2n}."""
    geom = ctx.geometry
    F, N, n, eta = ctx.field, geom.N, geom.n, ctx.eta
    head = _vec(N, [(1, 1), (3, eta)])
    second = _vec(N, [(2, eta), (4, F.neg(1))])
    mids = [unit(N, 2 * i) for i in range(2, n - 1)]  # e5, ..., e_{2n-3}
    p = span([head], F, N)
    M1 = span([head, second] + mids + [unit(N, 2 * n - 2)], F, N)
    M2 = span([head, second] + mids + [unit(N, 2 * n - 1)], F, N)
    return p, M1, M2


def witness_outside_omega(ctx: RationalContext) -> Flag:
    """The explicit non-nearly-rational point for the supported geometries.

    Supported: A_n with J = {1, n}; D_n with J = {1,-}, {1,+}, {1,+,-} or
    {+,-}; and any J admitting a pair (j1, j2) as in :func:`witness_at` whose
    other types are absent.
    """
    geom = ctx.geometry
    if isinstance(geom, PolarGrassmannian):
        sub = RationalContext(GeometrySpec("D", geom.n, ctx.field, (PLUS, MINUS)), ctx.a)
        return iota_inverse_point(witness_outside_omega(sub), geom)
    J = geom.J
    n = geom.n
    if not geom.is_D:
        if J == (1, n):
            return witness_at(ctx, 1, n)
        numeric = list(J)
        for j1, j2 in zip(numeric, numeric[1:]):
            if j2 > j1 + 1 and len(J) == 2:
                return witness_at(ctx, j1, j2)
        raise ValueError(f"no witness construction for {geom.spec.label}")
    space = geom.space
    if J in ((1, PLUS), (1, MINUS), (1, PLUS, MINUS)):
        p, M1, M2 = _lemma_D_one(ctx)
        c1 = space.spinor_class(M1)
        by_class = {c1: M1, space.spinor_class(M2): M2}
        if J == (1, PLUS, MINUS):
            W = Flag({1: p, PLUS: by_class[PLUS], MINUS: by_class[MINUS]})
        else:
            s = J[1]
            M = M1
            if c1 != s:
                M = _swap_last_pair(M1, n)
            W = Flag({1: p, s: M})
    elif J == (PLUS, MINUS):
        if n == 3:
            from .embed import klein_transport
            A = RationalContext(GeometrySpec("A", 3, ctx.field, (1, 3)), ctx.a)
            W = klein_transport(witness_outside_omega(A))
        else:
            W = _witness_pm(ctx)
    else:
        nums = [t for t in J if isinstance(t, int)]
        pairs = [(x, y) for x, y in zip(nums, nums[1:]) if y > x + 1]
        if pairs and pairs[0][1] <= n - 2:
            return witness_at(ctx, *pairs[0])
        raise ValueError(f"no witness construction for {geom.spec.label}")
    if not geom.is_point(W):
        raise AssertionError("witness is not a point of the geometry")
    return W


def _witness_pm(ctx: RationalContext) -> Flag:
    geom = ctx.geometry
    F, N, n, eta = ctx.field, geom.N, geom.n, ctx.eta
    neg1 = F.neg(1)
    tail = [_vec(N, [(5, 1), (7, eta)]), _vec(N, [(6, eta), (8, neg1)])]
    tail += [unit(N, 2 * i + 1) for i in range(4, n)]  # e10, e12, ..., e_{2n}
    M1 = span([_vec(N, [(1, 1), (3, 1)]), _vec(N, [(2, 1), (4, neg1)])] + tail, F, N)
    M2 = span([_vec(N, [(1, 1), (4, 1)]), _vec(N, [(2, 1), (3, neg1)])] + tail, F, N)
    space = geom.space
    if space.spinor_class(M1) == MINUS:
        M1, M2 = M2, M1
    return Flag({PLUS: M1, MINUS: M2})


# -- the iota correspondence ------------------------------------------------------

def iota(X: Subspace, space: HyperbolicSpace) -> Flag:
    """The {+,-}-flag of the two maximals through the (n-1)-space X."""
    Mp, Mm = space.maximal_pair(X)
    return Flag({PLUS: Mp, MINUS: Mm})


def iota_inverse(P: Flag, space: HyperbolicSpace) -> Subspace:
    X = meet(P[PLUS], P[MINUS])
    if X.dim != space.n - 1:
        raise LinalgError("not a {+,-}-flag")
    return X


def iota_point(P: Flag, space: HyperbolicSpace) -> Flag:
    """Point of Gr_{n-1}(B_n^+) to point of Gr_{+,-}(D_n)."""
    return iota(P.bodies[0], space)


def iota_inverse_point(P: Flag, polar: PolarGrassmannian) -> Flag:
    return polar.point(iota_inverse(P, polar.space))


def polar_nearly_rational(P: Flag, ctx: RationalContext) -> bool:
    """Omega for Gr_{n-1}(B_n^+), transported from Gr_{+,-}(D_n) through iota."""
    sub = RationalContext(GeometrySpec("D", ctx.spec.n, ctx.field, (PLUS, MINUS)), ctx.a)
    return nearly_rational(iota_point(P, ctx.geometry.space), sub)
