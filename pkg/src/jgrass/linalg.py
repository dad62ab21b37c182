"""Canonical subspaces of GF(q)^N and the rationality machinery.

A :class:`Subspace` is stored as its reduced row echelon form, which makes
equality and hashing structural.  Rationality over the subfield of order
p^a is read off the RREF entries; rational closure and interior come from the
Frobenius orbit of the subspace.
"""

from __future__ import annotations

import functools
import itertools
import random
from typing import Callable, Iterable, Iterator, Sequence

from .gf import FieldSpec, FieldError

Vector = tuple[int, ...]


class LinalgError(ValueError):
    pass


# -- row operations ---------------------------------------------------------

class _Ops:
    """Field-specialised row kernels (chosen once per field)."""

    __slots__ = ("elim", "scale", "inv")

    def __init__(self, F: FieldSpec):
        self.inv = F.inv
        mul_t, sub_t = F.mul_t, F.sub_t
        if mul_t is not None and F.p == 2:
            def elim(t, f, r):
                m = mul_t[f]
                return [a ^ m[b] for a, b in zip(t, r)]

            def scale(r, c):
                m = mul_t[c]
                return [m[b] for b in r]
        elif mul_t is not None and sub_t is not None:
            def elim(t, f, r):
                m = mul_t[f]
                return [sub_t[a][m[b]] for a, b in zip(t, r)]

            def scale(r, c):
                m = mul_t[c]
                return [m[b] for b in r]
        else:
            mul, sub = F.mul, F.sub

            def elim(t, f, r):
                return [sub(a, mul(f, b)) for a, b in zip(t, r)]

            def scale(r, c):
                return [mul(c, b) for b in r]
        self.elim = elim
        self.scale = scale


_OPS: dict[FieldSpec, _Ops] = {}


def _ops(F: FieldSpec) -> _Ops:
    o = _OPS.get(F)
    if o is None:
        o = _OPS[F] = _Ops(F)
    return o


def rref(F: FieldSpec, rows: Iterable[Sequence[int]], ncols: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form of ``rows``; returns (nonzero rows, pivots)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return (), ()
    ops = _ops(F)
    elim, scale, inv = ops.elim, ops.scale, ops.inv
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        row = m[r]
        x = row[c]
        if x != 1:
            row = scale(row, inv(x))
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = elim(m[i], f, row)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(x) for x in m[:r]), tuple(pivots)


# -- the Subspace type ------------------------------------------------------

class Subspace:
    """A subspace of GF(q)^N held in canonical RREF.

    Construct through :func:`span` (or the helpers below); the initializer
    trusts its input to already be in RREF.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots", "_hash")

    def __init__(self, field: FieldSpec, ambient_dim: int, rows: tuple[Vector, ...], pivots: tuple[int, ...] | None = None):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows
        if pivots is None:
            pivots = tuple(next(i for i, x in enumerate(r) if x) for r in rows)
        self.pivots = pivots
        self._hash = hash((ambient_dim, rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.rows == other.rows
            and self.ambient_dim == other.ambient_dim
            and self.field == other.field
        )

    def __repr__(self):
        return f"Subspace({self.field!r}, N={self.ambient_dim}, rows={list(self.rows)})"

    def sort_key(self):
        return (len(self.rows), self.rows)

    def __lt__(self, other: "Subspace"):
        return self.sort_key() < other.sort_key()

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    # membership -----------------------------------------------------------
    def contains(self, v: Sequence[int]) -> bool:
        """True iff the vector ``v`` lies in the subspace."""
        F = self.field
        acc = [0] * self.ambient_dim
        elim = _ops(F).elim
        neg1 = F.neg(1)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                acc = elim(acc, F.mul(neg1, f), row)
        return tuple(acc) == tuple(v)

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace(self, other)

    def __ge__(self, other: "Subspace") -> bool:
        return is_subspace(other, self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return meet(self, other)


def _check_compatible(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim or U.field != V.field:
        raise LinalgError("subspaces live in different ambient spaces")


def span(vectors: Iterable[Sequence[int]], field: FieldSpec, ambient_dim: int | None = None) -> Subspace:
    vecs = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise LinalgError("ambient dimension needed for an empty span")
        ambient_dim = len(vecs[0])
    for v in vecs:
        if len(v) != ambient_dim:
            raise LinalgError(f"vector {v} does not have length {ambient_dim}")
        if any(not 0 <= x < field.q for x in v):
            raise LinalgError(f"vector {v} has entries outside {field}")
    rows, piv = rref(field, vecs, ambient_dim)
    return Subspace(field, ambient_dim, rows, piv)


def zero(field: FieldSpec, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, (), ())


def whole(field: FieldSpec, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, tuple(unit(ambient_dim, i) for i in range(ambient_dim)), tuple(range(ambient_dim)))


def unit(ambient_dim: int, i: int) -> Vector:
    """The standard basis vector e_{i+1} (0-based index)."""
    v = [0] * ambient_dim
    v[i] = 1
    return tuple(v)


def coordinate_span(field: FieldSpec, ambient_dim: int, indices: Iterable[int]) -> Subspace:
    """Span of standard basis vectors, given 0-based indices."""
    return span([unit(ambient_dim, i) for i in indices], field, ambient_dim)


def sum_(U: Subspace, V: Subspace) -> Subspace:
    _check_compatible(U, V)
    if not V.rows:
        return U
    if not U.rows:
        return V
    rows, piv = rref(U.field, U.rows + V.rows, U.ambient_dim)
    return Subspace(U.field, U.ambient_dim, rows, piv)


def join(spaces: Iterable[Subspace]) -> Subspace:
    spaces = list(spaces)
    if not spaces:
        raise LinalgError("empty join")
    F, N = spaces[0].field, spaces[0].ambient_dim
    rows, piv = rref(F, [r for S in spaces for r in S.rows], N)
    return Subspace(F, N, rows, piv)


def is_subspace(U: Subspace, V: Subspace) -> bool:
    """U <= V."""
    if U.dim > V.dim:
        return False
    if U.dim == V.dim:
        return U == V
    return all(V.contains(r) for r in U.rows)


def annihilator(U: Subspace) -> Subspace:
    """{x : x . u = 0 for all u in U} for the standard dot product."""
    F, N = U.field, U.ambient_dim
    pivset = set(U.pivots)
    free = [c for c in range(N) if c not in pivset]
    neg = F.neg
    vecs = []
    for f in free:
        x = [0] * N
        x[f] = 1
        for row, c in zip(U.rows, U.pivots):
            x[c] = neg(row[f])
        vecs.append(x)
    rows, piv = rref(F, vecs, N)
    return Subspace(F, N, rows, piv)


def meet(U: Subspace, V: Subspace) -> Subspace:
    _check_compatible(U, V)
    if U.dim <= V.dim and is_subspace(U, V):
        return U
    if V.dim < U.dim and is_subspace(V, U):
        return V
    return _zassenhaus_meet(U, V)


def _zassenhaus_meet(U: Subspace, V: Subspace) -> Subspace:
    # rows (u | u) and (v | 0); after RREF the rows with zero left half
    # carry a reduced basis of U & V in their right half
    F, N = U.field, U.ambient_dim
    zeros = (0,) * N
    rows, piv = rref(F, [u + u for u in U.rows] + [v + zeros for v in V.rows], 2 * N)
    out = tuple(r[N:] for r, c in zip(rows, piv) if c >= N)
    return Subspace(F, N, out, tuple(c - N for c in piv if c >= N))


def intersect_all(spaces: Iterable[Subspace]) -> Subspace:
    it = iter(spaces)
    acc = next(it)
    for S in it:
        acc = meet(acc, S)
    return acc


def rank(field: FieldSpec, vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    rows, _ = rref(field, vectors, len(vectors[0]))
    return len(rows)


def complement_basis(X: Subspace, W: Subspace) -> list[Vector]:
    """Vectors of W, taken from W's RREF rows, completing X to a basis of W."""
    acc = X
    out = []
    for r in W.rows:
        if not acc.contains(r):
            out.append(r)
            acc = sum_(acc, span([r], W.field))
        if acc.dim == W.dim:
            break
    return out


def combine(field: FieldSpec, coeffs: Sequence[int], basis: Sequence[Vector], ambient_dim: int) -> Vector:
    acc = [0] * ambient_dim
    elim = _ops(field).elim
    neg1 = field.neg(1)
    for c, b in zip(coeffs, basis):
        if c:
            acc = elim(acc, field.mul(neg1, c), b)
    return tuple(acc)


# -- enumeration ------------------------------------------------------------

RowFilter = Callable[[list[Vector], Vector], bool]


def rref_matrices(m: int, d: int, scalars: Sequence[int]) -> Iterator[list[list[int]]]:
    """All d x m RREF matrices whose entries lie in ``scalars`` (contains 0, 1)."""
    for pivots in itertools.combinations(range(m), d):
        pivset = set(pivots)
        frees = [[c for c in range(p + 1, m) if c not in pivset] for p in pivots]
        slots = [(i, c) for i, fs in enumerate(frees) for c in fs]
        base = [[0] * m for _ in range(d)]
        for i, p in enumerate(pivots):
            base[i][p] = 1
        for vals in itertools.product(scalars, repeat=len(slots)):
            mat = [row[:] for row in base]
            for (i, c), v in zip(slots, vals):
                mat[i][c] = v
            yield mat


def between(X: Subspace, W: Subspace, d: int, scalars: Sequence[int] | None = None,
            row_ok: RowFilter | None = None) -> Iterator[Subspace]:
    """Every d-dimensional subspace Y with X <= Y <= W, each exactly once.

    ``scalars`` restricts the coordinates (relative to a complement basis drawn
    from W's RREF) to a subfield, which enumerates exactly the rational Y when X
    and W are rational.  ``row_ok(previous, new)`` prunes row by row on the
    actual vectors added on top of X.
    """
    if not is_subspace(X, W):
        return
    F, N = X.field, X.ambient_dim
    extra = d - X.dim
    if extra < 0 or d > W.dim:
        return
    if extra == 0:
        yield X
        return
    C = complement_basis(X, W)
    m = len(C)
    if scalars is None:
        scalars = range(F.q)
    scalars = list(scalars)
    for pivots in itertools.combinations(range(m), extra):
        pivset = set(pivots)
        frees = [[c for c in range(p + 1, m) if c not in pivset] for p in pivots]
        yield from _between_rows(F, N, X, C, pivots, frees, scalars, row_ok, [], 0)


def _between_rows(F, N, X, C, pivots, frees, scalars, row_ok, built, i):
    if i == len(pivots):
        rows, piv = rref(F, list(X.rows) + built, N)
        yield Subspace(F, N, rows, piv)
        return
    p = pivots[i]
    fs = frees[i]
    for vals in itertools.product(scalars, repeat=len(fs)):
        coeffs = [0] * len(C)
        coeffs[p] = 1
        for c, v in zip(fs, vals):
            coeffs[c] = v
        vec = combine(F, coeffs, C, N)
        if row_ok is not None and not row_ok(built, vec):
            continue
        built.append(vec)
        yield from _between_rows(F, N, X, C, pivots, frees, scalars, row_ok, built, i + 1)
        built.pop()


def subspaces(field: FieldSpec, ambient_dim: int, d: int, scalars: Sequence[int] | None = None,
              row_ok: RowFilter | None = None) -> Iterator[Subspace]:
    return between(zero(field, ambient_dim), whole(field, ambient_dim), d, scalars, row_ok)


def projective_points(U: Subspace) -> list[Subspace]:
    return list(between(zero(U.field, U.ambient_dim), U, 1))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def random_vector(U: Subspace, rng: random.Random, scalars: Sequence[int] | None = None) -> Vector:
    F = U.field
    if scalars is None:
        coeffs = [rng.randrange(F.q) for _ in U.rows]
    else:
        coeffs = [rng.choice(scalars) for _ in U.rows]
    return combine(F, coeffs, U.rows, U.ambient_dim)


def random_between(X: Subspace, W: Subspace, d: int, rng: random.Random,
                   scalars: Sequence[int] | None = None) -> Subspace:
    """A random d-space between X and W (not uniform; every one is reachable)."""
    if not is_subspace(X, W) or not X.dim <= d <= W.dim:
        raise LinalgError("no subspace of that dimension between the bounds")
    Y = X
    while Y.dim < d:
        v = random_vector(W, rng, scalars)
        if not Y.contains(v):
            Y = sum_(Y, span([v], Y.field, Y.ambient_dim))
    return Y


# -- rationality ------------------------------------------------------------

def _check_degree(U: Subspace, a: int) -> None:
    if a < 1 or U.field.k % a:
        raise FieldError(f"degree {a} does not divide {U.field.k}")


def is_rational(U: Subspace, a: int) -> bool:
    """True iff U is spanned by vectors with coordinates in GF(p^a).

    RREF is computed with field operations only, so U has a rational basis
    exactly when its RREF entries are all rational.
    """
    _check_degree(U, a)
    t = U.field.frobenius_table(a)
    return all(t[x] == x for row in U.rows for x in row)


def conjugate(U: Subspace, a: int) -> Subspace:
    """Entrywise image of U under x -> x^(p^a); RREF is preserved."""
    _check_degree(U, a)
    t = U.field.frobenius_table(a)
    rows = tuple(tuple(t[x] for x in row) for row in U.rows)
    return Subspace(U.field, U.ambient_dim, rows, U.pivots)


def galois_orbit(U: Subspace, a: int) -> list[Subspace]:
    orbit = [U]
    V = conjugate(U, a)
    while V != U:
        orbit.append(V)
        V = conjugate(V, a)
    return orbit


@functools.lru_cache(maxsize=1 << 18)
def rational_closure(U: Subspace, a: int) -> Subspace:
    """Smallest GF(p^a)-rational subspace containing U."""
    orbit = galois_orbit(U, a)
    if len(orbit) == 1:
        return U
    return join(orbit)


@functools.lru_cache(maxsize=1 << 18)
def rational_interior(U: Subspace, a: int) -> Subspace:
    """Largest GF(p^a)-rational subspace contained in U."""
    orbit = galois_orbit(U, a)
    if len(orbit) == 1:
        return U
    return intersect_all(orbit)


def eta_descent_holds(U: Subspace, a: int, i: int, j: int, eta: int) -> bool:
    """Property harness: a rational U through e_i + e_j*eta contains e_i and e_j.

    ``i`` and ``j`` are 0-based coordinate indices; ``eta`` must lie outside the
    subfield of order p^a and U must contain e_i + e_j*eta.
    """
    F, N = U.field, U.ambient_dim
    if F.frob(eta, a) == eta:
        raise LinalgError("eta must not be rational")
    v = [0] * N
    v[i] = 1
    v[j] = eta
    if not U.contains(v):
        raise LinalgError("U does not contain e_i + e_j*eta")
    if not is_rational(U, a):
        return True
    return U.contains(unit(N, i)) and U.contains(unit(N, j))


def reduce_against(X: Subspace, v: Sequence[int]) -> list[int]:
    """v minus its components along X's pivot rows (zero at X's pivot columns)."""
    F = X.field
    elim = _ops(F).elim
    w = list(v)
    for row, c in zip(X.rows, X.pivots):
        f = w[c]
        if f:
            w = elim(w, f, row)
    return w


def extend(X: Subspace, w: Sequence[int]) -> Subspace:
    """RREF of X + <w>, for w nonzero, reduced against X, with leading entry 1."""
    F = X.field
    pw = next(i for i, x in enumerate(w) if x)
    elim = _ops(F).elim
    rows = []
    pivots = []
    placed = False
    w = tuple(w)
    for row, c in zip(X.rows, X.pivots):
        if not placed and c > pw:
            rows.append(w)
            pivots.append(pw)
            placed = True
        f = row[pw]
        rows.append(tuple(elim(row, f, w)) if f else row)
        pivots.append(c)
    if not placed:
        rows.append(w)
        pivots.append(pw)
    return Subspace(F, X.ambient_dim, tuple(rows), tuple(pivots))


def pencil(X: Subspace, Y: Subspace) -> list[Subspace]:
    """The q+1 subspaces strictly between X and Y when dim Y = dim X + 2.

    Order: X + <c1 + b c2> for b = 0..q-1, then X + <c2>, where (c1, c2) is the
    RREF basis of Y's rows reduced against X.
    """
    if Y.dim != X.dim + 2:
        raise LinalgError("pencil needs dim Y = dim X + 2")
    F, N = X.field, X.ambient_dim
    red = [reduce_against(X, r) for r in Y.rows]
    (c1, c2), _ = rref(F, red, N)
    elim = _ops(F).elim
    neg1 = F.neg(1)
    out = []
    for b in range(F.q):
        w = elim(list(c1), F.mul(neg1, b), c2) if b else c1
        out.append(extend(X, w))
    out.append(extend(X, c2))
    return out
