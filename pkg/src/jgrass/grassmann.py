"""J-Grassmannians of A_n(K) and D_n(K): points, lines, shadows, collinearity.

Points are :class:`~jgrass.building.Flag` objects of type J.  A line is held
as its varying type j together with its carrier, the flag of type
(J minus j) plus the diagram neighbours of j.  The shadow of a line is the set
of q+1 points obtained by letting the type-j element run over the rank-one
residue of the carrier.

:class:`PolarGrassmannian` gives the (n-1)-Grassmannian of the polar space
B_n^+ (totally singular (n-1)-spaces of the hyperbolic 2n-space), with the same
interface, so the closure engine runs on it unchanged.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .building import Building, ElementType, Flag, format_type, parse_types, type_key
from .gf import FieldSpec
from .linalg import (
    random_between,
    Subspace, between, gaussian_binomial, is_subspace, meet, pencil, random_vector,
    span, sum_, whole, zero,
)
from .quadform import MINUS, PLUS, opposite


class BudgetExceeded(RuntimeError):
    """A requested enumeration or closure exceeds its configured budget."""


DEFAULT_POINT_BUDGET = 2_000_000


@dataclass(frozen=True)
class GeometrySpec:
    """Parameters of one Grassmannian: family, rank n, field K and type set J.

    family "B" denotes Gr_{n-1}(B_n^+), realised on the hyperbolic 2n-space;
    its only admissible J is (n-1,).
    """

    family: str
    n: int
    field: FieldSpec
    J: tuple = dc_field(default=())

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        J = parse_types(self.J)
        object.__setattr__(self, "J", J)
        if not J:
            raise ValueError("J must be nonempty")
        if fam == "B":
            if self.n < 3 or J != (self.n - 1,):
                raise ValueError("family B supports only J = {n-1} with n >= 3")
            return
        b = Building(fam, self.n, self.field)
        for t in J:
            b.check_type(t)

    @property
    def label(self) -> str:
        js = ",".join(format_type(t) for t in self.J)
        fam = "B+" if self.family == "B" else self.family
        return f"Gr_{{{js}}}({fam}_{self.n}(GF({self.field.q})))"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "field": self.field.to_json(),
            "J": [format_type(t) for t in self.J],
        }


class GrassmannLine:
    __slots__ = ("j", "carrier", "_hash")

    def __init__(self, j: ElementType, carrier: Flag):
        self.j = j
        self.carrier = carrier
        self._hash = hash((j, carrier))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, GrassmannLine) and self.j == other.j and self.carrier == other.carrier

    def __repr__(self):
        return f"GrassmannLine(j={self.j}, carrier={self.carrier!r})"

    def to_json(self) -> dict:
        return {"j": format_type(self.j), "carrier": self.carrier.to_json()}


# -- point counts -------------------------------------------------------------

def _qint(m: int, q: int) -> int:
    return (q ** m - 1) // (q - 1)


def _poincare(family: str, m: int, q: int) -> int:
    out = 1
    if family == "A":
        for i in range(1, m + 1):
            out *= _qint(i + 1, q)
    else:
        for i in range(1, m):
            out *= _qint(2 * i, q)
        out *= _qint(m, q)
    return out


def count_flags(building: Building, J: Sequence[ElementType], q: int) -> int:
    """Number of flags of type J: ratio of Poincare polynomials at q."""
    J = set(J)
    total = _poincare(building.family, building.n, q)
    rest = [t for t in building.types if t not in J]
    seen: set = set()
    for t in rest:
        if t in seen:
            continue
        comp = {t}
        stack = [t]
        while stack:
            x = stack.pop()
            for y in building.adjacency[x]:
                if y in rest and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        m = len(comp)
        if building.family == "D" and PLUS in comp and MINUS in comp and m >= 3:
            total //= _poincare("D", m, q)
        else:
            total //= _poincare("A", m, q)
    return total


# -- the Grassmannian ---------------------------------------------------------

class Grassmannian:
    """Gr_J of A_n(K) or D_n(K)."""

    def __init__(self, spec: GeometrySpec):
        if spec.family not in ("A", "D"):
            raise ValueError("use PolarGrassmannian for family B")
        self.spec = spec
        self.building = Building(spec.family, spec.n, spec.field)
        self.space = self.building.space
        self.field = spec.field
        self.n = spec.n
        self.J = spec.J
        self.Jset = frozenset(spec.J)
        self.N = self.building.ambient_dim
        self.is_D = spec.family == "D"
        self._whole = whole(self.field, self.N)

    def __repr__(self):
        return f"Grassmannian({self.spec.label})"

    # -- basic queries ------------------------------------------------------
    def is_point(self, F: Flag) -> bool:
        return isinstance(F, Flag) and F.types == self.J and self.building.is_flag(F)

    def count_points(self, q: int | None = None) -> int:
        return count_flags(self.building, self.J, self.field.q if q is None else q)

    def partner_keys(self, F: Flag) -> list:
        """Keys shared by any two collinear points (collinear points differ in one type)."""
        return [(j, F.without(j)) for j in self.J]

    def _numeric_J(self) -> list[int]:
        return [t for t in self.J if isinstance(t, int)]

    def _is_numeric_top(self, t: int) -> bool:
        # D_n: numeric types run to n-2; A_n: to n
        return t == (self.n - 2 if self.is_D else self.n)

    # -- enumeration --------------------------------------------------------
    def enumerate_points(self, budget: int | None = DEFAULT_POINT_BUDGET, scalars: Sequence[int] | None = None) -> list[Flag]:
        """Every J-flag (or every flag with coordinates in ``scalars``), sorted."""
        if budget is not None:
            q = len(scalars) if scalars is not None else self.field.q
            total = self.count_points(q)
            if total > budget:
                raise BudgetExceeded(f"{self.spec.label} has {total} points, budget {budget}")
        out = list(self._iter_points(scalars))
        out.sort(key=Flag.sort_key)
        return out

    def _iter_points(self, scalars) -> Iterator[Flag]:
        F, N = self.field, self.N
        numeric = self._numeric_J()
        signs = [t for t in self.J if isinstance(t, str)]

        def rec(idx: int, prev: Subspace, acc: list) -> Iterator[Flag]:
            if idx < len(numeric):
                t = numeric[idx]
                if self.is_D:
                    cands = self.space.totally_singular(t, prev, scalars)
                else:
                    cands = between(prev, whole(F, N), t, scalars)
                for X in cands:
                    acc.append((t, X))
                    yield from rec(idx + 1, X, acc)
                    acc.pop()
                return
            if not signs:
                yield Flag(acc)
                return
            if len(signs) == 2:
                for W in self.space.totally_singular(self.n - 1, prev, scalars):
                    Mp, Mm = self.space.maximal_pair(W)
                    yield Flag(acc + [(PLUS, Mp), (MINUS, Mm)])
            else:
                s = signs[0]
                for M in self.space.maximals_through(prev, s, scalars):
                    yield Flag(acc + [(s, M)])

        yield from rec(0, zero(F, N), [])

    # -- lines ----------------------------------------------------------------
    def line_through(self, P: Flag, Q: Flag) -> GrassmannLine | None:
        if P.types != Q.types:
            raise ValueError("flags from different geometries")
        if P == Q:
            return None
        diff = [i for i, (x, y) in enumerate(zip(P.bodies, Q.bodies)) if x != y]
        if len(diff) != 1:
            return None
        i = diff[0]
        j = P.types[i]
        X, Y = P.bodies[i], Q.bodies[i]
        return self._line_from_pair(P, j, X, Y)

    def _line_from_pair(self, P: Flag, j: ElementType, X: Subspace, Y: Subspace) -> GrassmannLine | None:
        n = self.n
        extra: dict = {}
        if isinstance(j, int):
            s = sum_(X, Y)
            if s.dim != j + 1:
                return None
            if self.is_D and not self.space.is_totally_singular(s):
                return None
            if j > 1:
                extra[j - 1] = meet(X, Y)
            if self.is_D and j == n - 2:
                Mp, Mm = self.space.maximal_pair(s)
                extra[PLUS] = Mp
                extra[MINUS] = Mm
            elif not self._is_numeric_top(j):
                extra[j + 1] = s
        else:
            m = meet(X, Y)
            if m.dim != n - 2:
                return None
            o = opposite(j)
            Mo = P.get(o)
            if Mo is not None and not is_subspace(m, Mo):
                return None
            extra[n - 2] = m
        base = P.without(j)
        for t, body in extra.items():
            have = base.get(t)
            if have is not None and have != body:
                return None
        carrier = base.merged({t: b for t, b in extra.items() if t not in base})
        return GrassmannLine(j, carrier)

    def line_shadow(self, L: GrassmannLine) -> list[Flag]:
        """The q+1 points of L."""
        j, C = L.j, L.carrier
        bodies = self._residue(j, C)
        keep = [(t, C[t]) for t in self.J if t != j]
        idx = [t for t in self.J].index(j)
        out = []
        types = self.J
        pre = tuple(b for _, b in keep[:idx])
        post = tuple(b for _, b in keep[idx:])
        for X in bodies:
            out.append(Flag._raw(types, pre + (X,) + post))
        return out

    def _residue(self, j: ElementType, C: Flag) -> list[Subspace]:
        F, N, n = self.field, self.N, self.n
        if isinstance(j, int):
            lower = C.get(j - 1) if j > 1 else zero(F, N)
            if self.is_D and j == n - 2:
                upper = meet(C[PLUS], C[MINUS])
            elif self._is_numeric_top(j):
                upper = self._whole
            else:
                upper = C[j + 1]
            return pencil(lower, upper)
        U = C[n - 2]
        Mo = C.get(opposite(j))
        if Mo is not None:
            return [self.space.opposite_through(W, j) for W in pencil(U, Mo)]
        return self.space.maximals_through(U, j)

    def is_line(self, L: GrassmannLine) -> bool:
        want = set(self.J) - {L.j} | self.building.neighbours(L.j)
        return set(L.carrier.types) == want and self.building.is_flag(L.carrier)

    def lines_through_point(self, P: Flag) -> list[GrassmannLine]:
        if P.types != self.J:
            raise ValueError("not a point of this geometry")
        out = []
        for j in self.J:
            for extra in self._carrier_choices(P, j):
                carrier = P.without(j).merged({t: b for t, b in extra.items() if t not in P.types})
                out.append(GrassmannLine(j, carrier))
        return out

    def random_line_through(self, P: Flag, rng: random.Random) -> GrassmannLine:
        """A random line through P: uniform type, then uniform carrier for that type."""
        j = rng.choice(self.J)
        extra = rng.choice(list(self._carrier_choices(P, j)))
        carrier = P.without(j).merged({t: b for t, b in extra.items() if t not in P.types})
        return GrassmannLine(j, carrier)

    def _below(self, P: Flag, t: int) -> Subspace:
        """Largest numeric element of P of type < t (zero if none)."""
        best = zero(self.field, self.N)
        for s, b in P:
            if isinstance(s, int) and s < t:
                best = b
        return best

    def _above(self, P: Flag, t: int) -> Subspace | None:
        """Smallest element of P above numeric type t (meet of the sign elements if needed)."""
        for s, b in P:
            if isinstance(s, int) and s > t:
                return b
        signs = [b for s, b in P if isinstance(s, str)]
        if not signs:
            return None
        out = signs[0]
        for b in signs[1:]:
            out = meet(out, b)
        return out

    def _carrier_choices(self, P: Flag, j: ElementType) -> Iterator[dict]:
        n, F, N = self.n, self.field, self.N
        X = P[j]
        if isinstance(j, int):
            if j > 1:
                lows = [P[j - 1]] if (j - 1) in self.Jset else list(between(self._below(P, j - 1), X, j - 1))
            else:
                lows = [None]
            if self.is_D and j == n - 2:
                ups = self._wall_choices(P, X)
            elif self._is_numeric_top(j):
                ups = [None]
            elif (j + 1) in self.Jset:
                ups = [P[j + 1]]
            else:
                bound = self._above(P, j + 1)
                if bound is not None:
                    ups = list(between(X, bound, j + 1))
                elif self.is_D:
                    ups = list(self.space.totally_singular(j + 1, X))
                else:
                    ups = list(between(X, whole(F, N), j + 1))
            for lo in lows:
                for up in ups:
                    d = {}
                    if lo is not None:
                        d[j - 1] = lo
                    if up is not None:
                        if isinstance(up, tuple):
                            d[PLUS], d[MINUS] = up
                        else:
                            d[j + 1] = up
                    yield d
            return
        if (n - 2) in self.Jset:
            yield {n - 2: P[n - 2]}
            return
        o = opposite(j)
        top = X if o not in P else meet(X, P[o])
        for U in between(self._below(P, n - 2), top, n - 2):
            yield {n - 2: U}

    def _wall_choices(self, P: Flag, X: Subspace) -> list[tuple[Subspace, Subspace]]:
        """Pairs (M+, M-) through an (n-1)-space W >= X compatible with P."""
        n = self.n
        Mp, Mm = P.get(PLUS), P.get(MINUS)
        if Mp is not None and Mm is not None:
            walls = [meet(Mp, Mm)]
        elif Mp is not None or Mm is not None:
            walls = list(between(X, Mp if Mp is not None else Mm, n - 1))
        else:
            walls = list(self.space.totally_singular(n - 1, X))
        return [self.space.maximal_pair(W) for W in walls]

    # -- random points --------------------------------------------------------
    def random_point(self, rng: random.Random, scalars: Sequence[int] | None = None) -> Flag:
        F, N, n = self.field, self.N, self.n
        prev = zero(F, N)
        acc = []
        top_numeric = self._numeric_J()
        need = max(top_numeric) if top_numeric else 0
        if any(isinstance(t, str) for t in self.J):
            need = n - 1 if self.is_D else need
        chain = {}
        cur = prev
        while cur.dim < need:
            v = random_vector(whole(F, N) if not self.is_D else self.space.perp(cur), rng, scalars)
            if cur.contains(v):
                continue
            if self.is_D and self.space.q_value(v):
                continue
            cur = sum_(cur, span([v], F, N))
            chain[cur.dim] = cur
        for t in top_numeric:
            acc.append((t, chain[t]))
        signs = [t for t in self.J if isinstance(t, str)]
        if signs:
            Mp, Mm = self.space.maximal_pair(chain[n - 1])
            for s in signs:
                acc.append((s, Mp if s == PLUS else Mm))
        return Flag(acc)


# -- Gr_{n-1}(B_n^+) ------------------------------------------------------------

class PolarGrassmannian:
    """Totally singular (n-1)-spaces of the hyperbolic 2n-space as points.

    Lines are flags (U, M) with dim U = n-2 and M maximal; the shadow is the
    pencil of (n-1)-spaces between U and M.  Points are single-element flags of
    type n-1.
    """

    def __init__(self, spec: GeometrySpec):
        if spec.family != "B":
            raise ValueError("PolarGrassmannian needs family B")
        self.spec = spec
        self.field = spec.field
        self.n = spec.n
        self.J = spec.J
        self.t = spec.n - 1
        self.building = Building("D", spec.n, spec.field)
        self.space = self.building.space
        self.N = 2 * spec.n

    def __repr__(self):
        return f"PolarGrassmannian({self.spec.label})"

    def point(self, X: Subspace) -> Flag:
        return Flag._raw((self.t,), (X,))

    def is_point(self, P: Flag) -> bool:
        return (isinstance(P, Flag) and P.types == (self.t,) and P.bodies[0].dim == self.t
                and self.space.is_totally_singular(P.bodies[0]))

    def count_points(self, q: int | None = None) -> int:
        return count_flags(self.building, (PLUS, MINUS), self.field.q if q is None else q)

    def enumerate_points(self, budget: int | None = DEFAULT_POINT_BUDGET, scalars=None) -> list[Flag]:
        if budget is not None:
            q = len(scalars) if scalars is not None else self.field.q
            if self.count_points(q) > budget:
                raise BudgetExceeded(f"{self.spec.label} exceeds budget {budget}")
        out = [self.point(X) for X in self.space.totally_singular(self.t, None, scalars)]
        out.sort(key=Flag.sort_key)
        return out

    def partner_keys(self, P: Flag) -> list:
        X = P.bodies[0]
        return list(between(zero(self.field, self.N), X, self.n - 2))

    def line_through(self, P: Flag, Q: Flag) -> GrassmannLine | None:
        if P == Q:
            return None
        X, Y = P.bodies[0], Q.bodies[0]
        m = meet(X, Y)
        if m.dim != self.n - 2:
            return None
        s = sum_(X, Y)
        if not self.space.is_totally_singular(s):
            return None
        return GrassmannLine(self.t, Flag({self.n - 2: m, self.n: s}))

    def line_shadow(self, L: GrassmannLine) -> list[Flag]:
        C = L.carrier
        return [self.point(W) for W in pencil(C[self.n - 2], C[self.n])]

    def lines_through_point(self, P: Flag) -> list[GrassmannLine]:
        X = P.bodies[0]
        out = []
        pair = self.space.maximal_pair(X)
        for U in between(zero(self.field, self.N), X, self.n - 2):
            for M in pair:
                out.append(GrassmannLine(self.t, Flag({self.n - 2: U, self.n: M})))
        return out

    def random_line_through(self, P: Flag, rng: random.Random) -> GrassmannLine:
        X = P.bodies[0]
        U = random_between(zero(self.field, self.N), X, self.n - 2, rng)
        M = rng.choice(self.space.maximal_pair(X))
        return GrassmannLine(self.t, Flag({self.n - 2: U, self.n: M}))

    def random_point(self, rng: random.Random, scalars=None) -> Flag:
        F, N = self.field, self.N
        cur = zero(F, N)
        while cur.dim < self.t:
            v = random_vector(self.space.perp(cur), rng, scalars)
            if cur.contains(v) or self.space.q_value(v):
                continue
            cur = sum_(cur, span([v], F, N))
        return self.point(cur)


def make_geometry(spec: GeometrySpec):
    return PolarGrassmannian(spec) if spec.family == "B" else Grassmannian(spec)


@functools.lru_cache(maxsize=64)
def geometry(family: str, n: int, field: FieldSpec, J) -> Grassmannian | PolarGrassmannian:
    return make_geometry(GeometrySpec(family, n, field, tuple(J) if not isinstance(J, str) else J))


__all__ = [
    "BudgetExceeded", "GeometrySpec", "GrassmannLine", "Grassmannian", "PolarGrassmannian",
    "count_flags", "make_geometry", "geometry", "gaussian_binomial", "type_key",
]
