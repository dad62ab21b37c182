"""The hyperbolic form x1*x2 + x3*x4 + ... + x_{2n-1}*x_{2n} and its polar space."""

from __future__ import annotations

from typing import Iterator, Sequence

from .gf import FieldSpec
from .linalg import (
    LinalgError, Subspace, annihilator, between, complement_basis, coordinate_span, rank, span, sum_, zero,
)

PLUS = "+"
MINUS = "-"


class HyperbolicSpace:
    """V_{2n}(K) with the standard hyperbolic quadratic form.

    Coordinates are 0-based internally, so the k-th hyperbolic pair is
    (2k, 2k+1).  The reference maximal is spanned by the even coordinates
    (e1, e3, ... in 1-based notation) and carries class ``+``.
    """

    __slots__ = ("field", "n", "ambient_dim", "reference_maximal", "_pairs")

    def __init__(self, field: FieldSpec, n: int):
        if n < 1:
            raise ValueError("Witt index must be positive")
        self.field = field
        self.n = n
        self.ambient_dim = 2 * n
        self.reference_maximal = coordinate_span(field, 2 * n, range(0, 2 * n, 2))
        self._pairs: dict = {}

    def __eq__(self, other):
        return isinstance(other, HyperbolicSpace) and self.field == other.field and self.n == other.n

    def __hash__(self):
        return hash(("hyp", self.field, self.n))

    def __repr__(self):
        return f"HyperbolicSpace({self.field!r}, n={self.n})"

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.ambient_dim:
            raise LinalgError(f"expected a vector of length {self.ambient_dim}")

    def q_value(self, v: Sequence[int]) -> int:
        self._check(v)
        F = self.field
        acc = 0
        for i in range(0, self.ambient_dim, 2):
            if v[i] and v[i + 1]:
                acc = F.add(acc, F.mul(v[i], v[i + 1]))
        return acc

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> int:
        """Polar form q(u+v) - q(u) - q(v) = sum u_{2i-1} v_{2i} + u_{2i} v_{2i-1}."""
        self._check(u)
        self._check(v)
        F = self.field
        acc = 0
        for i in range(0, self.ambient_dim, 2):
            a, b = u[i], u[i + 1]
            if a and v[i + 1]:
                acc = F.add(acc, F.mul(a, v[i + 1]))
            if b and v[i]:
                acc = F.add(acc, F.mul(b, v[i]))
        return acc

    def _swap(self, v: Sequence[int]) -> list[int]:
        w = list(v)
        for i in range(0, len(w), 2):
            w[i], w[i + 1] = w[i + 1], w[i]
        return w

    def is_totally_singular(self, U: Subspace) -> bool:
        rows = U.rows
        for i, r in enumerate(rows):
            if self.q_value(r):
                return False
            for s in rows[i + 1:]:
                if self.bilinear(r, s):
                    return False
        return True

    def singular_extension_ok(self, previous: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
        """Row filter for enumeration: v singular and orthogonal to ``previous``."""
        if self.q_value(v):
            return False
        return all(not self.bilinear(v, u) for u in previous)

    def perp(self, U: Subspace) -> Subspace:
        # f(u, v) = u . swap(v), so U-perp is the annihilator of swap(U)
        if not U.rows:
            return annihilator(U)
        return annihilator(span([self._swap(r) for r in U.rows], self.field, self.ambient_dim))

    def totally_singular(self, d: int, base: Subspace | None = None, scalars=None) -> Iterator[Subspace]:
        """All totally singular d-spaces containing ``base`` (default: zero)."""
        if base is None:
            base = zero(self.field, self.ambient_dim)
        if not self.is_totally_singular(base):
            raise LinalgError("base is not totally singular")
        if d < base.dim or d > self.n:
            return
        upper = self.perp(base)
        base_rows = list(base.rows)

        def ok(prev, v):
            return self.singular_extension_ok(base_rows + prev, v)

        yield from between(base, upper, d, scalars, ok)

    def spinor_class(self, M: Subspace) -> str:
        if M.dim != self.n or not self.is_totally_singular(M):
            raise LinalgError("spinor class needs a maximal totally singular subspace")
        return self._class_of(M)

    def _class_of(self, M: Subspace) -> str:
        # M & ref is the kernel of the projection of M onto the odd coordinates
        d = self.n - rank(self.field, [r[1::2] for r in M.rows])
        return PLUS if (d - self.n) % 2 == 0 else MINUS

    def maximals_through(self, U: Subspace, class_filter: str | None = None, scalars=None) -> list[Subspace]:
        if not self.is_totally_singular(U):
            raise LinalgError("U is not totally singular")
        if U.dim == self.n - 1:
            pair = self.maximal_pair(U)
            out = list(pair)
        else:
            out = list(self.totally_singular(self.n, U, scalars))
        if scalars is not None and U.dim == self.n - 1:
            allowed = set(scalars)
            out = [M for M in out if all(x in allowed for r in M.rows for x in r)]
        if class_filter is not None:
            out = [M for M in out if self.spinor_class(M) == class_filter]
        return sorted(out)

    def maximal_pair(self, W: Subspace) -> tuple[Subspace, Subspace]:
        """The two maximals through an (n-1)-dim totally singular W, as (+, -)."""
        hit = self._pairs.get(W)
        if hit is not None:
            return hit
        if len(self._pairs) > 500_000:
            self._pairs.clear()
        self._pairs[W] = out = self._maximal_pair(W)
        return out

    def _maximal_pair(self, W: Subspace) -> tuple[Subspace, Subspace]:
        if W.dim != self.n - 1 or not self.is_totally_singular(W):
            raise LinalgError("W must be a totally singular (n-1)-space")
        P = self.perp(W)
        # P/W is a hyperbolic plane; find its two singular points
        c1, c2 = complement_basis(W, P)
        F = self.field
        found = []
        for a, b in ((1, 0),) + tuple((x, 1) for x in range(F.q)):
            v = [F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(c1, c2)]
            if self.q_value(v) == 0:
                found.append(sum_(W, span([v], F)))
        if len(found) != 2:
            raise LinalgError("W-perp/W is not a hyperbolic plane")
        M1, M2 = found
        if self._class_of(M1) == MINUS:
            M1, M2 = M2, M1
        return M1, M2

    def other_maximal(self, W: Subspace, M: Subspace) -> Subspace:
        """The maximal through the (n-1)-space W other than M."""
        M1, M2 = self.maximal_pair(W)
        if M == M1:
            return M2
        if M == M2:
            return M1
        raise LinalgError("M does not contain W")

    def opposite_through(self, W: Subspace, cls: str) -> Subspace:
        M1, M2 = self.maximal_pair(W)
        return M1 if cls == PLUS else M2


def opposite(cls: str) -> str:
    return MINUS if cls == PLUS else PLUS
