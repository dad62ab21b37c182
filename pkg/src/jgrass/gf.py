"""Exact arithmetic in GF(p^k).

Elements are plain integers in ``[0, p^k)``; the base-p digits of an integer
are the coefficients (lowest degree first) of a polynomial in the generator
``x`` reduced modulo the field's defining polynomial.  Hot code paths (the
linear algebra in :mod:`jgrass.linalg`) work directly on these integers
through the tables attached to :class:`FieldSpec`; :class:`FieldElement` is a
thin operator-overloading wrapper for interactive use and for the public API.

Moduli are Conway polynomials where a bundled entry exists, so element
encodings are reproducible across runs and across implementations.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

DEFAULT_MAX_ORDER = 2 ** 20
TABLE_MAX_ORDER = 2 ** 16
_ADD_TABLE_MAX = 4096
_MUL_TABLE_MAX = 256

# Conway polynomials C_{p,k}, coefficients lowest degree first, monic.
# Regenerate with ``conway_polynomial(p, k)``; tests re-derive the small ones.
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (11, 1): (9, 1),
    (11, 2): (2, 7, 1),
    (13, 1): (11, 1),
    (13, 2): (2, 12, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 7): (1, 0, 2, 0, 0, 0, 0, 1),
    (3, 8): (2, 2, 2, 0, 1, 2, 0, 0, 1),
    (3, 9): (1, 1, 2, 2, 0, 0, 0, 0, 0, 1),
    (3, 10): (2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1),
    (5, 5): (3, 4, 0, 0, 0, 1),
    (5, 6): (2, 0, 1, 4, 1, 0, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (7, 5): (4, 1, 0, 0, 0, 1),
    (11, 3): (9, 2, 0, 1),
    (11, 4): (2, 10, 8, 0, 1),
    (13, 3): (11, 2, 0, 1),
    (13, 4): (2, 12, 3, 0, 1),
    (17, 1): (14, 1),
    (17, 2): (3, 16, 1),
    (17, 3): (14, 1, 0, 1),
    (19, 1): (17, 1),
    (19, 2): (2, 18, 1),
    (19, 3): (17, 4, 0, 1),
    (23, 1): (18, 1),
    (23, 2): (5, 21, 1),
    (23, 3): (18, 2, 0, 1),
    (29, 1): (27, 1),
    (29, 2): (2, 24, 1),
    (31, 1): (28, 1),
    (31, 2): (3, 29, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


# -- polynomials over GF(p), coefficient lists lowest degree first ----------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(_trim(f)) - 1 >= dg:
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
    return f


def _pmulmod(f: Sequence[int], g: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _pmod(out, m, p)


def _ppowmod(f: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(f, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return _trim(result)


def _pgcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(f)), _trim(list(g))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: no factor of degree <= deg/2 divides ``f``."""
    f = _trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    xp = [0, 1]
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) - 1 >= 1:
            return False
    return True


def is_primitive(f: Sequence[int], p: int) -> bool:
    f = _trim(list(f))
    k = len(f) - 1
    if not is_irreducible(f, p):
        return False
    order = p ** k - 1
    if k == 1:
        root = (-f[0] * pow(f[1], p - 2, p)) % p
        return root != 0 and all(pow(root, order // r, p) != 1 for r in _prime_factors(order))
    for r in _prime_factors(order):
        if _ppowmod([0, 1], order // r, f, p) == [1]:
            return False
    return True


def _poly_eval_at_poly(c: Sequence[int], r: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Evaluate the polynomial ``c`` at the residue ``r`` modulo ``m``."""
    acc: list[int] = []
    for coeff in reversed(c):
        acc = _pmulmod(acc, r, m, p) if acc else []
        acc = list(acc) + [0] * max(0, 1 - len(acc))
        acc[0] = (acc[0] + coeff) % p
        acc = _trim(acc)
    return acc


def conway_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Search for the Conway polynomial C_{p,k} from its definition.

    Candidates are visited in Conway order: ``x^k - a_{k-1} x^{k-1} + ... +
    (-1)^k a_0`` ordered lexicographically on ``(a_{k-1}, ..., a_0)``.  The
    first primitive candidate compatible with every ``C_{p,d}``, ``d | k``, wins.
    Exponential in k; intended for small fields and for regenerating the table.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    subs = {d: (_CONWAY.get((p, d)) or conway_polynomial(p, d)) for d in _divisors(k) if d < k}
    order = p ** k - 1
    for word in range(p ** k):
        a = [(word // p ** (k - 1 - i)) % p for i in range(k)]  # a_{k-1}, ..., a_0
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        for i in range(k):
            deg = k - 1 - i
            sign = -1 if (k - deg) % 2 else 1
            coeffs[deg] = (sign * a[i]) % p
        if coeffs[0] == 0:
            continue
        if not is_primitive(coeffs, p):
            continue
        ok = True
        for d, cd in subs.items():
            r = _ppowmod([0, 1], order // (p ** d - 1), coeffs, p)
            if _poly_eval_at_poly(cd, r, coeffs, p):
                ok = False
                break
        if ok:
            return tuple(coeffs)
    raise FieldError(f"no Conway polynomial found for ({p}, {k})")


def least_primitive_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Monic primitive polynomial of degree k whose base-p code is smallest."""
    for code in range(1, p ** k):
        coeffs = [(code // p ** i) % p for i in range(k)] + [1]
        if coeffs[0] and is_primitive(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no primitive polynomial for ({p}, {k})")


# -- the field --------------------------------------------------------------

class FieldSpec:
    """GF(p^k) with its defining modulus and arithmetic tables.

    Instances are immutable and canonical: use :func:`make_field`.
    """

    __slots__ = (
        "p", "k", "q", "modulus", "conway", "exp", "log", "add_t", "sub_t",
        "mul_t", "neg_t", "inv_t", "_frob", "_subfields", "__weakref__",
    )

    def __init__(self, p: int, k: int, modulus: Sequence[int], conway: bool):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self.conway = conway
        self.exp: list[int] | None = None
        self.log: list[int] | None = None
        self.add_t = self.sub_t = self.mul_t = None
        self._frob: dict[int, list[int]] = {}
        self._subfields: dict[int, tuple[int, ...]] = {}
        q = self.q
        if q <= TABLE_MAX_ORDER:
            exp = [0] * (2 * (q - 1))
            log = [0] * q
            cur = 1
            for i in range(q - 1):
                exp[i] = cur
                log[cur] = i
                cur = self._polymul(cur, p if k > 1 else self._prime_root())
            for i in range(q - 1, 2 * (q - 1)):
                exp[i] = exp[i - (q - 1)]
            self.exp, self.log = exp, log
        if q <= _ADD_TABLE_MAX and p != 2:
            self.add_t = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
            self.sub_t = [[self._digit_add(a, self._digit_neg(b)) for b in range(q)] for a in range(q)]
        self.neg_t = [self._digit_neg(a) for a in range(q)] if q <= TABLE_MAX_ORDER else None
        self.inv_t = [0] + [self._inv_slow(a) for a in range(1, q)] if q <= TABLE_MAX_ORDER else None
        if q <= _MUL_TABLE_MAX:
            self.mul_t = [[self.mul(a, b) for b in range(q)] for a in range(q)]

    # identity ---------------------------------------------------------------
    def __eq__(self, other):
        return self is other or (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # raw digit-level helpers ------------------------------------------------
    def _digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** i) % p for i in range(self.k)]

    def _undigits(self, ds: Iterable[int]) -> int:
        out, m = 0, 1
        for d in ds:
            out += d * m
            m *= self.p
        return out

    def _digit_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._undigits((x + y) % p for x, y in zip(self._digits(a), self._digits(b)))

    def _digit_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return self._undigits((-x) % p for x in self._digits(a))

    def _prime_root(self) -> int:
        # k == 1: the modulus is x - g with g a primitive root
        return (-self.modulus[0]) % self.p

    def _polymul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        prod = _pmulmod(self._digits(a), self._digits(b), self.modulus, p)
        return self._undigits(prod + [0] * (k - len(prod)))

    def _inv_slow(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.log is not None:
            return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    # arithmetic on encoded integers -----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.add_t is not None:
            return self.add_t[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.neg_t[a] if self.neg_t is not None else self._digit_neg(a)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.sub_t is not None:
            return self.sub_t[a][b]
        return self._digit_add(a, self._digit_neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.log is not None:
            return self.exp[self.log[a] + self.log[b]]
        return self._polymul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.inv_t is not None:
            return self.inv_t[a]
        return self._inv_slow(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 0 if e else 1
        if self.log is not None:
            return self.exp[(self.log[a] * e) % (self.q - 1)]
        result = 1
        while e:
            if e & 1:
                result = self._polymul(result, a)
            a = self._polymul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    @property
    def generator(self) -> int:
        """The canonical primitive element: the root x of the modulus."""
        return self.p if self.k > 1 else self._prime_root()

    def elements(self) -> range:
        return range(self.q)

    # Frobenius ---------------------------------------------------------------
    def _check_degree(self, a: int) -> None:
        if a < 1 or self.k % a:
            raise FieldError(f"degree {a} does not divide {self.k}")

    def frobenius_table(self, a: int) -> list[int]:
        """Lookup table of x -> x^(p^a)."""
        self._check_degree(a)
        t = self._frob.get(a)
        if t is None:
            e = self.p ** a
            t = [self.pow(x, e) for x in range(self.q)]
            self._frob[a] = t
        return t

    def frob(self, x: int, a: int) -> int:
        return self.frobenius_table(a)[x]

    def subfield(self, a: int) -> tuple[int, ...]:
        """Sorted elements of the unique subfield of order p^a."""
        s = self._subfields.get(a)
        if s is None:
            t = self.frobenius_table(a)
            s = tuple(x for x in range(self.q) if t[x] == x)
            self._subfields[a] = s
        return s

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)


@functools.lru_cache(maxsize=None)
def _make_field(p: int, k: int) -> FieldSpec:
    if (p, k) in _CONWAY:
        return FieldSpec(p, k, _CONWAY[(p, k)], True)
    return FieldSpec(p, k, least_primitive_polynomial(p, k), False)


def make_field(p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """The canonical GF(p^k); the same (p, k) always returns the same object."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not isinstance(k, int) or k < 1:
        raise FieldError(f"extension degree must be a positive integer, got {k}")
    if p ** k > max_order:
        raise FieldError(f"GF({p}^{k}) exceeds the configured bound {max_order}")
    return _make_field(p, k)


class FieldElement:
    """An element of a :class:`FieldSpec`, with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        if not 0 <= value < field.q:
            raise FieldError(f"{value} is not an element of {field}")
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other) and 0 <= other < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def frobenius(x: FieldElement, a: int) -> FieldElement:
    """x^(p^a); ``a`` must divide the extension degree."""
    return FieldElement(x.field, x.field.frob(x.value, a))


def is_subfield_rational(x: FieldElement, a: int) -> bool:
    """True iff x lies in the subfield of order p^a."""
    return x.field.frob(x.value, a) == x.value


def minimal_subfield_degree(elements: Iterable[FieldElement | int], field: FieldSpec | None = None) -> int:
    """Degree over GF(p) of the field generated by ``elements``.

    Accepts FieldElements or raw encoded ints (then ``field`` is required).
    """
    vals = []
    for x in elements:
        if isinstance(x, FieldElement):
            if field is None:
                field = x.field
            elif x.field != field:
                raise FieldError("elements of different fields")
            vals.append(x.value)
        else:
            vals.append(x)
    if field is None:
        return 1
    return minimal_degree_of_values(field, vals)


def minimal_degree_of_values(field: FieldSpec, values: Iterable[int]) -> int:
    vals = set(values)
    for a in _divisors(field.k):
        t = field.frobenius_table(a)
        if all(t[v] == v for v in vals):
            return a
    return field.k  # unreachable: a = k fixes everything


def subfield_embedding(small: FieldSpec, big: FieldSpec) -> list[int]:
    """Table mapping encoded elements of ``small`` into ``big``.

    For Conway moduli the image of the generator is
    ``g^((q-1)/(q0-1))``; otherwise the least root of the small modulus is used.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldError(f"{small} is not a subfield of {big}")
    if small.k == 1:
        return list(range(small.p))

    def eval_mod_at(beta: int) -> int:
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, beta), big.from_int(c))
        return acc

    beta = big.pow(big.generator, (big.q - 1) // (small.q - 1))
    if eval_mod_at(beta) != 0:
        beta = next(b for b in range(1, big.q) if eval_mod_at(b) == 0)
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], beta))
    table = []
    for v in range(small.q):
        acc = 0
        for d, pw in zip(small._digits(v), powers):
            if d:
                acc = big.add(acc, big.mul(big.from_int(d), pw))
        table.append(acc)
    return table
