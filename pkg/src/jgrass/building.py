"""Elements, flags and incidence for the buildings A_n(K) and D_n(K).

Types are the integers 1..n (A_n) or 1..n-2 together with the strings "+" and
"-" (D_n).  The Dynkin diagram is held as an adjacency map so that the
splitting predicate reduces to a connected-components count.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence, Union

from .gf import FieldSpec
from .linalg import Subspace, is_rational, is_subspace, meet
from .quadform import MINUS, PLUS, HyperbolicSpace

ElementType = Union[int, str]


class BuildingError(ValueError):
    pass


def type_key(t: ElementType) -> tuple[int, int]:
    if isinstance(t, int):
        return (0, t)
    if t == PLUS:
        return (1, 0)
    if t == MINUS:
        return (1, 1)
    raise BuildingError(f"unknown type {t!r}")


def sort_types(types: Iterable[ElementType]) -> tuple[ElementType, ...]:
    return tuple(sorted(types, key=type_key))


def parse_type(s: str) -> ElementType:
    s = s.strip()
    if s in ("+", "p", "plus"):
        return PLUS
    if s in ("-", "m", "minus"):
        return MINUS
    return int(s)


def format_type(t: ElementType) -> str:
    return str(t)


class Flag:
    """A set of building elements with pairwise distinct types.

    Held as parallel tuples of types (canonical order) and bodies.  Points and
    lines of every Grassmannian are flags.  Validity (pairwise incidence) is
    checked by :meth:`Building.is_flag`, not on construction.
    """

    __slots__ = ("types", "bodies", "_hash")

    def __init__(self, items: Mapping[ElementType, Subspace] | Iterable[tuple[ElementType, Subspace]]):
        if isinstance(items, Mapping):
            items = items.items()
        pairs = sorted(items, key=lambda tb: type_key(tb[0]))
        types = tuple(t for t, _ in pairs)
        if len(set(types)) != len(types):
            raise BuildingError("flag types must be pairwise distinct")
        self.types = types
        self.bodies = tuple(b for _, b in pairs)
        self._hash = hash(self.bodies) ^ hash(types)

    @classmethod
    def _raw(cls, types: tuple, bodies: tuple) -> "Flag":
        f = object.__new__(cls)
        f.types = types
        f.bodies = bodies
        f._hash = hash(bodies) ^ hash(types)
        return f

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Flag):
            return NotImplemented
        return self._hash == other._hash and self.bodies == other.bodies and self.types == other.types

    def __len__(self):
        return len(self.types)

    def __iter__(self) -> Iterator[tuple[ElementType, Subspace]]:
        return iter(zip(self.types, self.bodies))

    def __getitem__(self, t: ElementType) -> Subspace:
        try:
            return self.bodies[self.types.index(t)]
        except ValueError:
            raise KeyError(t) from None

    def get(self, t: ElementType, default=None):
        try:
            return self[t]
        except KeyError:
            return default

    def __contains__(self, t) -> bool:
        return t in self.types

    def replace(self, t: ElementType, body: Subspace) -> "Flag":
        i = self.types.index(t)
        return Flag._raw(self.types, self.bodies[:i] + (body,) + self.bodies[i + 1:])

    def without(self, t: ElementType) -> "Flag":
        i = self.types.index(t)
        return Flag._raw(self.types[:i] + self.types[i + 1:], self.bodies[:i] + self.bodies[i + 1:])

    def merged(self, extra: Mapping[ElementType, Subspace]) -> "Flag":
        d = dict(zip(self.types, self.bodies))
        d.update(extra)
        return Flag(d)

    def sort_key(self):
        return tuple(b.rows for b in self.bodies)

    def __lt__(self, other: "Flag"):
        return self.sort_key() < other.sort_key()

    def to_json(self) -> list:
        return [[format_type(t), b.to_json()] for t, b in self]

    def __repr__(self):
        inner = ", ".join(f"{t}: {list(b.rows)}" for t, b in self)
        return f"Flag({{{inner}}})"


class Building:
    """The building A_n(K) (subspaces of K^{n+1}) or D_n(K) (hyperbolic 2n-space)."""

    def __init__(self, family: str, n: int, field: FieldSpec):
        family = family.upper()
        if family not in ("A", "D"):
            raise BuildingError(f"unknown family {family!r}")
        if family == "A" and n < 1:
            raise BuildingError("A_n needs n >= 1")
        if family == "D" and n < 3:
            raise BuildingError("D_n needs n >= 3")
        self.family = family
        self.n = n
        self.field = field
        if family == "A":
            self.ambient_dim = n + 1
            self.types: tuple[ElementType, ...] = tuple(range(1, n + 1))
            self.space = None
        else:
            self.ambient_dim = 2 * n
            self.types = tuple(range(1, n - 1)) + (PLUS, MINUS)
            self.space = HyperbolicSpace(field, n)
        self.adjacency = self._diagram()

    def __eq__(self, other):
        return isinstance(other, Building) and (self.family, self.n, self.field) == (other.family, other.n, other.field)

    def __hash__(self):
        return hash((self.family, self.n, self.field))

    def __repr__(self):
        return f"{self.family}_{self.n}({self.field})"

    # diagram ---------------------------------------------------------------
    def _diagram(self) -> dict[ElementType, set[ElementType]]:
        adj: dict[ElementType, set[ElementType]] = {t: set() for t in self.types}

        def link(a, b):
            adj[a].add(b)
            adj[b].add(a)

        if self.family == "A":
            for i in range(1, self.n):
                link(i, i + 1)
        else:
            for i in range(1, self.n - 2):
                link(i, i + 1)
            link(self.n - 2, PLUS)
            link(self.n - 2, MINUS)
        return adj

    def check_type(self, t: ElementType) -> None:
        if t not in self.adjacency:
            raise BuildingError(f"type {t!r} is not a node of {self.family}_{self.n}")

    def components_without(self, t: ElementType) -> list[set[ElementType]]:
        seen: set[ElementType] = {t}
        comps = []
        for s in self.types:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def splits(self, t: ElementType, J: Iterable[ElementType]) -> bool:
        """True iff deleting node t leaves J meeting at least two components."""
        J = set(J)
        self.check_type(t)
        if t in J:
            return False
        hit = sum(1 for comp in self.components_without(t) if comp & J)
        return hit >= 2

    def splitting_types(self, J: Iterable[ElementType]) -> list[ElementType]:
        J = set(J)
        return [t for t in self.types if self.splits(t, J)]

    def neighbours(self, t: ElementType) -> set[ElementType]:
        return set(self.adjacency[t])

    # elements ------------------------------------------------------------
    def dim_of_type(self, t: ElementType) -> int:
        self.check_type(t)
        return t if isinstance(t, int) else self.n

    def is_element(self, t: ElementType, body: Subspace) -> bool:
        if t not in self.adjacency or body.ambient_dim != self.ambient_dim or body.field != self.field:
            return False
        if body.dim != self.dim_of_type(t):
            return False
        if self.family == "A":
            return True
        if not self.space.is_totally_singular(body):
            return False
        if isinstance(t, str):
            return self.space.spinor_class(body) == t
        return True

    def incident(self, t1: ElementType, x: Subspace, t2: ElementType, y: Subspace) -> bool:
        if x.ambient_dim != y.ambient_dim:
            raise BuildingError("ambient mismatch")
        if t1 == t2:
            return x == y
        if isinstance(t1, str) and isinstance(t2, str):
            return meet(x, y).dim == self.n - 1
        if x.dim <= y.dim:
            return is_subspace(x, y)
        return is_subspace(y, x)

    def is_flag(self, F: Flag | Mapping[ElementType, Subspace]) -> bool:
        if not isinstance(F, Flag):
            try:
                F = Flag(F)
            except BuildingError:
                return False
        items = list(F)
        for t, b in items:
            if not self.is_element(t, b):
                return False
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if not self.incident(*items[i], *items[j]):
                    return False
        return True

    def is_rational_flag(self, F: Flag, a: int) -> bool:
        return all(is_rational(b, a) for b in F.bodies)


def make_building(family: str, n: int, field: FieldSpec) -> Building:
    return Building(family, n, field)


def parse_types(spec: str | Sequence) -> tuple[ElementType, ...]:
    if isinstance(spec, str):
        parts = [s for s in spec.replace(" ", "").split(",") if s]
        return sort_types(parse_type(s) for s in parts)
    return sort_types(parse_type(str(s)) if not isinstance(s, int) else s for s in spec)
