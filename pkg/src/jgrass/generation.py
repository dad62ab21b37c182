"""Span closure in a point-line geometry, generation verdicts, and rank search.

The closure engine is a semi-naive fixpoint.  Each round takes the points
added in the previous round (the frontier), pairs every frontier point P with
every known point Q that shares a partner key with it, and inserts the full
shadow of the line through P and Q when there is one.  New points join the
known set only at the end of the round, so the result of a round does not
depend on how the frontier is split among worker threads.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .building import Flag
from .gf import minimal_degree_of_values
from .grassmann import BudgetExceeded


@dataclass
class ClosureResult:
    closure: set
    rounds: int
    added_per_round: list
    seed_size: int
    saturated: bool
    elapsed_ms: float = 0.0
    lines_used: int = 0
    violations: list = field(default_factory=list)

    def __len__(self):
        return len(self.closure)

    def to_json(self, spec=None, a=None, total_points=None) -> dict:
        out = {
            "spec": spec.to_json() if spec is not None else None,
            "a": a,
            "seed_size": self.seed_size,
            "closure_size": len(self.closure),
            "total_points": total_points,
            "proper": (len(self.closure) < total_points) if total_points is not None and self.saturated else None,
            "rounds": self.rounds,
            "added_per_round": list(self.added_per_round),
            "elapsed_ms": round(self.elapsed_ms, 3),
            "saturated": self.saturated,
        }
        return out


class _State:
    """Known points, their partner index, and the lines already expanded."""

    __slots__ = ("points", "index", "lines")

    def __init__(self):
        self.points: set = set()
        self.index: dict = {}
        self.lines: dict = {}

    def copy(self) -> "_State":
        s = _State()
        s.points = set(self.points)
        s.index = {k: list(v) for k, v in self.index.items()}
        s.lines = dict(self.lines)
        return s

    def add(self, geom, P: Flag) -> None:
        self.points.add(P)
        for key in geom.partner_keys(P):
            lst = self.index.get(key)
            if lst is None:
                self.index[key] = [P]
            else:
                lst.append(P)


def _expand(geom, state: _State, chunk: Sequence[Flag], deadline: float | None):
    """Lines and new points produced by one slice of the frontier (read-only on state)."""
    known = state.points
    index = state.index
    done = state.lines
    found: dict = {}
    new: set = set()
    for P in chunk:
        covered = {P}
        for key in geom.partner_keys(P):
            for Q in index.get(key, ()):
                if Q in covered:
                    continue
                L = geom.line_through(P, Q)
                if L is None:
                    continue
                shadow = done.get(L)
                if shadow is None:
                    shadow = found.get(L)
                if shadow is None:
                    shadow = tuple(geom.line_shadow(L))
                    found[L] = shadow
                    for X in shadow:
                        if X not in known:
                            new.add(X)
                covered.update(shadow)
        if deadline is not None and time.monotonic() > deadline:
            break
    return found, new


def closure(seed: Iterable[Flag], geom, *, threads: int = 1, max_points: int | None = None,
            time_limit: float | None = None, base: "ClosureResult | _State | None" = None,
            certify: Callable[[Flag], bool] | None = None, stop_at: int | None = None,
            chunk_size: int = 256, keep_state: bool = False) -> ClosureResult:
    """Least line-closed superset of ``seed``.

    ``base`` may be the (saturated) result of an earlier call with
    ``keep_state=True``; its points are taken as already closed.  ``certify``
    is evaluated on every inserted point and failures are recorded in
    ``violations``.  Exceeding ``max_points`` or ``time_limit`` (seconds)
    returns a partial result with ``saturated=False``.  ``stop_at`` ends the
    run early, saturated, once that many points are known (used when only
    "everything is generated" matters).
    """
    t0 = time.monotonic()
    deadline = t0 + time_limit if time_limit is not None else None
    seed = list(dict.fromkeys(seed))
    if base is not None:
        st = base._state.copy() if isinstance(base, ClosureResult) else base.copy()
    else:
        st = _State()
    frontier = sorted((P for P in seed if P not in st.points), key=Flag.sort_key)
    violations = []
    for P in frontier:
        st.add(geom, P)
        if certify is not None and not certify(P):
            violations.append(P)
    rounds = 0
    added = []
    saturated = True
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            if stop_at is not None and len(st.points) >= stop_at:
                break
            if max_points is not None and len(st.points) > max_points:
                saturated = False
                break
            if deadline is not None and time.monotonic() > deadline:
                saturated = False
                break
            chunks = [frontier[i:i + chunk_size] for i in range(0, len(frontier), chunk_size)]
            if pool is not None:
                results = list(pool.map(lambda c: _expand(geom, st, c, deadline), chunks))
            else:
                results = []
                for c in chunks:
                    results.append(_expand(geom, st, c, deadline))
                    if deadline is not None and time.monotonic() > deadline:
                        break
            if deadline is not None and time.monotonic() > deadline:
                saturated = False
            new: set = set()
            for found, nw in results:
                for L, sh in found.items():
                    st.lines.setdefault(L, sh)
                new |= nw
            new -= st.points
            frontier = sorted(new, key=Flag.sort_key)
            if frontier:
                rounds += 1
                added.append(len(frontier))
            for P in frontier:
                st.add(geom, P)
                if certify is not None and not certify(P):
                    violations.append(P)
            if not saturated:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    res = ClosureResult(
        closure=st.points,
        rounds=rounds,
        added_per_round=added,
        seed_size=len(seed),
        saturated=saturated,
        elapsed_ms=(time.monotonic() - t0) * 1000.0,
        lines_used=len(st.lines),
        violations=violations,
    )
    if keep_state:
        res._state = st
    return res


def k0_generated(ctx, **kw) -> tuple[bool | None, ClosureResult]:
    """Does the rational subgeometry generate the whole geometry?"""
    from .rational_geom import rational_points

    geom = ctx.geometry
    total = geom.count_points()
    seed = rational_points(ctx)
    res = closure(seed, geom, **kw)
    if not res.saturated:
        return None, res
    return len(res.closure) == total, res


def generates(seed: Iterable[Flag], geom, total: int | None = None, **kw) -> bool:
    total = geom.count_points() if total is None else total
    res = closure(seed, geom, stop_at=total, **kw)
    return len(res.closure) >= total


@dataclass
class RankSearch:
    size: int
    seed: list
    restarts_used: int
    elapsed_ms: float
    lower_bound: int | None = None


def greedy_generating_set(geom, *, rng_seed: int = 0, restarts: int = 20, target: int | None = None,
                          time_limit: float | None = 600.0, points: Sequence[Flag] | None = None) -> RankSearch:
    """Greedy growth: repeatedly add the point whose addition yields the largest closure.

    The first pass breaks ties by canonical order; later passes break ties at
    random (seeded).  Stops early once a set of size ``target`` is found.
    Upper bound only.
    """
    t0 = time.monotonic()
    pts = list(points) if points is not None else geom.enumerate_points()
    pts.sort(key=Flag.sort_key)
    total = len(pts)
    rng = random.Random(rng_seed)
    best: list | None = None
    used = 0
    for attempt in range(restarts):
        used = attempt + 1
        chosen: list = []
        state = None
        size = 0
        while size < total:
            outside = [P for P in pts if state is None or P not in state._state.points]
            if attempt > 0:
                rng.shuffle(outside)
            best_gain, best_res, best_P = -1, None, None
            for P in outside:
                r = closure([P], geom, base=state, keep_state=True)
                if len(r.closure) > best_gain:
                    best_gain, best_res, best_P = len(r.closure), r, P
                    if best_gain == total:
                        break
            chosen.append(best_P)
            state = best_res
            size = best_gain
            if best is not None and len(chosen) >= len(best):
                break
        if size == total and (best is None or len(chosen) < len(best)):
            best = chosen
        if target is not None and best is not None and len(best) <= target:
            break
        if time_limit is not None and time.monotonic() - t0 > time_limit:
            break
    if best is None:
        raise BudgetExceeded("no generating set found within budget")
    return RankSearch(len(best), best, used, (time.monotonic() - t0) * 1000.0)


def extend_to_generating(seed: Sequence[Flag], geom, candidates: Iterable[Flag] | None = None,
                         max_extra: int = 1) -> list[Flag] | None:
    """Smallest list of at most ``max_extra`` extra points making ``seed`` generate.

    Tries candidates in canonical order on top of the closure of ``seed``;
    returns None if none works.
    """
    total = geom.count_points()
    base = closure(seed, geom, keep_state=True)
    if len(base.closure) == total:
        return []
    cands = sorted(candidates if candidates is not None else geom.enumerate_points(), key=Flag.sort_key)
    cands = [P for P in cands if P not in base.closure]
    if max_extra >= 1:
        for P in cands:
            r = closure([P], geom, base=base, stop_at=total)
            if len(r.closure) >= total:
                return [P]
    if max_extra >= 2:
        for P in cands:
            r1 = closure([P], geom, base=base, keep_state=True)
            for Q in cands:
                if Q in r1.closure:
                    continue
                r = closure([Q], geom, base=r1, stop_at=total)
                if len(r.closure) >= total:
                    return [P, Q]
    return None


def minimal_coordinate_field(S: Iterable[Flag]) -> int:
    """Degree of the field generated by all RREF coordinates of the flags in S."""
    S = list(S)
    if not S:
        return 1
    F = S[0].bodies[0].field
    vals = {x for P in S for b in P.bodies for r in b.rows for x in r}
    return minimal_degree_of_values(F, vals)
