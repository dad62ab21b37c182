"""Command-line runner.  Every command prints one JSON report.

Exit codes: 0 verified, 1 falsified, 2 budget or usage error.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import os
import sys
import time

from . import __version__
from .checks import REGISTRY, CheckError, acceptance_plan, genrank as genrank_check, klein_agreement
from .embed import embedding_dim
from .generation import closure
from .gf import FieldError, make_field
from .grassmann import BudgetExceeded, GeometrySpec, make_geometry
from .rational_geom import (
    RationalContext, nearly_rational, nearly_rational_at, omega_predicate, rational_points,
    witness_at, witness_outside_omega,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2

ENV_TIME = "JGRASS_TIME_LIMIT"
ENV_POINTS = "JGRASS_MAX_POINTS"


class UsageError(Exception):
    pass


def default_time_limit() -> float:
    return float(os.environ.get(ENV_TIME, "60"))


def default_max_points() -> int:
    return int(os.environ.get(ENV_POINTS, "2000000"))


def _report(command: list[str], params: dict, body: dict) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "artifact_version": __version__,
        "command": command,
        "params": params,
        **body,
    }


def _emit(rep: dict, stream=None) -> None:
    json.dump(rep, stream or sys.stdout, indent=2, sort_keys=True, default=str)
    (stream or sys.stdout).write("\n")


def _geometry_args(p: argparse.ArgumentParser, with_a: bool = True) -> None:
    p.add_argument("--family", default=None, choices=["A", "D", "B"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    if with_a:
        p.add_argument("--a", type=int, default=None)
    p.add_argument("--J", default=None, help="comma-separated types, e.g. 1,3 or +,-")


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="rng seed")
    p.add_argument("--time-limit", type=float, default=None, help=f"seconds (default ${ENV_TIME} or 60)")
    p.add_argument("--max-points", type=int, default=None, help=f"point budget (default ${ENV_POINTS} or 2e6)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jgrass", description="Rational subgeometries of building Grassmannians.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run a named check (or 'all')")
    v.add_argument("name", help="check name or 'all': " + ", ".join(sorted(REGISTRY)))
    _geometry_args(v)
    _budget_args(v)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--j1", type=int, default=None)
    v.add_argument("--j2", type=int, default=None)
    v.add_argument("--tier", default="smoke", choices=["smoke", "full"])

    c = sub.add_parser("closure", help="closure of the rational points")
    _geometry_args(c)
    _budget_args(c)
    c.add_argument("--certify", action="store_true", help="check every closure point for Omega membership")

    o = sub.add_parser("omega-census", help="count points, Omega and rational points")
    _geometry_args(o)
    _budget_args(o)
    o.add_argument("--j1", type=int, default=None)
    o.add_argument("--j2", type=int, default=None)
    o.add_argument("--csv", default=None, help="append the census row to this CSV file")

    g = sub.add_parser("genrank", help="greedy generating set of Gr_{1,n}(A_n(q))")
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--restarts", type=int, default=20)
    _budget_args(g)

    e = sub.add_parser("embed-dim", help="dimension of the e_Lie span of Gr_{1,n}(A_n(q))")
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--p", type=int, default=2)
    e.add_argument("--k", type=int, default=1)

    w = sub.add_parser("witness", help="a point outside Omega")
    _geometry_args(w)
    w.add_argument("--j1", type=int, default=None)
    w.add_argument("--j2", type=int, default=None)

    k = sub.add_parser("klein", help="compare Gr_{1,3}(A_3) and Gr_{+,-}(D_3) via the Klein map")
    k.add_argument("--p", type=int, default=2)
    k.add_argument("--k", type=int, default=2)
    k.add_argument("--a", type=int, default=1)
    return ap


_GEOM_DEFAULTS = {"family": "A", "n": 3, "p": 2, "k": 2, "a": 1, "J": "1,3"}


def _geom_params(ns) -> dict:
    out = {}
    for key, dflt in _GEOM_DEFAULTS.items():
        val = getattr(ns, key, None)
        out[key] = dflt if val is None else val
    if ns.family is not None and ns.J is None:
        out["J"] = {"A": f"1,{out['n']}", "D": "+,-", "B": str(out["n"] - 1)}[out["family"]]
    return out


def _ctx(gp: dict) -> RationalContext:
    try:
        F = make_field(gp["p"], gp["k"])
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    return RationalContext(GeometrySpec(gp["family"], gp["n"], F, gp["J"]), gp["a"])


def _check_kwargs(fn, ns) -> dict:
    """Explicitly given flags that the check accepts."""
    accepted = inspect.signature(fn).parameters
    raw = {
        "family": ns.family, "n": ns.n, "p": ns.p, "k": ns.k, "a": ns.a, "J": ns.J,
        "threads": ns.threads, "rng_seed": ns.seed, "time_limit": ns.time_limit,
        "max_points": ns.max_points, "samples": ns.samples, "j1": ns.j1, "j2": ns.j2,
    }
    out = {key: val for key, val in raw.items() if val is not None and key in accepted}
    if "time_limit" in accepted and "time_limit" not in out and fn.__name__ in ("theorem1",):
        out["time_limit"] = default_time_limit()
    if "max_points" in accepted and "max_points" not in out:
        out["max_points"] = default_max_points()
    return out


def cmd_verify(ns, argv) -> tuple[dict, int]:
    if ns.name == "all":
        results = []
        ok = True
        for crit, name, kw in acceptance_plan(ns.tier):
            rep = REGISTRY[name](**kw)
            ok = ok and bool(rep["verdict"])
            results.append({"criterion": crit, "check": name, "params": kw, "verdict": rep["verdict"],
                            "elapsed_ms": rep.get("elapsed_ms")})
        body = {"tier": ns.tier, "results": results, "verdict": ok}
        return _report(argv, {"tier": ns.tier}, body), EXIT_OK if ok else EXIT_FALSIFIED
    fn = REGISTRY.get(ns.name)
    if fn is None:
        raise UsageError(f"unknown check {ns.name!r}; known: {', '.join(sorted(REGISTRY))}")
    kw = _check_kwargs(fn, ns)
    rep = fn(**kw)
    return _report(argv, kw, rep), EXIT_OK if rep["verdict"] else EXIT_FALSIFIED


def cmd_closure(ns, argv) -> tuple[dict, int]:
    gp = _geom_params(ns)
    ctx = _ctx(gp)
    geom = ctx.geometry
    seed = rational_points(ctx)
    tl = ns.time_limit if ns.time_limit is not None else default_time_limit()
    mp = ns.max_points if ns.max_points is not None else default_max_points()
    res = closure(seed, geom, threads=ns.threads or 1, time_limit=tl, max_points=mp,
                  certify=omega_predicate(ctx) if ns.certify else None)
    total = geom.count_points()
    body = {"closure": res.to_json(ctx.spec, ctx.a, total)}
    if ns.certify:
        body["omega_violations"] = len(res.violations)
    if not res.saturated:
        body["verdict"] = None
        body["error"] = "budget exhausted before saturation"
        return _report(argv, {**gp, "time_limit": tl, "max_points": mp}, body), EXIT_USAGE
    proper = len(res.closure) < total
    body["verdict"] = proper and not res.violations
    return _report(argv, {**gp, "time_limit": tl, "max_points": mp}, body), EXIT_OK if body["verdict"] else EXIT_FALSIFIED


def cmd_omega_census(ns, argv) -> tuple[dict, int]:
    gp = _geom_params(ns)
    ctx = _ctx(gp)
    geom = ctx.geometry
    mp = ns.max_points if ns.max_points is not None else default_max_points()
    total = geom.count_points()
    if total > mp:
        raise BudgetExceeded(f"{total} points exceed the budget of {mp}")
    if ns.j1 is not None and ns.j2 is not None:
        member = lambda P: nearly_rational_at(P, ctx, ns.j1, ns.j2)  # noqa: E731
    else:
        member = lambda P: nearly_rational(P, ctx)  # noqa: E731
    pts = geom.enumerate_points(budget=mp)
    omega = sum(1 for P in pts if member(P))
    rat = len(rational_points(ctx))
    row = {"spec": ctx.spec.label, "a": ctx.a, "points": len(pts), "omega": omega, "rational_points": rat}
    if ns.csv:
        new = not os.path.exists(ns.csv)
        with open(ns.csv, "a", newline="") as fh:
            wr = csv.DictWriter(fh, fieldnames=list(row))
            if new:
                wr.writeheader()
            wr.writerow(row)
    ok = len(pts) == total and rat <= omega < total
    return _report(argv, {**gp, "j1": ns.j1, "j2": ns.j2}, {"census": row, "verdict": ok}), EXIT_OK if ok else EXIT_FALSIFIED


def cmd_genrank(ns, argv) -> tuple[dict, int]:
    tl = ns.time_limit if ns.time_limit is not None else 600.0
    rep = genrank_check(n=ns.n, p=ns.p, k=ns.k, rng_seed=ns.seed or 0, restarts=ns.restarts, time_limit=tl)
    return _report(argv, {"n": ns.n, "p": ns.p, "k": ns.k, "rng_seed": ns.seed or 0}, rep), EXIT_OK if rep["verdict"] else EXIT_FALSIFIED


def cmd_embed_dim(ns, argv) -> tuple[dict, int]:
    F = make_field(ns.p, ns.k)
    geom = make_geometry(GeometrySpec("A", ns.n, F, (1, ns.n)))
    t0 = time.monotonic()
    pts = geom.enumerate_points()
    d = embedding_dim(pts)
    body = {"label": geom.spec.label, "points": len(pts), "embedding_dim": d,
            "expected": (ns.n + 1) ** 2 - 1, "elapsed_ms": round((time.monotonic() - t0) * 1000, 3)}
    body["verdict"] = d == body["expected"]
    return _report(argv, {"n": ns.n, "p": ns.p, "k": ns.k}, body), EXIT_OK if body["verdict"] else EXIT_FALSIFIED


def cmd_witness(ns, argv) -> tuple[dict, int]:
    gp = _geom_params(ns)
    ctx = _ctx(gp)
    if ns.j1 is not None and ns.j2 is not None:
        W = witness_at(ctx, ns.j1, ns.j2)
        inside = nearly_rational_at(W, ctx, ns.j1, ns.j2)
    else:
        W = witness_outside_omega(ctx)
        inside = nearly_rational(W, ctx)
    body = {"label": ctx.spec.label, "witness": W.to_json(), "is_point": ctx.geometry.is_point(W),
            "in_omega": inside}
    body["verdict"] = body["is_point"] and not inside
    return _report(argv, {**gp, "j1": ns.j1, "j2": ns.j2}, body), EXIT_OK if body["verdict"] else EXIT_FALSIFIED


def cmd_klein(ns, argv) -> tuple[dict, int]:
    rep = klein_agreement(p=ns.p, k=ns.k, a=ns.a)
    return _report(argv, {"p": ns.p, "k": ns.k, "a": ns.a}, rep), EXIT_OK if rep["verdict"] else EXIT_FALSIFIED


COMMANDS = {
    "verify": cmd_verify,
    "closure": cmd_closure,
    "omega-census": cmd_omega_census,
    "genrank": cmd_genrank,
    "embed-dim": cmd_embed_dim,
    "witness": cmd_witness,
    "klein": cmd_klein,
}


def main(argv: list[str] | None = None, stream=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rep, code = COMMANDS[ns.cmd](ns, argv)
    except (UsageError, CheckError, BudgetExceeded, ValueError) as exc:
        rep = _report(argv, {}, {"error": f"{type(exc).__name__}: {exc}", "verdict": None})
        code = EXIT_USAGE
    _emit(rep, stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
