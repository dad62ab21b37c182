"""The eleven acceptance criteria, one test each, at full size."""

from jgrass import checks
from jgrass.checks import D4_SETS


def test_criterion_01_a3(record):
    r = checks.theorem1(family="A", n=3, J="1,3")
    cl = r["closure"]
    ok = (r["rational_points"] == 105 and r["total_points"] == 1785 and cl["saturated"]
          and cl["closure_size"] < 1785 and r["omega_violations"] == 0 and not r["witness_in_omega"]
          and r["elapsed_ms"] < 30_000)
    record(1, ok, f"closure {cl['closure_size']}/{r['total_points']} from {r['rational_points']} rational, "
                  f"rounds {cl['added_per_round']}, omega violations {r['omega_violations']}, "
                  f"witness in omega {r['witness_in_omega']}, {r['elapsed_ms'] / 1000:.1f}s")
    assert ok


def test_criterion_02_d3_and_klein(record):
    d = checks.theorem1(family="D", n=3, J="+,-")
    k = checks.klein_agreement()
    direct = d["verdict"] and d["closure"]["saturated"]
    ok = direct and k["verdict"] and k["A_generated"] is False and k["D_generated"] is False \
        and d["closure"]["closure_size"] == k["A_closure"] and d["elapsed_ms"] + k["elapsed_ms"] < 60_000
    record(2, ok, f"D3 direct closure {d['closure']['closure_size']}/{d['total_points']} proper={d['proper']}; "
                  f"via Klein {k['A_closure']}/{k['total_points']}, sets equal {k['closures_correspond']}, "
                  f"transported witness in omega {k['transported_witness_in_omega']}")
    assert ok


def test_criterion_03_d4(record):
    parts, ok = [], True
    for J in D4_SETS:
        t = checks.theorem1(family="D", n=4, J=J, time_limit=30.0)
        s = checks.omega_subspace(family="D", n=4, J=J, samples=10_000)
        good = (t["verdict"] and not t["witness_in_omega"] and t["witness_ms"] < 10_000
                and t["omega_violations"] == 0 and s["verdict"] and s["pairs_checked"] >= 10_000)
        ok = ok and good
        parts.append(f"{{{J}}}: witness out ({t['witness_ms']:.0f}ms), closure {t['closure']['closure_size']}"
                     f"/{t['total_points']} all in omega={t['closure_in_omega']} ({t['certified_by']}), "
                     f"{s['pairs_checked']} pairs {s['violations']} violations")
    record(3, ok, "; ".join(parts))
    assert ok


def test_criterion_04_iota(record):
    a = checks.iota_check(n=3)
    b = checks.iota_check(n=4, samples=1000)
    ok = a["verdict"] and b["verdict"] and a["B_generated"] is False and b["rational_preimages_ok"] >= 1000
    record(4, ok, f"n=3 exhaustive bijective={a['bijective']} on {a['rational_points']} rational points, "
                  f"violations {a['violations']}; B3+ closure {a['B_closure']}/{a['B_total']} generated={a['B_generated']}; "
                  f"n=4 {b['samples_per_direction']} samples per direction, violations {b['violations']}")
    assert ok


def test_criterion_05_a4_omega13(record):
    r = checks.omega_pair(family="A", n=4, J="1,3", j1=1, j2=3, samples=10_000)
    s = r["subspace"]
    ok = r["verdict"] and not r["witness_in_omega"] and s["pairs_checked"] >= 10_000 and s["violations"] == 0
    record(5, ok, f"witness in Omega_1,3 {r['witness_in_omega']} (oracle {r['witness_in_omega_oracle']}); "
                  f"{s['pairs_checked']} pairs {s['violations']} violations; oracle disagreements "
                  f"{r['oracle_disagreements']}/{r['oracle_samples']}")
    assert ok


def test_criterion_06_line_rationality(record):
    a = checks.line_rationality(family="A", n=3, J="1,3")
    ok = a["verdict"] and a["mode"] == "exhaustive"
    parts = [f"A3 exhaustive {a['lines_checked']} lines ({a['rational_lines']} rational), {a['violations']} violations"]
    for J in D4_SETS:
        d = checks.line_rationality(family="D", n=4, J=J, samples=10_000)
        ok = ok and d["verdict"] and d["lines_checked"] >= 10_000
        parts.append(f"D4 {{{J}}} {d['lines_checked']} lines ({d['rational_lines']} rational), {d['violations']} violations")
    record(6, ok, "; ".join(parts))
    assert ok


def test_criterion_07_eta_vector(record):
    r = checks.eta_vector(samples=1000)
    a4, a6 = r["ambient_4"], r["ambient_6"]
    ok = r["verdict"]
    record(7, ok, f"ambient 4: {a4['subspaces_checked']} subspaces through e1+eta*e2 ({a4['rational_with_vector']} rational), "
                  f"{a4['violations']} violations; ambient 6: {a6['subspaces_checked']} checked "
                  f"({a6['rational_with_vector']} rational), {a6['violations']} violations")
    assert ok


def test_criterion_08_exterior_square(record):
    r = checks.exterior_square()
    ok = r["verdict"] and r["elapsed_ms"] < 10_000
    parts = [f"{k}: {v['subspaces']} checked, {v['violations']} violations"
             for k, v in r.items() if k.startswith("part")]
    record(8, ok, "; ".join(parts) + f"; {r['elapsed_ms'] / 1000:.2f}s")
    assert ok


def test_criterion_09_ranks(record):
    g = checks.genrank(n=3, p=2, k=1, rng_seed=0, time_limit=600.0)
    e = checks.rational_plus_one()
    ok = g["exact"] and g["greedy_size"] == 15 == g["embedding_dim"] and e["verdict"] and e["seed_size"] == 106
    record(9, ok, f"greedy generating set {g['greedy_size']}, embedding dim {g['embedding_dim']}, gr = 15 "
                  f"(restarts {g['restarts_used']}, seed 0); rational+{len(e['extra'])} = {e['seed_size']} points "
                  f"generate {e['label']}")
    assert ok


def test_criterion_10_tower(record):
    r = checks.tower(n=3, p=2)
    ok = r["verdict"] and r["elapsed_ms"] < 15 * 60_000
    parts = [f"{s['label']} over GF({2 ** s['a']}): closure {s['closure']}/{s['total']} saturated={s['saturated']}, "
             f"omega violations {s['omega_violations']}, coordinate degree {s['closure_coordinate_degree']}"
             for s in r["steps"]]
    record(10, ok, "; ".join(parts))
    assert ok


def test_criterion_11_engine(record):
    r = checks.engine()
    ok = r["verdict"]
    cases = ", ".join(f"{c['label']} {c['lines']} lines" for c in r["shadow"]["cases"])
    record(11, ok, f"idempotent {r['idempotent']}, monotone {r['monotone']}, schedule independent "
                  f"{r['schedule_independent']} (threads {r['threads']}); shadow identities "
                  f"{r['shadow']['violations']} violations on {cases}")
    assert ok
