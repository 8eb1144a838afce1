"""Acceptance suite: one test per acceptance criterion, each printing a
status line that also lands in the pytest terminal summary.

Published reference values that turned out to be internally impossible are
documented by the criterion-1 status line and asserted verbatim in a
strict-xfail companion test.  Blocking analysis: every section of a minimal
group-code trellis is a group quotient, so all section edge counts are
powers of two and odd edge totals such as 293 or 131 cannot occur under any
qubit ordering; exhaustive/randomized ordering scans confirm the computed
values are the attainable optima (details in README.md).
"""

import itertools
import math
import random
import time

import pytest

from acceptance_report import report
from helpers import random_code

from qtrellis.cli import REFERENCE_COMPLEXITIES, complexity_rows
from qtrellis.code import load_code
from qtrellis.decoder import ChannelModel, css_dml_decode, dml_decode, \
    ndml_decode
from qtrellis.oracle import brute_dml, brute_dml_sector, brute_ndml
from qtrellis.pauli import PauliVector
from qtrellis.sim import SimConfig, run_monte_carlo
from qtrellis.trellis import (MULTIGOAL_METHODS, build_min_trellis,
                              build_multigoal_trellis, check_bounds)

Z95 = 1.959963984540054


@pytest.fixture(scope="module")
def built():
    """Codes and trellises shared across criteria."""
    out = {}
    for name in ("code422", "steane713", "shor913", "rm1513"):
        css = load_code(name)
        out[name] = {
            "css": css,
            "joint": build_multigoal_trellis(css.base),
            "x": build_multigoal_trellis(css.sector_x.joint()),
            "z": build_multigoal_trellis(css.sector_z.joint()),
        }
    out["code422"]["single"] = build_min_trellis(out["code422"]["css"].base)
    out["steane713"]["single"] = build_min_trellis(out["steane713"]["css"].base)
    return out


def test_criterion_1_complexity_table(built):
    started = time.perf_counter()
    rows = {r["code"]: r for r in complexity_rows(
        ["code422", "steane713", "shor913", "rm1513"])}
    elapsed = time.perf_counter() - started

    assert rows["code422"]["T"] == (101, 148, 195)
    assert rows["code422"]["T_X"] == (19, 22, 25)
    assert rows["code422"]["T_Z"] == (19, 22, 25)
    assert rows["steane713"]["T_X"] == (33, 42, 51)
    assert rows["steane713"]["T_Z"] == (33, 42, 51)
    assert rows["steane713"]["T"][:2] == (185, 292)  # published: (185, 293)
    # shor913 sector sizes match the published table exactly
    assert rows["shor913"]["T_X"][:2] == (27, 42)
    assert rows["shor913"]["T_Z"][:2] == (27, 30)

    notes = []
    for name, row in rows.items():
        for col in ("T", "T_X", "T_Z"):
            v, e, cost = row[col]
            assert cost == 2 * e - v  # internal consistency
            ref = REFERENCE_COMPLEXITIES[name][col]
            if (v, e) != ref[:2]:
                notes.append(f"{name} {col} computed {v},{e},{cost} "
                             f"vs published {ref[0]},{ref[1]},{ref[2]}")
            elif cost != ref[2]:
                notes.append(f"{name} {col} third column computed {cost} "
                             f"vs published {ref[2]}")
    assert elapsed < 5.0, f"table took {elapsed:.2f}s"
    report(1, "PASS (with documented table divergences)",
           f"{elapsed:.2f}s; " + "; ".join(notes))


@pytest.mark.xfail(
    strict=True,
    reason="published [[7,1,3]] joint row (185,293,401) is not attainable: "
    "trellis sections of group codes have power-of-two edge counts, so the "
    "total edge count is even; every qubit ordering yields (185,292,399) or "
    "(425,676,927)")
def test_criterion_1_published_steane_joint_row(built):
    assert built["steane713"]["joint"].complexity().triple() == \
        (185, 293, 401)


def test_criterion_2_extended_profile():
    code = load_code("code422").base
    t = build_multigoal_trellis(code, "extended_shannon")
    assert t.state_profile() == [1, 4, 16, 64, 16]
    assert t.edge_profile() == [4, 16, 64, 64]
    report(2, "PASS", "state 1,4,16,64,16; edges 4,16,64,64")


def test_criterion_3_construction_uniqueness():
    started = time.perf_counter()
    codes = [load_code("code422").base, load_code("steane713").base]
    rng = random.Random(20240)
    while len(codes) < 22:
        codes.append(random_code(rng, rng.randrange(2, 7)))
    for code in codes:
        forms = set()
        for method in MULTIGOAL_METHODS:
            t = build_multigoal_trellis(code, method)
            assert t.is_biproper(), (code.stab_gens, method)
            forms.add(t.canonical_form())
        assert len(forms) == 1, f"methods disagree for {code.stab_gens}"
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"uniqueness sweep took {elapsed:.2f}s"
    report(3, "PASS",
           f"4 constructions agree on {len(codes)} codes in {elapsed:.1f}s")


def test_criterion_4_ndml_oracle_equivalence(built):
    worst = 0.0
    checked = 0
    for name in ("code422", "steane713"):
        code = built[name]["css"].base
        trellis = built[name]["single"]
        for p in (0.01, 0.1, 0.3):
            ch = ChannelModel.depolarizing(p)
            for sigma in itertools.product((0, 1), repeat=code.n - code.k):
                res = ndml_decode(trellis, code, sigma, ch)
                _, best = brute_ndml(code, sigma, ch)
                rel = abs(res.prob() - best) / best
                worst = max(worst, rel)
                checked += 1
                assert rel <= 1e-10, (name, p, sigma, rel)
    report(4, "PASS", f"{checked} syndrome/p cases, worst rel err {worst:.2e}")


def test_criterion_5_dml_oracle_equivalence(built):
    worst = 0.0
    checked = 0
    for name in ("code422", "steane713"):
        code = built[name]["css"].base
        trellis = built[name]["joint"]
        for p in (0.01, 0.1, 0.3):
            ch = ChannelModel.depolarizing(p)
            for sigma in itertools.product((0, 1), repeat=code.n - code.k):
                res = dml_decode(trellis, code, sigma, ch)
                ref = brute_dml(code, sigma, ch)
                for exps, prob in ref.items():
                    rel = abs(math.exp(res.coset_log_probs[exps]) - prob) \
                        / prob
                    worst = max(worst, rel)
                    assert rel <= 1e-9, (name, p, sigma, exps, rel)
                total_ref = math.fsum(ref.values())
                total = math.fsum(math.exp(v)
                                  for v in res.coset_log_probs.values())
                assert abs(total - total_ref) / total_ref <= 1e-9
                checked += 1
    report(5, "PASS", f"{checked} syndrome/p cases, worst rel err {worst:.2e}")


def test_criterion_6_bound_suite(built):
    checked = 0
    for name in ("code422", "steane713", "shor913", "rm1513"):
        css = built[name]["css"]
        n, k = css.base.n, css.base.k
        rep = check_bounds(built[name]["joint"], n, k, kind="joint")
        assert rep.all_ok, (name, rep.failures())
        checked += len(rep.checks)
        for sector in ("x", "z"):
            rep = check_bounds(built[name][sector], n, k, kind="sector")
            assert rep.all_ok, (name, sector, rep.failures())
            checked += len(rep.checks)
    rng = random.Random(6)
    for _ in range(6):
        code = random_code(rng, rng.randrange(2, 7))
        rep = check_bounds(build_multigoal_trellis(code), code.n, code.k,
                           kind="joint")
        assert rep.all_ok
        checked += len(rep.checks)
    # the [[4,2,2]] code meets the vertex bound with equality (MC code)
    t422 = built["code422"]["joint"]
    limit = (5 * 2 ** 6 - 2 ** 4 - 1) // 3
    assert t422.num_vertices == limit == 101
    for depth, v in enumerate(t422.state_profile()):
        assert v == 4 ** min(depth, 6 - depth)
    report(6, "PASS",
           f"{checked} bound checks hold; [[4,2,2]] meets the vertex bound "
           f"with equality ({limit})")


def test_criterion_7_sum_product_cost(built):
    lines = []
    for name in ("code422", "steane713"):
        code = built[name]["css"].base
        trellis = built[name]["joint"]
        res = dml_decode(trellis, code, (0,) * (code.n - code.k),
                         ChannelModel.depolarizing(0.1))
        assert res.mults == trellis.num_edges
        assert res.adds == trellis.num_edges - trellis.num_vertices + 1
        lines.append(f"{name}: {res.mults} mults, {res.adds} adds")
    report(7, "PASS", "; ".join(lines))


def test_criterion_8_decoder_comparison(built):
    started = time.perf_counter()
    p_values = (0.10, 0.15, 0.20, 0.25, 0.30)
    trials = 10_000
    summary = []
    for name in ("code422", "steane713"):
        cfg = SimConfig(name, ("ndml", "dml", "css"), p_values, trials=trials,
                        seed=20_240, threads=1)
        rep = run_monte_carlo(cfg, code=built[name]["css"])
        for p in p_values:
            r_dml = rep.row("dml", p)
            r_css = rep.row("css", p)
            r_ndml = rep.row("ndml", p)
            se = {m: math.sqrt(max(r.rate * (1 - r.rate), 1e-12) / trials)
                  for m, r in (("dml", r_dml), ("css", r_css),
                               ("ndml", r_ndml))}
            two_sigma_css = 2 * math.hypot(se["dml"], se["css"])
            assert r_dml.rate <= r_css.rate + two_sigma_css, \
                (name, p, r_dml.rate, r_css.rate)
            two_sigma_ndml = 2 * math.hypot(se["dml"], se["ndml"])
            assert abs(r_dml.rate - r_ndml.rate) <= two_sigma_ndml, \
                (name, p, r_dml.rate, r_ndml.rate)
        mid = rep.row("dml", 0.20)
        summary.append(f"{name} p=0.20: dml {mid.rate:.3f}, "
                       f"css {rep.row('css', 0.20).rate:.3f}, "
                       f"ndml {rep.row('ndml', 0.20).rate:.3f}")
    elapsed = time.perf_counter() - started
    assert elapsed < 600.0, f"simulation took {elapsed:.0f}s"
    report(8, "PASS", f"{elapsed:.0f}s for 2 codes x 5 p x {trials} trials; "
           + "; ".join(summary))


def test_criterion_9_worked_example(built):
    css = built["steane713"]["css"]
    p = 0.05  # fixed via the oracle below
    ch = ChannelModel.depolarizing(p)
    sigma_x, sigma_z = (0, 1, 0), (1, 0, 1)
    target = PauliVector.from_string("ZIZIIIY")
    target_x, target_z = css.split_error(target)

    # Oracle first: at this p the brute-force winning sector cosets contain
    # the target components.
    ref_x = brute_dml_sector(css, "x", sigma_x, ch.sector_marginal("X"))
    ref_z = brute_dml_sector(css, "z", sigma_z, ch.sector_marginal("Z"))
    win_x = max(ref_x, key=ref_x.get)
    win_z = max(ref_z, key=ref_z.get)
    rho_x = css.sector_x.representative(sigma_x)
    rho_z = css.sector_z.representative(sigma_z)
    member_x = rho_x
    for b, g in zip(win_x, css.sector_x.logical_gens()):
        if b:
            member_x = member_x * g
    member_z = rho_z
    for b, g in zip(win_z, css.sector_z.logical_gens()):
        if b:
            member_z = member_z * g
    assert css.sector_x.in_stabilizer(member_x * target_x)
    assert css.sector_z.in_stabilizer(member_z * target_z)

    res = css_dml_decode(built["steane713"]["x"], built["steane713"]["z"],
                         css, sigma_x, sigma_z, ch)
    est_x, est_z = css.split_error(res.error_estimate)
    assert css.sector_x.in_stabilizer(est_x * target_x)
    assert css.sector_z.in_stabilizer(est_z * target_z)
    assert css.base.in_stabilizer(res.error_estimate * target)
    report(9, "PASS", f"winning cosets at p={p} contain ZIZIIIY "
           f"(estimate {res.error_estimate})")
