import itertools
import math
import random

import numpy as np
import pytest

from qtrellis.code import joint_code, load_code, new_stabilizer_code
from qtrellis.decoder import (ChannelModel, _dml_joint, css_dml_decode,
                              dml_decode, ndml_decode)
from qtrellis.oracle import (brute_dml, brute_dml_sector, brute_ndml,
                             enumerate_group)
from qtrellis.trellis import build_min_trellis, build_multigoal_trellis

from helpers import pv, pvs, random_code


def code422():
    return new_stabilizer_code(pvs("XXXX", "ZZZZ"))


# -- channel -------------------------------------------------------------------

def test_depolarizing_channel():
    ch = ChannelModel.depolarizing(0.3)
    assert math.isclose(sum(ch.probs.values()), 1.0)
    assert ch.probs["X"] == ch.probs["Y"] == ch.probs["Z"]
    assert math.isclose(ch.probs["X"], 0.1)


def test_channel_rejects_bad_p():
    for p in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            ChannelModel.depolarizing(p)
    with pytest.raises(ValueError):
        ChannelModel({"I": 1.0, "X": 0.0})


def test_sector_marginal():
    ch = ChannelModel.depolarizing(0.3).sector_marginal("X")
    assert set(ch.probs) == {"I", "X"}
    assert math.isclose(ch.probs["I"], 0.7)
    assert math.isclose(ch.probs["X"], 0.1)


# -- NDML ------------------------------------------------------------------------

def test_ndml_zero_syndrome_small_p():
    code = code422()
    t = build_min_trellis(code)
    res = ndml_decode(t, code, (0, 0), ChannelModel.depolarizing(0.1))
    assert res.error_estimate.is_identity()
    assert math.isclose(res.prob(), 0.9 ** 4, rel_tol=1e-12)


def test_ndml_weight_one_tie():
    code = code422()
    t = build_min_trellis(code)
    res = ndml_decode(t, code, (1, 0), ChannelModel.depolarizing(0.1))
    assert str(res.error_estimate) in ("ZIII", "IZII", "IIZI", "IIIZ")
    assert code.syndrome_of(res.error_estimate) == (1, 0)
    assert math.isclose(res.prob(), (0.1 / 3) * 0.9 ** 3, rel_tol=1e-12)


def test_ndml_matches_brute_force_both_codes():
    for name in ("code422", "steane713"):
        code = load_code(name).base
        t = build_min_trellis(code)
        for p in (0.01, 0.1, 0.3):
            ch = ChannelModel.depolarizing(p)
            for sigma in itertools.product((0, 1), repeat=code.n - code.k):
                res = ndml_decode(t, code, sigma, ch)
                _, best = brute_ndml(code, sigma, ch)
                assert math.isclose(res.prob(), best, rel_tol=1e-10)
                assert code.syndrome_of(res.error_estimate) == sigma


def test_ndml_small_p_picks_min_weight():
    code = load_code("steane713").base
    t = build_min_trellis(code)
    ch = ChannelModel.depolarizing(1e-3)
    rng = random.Random(17)
    words = enumerate_group(code.norm_gens)
    for _ in range(8):
        sigma = tuple(rng.randrange(2) for _ in range(code.n - code.k))
        res = ndml_decode(t, code, sigma, ch)
        rho = code.representative(sigma)
        min_weight = min((rho * w).weight() for w in words)
        assert res.error_estimate.weight() == min_weight


def test_ndml_tie_break_modes():
    code = code422()
    t = build_min_trellis(code)
    ch = ChannelModel.depolarizing(0.1)
    canonical = ndml_decode(t, code, (1, 0), ch)
    again = ndml_decode(t, code, (1, 0), ch)
    assert str(canonical.error_estimate) == str(again.error_estimate)
    seen = set()
    for seed in range(8):
        res = ndml_decode(t, code, (1, 0), ch, tie_break="random",
                          rng=np.random.default_rng(seed))
        seen.add(str(res.error_estimate))
        assert math.isclose(res.prob(), canonical.prob(), rel_tol=1e-12)
    assert len(seen) > 1
    with pytest.raises(ValueError):
        ndml_decode(t, code, (1, 0), ch, tie_break="random")


def test_ndml_rejects_multigoal_trellis():
    code = code422()
    with pytest.raises(ValueError):
        ndml_decode(build_multigoal_trellis(code), code, (0, 0),
                    ChannelModel.depolarizing(0.1))


# -- DML --------------------------------------------------------------------------

def test_dml_zero_syndrome_coset_probs():
    code = code422()
    t = build_multigoal_trellis(code)
    ch = ChannelModel.depolarizing(0.05)
    res = dml_decode(t, code, (0, 0), ch)
    assert res.winning_logical == (0, 0, 0, 0)
    ref = brute_dml(code, (0, 0), ch)
    for exps, prob in ref.items():
        assert math.isclose(math.exp(res.coset_log_probs[exps]), prob,
                            rel_tol=1e-9)


def test_dml_matches_brute_force_grid():
    for name in ("code422", "steane713"):
        code = load_code(name).base
        t = build_multigoal_trellis(code)
        for p in (0.01, 0.1, 0.3):
            ch = ChannelModel.depolarizing(p)
            for sigma in itertools.product((0, 1), repeat=code.n - code.k):
                res = dml_decode(t, code, sigma, ch)
                ref = brute_dml(code, sigma, ch)
                for exps, prob in ref.items():
                    assert math.isclose(math.exp(res.coset_log_probs[exps]),
                                        prob, rel_tol=1e-9)
                total = math.fsum(ref.values())
                got = math.fsum(math.exp(v)
                                for v in res.coset_log_probs.values())
                assert math.isclose(got, total, rel_tol=1e-9)


def test_dml_estimate_lies_in_winning_coset():
    code = load_code("steane713").base
    t = build_multigoal_trellis(code)
    ch = ChannelModel.depolarizing(0.08)
    rng = random.Random(3)
    for _ in range(10):
        sigma = tuple(rng.randrange(2) for _ in range(code.n - code.k))
        res = dml_decode(t, code, sigma, ch)
        assert code.syndrome_of(res.error_estimate) == sigma
        assert code.logical_exponents(res.error_estimate) == \
            res.winning_logical


def test_dml_joint_on_worked_example_syndromes():
    # full-code DML at the worked single-error example's syndrome pair
    css = load_code("steane713")
    code = css.base
    target = pv("ZIZIIIY")
    sigma = code.syndrome_of(target)
    assert sigma == (1, 0, 1, 0, 1, 0)
    t = build_multigoal_trellis(code)
    ch = ChannelModel.depolarizing(0.05)
    res = dml_decode(t, code, sigma, ch)
    ref = brute_dml(code, sigma, ch)
    # three cosets tie exactly here; the winner must attain the maximum
    assert math.isclose(ref[res.winning_logical], max(ref.values()),
                        rel_tol=1e-12)
    assert code.in_stabilizer(res.error_estimate * target) == \
        (code.logical_exponents(target * code.representative(sigma)) ==
         res.winning_logical)


def test_dml_invariant_under_representative_choice():
    code = code422()
    jc = joint_code(code)
    t = build_multigoal_trellis(code)
    ch = ChannelModel.depolarizing(0.2)
    rho = code.representative((1, 1))
    base = _dml_joint(t, jc, rho, ch, mode="dml")
    rng = random.Random(7)
    stab_words = enumerate_group(code.stab_gens)
    for _ in range(4):
        s = stab_words[rng.randrange(len(stab_words))]
        shifted = _dml_joint(t, jc, rho * s, ch, mode="dml")
        for exps, lp in base.coset_log_probs.items():
            assert math.isclose(shifted.coset_log_probs[exps], lp,
                                rel_tol=1e-12, abs_tol=1e-12)


def test_dml_counters_match_trellis_size():
    for name in ("code422", "steane713"):
        code = load_code(name).base
        t = build_multigoal_trellis(code)
        res = dml_decode(t, code, (0,) * (code.n - code.k),
                         ChannelModel.depolarizing(0.1))
        assert res.mults == t.num_edges
        assert res.adds == t.num_edges - t.num_vertices + 1


def test_dml_log_domain_matches_linear():
    code = code422()
    t = build_multigoal_trellis(code)
    for p in (1e-3, 0.1, 0.4):
        ch = ChannelModel.depolarizing(p)
        res = dml_decode(t, code, (1, 0), ch)
        ref = brute_dml(code, (1, 0), ch)
        for exps, prob in ref.items():
            assert math.isclose(math.exp(res.coset_log_probs[exps]), prob,
                                rel_tol=1e-12)


def test_dml_requires_matching_goal_count():
    code = code422()
    t = build_min_trellis(code)  # single goal
    with pytest.raises(ValueError):
        dml_decode(t, code, (0, 0), ChannelModel.depolarizing(0.1))


# -- CSS separate decoding -----------------------------------------------------------

def css_setup(name="steane713"):
    css = load_code(name)
    tx = build_multigoal_trellis(css.sector_x.joint())
    tz = build_multigoal_trellis(css.sector_z.joint())
    return css, tx, tz


def test_css_decode_worked_single_error_example():
    css, tx, tz = css_setup()
    ch = ChannelModel.depolarizing(0.05)
    res = css_dml_decode(tx, tz, css, (0, 1, 0), (1, 0, 1), ch)
    target = pv("ZIZIIIY")
    assert css.base.in_stabilizer(res.error_estimate * target)
    ex, ez = css.split_error(res.error_estimate)
    assert css.sector_x.in_stabilizer(ex * pv("IIIIIIX"))
    assert css.sector_z.in_stabilizer(ez * pv("ZIZIIIZ"))
    # sector winners agree with the brute-force sector decoders
    bx = brute_dml_sector(css, "x", (0, 1, 0), ch.sector_marginal("X"))
    bz = brute_dml_sector(css, "z", (1, 0, 1), ch.sector_marginal("Z"))
    assert res.sectors[0].winning_logical == max(bx, key=bx.get)
    assert res.sectors[1].winning_logical == max(bz, key=bz.get)


def test_css_decode_zero_syndromes():
    css, tx, tz = css_setup()
    res = css_dml_decode(tx, tz, css, (0, 0, 0), (0, 0, 0),
                         ChannelModel.depolarizing(0.02))
    assert css.base.in_stabilizer(res.error_estimate)


def test_css_decode_422_all_syndrome_pairs():
    css, tx, tz = css_setup("code422")
    ch = ChannelModel.depolarizing(0.1)
    for sx in ((0,), (1,)):
        for sz in ((0,), (1,)):
            res = css_dml_decode(tx, tz, css, sx, sz, ch)
            bx = brute_dml_sector(css, "x", sx, ch.sector_marginal("X"))
            bz = brute_dml_sector(css, "z", sz, ch.sector_marginal("Z"))
            rx, rz = res.sectors
            for exps, prob in bx.items():
                assert math.isclose(math.exp(rx.coset_log_probs[exps]), prob,
                                    rel_tol=1e-9)
            for exps, prob in bz.items():
                assert math.isclose(math.exp(rz.coset_log_probs[exps]), prob,
                                    rel_tol=1e-9)
            # winners attain the brute-force maximum (cosets can tie exactly)
            assert math.isclose(bx[rx.winning_logical], max(bx.values()),
                                rel_tol=1e-9)
            assert math.isclose(bz[rz.winning_logical], max(bz.values()),
                                rel_tol=1e-9)


def test_css_decode_custom_marginal():
    css, tx, tz = css_setup("code422")
    ch = ChannelModel.depolarizing(0.1)
    flat_x = ChannelModel({"I": 0.5, "X": 0.5})
    flat_z = ChannelModel({"I": 0.5, "Z": 0.5})
    res = css_dml_decode(tx, tz, css, (1,), (0,), ch,
                         marginal_x=flat_x, marginal_z=flat_z)
    # under a uniform marginal both cosets of a sector weigh the same
    rx = res.sectors[0]
    vals = list(rx.coset_log_probs.values())
    assert math.isclose(vals[0], vals[1], rel_tol=1e-12)


def test_css_decode_rejects_plain_code():
    css, tx, tz = css_setup("code422")
    with pytest.raises(TypeError):
        css_dml_decode(tx, tz, css.base, (1,), (0,),
                       ChannelModel.depolarizing(0.1))


def test_css_decode_syndrome_length_check():
    css, tx, tz = css_setup()
    with pytest.raises(ValueError):
        css_dml_decode(tx, tz, css, (0, 1), (1, 0, 1),
                       ChannelModel.depolarizing(0.1))


# -- relabel invariance over explicit cosets --------------------------------------------

def test_decoders_cover_explicit_cosets_random_codes():
    rng = random.Random(77)
    for _ in range(4):
        code = random_code(rng, rng.randrange(2, 6))
        tn = build_min_trellis(code)
        tm = build_multigoal_trellis(code)
        ch = ChannelModel.depolarizing(0.15)
        for sigma in itertools.product((0, 1), repeat=code.n - code.k):
            res = ndml_decode(tn, code, sigma, ch)
            _, best = brute_ndml(code, sigma, ch)
            assert math.isclose(res.prob(), best, rel_tol=1e-10)
            dml = dml_decode(tm, code, sigma, ch)
            ref = brute_dml(code, sigma, ch)
            for exps, prob in ref.items():
                assert math.isclose(math.exp(dml.coset_log_probs[exps]),
                                    prob, rel_tol=1e-9)
