import math
import random

import numpy as np
import pytest

from qtrellis import backend, kernels_py
from qtrellis.code import load_code
from qtrellis.decoder import ChannelModel, dml_decode, ndml_decode
from qtrellis.trellis import build_min_trellis, build_multigoal_trellis


def random_section(rng, n_in, n_out, n_edges):
    src = [rng.randrange(n_in) for _ in range(n_edges)]
    dst = list(range(n_out)) + [rng.randrange(n_out)
                                for _ in range(n_edges - n_out)]
    lab = [rng.randrange(4) for _ in range(n_edges)]
    acc = [rng.uniform(-5, 0) for _ in range(n_in)]
    wtab = [rng.uniform(-3, 0) for _ in range(4)]
    return acc, src, dst, wtab, lab


def test_python_kernels_reference_behaviour():
    rng = random.Random(2)
    acc, src, dst, wtab, lab = random_section(rng, 5, 4, 12)
    out = kernels_py.viterbi_forward(acc, src, dst, wtab, lab, 4)
    for d in range(4):
        expect = min(acc[s] + wtab[l] for s, dd, l in zip(src, dst, lab)
                     if dd == d)
        assert math.isclose(out[d], expect)
    out, mults, adds = kernels_py.sumprod_forward(acc, src, dst, wtab, lab, 4)
    assert mults == 12
    assert adds == 12 - 4
    for d in range(4):
        terms = [acc[s] + wtab[l] for s, dd, l in zip(src, dst, lab)
                 if dd == d]
        expect = math.log(math.fsum(math.exp(t) for t in terms))
        assert math.isclose(out[d], expect, rel_tol=1e-12)


@pytest.mark.skipif(not backend.COMPILED, reason="compiled kernels not built")
def test_compiled_matches_python_kernels():
    from qtrellis import _kernels
    rng = random.Random(4)
    for _ in range(25):
        n_in = rng.randrange(1, 9)
        n_out = rng.randrange(1, 9)
        n_edges = rng.randrange(n_out, n_out + 20)
        acc, src, dst, wtab, lab = random_section(rng, n_in, n_out, n_edges)
        args_np = (np.array(acc), np.array(src, dtype=np.int64),
                   np.array(dst, dtype=np.int64), np.array(wtab),
                   np.array(lab, dtype=np.int64), n_out)
        fwd_c = _kernels.viterbi_forward(*args_np)
        fwd_p = kernels_py.viterbi_forward(acc, src, dst, wtab, lab, n_out)
        assert np.allclose(fwd_c, fwd_p)
        bwd_c = _kernels.viterbi_backward(np.array(acc[:n_out] + [0.0] *
                                                   max(0, n_out - len(acc))),
                                          *args_np[1:5], n_in)
        sp_c, m_c, a_c = _kernels.sumprod_forward(*args_np)
        sp_p, m_p, a_p = kernels_py.sumprod_forward(acc, src, dst, wtab, lab,
                                                    n_out)
        assert (m_c, a_c) == (m_p, a_p)
        assert np.allclose(sp_c, sp_p)


@pytest.mark.skipif(not backend.COMPILED, reason="compiled kernels not built")
def test_backends_agree_on_full_decode(monkeypatch):
    code = load_code("steane713").base
    tn = build_min_trellis(code)
    tm = build_multigoal_trellis(code)
    ch = ChannelModel.depolarizing(0.15)
    sigma = (1, 0, 1, 0, 1, 1)
    res_c = ndml_decode(tn, code, sigma, ch)
    dml_c = dml_decode(tm, code, sigma, ch)
    monkeypatch.setattr(backend, "COMPILED", False)
    monkeypatch.setattr(backend, "kernels", kernels_py)
    res_p = ndml_decode(tn, code, sigma, ch)
    dml_p = dml_decode(tm, code, sigma, ch)
    assert str(res_c.error_estimate) == str(res_p.error_estimate)
    assert math.isclose(res_c.log_prob, res_p.log_prob, rel_tol=1e-12)
    assert dml_c.winning_logical == dml_p.winning_logical
    for k, v in dml_c.coset_log_probs.items():
        assert math.isclose(dml_p.coset_log_probs[k], v, rel_tol=1e-12)
    assert (dml_c.mults, dml_c.adds) == (dml_p.mults, dml_p.adds)
