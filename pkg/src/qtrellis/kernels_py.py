"""Pure-Python decode sweeps (fallback when the compiled kernels are absent).

Contract shared with the compiled module:

  viterbi_forward(acc, src, dst, wtab, lab, out_size) -> list
  viterbi_backward(acc, src, dst, wtab, lab, in_size) -> list
  sumprod_forward(acc, src, dst, wtab, lab, out_size) -> (list, mults, adds)

acc is the per-vertex accumulator of the previous level; src/dst/lab are the
section's edge arrays; wtab maps label index -> edge weight (log domain for
sumprod, -log domain for viterbi).  sumprod counts one multiplication per
edge and one addition per second-or-later edge into a vertex.
"""

from __future__ import annotations

import math

INF = math.inf


def viterbi_forward(acc, src, dst, wtab, lab, out_size):
    out = [INF] * out_size
    for i in range(len(src)):
        w = acc[src[i]] + wtab[lab[i]]
        if w < out[dst[i]]:
            out[dst[i]] = w
    return out


def viterbi_backward(acc, src, dst, wtab, lab, in_size):
    out = [INF] * in_size
    for i in range(len(src)):
        w = acc[dst[i]] + wtab[lab[i]]
        if w < out[src[i]]:
            out[src[i]] = w
    return out


def sumprod_forward(acc, src, dst, wtab, lab, out_size):
    out = [None] * out_size
    mults = 0
    adds = 0
    for i in range(len(src)):
        w = acc[src[i]] + wtab[lab[i]]
        mults += 1
        cur = out[dst[i]]
        if cur is None:
            out[dst[i]] = w
        else:
            out[dst[i]] = _logaddexp(cur, w)
            adds += 1
    return [v if v is not None else -INF for v in out], mults, adds


def _logaddexp(a, b):
    if a < b:
        a, b = b, a
    d = b - a
    if d < -745.0:  # exp underflows to 0
        return a
    return a + math.log1p(math.exp(d))
