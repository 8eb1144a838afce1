"""Monte-Carlo logical-error-rate estimation over the depolarizing channel.

A trial samples an i.i.d. per-qubit error, measures its syndrome(s), decodes
with each requested decoder, and declares a logical failure when the
estimate times the true error leaves the stabilizer group.  Per-trial RNG
streams are keyed by (seed, p-index, trial), so results do not depend on the
worker-pool width.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .code import CssCode, StabilizerCode, base_code
from .decoder import (ChannelModel, css_dml_decode, dml_decode, ndml_decode)
from .pauli import PauliVector
from .trellis import Trellis, build_min_trellis, build_multigoal_trellis

MODES = ("ndml", "dml", "css")
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class SimConfig:
    code_id: str
    modes: tuple[str, ...]
    p_values: tuple[float, ...]
    trials: int
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for p in self.p_values:
            if not 0.0 < p < 1.0:
                raise ValueError("each p must satisfy 0 < p < 1")
        for m in self.modes:
            if m not in MODES:
                raise ValueError(f"unknown decoder mode {m!r}")


@dataclass(frozen=True)
class SimRow:
    code_id: str
    mode: str
    p: float
    trials: int
    failures: int
    rate: float
    ci_lo: float
    ci_hi: float


@dataclass
class SimReport:
    rows: list[SimRow]
    wall_clock: float
    op_counts: dict[str, tuple[int, int]] = field(default_factory=dict)

    def row(self, mode: str, p: float) -> SimRow:
        for r in self.rows:
            if r.mode == mode and math.isclose(r.p, p):
                return r
        raise KeyError((mode, p))


def wilson_interval(failures: int, trials: int) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    phat = failures / trials
    z2 = _Z95 * _Z95
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = _Z95 * math.sqrt(phat * (1 - phat) / trials
                            + z2 / (4 * trials * trials)) / denom
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return (lo, hi)


def sample_error(n: int, ch: ChannelModel, rng: np.random.Generator
                 ) -> PauliVector:
    """One i.i.d. draw per qubit from the channel's symbol distribution."""
    thresholds = ch.sample_thresholds()
    cum = np.array([t[0] for t in thresholds])
    syms = [t[1] for t in thresholds]
    idx = np.searchsorted(cum, rng.random(n), side="right")
    return PauliVector.from_string("".join(syms[min(i, len(syms) - 1)]
                                           for i in idx))


def _trial_rng(seed: int, p_index: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(p_index, trial)))


class _Decoders:
    """Trellises built once per run and shared (read-only) across workers."""

    def __init__(self, code: StabilizerCode | CssCode, modes):
        self.code = code
        self.base = base_code(code)
        self.trellis_n: Trellis | None = None
        self.trellis_mg: Trellis | None = None
        self.trellis_x = self.trellis_z = None
        if "ndml" in modes:
            self.trellis_n = build_min_trellis(self.base)
        if "dml" in modes:
            self.trellis_mg = build_multigoal_trellis(self.base)
        if "css" in modes:
            if not isinstance(code, CssCode):
                raise ValueError("css mode needs a CSS code definition")
            self.trellis_x = build_multigoal_trellis(code.sector_x.joint())
            self.trellis_z = build_multigoal_trellis(code.sector_z.joint())
        # Warm the per-trellis caches so worker threads only read them.
        for t in (self.trellis_n, self.trellis_mg, self.trellis_x,
                  self.trellis_z):
            if t is not None:
                t.arrays()
                t.list_arrays()
                t.cached_adjacency()

    def decode_all(self, e: PauliVector, ch: ChannelModel, modes):
        """Map mode -> (failed?, mults, adds) for one sampled error."""
        base = self.base
        out = {}
        sigma = base.syndrome_of(e)
        for mode in modes:
            if mode == "ndml":
                res = ndml_decode(self.trellis_n, base, sigma, ch)
            elif mode == "dml":
                res = dml_decode(self.trellis_mg, base, sigma, ch)
            else:
                css = self.code
                sx = css.sector_x.syndrome_of(e)
                sz = css.sector_z.syndrome_of(e)
                res = css_dml_decode(self.trellis_x, self.trellis_z, css,
                                     sx, sz, ch)
            failed = not base.in_stabilizer(res.error_estimate * e)
            out[mode] = (failed, res.mults, res.adds)
        return out


def run_monte_carlo(cfg: SimConfig,
                    code: StabilizerCode | CssCode | None = None
                    ) -> SimReport:
    """Estimate logical error rates for every (mode, p) in the config."""
    from .code import load_code
    if code is None:
        code = load_code(cfg.code_id)
    started = time.perf_counter()
    decoders = _Decoders(code, cfg.modes)
    n = decoders.base.n
    rows: list[SimRow] = []
    ops: dict[str, list[int]] = {m: [0, 0] for m in cfg.modes}

    for ip, p in enumerate(cfg.p_values):
        ch = ChannelModel.depolarizing(p)

        def run_chunk(span):
            counts = {m: 0 for m in cfg.modes}
            mults = {m: 0 for m in cfg.modes}
            adds = {m: 0 for m in cfg.modes}
            for trial in span:
                rng = _trial_rng(cfg.seed, ip, trial)
                e = sample_error(n, ch, rng)
                for mode, (failed, mu, ad) in \
                        decoders.decode_all(e, ch, cfg.modes).items():
                    counts[mode] += failed
                    mults[mode] += mu
                    adds[mode] += ad
            return counts, mults, adds

        width = max(1, cfg.threads)
        chunk = max(1, math.ceil(cfg.trials / (4 * width)))
        spans = [range(lo, min(lo + chunk, cfg.trials))
                 for lo in range(0, cfg.trials, chunk)]
        if width == 1:
            results = [run_chunk(s) for s in spans]
        else:
            with ThreadPoolExecutor(max_workers=width) as pool:
                results = list(pool.map(run_chunk, spans))
        for mode in cfg.modes:
            failures = sum(r[0][mode] for r in results)
            ops[mode][0] += sum(r[1][mode] for r in results)
            ops[mode][1] += sum(r[2][mode] for r in results)
            lo, hi = wilson_interval(failures, cfg.trials)
            rows.append(SimRow(cfg.code_id, mode, p, cfg.trials, failures,
                               failures / cfg.trials, lo, hi))
    return SimReport(rows=rows, wall_clock=time.perf_counter() - started,
                     op_counts={m: (v[0], v[1]) for m, v in ops.items()})


def default_threads() -> int:
    env = os.environ.get("QTRELLIS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
