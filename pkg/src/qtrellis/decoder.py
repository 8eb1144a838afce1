"""Maximum-likelihood decoding over code trellises.

ndml_decode finds the single most probable error with the measured syndrome
(min-sum Viterbi over the relabeled normalizer trellis); dml_decode finds
the most probable stabilizer coset (forward sum-product over the multi-goal
trellis, one accumulator per goal); css_dml_decode runs the sum-product pass
per CSS sector under an independent-component channel approximation.

All probability arithmetic is in the natural-log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import backend
from .code import CssCode, JointCode, StabilizerCode, joint_code
from .pauli import PauliVector
from .trellis import LABEL_INDEX, LABELS, MUL, Trellis


@dataclass(frozen=True)
class ChannelModel:
    """Per-symbol likelihood weights; zero weights are rejected so that
    -log weights stay finite.  depolarizing() yields the normalized map
    Pr(I)=1-p, Pr(X)=Pr(Y)=Pr(Z)=p/3; sector marginals are unnormalized."""

    probs: dict[str, float]
    p: float | None = None

    def __post_init__(self):
        for sym, pr in self.probs.items():
            if sym not in LABELS:
                raise ValueError(f"unknown symbol {sym!r}")
            if not pr > 0.0:
                raise ValueError(f"probability of {sym!r} must be positive")

    @classmethod
    def depolarizing(cls, p: float) -> "ChannelModel":
        if not 0.0 < p < 1.0:
            raise ValueError("depolarizing parameter must satisfy 0 < p < 1")
        return cls({"I": 1.0 - p, "X": p / 3.0, "Y": p / 3.0, "Z": p / 3.0},
                   p=p)

    def sector_marginal(self, symbol: str) -> "ChannelModel":
        """Independent-component approximation for one CSS sector: the
        identity keeps weight Pr(I) and the sector symbol weight p/3."""
        if self.p is None:
            raise ValueError("sector marginal needs a depolarizing channel; "
                             "pass an explicit marginal map instead")
        return ChannelModel({"I": 1.0 - self.p, symbol: self.p / 3.0})

    def log_prob(self, symbol: str) -> float:
        return math.log(self.probs[symbol])

    def log_table(self) -> list[float]:
        """log prob per label index; nan marks symbols outside the support."""
        return [math.log(self.probs[s]) if s in self.probs else math.nan
                for s in LABELS]

    def sample_thresholds(self) -> list[tuple[float, str]]:
        total = sum(self.probs.values())
        acc = 0.0
        out = []
        for sym in LABELS:
            if sym in self.probs:
                acc += self.probs[sym] / total
                out.append((acc, sym))
        return out


@dataclass
class DecodeResult:
    mode: str
    error_estimate: PauliVector
    log_prob: float
    winning_logical: tuple[int, ...] | None = None
    coset_log_probs: dict[tuple[int, ...], float] | None = None
    mults: int = 0
    adds: int = 0
    sectors: tuple["DecodeResult", ...] | None = None

    def prob(self) -> float:
        return math.exp(self.log_prob)


def _section_tables(trellis: Trellis, rho: PauliVector, log_table,
                    negate: bool):
    """Per-section weight table: entry [lab] is the (relabeled) edge weight."""
    sign = -1.0 if negate else 1.0
    tables = []
    for t in range(trellis.depth):
        row = MUL[LABEL_INDEX[rho.symbol(t)]]
        tables.append([sign * log_table[row[lab]] for lab in range(4)])
    return tables


def _as_backend(table):
    if backend.COMPILED:
        import numpy as np
        return np.asarray(table, dtype=np.float64)
    return table


def _sections_for_backend(trellis: Trellis):
    return trellis.arrays() if backend.COMPILED else trellis.list_arrays()


def ndml_decode(trellis: Trellis, code: StabilizerCode, sigma,
                ch: ChannelModel, tie_break: str = "canonical",
                rng=None) -> DecodeResult:
    """Most probable single error with syndrome sigma (min-sum Viterbi).

    Exact weight ties are broken canonically (lexicographically smallest
    error string, I<X<Y<Z) or, with tie_break="random", by the given rng."""
    if trellis.num_goals != 1:
        raise ValueError("ndml_decode expects the single-goal code trellis")
    if tie_break not in ("canonical", "random"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    if tie_break == "random" and rng is None:
        raise ValueError("tie_break='random' needs an rng")
    rho = code.representative(tuple(sigma))
    tables = _section_tables(trellis, rho, ch.log_table(), negate=True)
    secs = _sections_for_backend(trellis)
    k = backend.kernels

    # Backward sweep: suffix[v] = min remaining weight from v to the goal.
    suffix = [None] * (trellis.depth + 1)
    last = _as_backend([0.0] * trellis.level_sizes[-1])
    suffix[trellis.depth] = last
    for t in range(trellis.depth, 0, -1):
        src, dst, lab = secs[t - 1]
        last = k.viterbi_backward(last, src, dst, _as_backend(tables[t - 1]),
                                  lab, trellis.level_sizes[t - 1])
        suffix[t - 1] = last
    best = float(suffix[0][0])
    if math.isinf(best):
        raise ValueError("trellis has no root-to-goal path")

    # Forward walk along optimal completions, taking the smallest emitted
    # symbol at every exact tie.
    adj = trellis.cached_adjacency()
    symbols = []
    v = 0
    acc = 0.0
    for t in range(1, trellis.depth + 1):
        wt = tables[t - 1]
        rho_row = MUL[LABEL_INDEX[rho.symbol(t - 1)]]
        candidates = []
        for lab, dst in adj[t - 1][v]:
            total = acc + wt[lab] + float(suffix[t][dst])
            candidates.append((total, rho_row[lab], dst, lab))
        floor = min(c[0] for c in candidates)
        ties = [c for c in candidates if c[0] == floor]
        if tie_break == "random" and len(ties) > 1:
            choice = ties[rng.integers(len(ties))]
        else:
            choice = min(ties, key=lambda c: (c[1], c[2]))
        acc += wt[choice[3]]
        symbols.append(LABELS[choice[1]])
        v = choice[2]
    error = PauliVector.from_string("".join(symbols))
    return DecodeResult(mode="ndml", error_estimate=error, log_prob=-acc)


def _dml_joint(trellis: Trellis, jc: JointCode, rho: PauliVector,
               ch: ChannelModel, mode: str) -> DecodeResult:
    if trellis.num_goals != jc.num_goals:
        raise ValueError(
            f"trellis has {trellis.num_goals} goals, expected one per coset "
            f"({jc.num_goals})")
    tables = _section_tables(trellis, rho, ch.log_table(), negate=False)
    secs = _sections_for_backend(trellis)
    k = backend.kernels
    acc = _as_backend([0.0])
    mults = adds = 0
    for t in range(1, trellis.depth + 1):
        src, dst, lab = secs[t - 1]
        acc, m, a = k.sumprod_forward(acc, src, dst,
                                      _as_backend(tables[t - 1]), lab,
                                      trellis.level_sizes[t])
        mults += m
        adds += a
    coset_log_probs = {label: float(acc[gid])
                       for gid, label in enumerate(trellis.goal_labels)}
    best = max(coset_log_probs.values())
    winner = min(lbl for lbl, lp in coset_log_probs.items() if lp == best)
    estimate = rho * jc.coset_member(winner)
    return DecodeResult(mode=mode, error_estimate=estimate, log_prob=best,
                        winning_logical=winner,
                        coset_log_probs=coset_log_probs,
                        mults=mults, adds=adds)


def dml_decode(trellis: Trellis, code: StabilizerCode, sigma,
               ch: ChannelModel) -> DecodeResult:
    """Most probable stabilizer coset with syndrome sigma; the per-coset
    log probabilities of all 2^(2k) cosets come out of one forward pass."""
    rho = code.representative(tuple(sigma))
    return _dml_joint(trellis, joint_code(code), rho, ch, mode="dml")


def css_dml_decode(trellis_x: Trellis, trellis_z: Trellis, css: CssCode,
                   sigma_x, sigma_z, ch: ChannelModel,
                   marginal_x: ChannelModel | None = None,
                   marginal_z: ChannelModel | None = None) -> DecodeResult:
    """Separate degenerate decoding of the X and Z error components.

    sigma_x is the syndrome of the X component (reported by the Z-type
    generators, h2 row order) and is decoded on the {I,X}-sector trellis;
    sigma_z symmetrically.  The default per-sector channel keeps weight 1-p
    on I and p/3 on the sector symbol, treating the components as
    independent; pass explicit marginals to model other channels."""
    if not isinstance(css, CssCode):
        raise TypeError("css_dml_decode needs a CssCode")
    res = []
    for trellis, sector, sigma, marg, sym in (
            (trellis_x, css.sector_x, sigma_x, marginal_x, "X"),
            (trellis_z, css.sector_z, sigma_z, marginal_z, "Z")):
        chan = marg if marg is not None else ch.sector_marginal(sym)
        rho = sector.representative(tuple(sigma))
        res.append(_dml_joint(trellis, sector.joint(), rho, chan,
                              mode=f"css-{sector.name}"))
    rx, rz = res
    combined = {}
    for lx, px in rx.coset_log_probs.items():
        for lz, pz in rz.coset_log_probs.items():
            combined[lx + lz] = px + pz
    return DecodeResult(
        mode="css",
        error_estimate=rx.error_estimate * rz.error_estimate,
        log_prob=rx.log_prob + rz.log_prob,
        winning_logical=rx.winning_logical + rz.winning_logical,
        coset_log_probs=combined,
        mults=rx.mults + rz.mults,
        adds=rx.adds + rz.adds,
        sectors=(rx, rz),
    )
