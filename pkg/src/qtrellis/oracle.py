"""Brute-force reference decoders for desk-scale verification.

Everything here enumerates groups explicitly and never touches the trellis
machinery, so it can serve as an independent check of the trellis decoders.
Probabilities are accumulated with math.fsum (exactly rounded) to act as the
high-precision reference.
"""

from __future__ import annotations

import math

from .code import CssCode, StabilizerCode
from .decoder import ChannelModel
from .pauli import PauliVector

MAX_GENERATORS = 22


def enumerate_group(generators: list[PauliVector],
                    n: int | None = None) -> list[PauliVector]:
    """All distinct products of the generators, in binary counting order
    (generator 0 toggles fastest), first occurrence kept.

    An empty generator list yields the trivial group {identity}; n must be
    given in that case."""
    if len(generators) > MAX_GENERATORS:
        raise ValueError(
            f"{len(generators)} generators exceed the enumeration cap "
            f"({MAX_GENERATORS}); the oracle is for small cases only")
    if not generators:
        if n is None:
            raise ValueError("empty generator list needs an explicit n")
        return [PauliVector.identity(n)]
    n = generators[0].n
    out = []
    seen = set()
    for mask in range(1 << len(generators)):
        v = PauliVector.identity(n)
        for i, g in enumerate(generators):
            if (mask >> i) & 1:
                v = v * g
        key = (v.x, v.z)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def brute_ndml(code: StabilizerCode, sigma, ch: ChannelModel
               ) -> tuple[PauliVector, float]:
    """Exhaustive max over the syndrome coset; ties resolved to the
    lexicographically smallest error string."""
    _check_size(code.n + code.k)
    rho = code.representative(tuple(sigma))
    best = None
    best_prob = -1.0
    for w in enumerate_group(code.norm_gens):
        e = rho * w
        prob = _prob_of(e, ch)
        if prob > best_prob or (prob == best_prob
                                and e.symbols() < best.symbols()):
            best, best_prob = e, prob
    return best, best_prob


def brute_dml(code: StabilizerCode, sigma, ch: ChannelModel
              ) -> dict[tuple[int, ...], float]:
    """Exact per-coset probabilities: exponent tuple over the logical
    generators -> sum of word probabilities over that stabilizer coset."""
    _check_size(code.n + code.k)
    rho = code.representative(tuple(sigma))
    stab_words = enumerate_group(code.stab_gens)
    out = {}
    for mask in range(1 << len(code.logical_gens)):
        exps = tuple((mask >> i) & 1 for i in range(len(code.logical_gens)))
        shift = rho * code.logical_from_exponents(exps)
        out[exps] = math.fsum(_prob_of(shift * s, ch) for s in stab_words)
    return out


def brute_dml_sector(css: CssCode, sector_name: str, sigma,
                     ch: ChannelModel) -> dict[tuple[int, ...], float]:
    """Per-coset probabilities for one CSS sector under its marginal channel."""
    sector = css.sector(sector_name)
    stab = sector.stab_gens()
    logical = sector.logical_gens()
    _check_size(len(stab) + len(logical))
    rho = sector.representative(tuple(sigma))
    stab_words = enumerate_group(stab) if stab else \
        [PauliVector.identity(sector.n)]
    out = {}
    for mask in range(1 << len(logical)):
        exps = tuple((mask >> i) & 1 for i in range(len(logical)))
        shift = rho
        for b, g in zip(exps, logical):
            if b:
                shift = shift * g
        out[exps] = math.fsum(_prob_of(shift * s, ch) for s in stab_words)
    return out


def _prob_of(e: PauliVector, ch: ChannelModel) -> float:
    prob = 1.0
    for i in range(e.n):
        prob *= ch.probs[e.symbol(i)]
    return prob


def _check_size(exponent: int) -> None:
    if exponent > MAX_GENERATORS:
        raise ValueError(
            f"2^{exponent} words exceed the enumeration cap "
            f"2^{MAX_GENERATORS}; the oracle is for small cases only")
