"""Shared test fixtures: small code generators and Pauli-string shorthands."""

from qtrellis import gf2
from qtrellis.code import new_stabilizer_code
from qtrellis.pauli import PauliVector, star


def pv(s):
    return PauliVector.from_string(s)


def pvs(*strings):
    return [pv(s) for s in strings]


def random_code(rng, n):
    """Random commuting independent generator set on n qubits."""
    r = rng.randrange(1, n + 1)
    gens = []
    bits = []
    while len(gens) < r:
        v = PauliVector(n, rng.getrandbits(n), rng.getrandbits(n))
        if v.is_identity():
            continue
        if any(star(v, g) for g in gens):
            continue
        if gf2.in_rowspace(v.to_symplectic(), bits):
            continue
        gens.append(v)
        bits.append(v.to_symplectic())
    return new_stabilizer_code(gens)
