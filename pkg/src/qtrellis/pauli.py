"""Algebra of the effective n-qubit Pauli group (phases dropped).

Single-qubit operators are the four symbols I, X, Y, Z encoded as the bit
pair (x, z) with I=(0,0), X=(1,0), Z=(0,1), Y=(1,1); the group product is
the componentwise XOR of bit pairs.  Vectors pack the x and z bits of all
qubits into two ints, so products and inner products are word operations
for any n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import parity

SYMBOLS = ("I", "X", "Y", "Z")

# symbol -> (x, z) bit pair
_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_FROM_BITS = {v: k for k, v in _BITS.items()}


def pauli_mul(a: str, b: str) -> str:
    """Product in the effective single-qubit Pauli group (XY=Z, XZ=Y, YZ=X)."""
    ax, az = _BITS[a]
    bx, bz = _BITS[b]
    return _FROM_BITS[(ax ^ bx, az ^ bz)]


def pauli_bits(a: str) -> tuple[int, int]:
    return _BITS[a]


def pauli_from_bits(x: int, z: int) -> str:
    return _FROM_BITS[(x & 1, z & 1)]


@dataclass(frozen=True)
class PauliVector:
    """Element of P_1^n; bit i of x/z holds qubit i+1 (leftmost character)."""

    n: int
    x: int
    z: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("qubit count must be positive")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit pattern exceeds qubit count")

    @classmethod
    def from_string(cls, s: str) -> "PauliVector":
        x = z = 0
        for i, ch in enumerate(s):
            if ch not in _BITS:
                raise ValueError(f"invalid Pauli character {ch!r}")
            bx, bz = _BITS[ch]
            x |= bx << i
            z |= bz << i
        return cls(len(s), x, z)

    @classmethod
    def identity(cls, n: int) -> "PauliVector":
        return cls(n, 0, 0)

    @classmethod
    def from_x_bits(cls, bits: int, n: int) -> "PauliVector":
        """X^bits: X where the bit is set, I elsewhere."""
        return cls(n, bits, 0)

    @classmethod
    def from_z_bits(cls, bits: int, n: int) -> "PauliVector":
        return cls(n, 0, bits)

    def __mul__(self, other: "PauliVector") -> "PauliVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return PauliVector(self.n, self.x ^ other.x, self.z ^ other.z)

    def __str__(self) -> str:
        return "".join(_FROM_BITS[((self.x >> i) & 1, (self.z >> i) & 1)]
                       for i in range(self.n))

    def __repr__(self) -> str:
        return f"PauliVector({str(self)!r})"

    def symbol(self, i: int) -> str:
        """Single-qubit symbol at position i (0-based)."""
        return _FROM_BITS[((self.x >> i) & 1, (self.z >> i) & 1)]

    def symbols(self) -> tuple[str, ...]:
        return tuple(self.symbol(i) for i in range(self.n))

    def star(self, other: "PauliVector") -> int:
        """Symplectic inner product: 0 iff the operators commute."""
        if self.n != other.n:
            raise ValueError("length mismatch")
        return parity((self.x & other.z) ^ (self.z & other.x))

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    # 2n-bit symplectic form (x | z << n), used by the F2 linear algebra.
    def to_symplectic(self) -> int:
        return self.x | (self.z << self.n)

    @classmethod
    def from_symplectic(cls, bits: int, n: int) -> "PauliVector":
        mask = (1 << n) - 1
        return cls(n, bits & mask, (bits >> n) & mask)


def star(a: PauliVector, b: PauliVector) -> int:
    return a.star(b)


def syndrome(e: PauliVector, checks: list[PauliVector]) -> tuple[int, ...]:
    """Bit i is the inner product of checks[i] with e."""
    for c in checks:
        if c.n != e.n:
            raise ValueError("length mismatch")
    return tuple(c.star(e) for c in checks)


def partial_syndrome(e: PauliVector, checks: list[PauliVector],
                     t: int) -> tuple[int, ...]:
    """Syndrome restricted to the first t positions (t=0 gives all zeros)."""
    if not 0 <= t <= e.n:
        raise ValueError(f"depth {t} out of range [0, {e.n}]")
    mask = (1 << t) - 1
    out = []
    for c in checks:
        if c.n != e.n:
            raise ValueError("length mismatch")
        out.append(parity(((e.x & c.z) ^ (e.z & c.x)) & mask))
    return tuple(out)
