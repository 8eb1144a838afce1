"""Stabilizer-code model: derived normalizer/logical/destabilizer structure,
trellis-oriented forms of generator matrices, and CSS code splitting.

A generator matrix is a plain list of equal-length PauliVector rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from . import gf2
from .pauli import PauliVector, syndrome

PauliMatrix = list[PauliVector]


def _symplectic_dual(bits: int, n: int) -> int:
    """Swap x/z halves so that star(a, b) = parity(a_bits & dual(b_bits))."""
    mask = (1 << n) - 1
    x = bits & mask
    z = (bits >> n) & mask
    return z | (x << n)


def _star_bits(a: int, b_dual: int) -> int:
    return gf2.parity(a & b_dual)


@dataclass(frozen=True)
class StabilizerCode:
    """[[n, k]] stabilizer code with derived group structure.

    norm_gens is the stacked matrix [stab_gens; logical_gens] (n+k rows);
    logical_gens come in hyperbolic pairs: rows 2i and 2i+1 anticommute with
    each other and commute with every other generator; destabilizers[i]
    anticommutes with stab_gens[i] only.
    """

    n: int
    k: int
    stab_gens: PauliMatrix
    logical_gens: PauliMatrix
    destabilizers: PauliMatrix

    @property
    def norm_gens(self) -> PauliMatrix:
        return self.stab_gens + self.logical_gens

    def syndrome_of(self, e: PauliVector) -> tuple[int, ...]:
        return syndrome(e, self.stab_gens)

    def representative(self, sigma: tuple[int, ...] | list[int]) -> PauliVector:
        """Deterministic coset representative: product of destabilizers
        selected by the syndrome bits."""
        if len(sigma) != self.n - self.k:
            raise ValueError(f"syndrome must have {self.n - self.k} bits")
        rho = PauliVector.identity(self.n)
        for bit, t in zip(sigma, self.destabilizers):
            if bit:
                rho = rho * t
        return rho

    def logical_bits(self, e: PauliVector) -> tuple[int, ...]:
        """Star products of e with each logical generator."""
        return tuple(l.star(e) for l in self.logical_gens)

    def logical_exponents(self, e: PauliVector) -> tuple[int, ...]:
        """Exponent vector a with e = (prod logical_gens[j]^a[j]) * s, s in S.

        Defined for e in the normalizer; uses the hyperbolic pairing, which
        makes the conversion a swap of adjacent bit pairs.
        """
        bits = self.logical_bits(e)
        out = []
        for i in range(0, len(bits), 2):
            out.append(bits[i + 1])
            out.append(bits[i])
        return tuple(out)

    def logical_from_exponents(self, exps) -> PauliVector:
        v = PauliVector.identity(self.n)
        for bit, l in zip(exps, self.logical_gens):
            if bit:
                v = v * l
        return v

    def in_normalizer(self, e: PauliVector) -> bool:
        return all(b == 0 for b in self.syndrome_of(e))

    def in_stabilizer(self, e: PauliVector) -> bool:
        return self.in_normalizer(e) and all(b == 0 for b in self.logical_bits(e))


def new_stabilizer_code(stab_gens: PauliMatrix) -> StabilizerCode:
    """Build a code from independent, pairwise-commuting generators.

    Derives destabilizers (symplectic partners) and logical generators
    (a hyperbolic basis of the normalizer modulo the stabilizer)."""
    if not stab_gens:
        raise ValueError("at least one stabilizer generator is required")
    n = stab_gens[0].n
    if any(g.n != n for g in stab_gens):
        raise ValueError("stabilizer generators must have equal length")
    r = len(stab_gens)
    for i in range(r):
        for j in range(i + 1, r):
            if stab_gens[i].star(stab_gens[j]):
                raise ValueError(
                    f"generators {i} and {j} anticommute; S must be abelian")
    s_bits = [g.to_symplectic() for g in stab_gens]
    if gf2.rank(s_bits) != r:
        raise ValueError("stabilizer generators are linearly dependent")
    k = n - r
    duals = [_symplectic_dual(s, n) for s in s_bits]

    # Destabilizers: t_i with star(t_i, s_j) = delta_ij, then pairwise
    # commuting (correct t_j by s_i whenever it anticommutes with t_i).
    destab_bits = []
    for i in range(r):
        t = gf2.solve(duals, [1 if j == i else 0 for j in range(r)])
        if t is None:  # cannot happen: the symplectic form is nondegenerate
            raise RuntimeError("no symplectic partner found")
        destab_bits.append(t)
    for j in range(r):
        for i in range(j):
            if _star_bits(destab_bits[j], _symplectic_dual(destab_bits[i], n)):
                destab_bits[j] ^= s_bits[i]

    # Normalizer = nullspace of the stabilizer rows under the symplectic form;
    # logical generators = a basis of it modulo S, cleaned against the
    # destabilizers and put into hyperbolic pairs.
    raw: list[int] = []
    span = list(s_bits)
    for v in gf2.nullspace(duals, 2 * n):
        if len(raw) == 2 * k:
            break
        if not gf2.in_rowspace(v, span):
            raw.append(v)
            span.append(v)
    if len(raw) != 2 * k:
        raise RuntimeError("normalizer dimension mismatch")
    for idx in range(2 * k):
        for i in range(r):
            if _star_bits(raw[idx], _symplectic_dual(destab_bits[i], n)):
                raw[idx] ^= s_bits[i]
    pairs: list[int] = []
    rem = raw
    while rem:
        u = rem.pop(0)
        u_dual = _symplectic_dual(u, n)
        w_idx = next(i for i, w in enumerate(rem) if _star_bits(w, u_dual))
        w = rem.pop(w_idx)
        w_dual = _symplectic_dual(w, n)
        for i, v in enumerate(rem):
            if _star_bits(v, u_dual):
                v ^= w
            if _star_bits(v, w_dual):
                v ^= u
            rem[i] = v
        pairs.extend([u, w])

    return StabilizerCode(
        n=n, k=k,
        stab_gens=list(stab_gens),
        logical_gens=[PauliVector.from_symplectic(b, n) for b in pairs],
        destabilizers=[PauliVector.from_symplectic(b, n) for b in destab_bits],
    )


def representative_from_syndrome(code: StabilizerCode, sigma) -> PauliVector:
    return code.representative(tuple(sigma))


# ---------------------------------------------------------------------------
# Trellis-oriented form (TOF)

def left_index(g: PauliVector) -> int:
    """1-based index of the first non-identity position (0 for identity)."""
    bits = g.x | g.z
    if bits == 0:
        return 0
    return (bits & -bits).bit_length()


def right_index(g: PauliVector) -> int:
    bits = g.x | g.z
    return bits.bit_length()


def span_length(g: PauliVector) -> int:
    if g.is_identity():
        return 0
    return right_index(g) - left_index(g) + 1


def is_tof(rows: PauliMatrix) -> bool:
    """At most two rows share any left (right) index, and those two differ
    at that index."""
    for key in (left_index, right_index):
        groups: dict[int, list[PauliVector]] = {}
        for g in rows:
            if not g.is_identity():
                groups.setdefault(key(g), []).append(g)
        for t, members in groups.items():
            if len(members) > 2:
                return False
            if len(members) == 2 and \
                    members[0].symbol(t - 1) == members[1].symbol(t - 1):
                return False
    return True


def _has_l_property(rows: PauliMatrix) -> bool:
    groups: dict[int, list[PauliVector]] = {}
    for g in rows:
        if not g.is_identity():
            groups.setdefault(left_index(g), []).append(g)
    for t, members in groups.items():
        if len(members) > 2:
            return False
        if len(members) == 2 and \
                members[0].symbol(t - 1) == members[1].symbol(t - 1):
            return False
    return True


def _find_violation(rows: PauliMatrix, key) -> tuple[int, ...] | None:
    """Indices of 2 rows sharing an index with equal symbol, or of 3 rows
    sharing an index, under `key` (left_index or right_index)."""
    groups: dict[int, list[int]] = {}
    for i, g in enumerate(rows):
        if not g.is_identity():
            groups.setdefault(key(g), []).append(i)
    indices = sorted(groups) if key is left_index else sorted(groups, reverse=True)
    for t in indices:
        members = groups[t]
        if len(members) < 2:
            continue
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                if rows[i].symbol(t - 1) == rows[j].symbol(t - 1):
                    return (i, j)
        if len(members) >= 3:
            return tuple(members[:3])
    return None


def _replace_widest(rows: PauliMatrix, involved: tuple[int, ...],
                    candidates: tuple[int, ...]) -> None:
    """Replace the widest-span candidate row by the product of the involved
    rows (tie: lowest row index)."""
    target = max(candidates, key=lambda i: (span_length(rows[i]), -i))
    prod = rows[involved[0]]
    for i in involved[1:]:
        prod = prod * rows[i]
    rows[target] = prod


def to_tof(rows: PauliMatrix) -> PauliMatrix:
    """Greedy span reduction to the trellis-oriented form.

    Scans left indices ascending, then right indices descending, replacing
    the widest colliding row by the product of the colliding rows; the total
    span length strictly decreases, so this terminates."""
    work = list(rows)
    while True:
        hit = _find_violation(work, left_index) or \
            _find_violation(work, right_index)
        if hit is None:
            return work
        _replace_widest(work, hit, hit)


def restricted_tof(sub_rows: PauliMatrix, coset_rows: PauliMatrix
                   ) -> tuple[PauliMatrix, PauliMatrix, list[int]]:
    """Bring [sub; coset] into restricted TOF: sub block in full TOF, whole
    matrix with the L-property, sub rows never mixed into by coset rows.

    Returns (sub_tof, fixed_coset_rows, coset_exponent_masks) where mask j
    records, as bits over the original coset rows, which of them the fixed
    row j is a product of (modulo the sub group).  Each fix strictly
    increases the replaced row's left index, so this terminates."""
    sub = to_tof(sub_rows)
    coset = list(coset_rows)
    exps = [1 << j for j in range(len(coset))]
    while True:
        rows = sub + coset
        hit = _find_violation(rows, left_index)
        if hit is None:
            return sub, coset, exps
        coset_members = tuple(i for i in hit if i >= len(sub))
        if not coset_members:
            raise RuntimeError("left collision inside TOF sub block")
        target = max(coset_members,
                     key=lambda i: (span_length(rows[i]), -i)) - len(sub)
        prod = rows[hit[0]]
        mask = 0
        for i in hit[1:]:
            prod = prod * rows[i]
        for i in hit:
            if i >= len(sub):
                mask ^= exps[i - len(sub)]
        coset[target] = prod
        exps[target] = mask


def to_restricted_tof(code: StabilizerCode) -> PauliMatrix:
    """Stacked [G(S); G(L)] matrix in restricted TOF (row spaces preserved)."""
    sub, coset, _ = restricted_tof(code.stab_gens, code.logical_gens)
    return sub + coset


def extend_joint(gs: PauliMatrix, gl: PauliMatrix) -> PauliMatrix:
    """Append tail columns: identity tails on the gs rows, and X at tail
    position j on the j-th gl row, making every coset's tail distinct."""
    if not gs and not gl:
        raise ValueError("empty generator matrix")
    n = (gs or gl)[0].n
    if any(g.n != n for g in gs + gl):
        raise ValueError("width mismatch")
    m = len(gl)
    out = []
    for g in gs:
        out.append(PauliVector(n + m, g.x, g.z))
    for j, g in enumerate(gl):
        out.append(PauliVector(n + m, g.x | (1 << (n + j)), g.z))
    return out


# ---------------------------------------------------------------------------
# Joint codes: a group code together with a subgroup whose cosets are to be
# kept apart (one trellis goal per coset).

@dataclass(frozen=True)
class JointCode:
    """Trellis-construction view of a code/subcode pair over a sub-alphabet.

    sub_gens generate the subgroup; coset_gens generate the coset
    representatives (2^len(coset_gens) goals).  membership_checks have zero
    star product exactly on the full code; label_checks' star bits identify
    a word's coset, converted to exponents over coset_gens by bits_to_exps.
    """

    n: int
    alphabet: tuple[str, ...]
    sub_gens: PauliMatrix
    coset_gens: PauliMatrix
    membership_checks: PauliMatrix
    label_checks: PauliMatrix
    pairing: str = "hyperbolic"  # or "diagonal"

    def bits_to_exps(self, bits: tuple[int, ...]) -> tuple[int, ...]:
        if self.pairing == "diagonal":
            return tuple(bits)
        out = []
        for i in range(0, len(bits), 2):
            out.append(bits[i + 1])
            out.append(bits[i])
        return tuple(out)

    def coset_member(self, exps) -> PauliVector:
        v = PauliVector.identity(self.n)
        for bit, g in zip(exps, self.coset_gens):
            if bit:
                v = v * g
        return v

    @property
    def num_goals(self) -> int:
        return 1 << len(self.coset_gens)


def joint_code(code: StabilizerCode) -> JointCode:
    """The normalizer partitioned into stabilizer cosets."""
    return JointCode(
        n=code.n,
        alphabet=("I", "X", "Y", "Z"),
        sub_gens=list(code.stab_gens),
        coset_gens=list(code.logical_gens),
        membership_checks=list(code.stab_gens),
        label_checks=list(code.logical_gens),
        pairing="hyperbolic",
    )


def normalizer_code(code: StabilizerCode) -> JointCode:
    """The whole normalizer as a single-goal code."""
    return JointCode(
        n=code.n,
        alphabet=("I", "X", "Y", "Z"),
        sub_gens=list(code.norm_gens),
        coset_gens=[],
        membership_checks=list(code.stab_gens),
        label_checks=[],
    )


# ---------------------------------------------------------------------------
# CSS codes

@dataclass(frozen=True)
class CssSector:
    """One half of a CSS split: words over {I, symbol}.

    Exponent rows are int bitsets over the n qubits.  check_rows measure this
    sector's syndrome (they are the *other* sector's stabilizer exponents);
    stab_rows span the sector stabilizer group; logical_rows/dual_rows are
    paired so that logical_rows[i] . dual_rows[j] = delta_ij.
    """

    name: str
    symbol: str
    n: int
    check_rows: list[int]
    stab_rows: list[int]
    logical_rows: list[int]
    dual_rows: list[int]
    destab_rows: list[int]

    def _lift(self, bits: int) -> PauliVector:
        if self.symbol == "X":
            return PauliVector.from_x_bits(bits, self.n)
        return PauliVector.from_z_bits(bits, self.n)

    def _lift_other(self, bits: int) -> PauliVector:
        if self.symbol == "X":
            return PauliVector.from_z_bits(bits, self.n)
        return PauliVector.from_x_bits(bits, self.n)

    def stab_gens(self) -> PauliMatrix:
        return [self._lift(b) for b in self.stab_rows]

    def logical_gens(self) -> PauliMatrix:
        return [self._lift(b) for b in self.logical_rows]

    def syndrome_of(self, e: PauliVector) -> tuple[int, ...]:
        bits = e.x if self.symbol == "X" else e.z
        return tuple(gf2.parity(bits & c) for c in self.check_rows)

    def representative(self, sigma) -> PauliVector:
        if len(sigma) != len(self.check_rows):
            raise ValueError(
                f"{self.name} syndrome must have {len(self.check_rows)} bits")
        bits = 0
        for b, t in zip(sigma, self.destab_rows):
            if b:
                bits ^= t
        return self._lift(bits)

    def logical_exponents(self, e: PauliVector) -> tuple[int, ...]:
        bits = e.x if self.symbol == "X" else e.z
        return tuple(gf2.parity(bits & d) for d in self.dual_rows)

    def in_stabilizer(self, e: PauliVector) -> bool:
        bits = e.x if self.symbol == "X" else e.z
        other = e.z if self.symbol == "X" else e.x
        return other == 0 and gf2.in_rowspace(bits, self.stab_rows)

    def joint(self) -> JointCode:
        return JointCode(
            n=self.n,
            alphabet=("I", self.symbol),
            sub_gens=self.stab_gens(),
            coset_gens=self.logical_gens(),
            membership_checks=[self._lift_other(b) for b in self.check_rows],
            label_checks=[self._lift_other(b) for b in self.dual_rows],
            pairing="diagonal",
        )


@dataclass(frozen=True)
class CssCode:
    """CSS code from classical parity checks h1 (X side) and h2 (Z side).

    The dual of the code checked by h2 must lie inside the code checked by
    h1; the X-type stabilizer generators are the h1 rows lifted to X strings,
    the Z-type generators the h2 rows lifted to Z strings.
    """

    n: int
    k: int
    h1: list[int]
    h2: list[int]
    base: StabilizerCode
    sector_x: CssSector = field(repr=False)
    sector_z: CssSector = field(repr=False)

    def sector(self, name: str) -> CssSector:
        if name == "x":
            return self.sector_x
        if name == "z":
            return self.sector_z
        raise ValueError(f"unknown sector {name!r} (expected 'x' or 'z')")

    def split_error(self, e: PauliVector) -> tuple[PauliVector, PauliVector]:
        return (PauliVector.from_x_bits(e.x, self.n),
                PauliVector.from_z_bits(e.z, self.n))


def css_split(h1: list[int], h2: list[int], n: int) -> CssCode:
    """Build a CSS code from binary parity-check rows (bit i = qubit i+1)."""
    mask = (1 << n) - 1
    for row in h1 + h2:
        if row & ~mask:
            raise ValueError("check row wider than qubit count")
    if gf2.rank(h1) != len(h1) or gf2.rank(h2) != len(h2):
        raise ValueError("parity-check rows must be independent")
    for i, a in enumerate(h1):
        for j, b in enumerate(h2):
            if gf2.parity(a & b):
                raise ValueError(
                    f"containment violated: h1 row {i} and h2 row {j} overlap "
                    "in an odd number of positions")
    r1, r2 = len(h1), len(h2)
    k = n - r1 - r2
    if k < 0:
        raise ValueError("too many checks: k would be negative")

    # Sector codewords: X^a with a orthogonal to every h2 row (and dually).
    cx_basis = gf2.nullspace(h2, n)
    cz_basis = gf2.nullspace(h1, n)
    lx = _complement_basis(cx_basis, h1, k)
    lz = _complement_basis(cz_basis, h2, k)
    lx, lz = _pair_logicals(lx, lz)

    destab_x = [gf2.solve(h2, [1 if j == i else 0 for j in range(r2)])
                for i in range(r2)]
    destab_z = [gf2.solve(h1, [1 if j == i else 0 for j in range(r1)])
                for i in range(r1)]

    sector_x = CssSector("x", "X", n, check_rows=list(h2), stab_rows=list(h1),
                         logical_rows=lx, dual_rows=lz, destab_rows=destab_x)
    sector_z = CssSector("z", "Z", n, check_rows=list(h1), stab_rows=list(h2),
                         logical_rows=lz, dual_rows=lx, destab_rows=destab_z)

    gens = [PauliVector.from_x_bits(row, n) for row in h1] + \
           [PauliVector.from_z_bits(row, n) for row in h2]
    base = new_stabilizer_code(gens)
    return CssCode(n=n, k=k, h1=list(h1), h2=list(h2), base=base,
                   sector_x=sector_x, sector_z=sector_z)


def _complement_basis(code_basis: list[int], sub_rows: list[int],
                      k: int) -> list[int]:
    out: list[int] = []
    span = list(sub_rows)
    for v in code_basis:
        if len(out) == k:
            break
        if not gf2.in_rowspace(v, span):
            out.append(v)
            span.append(v)
    if len(out) != k:
        raise RuntimeError("logical dimension mismatch")
    return out


def _pair_logicals(lx: list[int], lz: list[int]) -> tuple[list[int], list[int]]:
    """Adjust bases so that lx[i] . lz[j] = delta_ij."""
    lx, lz = list(lx), list(lz)
    for i in range(len(lx)):
        j = next(m for m in range(i, len(lz)) if gf2.parity(lx[i] & lz[m]))
        lz[i], lz[j] = lz[j], lz[i]
        for m in range(len(lx)):
            if m != i and gf2.parity(lx[m] & lz[i]):
                lx[m] ^= lx[i]
        for m in range(len(lz)):
            if m != i and gf2.parity(lx[i] & lz[m]):
                lz[m] ^= lz[i]
    return lx, lz


# ---------------------------------------------------------------------------
# Code files
#
# Plain stabilizer file:   header "n k", then n-k Pauli strings.
# CSS file:                header "css n", binary h1 rows, "--", h2 rows.
# '#' starts a comment; leftmost character/bit is qubit 1.

_BUILTIN = {"code422", "steane713", "shor913", "rm1513"}


def parse_code_text(text: str) -> StabilizerCode | CssCode:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty code definition")
    header = lines[0].split()
    if header[0] == "css":
        if len(header) != 2:
            raise ValueError("css header must be 'css n'")
        n = int(header[1])
        h1: list[int] = []
        h2: list[int] = []
        target = h1
        for line in lines[1:]:
            if line == "--":
                if target is h2:
                    raise ValueError("multiple '--' separators")
                target = h2
                continue
            if set(line) - {"0", "1"} or len(line) != n:
                raise ValueError(f"bad binary row {line!r}")
            target.append(int(line[::-1], 2))
        if target is h1:
            raise ValueError("css file missing '--' separator")
        return css_split(h1, h2, n)
    if len(header) != 2:
        raise ValueError("header must be 'n k' or 'css n'")
    n, k = int(header[0]), int(header[1])
    gens = [PauliVector.from_string(line) for line in lines[1:]]
    if len(gens) != n - k:
        raise ValueError(f"expected {n - k} generators, found {len(gens)}")
    if any(g.n != n for g in gens):
        raise ValueError("generator length differs from n")
    code = new_stabilizer_code(gens)
    return code


def load_code(name_or_path: str) -> StabilizerCode | CssCode:
    """Resolve a built-in code name or read a code definition file."""
    if name_or_path in _BUILTIN:
        text = resources.files("qtrellis.codes").joinpath(
            f"{name_or_path}.txt").read_text()
        return parse_code_text(text)
    with open(name_or_path) as fh:
        return parse_code_text(fh.read())


def builtin_codes() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN))


def base_code(code: StabilizerCode | CssCode) -> StabilizerCode:
    return code.base if isinstance(code, CssCode) else code
