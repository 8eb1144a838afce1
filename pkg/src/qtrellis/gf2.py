"""GF(2) linear algebra on int bitsets (bit i of a row = column i)."""

from __future__ import annotations


def parity(x: int) -> int:
    return x.bit_count() & 1


def rank(rows: list[int]) -> int:
    work = []
    for r in rows:
        for w in work:
            r = min(r, r ^ w)
        if r:
            work.append(r)
            work.sort(reverse=True)
    return len(work)


def row_reduce(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form. Returns (reduced nonzero rows, pivot columns)."""
    work = list(rows)
    pivots: list[int] = []
    out: list[int] = []
    row = 0
    ncols = max((r.bit_length() for r in rows), default=0)
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(row, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        for i in range(len(work)):
            if i != row and work[i] & bit:
                work[i] ^= work[row]
        pivots.append(col)
        row += 1
    out = [r for r in work if r]
    return out, pivots


def in_rowspace(vec: int, rows: list[int]) -> bool:
    reduced, pivots = row_reduce(rows)
    v = vec
    for r, p in zip(reduced, pivots):
        if v & (1 << p):
            v ^= r
    return v == 0


def solve(rows: list[int], rhs: list[int]) -> int | None:
    """Solve x · rows[i]^T = rhs[i] for all i; returns one solution bitset or None.

    Unknown x ranges over all bit positions up to the widest row.
    """
    n = max((r.bit_length() for r in rows), default=0)
    # Transpose the system: columns of the augmented matrix are the unknowns.
    aug = [(rows[i], rhs[i]) for i in range(len(rows))]
    x = 0
    used_cols: list[int] = []
    work = list(aug)
    row = 0
    for col in range(n):
        bit = 1 << col
        piv = next((i for i in range(row, len(work)) if work[i][0] & bit), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        pr, pb = work[row]
        for i in range(len(work)):
            if i != row and work[i][0] & bit:
                work[i] = (work[i][0] ^ pr, work[i][1] ^ pb)
        used_cols.append(col)
        row += 1
    for i in range(row, len(work)):
        if work[i][1]:
            return None
    for (r, b), col in zip(work[:row], used_cols):
        if b:
            x |= 1 << col
    return x


def nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of {v : parity(v & row) = 0 for every row}, vectors of width ncols."""
    reduced, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        # Back-substitute pivot coordinates.
        for r, p in zip(reduced, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def combination_for(vec: int, rows: list[int]) -> list[int] | None:
    """Coefficients c with XOR of c_i * rows[i] = vec, or None if not in span."""
    # Track how each reduced row decomposes over the original rows.
    work = [(r, 1 << i) for i, r in enumerate(rows)]
    combos: list[tuple[int, int]] = []
    row = 0
    ncols = max((r.bit_length() for r in rows), default=0)
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(row, len(work)) if work[i][0] & bit), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        pr, pc = work[row]
        for i in range(len(work)):
            if i != row and work[i][0] & bit:
                work[i] = (work[i][0] ^ pr, work[i][1] ^ pc)
        combos.append((col, row))
        row += 1
    v = vec
    mask = 0
    for col, i in combos:
        if v & (1 << col):
            v ^= work[i][0]
            mask ^= work[i][1]
    if v:
        return None
    return [(mask >> i) & 1 for i in range(len(rows))]
