"""
Howell normal form of row spans over Z/p^M.

Z/p^M is a local ring, so every row span has an echelon basis whose pivots
are powers of p; adding p^(M-v) times each pivot row (which kills its pivot)
makes the basis closed under the annihilator step, giving the Howell form.
Membership and the length of the quotient are read off this basis.
"""
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.errors import GuardrailError, ValidationError


MAX_MODULUS: int = 2 ** 31


def valuation(x: int, p: int, M: int) -> int:
    """p-adic valuation of a residue mod p^M, M for zero."""
    if x == 0:
        return M
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _check_modulus(p: int, M: int) -> int:
    if M < 1:
        raise ValidationError(f"truncation level must be >= 1, got {M}")
    modulus = p ** M
    if modulus > MAX_MODULUS:
        raise GuardrailError(f"p^M = {p}^{M} exceeds the int64-safe bound {MAX_MODULUS}")
    return modulus


def howell_form(rows: Iterable[Sequence[int]], p: int, M: int, width: int = None) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """
    Howell form of the span of ``rows`` in (Z/p^M)^width.

    Returns:
        (basis, pivots): the basis rows as an int64 array and, per row, the
        pair (pivot column, pivot valuation). Entries above each pivot are
        reduced modulo the pivot.
    """
    modulus = _check_modulus(p, M)
    work = [np.asarray(r, dtype=np.int64) % modulus for r in rows]
    if width is None:
        if not work:
            raise ValidationError("howell_form needs a width for an empty row list")
        width = len(work[0])
    work = [r for r in work if r.any()]
    basis: List[np.ndarray] = []
    pivots: List[Tuple[int, int]] = []
    for col in range(width):
        if not work:
            break
        vals = [valuation(int(r[col]), p, M) for r in work]
        best = min(range(len(work)), key=lambda i: vals[i])
        v = vals[best]
        if v == M:
            continue
        row = work.pop(best)
        unit = int(row[col]) // p ** v
        row = (row * pow(unit, -1, modulus)) % modulus
        scale = p ** v
        remaining = []
        for other in work:
            c = int(other[col]) // scale
            if c:
                other = (other - c * row) % modulus
            if other.any():
                remaining.append(other)
        if v > 0:
            extra = (row * p ** (M - v)) % modulus
            if extra.any():
                remaining.append(extra)
        work = remaining
        basis.append(row)
        pivots.append((col, v))

    for j, (col, v) in enumerate(pivots):
        scale = p ** v
        for i in range(j):
            c = int(basis[i][col]) // scale
            if c:
                basis[i] = (basis[i] - c * basis[j]) % modulus
    array = np.array(basis, dtype=np.int64) if basis else np.zeros((0, width), dtype=np.int64)
    return array, pivots


def reduce_vector(vector: Sequence[int], basis: np.ndarray, pivots: List[Tuple[int, int]], p: int, M: int) -> np.ndarray:
    """Remainder of ``vector`` against a Howell basis; zero iff the vector lies in the span."""
    modulus = _check_modulus(p, M)
    x = np.asarray(vector, dtype=np.int64) % modulus
    for row, (col, v) in zip(basis, pivots):
        scale = p ** v
        c = int(x[col]) // scale
        if int(x[col]) % scale:
            return x
        if c:
            x = (x - c * row) % modulus
    return x


def in_span(vector: Sequence[int], basis: np.ndarray, pivots: List[Tuple[int, int]], p: int, M: int) -> bool:
    return not reduce_vector(vector, basis, pivots, p, M).any()


def quotient_length(pivots: List[Tuple[int, int]], width: int, M: int) -> int:
    """Z_p-length of (Z/p^M)^width modulo the span with these Howell pivots."""
    return sum(v for _, v in pivots) + M * (width - len(pivots))
