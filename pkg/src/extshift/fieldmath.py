"""Exact linear algebra over a prime field, plus deterministic seed plumbing.

Everything downstream (the greedy lexicographic scan, wedge-coefficient
matrices, rank certificates for regions) reduces to row reduction over F_p
for one large prime p.  Rows are plain lists of Python ints in [0, p);
arithmetic is exact and never overflows.  numpy is deliberately avoided
here: products of two 61-bit residues do not fit in int64, and arbitrary
precision integers are fast enough at the matrix sizes that occur.

The one piece that is genuinely bespoke is :class:`RowBasis`: an
*incremental* echelon form that accepts or rejects one candidate row at a
time without row swaps, so the order in which rows are offered is exactly
the order in which independence is decided.  That accept/reject order is
the algorithmic content of the greedy scan, which is why this is not
delegated to a batch rank routine.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

# 2^61 - 1, a Mersenne prime.  Large enough that a handful of random
# evaluations of the determinant polynomials involved (degrees well under
# a few hundred) fails with probability < 1e-15 per Schwartz-Zippel.
DEFAULT_MODULUS: int = (1 << 61) - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p."""

    modulus: int = DEFAULT_MODULUS

    def __post_init__(self) -> None:
        p = self.modulus
        if p == 2 or not is_probable_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in prime field")
        return pow(a, self.modulus - 2, self.modulus)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.modulus)


def derive_seed(master: int, tag: str) -> int:
    """Derive a decorrelated 64-bit seed for a named sub-purpose.

    Stable across runs and Python versions (sha256 of a canonical string),
    so certificates recorded in tables stay reproducible.
    """
    digest = hashlib.sha256(f"{master}:{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class RowBasis:
    """Incremental row echelon basis over F_p, no row swaps.

    Rows are offered one at a time via :meth:`insert`; each offered row is
    reduced against the rows accepted so far and accepted iff a nonzero
    entry survives.  Accepted rows are kept in reduced form with their
    pivot column recorded, so insertion is O(rank * width).
    """

    def __init__(self, width: int, field: PrimeField) -> None:
        self.width = width
        self.field = field
        self._rows: list[list[int]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, row: Sequence[int]) -> list[int]:
        """Return ``row`` reduced against the accepted rows (not inserted)."""
        p = self.field.modulus
        if len(row) != self.width:
            raise ValueError(f"row has length {len(row)}, expected {self.width}")
        work = [v % p for v in row]
        for basis_row, pivot in zip(self._rows, self._pivots):
            factor = work[pivot]
            if factor:
                work = [(w - factor * b) % p for w, b in zip(work, basis_row)]
        return work

    def insert(self, row: Sequence[int]) -> bool:
        """Offer a row; return True iff it was independent (and keep it)."""
        p = self.field.modulus
        work = self.reduce(row)
        for j, v in enumerate(work):
            if v:
                inv = self.field.inv(v)
                self._rows.append([w * inv % p for w in work])
                self._pivots.append(j)
                return True
        return False


def matrix_rank(rows: Iterable[Sequence[int]], width: int,
                field: PrimeField | None = None) -> int:
    """Rank over F_p of a dense matrix given as an iterable of rows."""
    field = field or PrimeField()
    basis = RowBasis(width, field)
    for row in rows:
        basis.insert(row)
    return basis.rank


def sparse_rank(rows: Iterable[dict[int, int]], field: PrimeField | None = None) -> int:
    """Rank over F_p of a sparse matrix (rows are {column: value} dicts).

    Used for boundary matrices, which have at most d+1 nonzeros per row;
    elimination keeps rows as dicts so the work tracks fill-in, not the
    full (rows x columns) footprint.
    """
    field = field or PrimeField()
    p = field.modulus
    pivot_rows: dict[int, dict[int, int]] = {}  # pivot column -> reduced row
    rank = 0
    for row in rows:
        work = {c: v % p for c, v in row.items() if v % p}
        while work:
            col = min(work)
            pivot = pivot_rows.get(col)
            if pivot is None:
                inv = field.inv(work[col])
                pivot_rows[col] = {c: v * inv % p for c, v in work.items()}
                rank += 1
                break
            factor = work[col]
            for c, v in pivot.items():
                newv = (work.get(c, 0) - factor * v) % p
                if newv:
                    work[c] = newv
                else:
                    work.pop(c, None)
    return rank


def det_mod(matrix: Sequence[Sequence[int]], field: PrimeField) -> int:
    """Determinant over F_p of a small dense square matrix.

    Hand-rolled sizes 0..3 (the overwhelmingly common cases: faces of a
    2-complex), fraction-free elimination above that.
    """
    p = field.modulus
    m = len(matrix)
    if m == 0:
        return 1
    if m == 1:
        return matrix[0][0] % p
    if m == 2:
        (a, b), (c, d) = matrix
        return (a * d - b * c) % p
    if m == 3:
        (a, b, c), (d, e, f), (g, h, i) = matrix
        return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p
    work = [[v % p for v in row] for row in matrix]
    det = 1
    for col in range(m):
        pivot_row = next((r for r in range(col, m) if work[r][col]), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det % p
        pivot = work[col][col]
        det = det * pivot % p
        inv = field.inv(pivot)
        for r in range(col + 1, m):
            factor = work[r][col] * inv % p
            if factor:
                work[r] = [(x - factor * y) % p for x, y in zip(work[r], work[col])]
    return det
