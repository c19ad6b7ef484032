"""Exact linear algebra over the local ring Z_(p).

Scalars are `fractions.Fraction` values whose denominator is coprime to p
(p-regular), so every scalar is an honest element of Z_(p) and the only
information that can die in a quotient is a power of p.  All routines are
pure: matrices are immutable tuples of tuples and every function returns
fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


def vp(x, p: int) -> Optional[int]:
    """p-adic valuation of a Fraction/int, or None for zero."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_p_regular(x, p: int) -> bool:
    """True if x lies in Z_(p): denominator coprime to p."""
    return Fraction(x).denominator % p != 0


def reduce_mod_pk(x, p: int, k: int) -> int:
    """Image of x in Z/p^k for x in Z_(p) (denominator inverted mod p^k)."""
    x = Fraction(x)
    m = p ** k
    if x.denominator % p == 0:
        raise ValueError("not p-regular: %s" % (x,))
    return (x.numerator * pow(x.denominator, -1, m)) % m


class PLocalMatrix:
    """Immutable matrix with entries in Z_(p) (stored as Fractions)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: Optional[int] = None):
        ent = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.entries = ent
        self.rows = len(ent)
        self.cols = len(ent[0]) if ent else (cols or 0)
        for row in ent:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "PLocalMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "PLocalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], rows: Optional[int] = None) -> "PLocalMatrix":
        if not cols:
            return cls.zero(rows or 0, 0)
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other) -> bool:
        return isinstance(other, PLocalMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self) -> str:
        return "PLocalMatrix(%r)" % (self.entries,)

    def __matmul__(self, other: "PLocalMatrix") -> "PLocalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        out = [[sum((self.entries[i][k] * other.entries[k][j]
                     for k in range(self.cols)), Fraction(0))
                for j in range(other.cols)] for i in range(self.rows)]
        return PLocalMatrix(out, cols=other.cols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((self.entries[i][j] * Fraction(vec[j])
                          for j in range(self.cols)), Fraction(0))
                     for i in range(self.rows))

    def transpose(self) -> "PLocalMatrix":
        return PLocalMatrix([[self.entries[i][j] for i in range(self.rows)]
                             for j in range(self.cols)], cols=self.rows)

    def hstack(self, other: "PLocalMatrix") -> "PLocalMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return PLocalMatrix([self.entries[i] + other.entries[i]
                             for i in range(self.rows)])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def check_p_regular(self, p: int) -> None:
        for row in self.entries:
            for x in row:
                if not is_p_regular(x, p):
                    raise ValueError("entry %s not in Z_(%d)" % (x, p))


@dataclass(frozen=True)
class SnfResult:
    """L @ A @ R == diagonal of p^exponents (then zeros)."""

    exponents: tuple          # nondecreasing p-valuations of invariant factors
    rank: int
    left: PLocalMatrix        # rows x rows, invertible over Z_(p)
    left_inv: PLocalMatrix
    right: PLocalMatrix       # cols x cols, invertible over Z_(p)
    right_inv: PLocalMatrix

    def diagonal(self, p: int) -> PLocalMatrix:
        rows, cols = self.left.rows, self.right.rows
        d = [[Fraction(0)] * cols for _ in range(rows)]
        for i, k in enumerate(self.exponents):
            d[i][i] = Fraction(p ** k)
        return PLocalMatrix(d)


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def snf(A: PLocalMatrix, p: int) -> SnfResult:
    """Smith normal form over Z_(p).

    Pivots are chosen with minimal p-valuation, ties broken by smallest
    (row, col) in the current submatrix, so the output is deterministic.
    Invariant factors are normalized to pure powers of p.
    """
    A.check_p_regular(p)
    rows, cols = A.rows, A.cols
    m = [list(row) for row in A.entries]
    left = [list(r) for r in PLocalMatrix.identity(rows).entries]
    left_inv = [list(r) for r in PLocalMatrix.identity(rows).entries]
    right = [list(r) for r in PLocalMatrix.identity(cols).entries]
    right_inv = [list(r) for r in PLocalMatrix.identity(cols).entries]

    exponents = []
    t = 0
    while t < min(rows, cols):
        # pivot search: minimal valuation, then smallest (row, col)
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0:
                    v = vp(m[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        if pi != t:
            _swap_rows(m, t, pi)
            _swap_rows(left, t, pi)
            _swap_cols(left_inv, t, pi)
        if pj != t:
            _swap_cols(m, t, pj)
            _swap_cols(right, t, pj)
            _swap_rows(right_inv, t, pj)
        pivot = m[t][t]
        # clear the column below/above the pivot (row ops touch L)
        for i in range(rows):
            if i != t and m[i][t] != 0:
                f = m[i][t] / pivot
                for j in range(cols):
                    m[i][j] -= f * m[t][j]
                for j in range(rows):
                    left[i][j] -= f * left[t][j]
                    left_inv[j][t] += f * left_inv[j][i]
        # clear the row (col ops touch R)
        for j in range(cols):
            if j != t and m[t][j] != 0:
                f = m[t][j] / pivot
                for i in range(rows):
                    m[i][j] -= f * m[i][t]
                for i in range(cols):
                    right[i][j] -= f * right[i][t]
                    right_inv[t][i] += f * right_inv[j][i]
        # normalize pivot to p^v (unit goes into R)
        unit = pivot / Fraction(p ** v)
        for i in range(rows):
            m[i][t] /= unit
        for i in range(cols):
            right[i][t] /= unit
            right_inv[t][i] *= unit
        exponents.append(v)
        t += 1

    return SnfResult(
        exponents=tuple(exponents),
        rank=len(exponents),
        left=PLocalMatrix(left),
        left_inv=PLocalMatrix(left_inv),
        right=PLocalMatrix(right),
        right_inv=PLocalMatrix(right_inv),
    )


def kernel_basis(A: PLocalMatrix, p: int) -> PLocalMatrix:
    """Columns form a Z_(p)-basis of ker(A); empty matrix when injective."""
    res = snf(A, p)
    cols = [res.right.column(j) for j in range(res.rank, A.cols)]
    return PLocalMatrix.from_columns(cols, rows=A.cols)


def image_basis(A: PLocalMatrix, p: int) -> PLocalMatrix:
    """Columns form a Z_(p)-basis of the image lattice of A."""
    res = snf(A, p)
    cols = []
    for i, k in enumerate(res.exponents):
        col = res.left_inv.column(i)
        cols.append(tuple(Fraction(p ** k) * x for x in col))
    return PLocalMatrix.from_columns(cols, rows=A.rows)


def solve_preimage(A: PLocalMatrix, b: Sequence, p: int) -> Optional[tuple]:
    """Exact solution x of A x = b over Z_(p), or None if b is not in the image."""
    if len(b) != A.rows:
        raise ValueError("rhs length mismatch")
    res = snf(A, p)
    c = res.left.apply(b)
    y = [Fraction(0)] * A.cols
    for i in range(A.rows):
        if i < res.rank:
            d = Fraction(p ** res.exponents[i])
            q = c[i] / d
            if not is_p_regular(q, p):
                return None
            y[i] = q
        elif c[i] != 0:
            return None
    return res.right.apply(y)


def rank(A: PLocalMatrix, p: int) -> int:
    return snf(A, p).rank
