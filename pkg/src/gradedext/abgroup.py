"""Finite(ly generated) abelian p-groups presented as Z_(p)^m / lattice.

A group is the cokernel of a relation matrix inside an ambient free
Z_(p)-module.  We keep the SNF data so elements of the ambient module can
be projected to coordinates in the invariant-factor decomposition, and
generators can be lifted back to ambient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .plocal import PLocalMatrix, SnfResult, reduce_mod_pk, snf, solve_preimage, vp


@dataclass(frozen=True)
class PGroup:
    """Cokernel of relations inside Z_(p)^ambient_rank.

    ``exponents`` lists k_i >= 1 for the Z/p^{k_i} summands, sorted
    ascending; ``free_rank`` counts Z_(p) summands.  ``gen_columns`` holds
    an ambient vector mapping onto each torsion generator, then each free
    generator.
    """

    p: int
    exponents: tuple
    free_rank: int
    ambient_rank: int
    _snf: Optional[SnfResult] = field(default=None, compare=False, repr=False)
    _torsion_rows: tuple = field(default=(), compare=False, repr=False)

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        return self.p ** sum(self.exponents)

    def is_trivial(self) -> bool:
        return not self.exponents and not self.free_rank

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def gen_columns(self) -> list:
        """Ambient vectors projecting onto the generators (torsion, then free)."""
        res = self._snf
        cols = [res.left_inv.column(i) for i in self._torsion_rows]
        cols += [res.left_inv.column(i)
                 for i in range(res.rank, self.ambient_rank)]
        return cols

    def project(self, vec: Sequence) -> tuple:
        """Coordinates of an ambient vector: torsion coords mod p^k, then free."""
        res = self._snf
        c = res.left.apply(vec)
        coords = []
        for pos, i in enumerate(self._torsion_rows):
            coords.append(reduce_mod_pk(c[i], self.p, self.exponents[pos]))
        for i in range(res.rank, self.ambient_rank):
            coords.append(c[i])
        return tuple(coords)

    def lift(self, coords: Sequence) -> tuple:
        """An ambient vector with the given group coordinates."""
        gens = self.gen_columns()
        if len(coords) != len(gens):
            raise ValueError("coordinate length mismatch")
        out = [Fraction(0)] * self.ambient_rank
        for c, g in zip(coords, gens):
            for i in range(self.ambient_rank):
                out[i] += Fraction(c) * g[i]
        return tuple(out)


def cokernel(relations: PLocalMatrix, ambient_rank: int, p: int) -> PGroup:
    """The group Z_(p)^ambient_rank / column-span(relations)."""
    if relations.cols == 0:
        relations = PLocalMatrix.zero(ambient_rank, 0)
    if relations.rows != ambient_rank:
        raise ValueError("relation rows != ambient rank")
    res = snf(relations, p)
    torsion_rows = tuple(i for i, k in enumerate(res.exponents) if k >= 1)
    exponents = tuple(res.exponents[i] for i in torsion_rows)
    return PGroup(
        p=p,
        exponents=exponents,
        free_rank=ambient_rank - res.rank,
        ambient_rank=ambient_rank,
        _snf=res,
        _torsion_rows=torsion_rows,
    )


def hom_matrix(src: PGroup, dst: PGroup, ambient_map: PLocalMatrix) -> list:
    """Matrix (rows=dst gens, cols=src gens) of the map induced by ambient_map.

    Only valid when ambient_map sends the relation lattice of src into the
    relation lattice of dst (true for slice maps of well-defined module maps).
    Both groups must be finite.
    """
    if not (src.is_finite() and dst.is_finite()):
        raise ValueError("hom_matrix needs finite groups")
    cols = []
    for g in src.gen_columns():
        cols.append(dst.project(ambient_map.apply(g)))
    n = len(dst.exponents)
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def is_surjective(mat: list, src_exponents: Sequence[int],
                  dst_exponents: Sequence[int], p: int) -> bool:
    """Whether the hom given by mat (dst-coords of src gens) is onto."""
    m = len(dst_exponents)
    if m == 0:
        return True
    cols = [[Fraction(mat[i][j]) for i in range(m)]
            for j in range(len(src_exponents))]
    for i, k in enumerate(dst_exponents):
        rel = [Fraction(0)] * m
        rel[i] = Fraction(p ** k)
        cols.append(rel)
    stacked = PLocalMatrix.from_columns(cols, rows=m)
    res = snf(stacked, p)
    return res.rank == m and all(k == 0 for k in res.exponents)


def is_isomorphism(mat: list, src_exponents: Sequence[int],
                   dst_exponents: Sequence[int], p: int) -> bool:
    return (sum(src_exponents) == sum(dst_exponents)
            and is_surjective(mat, src_exponents, dst_exponents, p))


def invert_iso(mat: list, src_exponents: Sequence[int],
               dst_exponents: Sequence[int], p: int) -> list:
    """Inverse matrix of a group isomorphism given by mat (dst gens of src gens)."""
    m, n = len(dst_exponents), len(src_exponents)
    cols = [[Fraction(mat[i][j]) for i in range(m)] for j in range(n)]
    for i, k in enumerate(dst_exponents):
        rel = [Fraction(0)] * m
        rel[i] = Fraction(p ** k)
        cols.append(rel)
    A = PLocalMatrix.from_columns(cols, rows=m)
    inv_cols = []
    for j in range(m):
        e = [Fraction(0)] * m
        e[j] = Fraction(1)
        x = solve_preimage(A, e, p)
        if x is None:
            raise ValueError("matrix is not an isomorphism")
        inv_cols.append([reduce_mod_pk(x[i], p, src_exponents[i])
                         for i in range(n)])
    return [[inv_cols[j][i] for j in range(m)] for i in range(n)]


def compose(f: list, g: list, mid_or_dst_exponents: Sequence[int], p: int) -> list:
    """Compose hom matrices f∘g, reducing mod the destination exponents of f."""
    if not f or not g:
        rows = len(f)
        cols = len(g[0]) if g else 0
        return [[0] * cols for _ in range(rows)]
    rows, mid, cols = len(f), len(g), len(g[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        k = mid_or_dst_exponents[i] if i < len(mid_or_dst_exponents) else None
        for j in range(cols):
            s = sum(f[i][t] * g[t][j] for t in range(mid))
            out[i][j] = s % (p ** k) if k is not None else s
    return out


def mats_equal(a: list, b: list, exponents: Sequence[int], p: int) -> bool:
    """Equality of hom matrices into a group with the given exponents."""
    if len(a) != len(b):
        return False
    for i in range(len(a)):
        if len(a[i]) != len(b[i]):
            return False
        m = p ** exponents[i]
        for x, y in zip(a[i], b[i]):
            if (x - y) % m != 0:
                return False
    return True
