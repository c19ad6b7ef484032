"""Finitely presented graded R-modules and their degreewise structure.

A module M is the cokernel of a homogeneous map relations: F1 -> F0.  The
degree-t piece is a finite(ly generated) Z_(p)-module computed by Smith
normal form on the slice of the relation map; the x_i action is induced by
monomial multiplication on F0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .abgroup import PGroup, cokernel, hom_matrix
from .graded import (GradedFreeModule, GradedMap, GradedRing, Poly,
                     multiplication_slice, slice_map)
from .plocal import PLocalMatrix


@dataclass(frozen=True)
class GradedModulePresentation:
    ring: GradedRing
    generators: GradedFreeModule          # F0
    relations: GradedMap                  # F1 -> F0, cokernel is M

    def __post_init__(self):
        if self.relations.target != self.generators:
            raise ValueError("relations must land in the generator module")
        self.relations.check_homogeneous(self.ring)

    def group_at(self, t: int) -> PGroup:
        """M_t as a Z_(p)-module (torsion exponents + free rank)."""
        A = slice_map(self.relations, t, self.ring)
        return cokernel(A, A.rows, self.ring.p)

    def action_matrix(self, i: int, t: int) -> list:
        """Matrix of x_i: M_t -> M_{t+|x_i|} on group generators.

        Requires both slices finite.
        """
        src = self.group_at(t)
        dst = self.group_at(t + self.ring.degrees[i])
        mult = multiplication_slice(self.generators, i, t, self.ring)
        return hom_matrix(src, dst, mult)

    def min_degree(self) -> int:
        return min(self.generators.gen_degrees, default=0)

    def max_gen_degree(self) -> int:
        return max(self.generators.gen_degrees, default=0)

    def exponent_bound(self, t_range) -> int:
        """Smallest N with p^N * M_t = 0 over the given degrees."""
        N = 0
        for t in t_range:
            g = self.group_at(t)
            if not g.is_finite():
                raise ValueError("module not finite at degree %d" % t)
            if g.exponents:
                N = max(N, max(g.exponents))
        return N


def free_presentation(ring: GradedRing, gen_degrees: Sequence[int],
                      labels: Sequence[str] = ()) -> GradedModulePresentation:
    F0 = GradedFreeModule(tuple(gen_degrees), tuple(labels))
    F1 = GradedFreeModule(())
    return GradedModulePresentation(ring, F0, GradedMap.zero(F1, F0))


def presentation(ring: GradedRing, gen_degrees: Sequence[int],
                 relation_columns: Sequence[Sequence[Poly]],
                 labels: Sequence[str] = ()) -> GradedModulePresentation:
    """Build a presentation from relation columns (one Poly per generator)."""
    F0 = GradedFreeModule(tuple(gen_degrees), tuple(labels))
    kept = []
    col_degs = []
    for col in relation_columns:
        if len(col) != F0.rank:
            raise ValueError("relation column length mismatch")
        degs = set()
        for j, e in enumerate(col):
            if not e.is_zero():
                degs.add(e.homogeneous_degree(ring) + F0.gen_degrees[j])
        if not degs:
            continue                      # zero relation carries no content
        if len(degs) != 1:
            raise ValueError("relation column not homogeneous: %r" % (col,))
        col_degs.append(degs.pop())
        kept.append(col)
    F1 = GradedFreeModule(tuple(col_degs),
                          tuple("r%d" % i for i in range(len(col_degs))))
    matrix = tuple(tuple(kept[j][i] for j in range(len(kept)))
                   for i in range(F0.rank))
    return GradedModulePresentation(ring, F0, GradedMap(F1, F0, matrix))


def cyclic_presentation(ring: GradedRing, p_exp: int,
                        var_powers: Optional[Sequence[int]] = None,
                        degree: int = 0) -> GradedModulePresentation:
    """R/(p^a, x_1^{b_1}, ..) suspended to the given degree.

    var_powers of None means 'kill every variable with exponent given';
    omit a variable by passing 0.
    """
    n = ring.n
    cols = [[Poly.constant(ring.p ** p_exp, n)]]
    if var_powers is None:
        var_powers = [1] * n
    for i, b in enumerate(var_powers):
        if b:
            cols.append([Poly.variable(i, n, power=b)])
    return presentation(ring, [degree], cols, labels=("m",))


def suspend(M: GradedModulePresentation, shift: int) -> GradedModulePresentation:
    F0 = GradedFreeModule(tuple(d + shift for d in M.generators.gen_degrees),
                          M.generators.labels)
    F1 = GradedFreeModule(tuple(d + shift for d in M.relations.source.gen_degrees),
                          M.relations.source.labels)
    return GradedModulePresentation(M.ring, F0, GradedMap(F1, F0, M.relations.matrix))


def direct_sum(*mods: GradedModulePresentation) -> GradedModulePresentation:
    ring = mods[0].ring
    gen_degs: List[int] = []
    labels: List[str] = []
    rel_degs: List[int] = []
    for k, M in enumerate(mods):
        if M.ring != ring:
            raise ValueError("mixed rings in direct sum")
        gen_degs.extend(M.generators.gen_degrees)
        labels.extend("s%d.%s" % (k, lbl) for lbl in M.generators.labels)
        rel_degs.extend(M.relations.source.gen_degrees)
    F0 = GradedFreeModule(tuple(gen_degs), tuple(labels))
    F1 = GradedFreeModule(tuple(rel_degs))
    z = Poly.zero()
    matrix = [[z] * F1.rank for _ in range(F0.rank)]
    roff = coff = 0
    for M in mods:
        for i in range(M.generators.rank):
            for j in range(M.relations.source.rank):
                matrix[roff + i][coff + j] = M.relations.matrix[i][j]
        roff += M.generators.rank
        coff += M.relations.source.rank
    return GradedModulePresentation(ring, F0, GradedMap(F1, F0,
                                                        tuple(map(tuple, matrix))))


def minimize_presentation(M: GradedModulePresentation):
    """Prune unit entries from the relation matrix.

    Returns (minimized presentation, substitution) where substitution is a
    GradedMap from the original F0 to the pruned F0 inducing the identity on
    the cokernel.
    """
    ring = M.ring
    gens = list(M.generators.gen_degrees)
    labels = list(M.generators.labels)
    matrix = [list(row) for row in M.relations.matrix]   # rows = gens
    col_count = M.relations.source.rank
    alive_cols = list(range(col_count))
    # substitution rows track each original generator as a Poly combination
    # of the surviving generators
    alive = list(range(len(gens)))
    subst: Dict[int, Dict[int, Poly]] = {
        i: {i: Poly.constant(1, ring.n)} for i in range(len(gens))}

    def find_unit():
        for cpos, c in enumerate(alive_cols):
            for rpos, r in enumerate(alive):
                e = matrix[r][c]
                if e.is_zero():
                    continue
                zero_exp = (0,) * ring.n
                coef = e.terms.get(zero_exp)
                if coef is not None and coef.denominator % ring.p != 0 \
                        and coef.numerator % ring.p != 0 and len(e.terms) == 1:
                    return rpos, cpos
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        rpos, cpos = hit
        r = alive[rpos]
        c = alive_cols[cpos]
        u = matrix[r][c].terms[(0,) * ring.n]
        # generator r = -(1/u) * sum_{r' != r} matrix[r'][c] * gen r'
        combo = {r2: matrix[r2][c].scale(Fraction(-1) / u)
                 for r2 in alive if r2 != r and not matrix[r2][c].is_zero()}
        # substitute into every other relation column
        for c2 in alive_cols:
            if c2 == c:
                continue
            e = matrix[r][c2]
            if e.is_zero():
                continue
            for r2, q in combo.items():
                matrix[r2][c2] = matrix[r2][c2] + e * q
            matrix[r][c2] = Poly.zero()
        # update the substitution of every original generator through r
        expansion = combo  # r in terms of surviving generators
        for orig, expr in subst.items():
            if r in expr:
                coeff = expr.pop(r)
                for r2, q in expansion.items():
                    prev = expr.get(r2, Poly.zero())
                    expr[r2] = prev + coeff * q
        alive.pop(rpos)
        alive_cols.pop(cpos)

    new_degs = tuple(gens[r] for r in alive)
    new_labels = tuple(labels[r] for r in alive)
    F0 = GradedFreeModule(new_degs, new_labels)
    pos = {r: k for k, r in enumerate(alive)}
    new_cols = []
    col_degs = []
    for c in alive_cols:
        col = [matrix[r][c] for r in alive]
        if all(e.is_zero() for e in col):
            continue
        degs = {e.homogeneous_degree(ring) + new_degs[k]
                for k, e in enumerate(col) if not e.is_zero()}
        col_degs.append(degs.pop())
        new_cols.append(col)
    F1 = GradedFreeModule(tuple(col_degs))
    rel = GradedMap(F1, F0, tuple(tuple(new_cols[j][i]
                                        for j in range(len(new_cols)))
                                  for i in range(F0.rank)))
    minimized = GradedModulePresentation(ring, F0, rel)
    smat = [[Poly.zero()] * M.generators.rank for _ in range(F0.rank)]
    for orig, expr in subst.items():
        for r2, q in expr.items():
            smat[pos[r2]][orig] = q
    substitution = GradedMap(M.generators, F0, tuple(map(tuple, smat)))
    return minimized, substitution


def check_local_finiteness(M: GradedModulePresentation, probe_bound: int) -> str:
    """'finite', 'infinite', or 'inconclusive'.

    Degreewise mod-p ranks are probed up to probe_bound.  A zero window of
    width max|x_i|*n + 1 past the top generator certifies finiteness; a
    repeating nonzero tail pattern is reported infinite.
    """
    ring = M.ring
    lo = M.min_degree()
    ranks = []
    for t in range(lo, lo + probe_bound + 1):
        g = M.group_at(t)
        ranks.append(len(g.exponents) + g.free_rank)
    width = (max(ring.degrees, default=0) * max(ring.n, 1)) + 1
    top_gen = M.max_gen_degree()
    # finiteness: a zero window of the required width past every generator
    run = 0
    for idx, r in enumerate(ranks):
        t = lo + idx
        run = run + 1 if r == 0 else 0
        if run >= width and t >= top_gen + width:
            return "finite"
    if ring.n == 0:
        return "finite" if ranks and ranks[-1] == 0 else "inconclusive"
    # periodicity probe on the tail
    period = max(ring.degrees)
    if len(ranks) >= 3 * period:
        tail = ranks[-period:]
        prev = ranks[-2 * period:-period]
        if tail == prev and any(tail):
            return "infinite"
    return "inconclusive"


def content_range(M: GradedModulePresentation, probe_bound: int = 64):
    """(lo, hi) with M_t = 0 outside [lo, hi]; raises for non-finite M."""
    verdict = check_local_finiteness(M, probe_bound)
    if verdict != "finite":
        raise ValueError("module is not certified finite (%s)" % verdict)
    lo = M.min_degree()
    hi = lo - 1
    first = None
    for t in range(lo, lo + probe_bound + 1):
        g = M.group_at(t)
        if g.exponents or g.free_rank:
            if first is None:
                first = t
            hi = t
    if first is None:
        return (0, -1)
    return (first, hi)


# ---------------------------------------------------------------------------
# presentation files


def poly_to_doc(e: Poly) -> list:
    return [[[c.numerator, c.denominator], list(exps)]
            for exps, c in sorted(e.terms.items())]


def poly_from_doc(doc, nvars: int) -> Poly:
    terms = {}
    for (num_den, exps) in doc:
        num, den = num_den
        terms[tuple(exps)] = Fraction(num, den)
    for exps in terms:
        if len(exps) != nvars:
            raise ValueError("exponent vector length mismatch")
    return Poly(terms)


def presentation_to_dict(M: GradedModulePresentation) -> dict:
    cols = []
    for j in range(M.relations.source.rank):
        entries = []
        for i in range(M.generators.rank):
            e = M.relations.matrix[i][j]
            if not e.is_zero():
                entries.append([M.generators.labels[i], poly_to_doc(e)])
        cols.append(entries)
    return {
        "ring": {"p": M.ring.p, "degrees": list(M.ring.degrees)},
        "generators": [[lbl, d] for lbl, d in
                       zip(M.generators.labels, M.generators.gen_degrees)],
        "relations": cols,
    }


def presentation_from_dict(doc: dict,
                           ring: Optional[GradedRing] = None) -> GradedModulePresentation:
    from .graded import ring_from_dict
    ring = ring or ring_from_dict(doc["ring"])
    labels = [g[0] for g in doc["generators"]]
    degs = [int(g[1]) for g in doc["generators"]]
    index = {lbl: i for i, lbl in enumerate(labels)}
    cols = []
    for col_doc in doc["relations"]:
        col = [Poly.zero()] * len(labels)
        for lbl, poly_doc in col_doc:
            col[index[lbl]] = poly_from_doc(poly_doc, ring.n)
        cols.append(col)
    return presentation(ring, degs, cols, labels=labels)


def load_presentation(path: str,
                      ring: Optional[GradedRing] = None) -> GradedModulePresentation:
    with open(path) as fh:
        return presentation_from_dict(json.load(fh), ring=ring)


def save_presentation(M: GradedModulePresentation, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(presentation_to_dict(M), fh, indent=1, sort_keys=True)
