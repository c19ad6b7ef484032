"""Graded free resolutions: explicit Koszul complexes and a degreewise
minimal-resolution algorithm for finite modules.

The Koszul constructor only accepts element shapes where regularity is
automatic (one p-power, powers of distinct variables, each times a unit).
The minimal resolution picks new syzygies by Nakayama over the graded-local
ring: a generator is adjoined exactly when its kernel class survives mod
(p, x_1, ..., x_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graded import (ChainComplex, GradedFreeModule, GradedMap, GradedRing,
                     Poly, homology_at, monomial_multiplication_slice,
                     slice_map, tensor_complexes)
from .plocal import (PLocalMatrix, image_basis, kernel_basis, solve_preimage,
                     vp)
from .presentations import (GradedModulePresentation, minimize_presentation,
                            presentation)


class BoundExceeded(Exception):
    """The requested construction does not fit in the given (s_max, t_max)."""


@dataclass(frozen=True)
class KoszulElement:
    """u * p^a (variable=None) or u * x_i^b, with u a p-local unit."""

    variable: Optional[int]
    power: int
    unit: Fraction = Fraction(1)

    def poly(self, ring: GradedRing) -> Poly:
        if self.variable is None:
            return Poly.constant(self.unit * ring.p ** self.power, ring.n)
        return Poly.variable(self.variable, ring.n, power=self.power,
                             c=self.unit)

    def degree(self, ring: GradedRing) -> int:
        if self.variable is None:
            return 0
        return self.power * ring.degrees[self.variable]


def p_power(a: int, unit=1) -> KoszulElement:
    return KoszulElement(variable=None, power=a, unit=Fraction(unit))


def var_power(i: int, b: int, unit=1) -> KoszulElement:
    return KoszulElement(variable=i, power=b, unit=Fraction(unit))


@dataclass(frozen=True)
class Resolution:
    """A chain complex of graded frees augmenting onto a presented module."""

    complex: ChainComplex
    module: GradedModulePresentation
    s_max: int
    t_max: int
    minimal: bool
    # substitution: original generator module of `module` -> stage-0 module
    substitution: Optional[GradedMap] = None

    @property
    def ring(self) -> GradedRing:
        return self.complex.ring

    def stage(self, s: int) -> GradedFreeModule:
        return self.complex.module(s)

    def to_ambient(self, vec: Sequence, t: int):
        """Translate a slice vector over module.generators to stage 0."""
        if self.substitution is None:
            return tuple(Fraction(v) for v in vec)
        S = slice_map(self.substitution, t, self.ring)
        return S.apply(vec)


def _validate_koszul_elements(ring: GradedRing,
                              elements: Sequence[KoszulElement]) -> None:
    p_count = 0
    seen = set()
    for e in elements:
        if e.power < 1:
            raise ValueError("element powers must be positive")
        if vp(e.unit, ring.p) != 0:
            raise ValueError("unit factor must be a p-local unit")
        if e.variable is None:
            p_count += 1
        else:
            if not 0 <= e.variable < ring.n:
                raise ValueError("variable index out of range")
            if e.variable in seen:
                raise ValueError("repeated variable: regularity not automatic")
            seen.add(e.variable)
    if p_count > 1:
        raise ValueError("at most one p-power element is supported")


def koszul_resolution(ring: GradedRing,
                      elements: Sequence[KoszulElement]) -> Resolution:
    """Tensor product of two-term complexes resolving R/(elements)."""
    _validate_koszul_elements(ring, elements)
    base_iota = GradedFreeModule((0,), ("i",))
    complexes = []
    for k, e in enumerate(elements):
        g = GradedFreeModule((e.degree(ring),), ("e%d" % k,))
        d = GradedMap(g, base_iota, ((e.poly(ring),),))
        complexes.append(ChainComplex(ring=ring, modules=(base_iota, g),
                                      differentials=(d,)))
    if not complexes:
        C = ChainComplex(ring=ring, modules=(base_iota,), differentials=())
    else:
        C = complexes[0]
        for nxt in complexes[1:]:
            C = tensor_complexes(C, nxt)
    C.check()
    M = presentation(ring, [0], [[e.poly(ring)] for e in elements],
                     labels=("m",))
    top = sum(e.degree(ring) for e in elements)
    return Resolution(complex=C, module=M, s_max=len(elements),
                      t_max=top + ring.D + max(ring.degrees, default=0),
                      minimal=True)


def _slice_vector_to_poly_column(vec, basis, rank: int, ring: GradedRing):
    """Ambient slice vector -> Poly column over the module's generators."""
    col = [Poly.zero() for _ in range(rank)]
    for coeff, (exps, k) in zip(vec, basis):
        if coeff:
            col[k] = col[k] + Poly.monomial(exps, coeff)
    return col


def _gf_p_reduce(vecs: List[List[int]], p: int):
    """Row-reduce mod p incrementally; returns a span object with .add()."""

    class Span:
        def __init__(self):
            self.rows: Dict[int, List[int]] = {}   # pivot index -> row

        def reduce(self, v: List[int]) -> List[int]:
            v = [x % p for x in v]
            for piv, row in self.rows.items():
                if v[piv]:
                    f = (v[piv] * pow(row[piv], -1, p)) % p
                    v = [(a - f * b) % p for a, b in zip(v, row)]
            return v

        def add(self, v: List[int]) -> bool:
            """Insert if independent; returns True when v was new."""
            v = self.reduce(v)
            for i, x in enumerate(v):
                if x:
                    self.rows[i] = v
                    return True
            return False

    s = Span()
    for v in vecs:
        s.add(v)
    return s


def minimal_free_resolution(M: GradedModulePresentation, s_max: int,
                            t_max: Optional[int] = None) -> Resolution:
    """Degreewise minimal resolution of a finite module.

    Raises BoundExceeded when stage s_max would still need new generators,
    i.e. the module is not resolved inside the requested window.
    """
    ring = M.ring
    p = ring.p
    if t_max is None:
        from .presentations import content_range
        lo, hi = content_range(M)
        t_max = hi + ring.D + max(ring.degrees, default=0)
    Mmin, subst = minimize_presentation(M)
    stage_modules = [Mmin.generators]
    diffs: List[GradedMap] = []

    max_step = max(ring.degrees, default=0)

    for s in range(1, s_max + 2):
        prev = stage_modules[s - 1]
        new_degs: List[int] = []
        new_cols: List[List[Poly]] = []   # polynomial columns over prev gens
        if prev.rank == 0:
            break
        t_lo = min(prev.gen_degrees)
        for t in range(t_lo, t_max + 1):
            basis = prev.degree_slice(t, ring)
            if not basis:
                continue
            if s == 1:
                # kernel of F0 -> M at degree t is the relation image lattice
                A = slice_map(Mmin.relations, t, ring)
                K = image_basis(A, p)
            else:
                A = slice_map(diffs[s - 2], t, ring)
                K = kernel_basis(A, p)
            if K.cols == 0:
                continue
            # columns of the partial differential built so far, in K-coords
            span_vecs = []
            partial = GradedFreeModule(tuple(new_degs))
            for col, (exps, k) in enumerate(partial.degree_slice(t, ring)):
                vec = _poly_column_slice(new_cols[k], exps, prev, t, ring)
                coords = solve_preimage(K, vec, p)
                if coords is None:
                    raise RuntimeError("syzygy column escaped the kernel lattice")
                span_vecs.append([_int_mod_p(c, p) for c in coords])
            span = _gf_p_reduce(span_vecs, p)
            for j in range(K.cols):
                unit_vec = [0] * K.cols
                unit_vec[j] = 1
                if span.add(unit_vec):
                    vec = K.column(j)
                    new_degs.append(t)
                    new_cols.append(_slice_vector_to_poly_column(
                        vec, basis, prev.rank, ring))
        if not new_degs:
            stage_modules.append(GradedFreeModule(()))
            diffs.append(GradedMap.zero(stage_modules[s], prev))
            break
        if s == s_max + 1:
            raise BoundExceeded(
                "resolution needs generators beyond stage %d" % s_max)
        Fs = GradedFreeModule(tuple(new_degs),
                              tuple("s%d.%d" % (s, i)
                                    for i in range(len(new_degs))))
        matrix = tuple(tuple(new_cols[j][i] for j in range(len(new_cols)))
                       for i in range(prev.rank))
        diffs.append(GradedMap(Fs, prev, matrix))
        stage_modules.append(Fs)

    C = ChainComplex(ring=ring, modules=tuple(stage_modules),
                     differentials=tuple(diffs))
    C.check()
    return Resolution(complex=C, module=M, s_max=s_max, t_max=t_max,
                      minimal=True, substitution=subst)


def _int_mod_p(c: Fraction, p: int) -> int:
    from .plocal import reduce_mod_pk
    return reduce_mod_pk(c, p, 1)


def _poly_column_slice(col: List[Poly], exps, target: GradedFreeModule,
                       t: int, ring: GradedRing):
    """Slice vector of x^exps * (poly column) inside target's degree-t slice."""
    basis = target.degree_slice(t, ring)
    index = {b: i for i, b in enumerate(basis)}
    out = [Fraction(0)] * len(basis)
    for k, e in enumerate(col):
        for mono, c in e.terms.items():
            m = tuple(a + b for a, b in zip(mono, exps))
            out[index[(m, k)]] += c
    return out


def is_minimal(res: Resolution) -> bool:
    """Every differential entry lies in (p, x_1, ..., x_n)."""
    ring = res.ring
    for d in res.complex.differentials:
        for row in d.matrix:
            for e in row:
                c = e.terms.get((0,) * ring.n)
                if c is not None and vp(c, ring.p) == 0:
                    return False
    return True


@dataclass(frozen=True)
class ExactnessReport:
    ok: bool
    failures: tuple          # ((s, t), description)
    checked_window: tuple    # (s_range, t_range)

    def __bool__(self):
        return self.ok


def verify_exactness(res: Resolution,
                     t_range: Optional[Tuple[int, int]] = None) -> ExactnessReport:
    """d^2 = 0 symbolically, vanishing homology in the window, H_0 = M."""
    ring = res.ring
    failures = []
    try:
        res.complex.check()
    except ValueError as exc:
        failures.append(((None, None), str(exc)))
    if t_range is None:
        degs = [d for m in res.complex.modules for d in m.gen_degrees]
        lo = min(degs, default=0)
        t_range = (lo, res.t_max)
    lo, hi = t_range
    top_s = res.complex.length
    for t in range(lo, hi + 1):
        h0, free0 = homology_at(res.complex, 0, t)
        g = res.module.group_at(t)
        if tuple(sorted(g.exponents)) != h0 or g.free_rank != free0:
            failures.append(((0, t), "H_0 is %r free %d, module is %r free %d"
                             % (h0, free0, tuple(sorted(g.exponents)),
                                g.free_rank)))
        for s in range(1, top_s + 1):
            exps, free = homology_at(res.complex, s, t)
            if exps or free:
                failures.append(((s, t), "H_%d nonzero: %r free %d"
                                 % (s, exps, free)))
    return ExactnessReport(ok=not failures, failures=tuple(failures),
                           checked_window=((1, top_s), t_range))


# ---------------------------------------------------------------------------
# chain-map lifting (comparison theorem, degreewise over Z_(p))


def lift_chain_map(source: ChainComplex, target: ChainComplex,
                   f0_on_gens: Sequence, degree_shift: int = 0,
                   ring: Optional[GradedRing] = None) -> List[List[tuple]]:
    """Lift a stage-0 assignment to a chain map source -> target.

    ``f0_on_gens[k]`` is the slice vector (over target stage-0's slice at
    the appropriate degree) assigned to source stage-0 generator k.  The
    assignment must already commute with the augmentations.  Returns, per
    stage s, the list of slice vectors for the images of source stage-s
    generators.  ``degree_shift`` lowers internal degrees: the generator of
    degree d maps into target's slice at d - degree_shift.
    """
    ring = ring or source.ring
    p = ring.p
    values: List[List[tuple]] = [list(map(tuple, f0_on_gens))]
    for s in range(1, source.length + 1):
        Fs = source.module(s)
        d_src = source.diff_out(s)
        prev_vals = values[s - 1]
        tgt_prev = target.module(s - 1)
        tgt_cur = target.module(s)
        d_tgt = target.diff_out(s)
        stage_vals = []
        for k in range(Fs.rank):
            d = Fs.gen_degrees[k]
            t_tgt = d - degree_shift
            # rhs = f_{s-1}(d_src(gen k)) inside target stage s-1 slice
            basis_prev = tgt_prev.degree_slice(t_tgt, ring)
            rhs = [Fraction(0)] * len(basis_prev)
            index_prev = {b: i for i, b in enumerate(basis_prev)}
            for i in range(source.module(s - 1).rank):
                e = d_src.matrix[i][k]
                if e.is_zero():
                    continue
                src_deg = source.module(s - 1).gen_degrees[i]
                val = prev_vals[i]   # slice vector at src_deg - degree_shift
                val_basis = tgt_prev.degree_slice(src_deg - degree_shift, ring)
                for mono, c in e.terms.items():
                    for coeff, (a, gk) in zip(val, val_basis):
                        if coeff:
                            m = tuple(x + y for x, y in zip(a, mono))
                            rhs[index_prev[(m, gk)]] += c * coeff
            if tgt_cur.rank == 0:
                if any(x != 0 for x in rhs):
                    raise ValueError("no target stage to lift against")
                stage_vals.append(())
                continue
            A = slice_map(d_tgt, t_tgt, ring)
            x = solve_preimage(A, rhs, p)
            if x is None:
                raise ValueError(
                    "chain-map lifting failed at stage %d, degree %d" % (s, t_tgt))
            stage_vals.append(tuple(x))
        values.append(stage_vals)
    return values


# ---------------------------------------------------------------------------
# the pro-system Ext^{n+1,D}(Z/p^k, R), k = 1..k_max


@dataclass(frozen=True)
class ProfiniteReport:
    ring: GradedRing
    stages: tuple          # per k: exponents of Ext^{n+1,D}(Z/p^k, R)
    transitions: tuple     # per k: 1x1 transition matrix entry (int)
    ok: bool
    details: tuple

    def __bool__(self):
        return self.ok


def ext_profinite(ring: GradedRing, k_max: int) -> ProfiniteReport:
    """Certify Ext^{n+1,D}(Z/p^k, R) = Z/p^k with surjective transitions.

    Stage k is computed from the Koszul resolution of (p^k, x_1..x_n); the
    transition Ext(Z/p^{k+1}) -> Ext(Z/p^k) is induced by the inclusion
    Z/p^k -> Z/p^{k+1} via chain-map lifting.
    """
    from .ext import ext_group_presentation

    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    n = ring.n
    D = ring.D
    details = []
    ok = True
    stages = []
    resolutions = []
    groups = []
    for k in range(1, k_max + 1):
        res = koszul_resolution(ring, [p_power(k)] +
                                [var_power(i, 1) for i in range(n)])
        resolutions.append(res)
        grp = ext_group_presentation(res, n + 1, D)
        groups.append(grp)
        stages.append(tuple(sorted(grp.group.exponents)))
        if tuple(sorted(grp.group.exponents)) != (k,) or grp.group.free_rank:
            ok = False
            details.append("stage %d is %r, expected Z/p^%d"
                           % (k, grp.group.exponents, k))
    transitions = []
    for k in range(1, k_max):
        src_res = resolutions[k - 1].complex     # resolves Z/p^k
        tgt_res = resolutions[k].complex         # resolves Z/p^{k+1}
        # inclusion Z/p^k -> Z/p^{k+1} sends 1 to p
        f0 = [(Fraction(ring.p),)]
        values = lift_chain_map(src_res, tgt_res, f0)
        entry = _pullback_transition(groups[k], groups[k - 1],
                                     values[n + 1], src_res, ring)
        transitions.append(entry)
        # surjective with kernel of order p: entry must be a p-local unit
        if entry % ring.p == 0:
            ok = False
            details.append("transition %d -> %d not surjective" % (k + 1, k))
    return ProfiniteReport(ring=ring, stages=tuple(stages),
                           transitions=tuple(transitions), ok=ok,
                           details=tuple(details))


def _pullback_transition(src_grp, dst_grp, f_top_values, src_complex, ring):
    """Entry of Ext(Z/p^{k+1}) -> Ext(Z/p^k) on the cyclic generators."""
    # src_grp: Ext of Z/p^{k+1} (cocycles on the k+1 Koszul top stage)
    # pull its generator back along the lifted chain map
    gen_vec = src_grp.generator_vectors()[0]
    pulled = src_grp.pullback_cocycle(gen_vec, f_top_values, src_complex, ring)
    coords = dst_grp.project_cocycle(pulled)
    return coords[0]
