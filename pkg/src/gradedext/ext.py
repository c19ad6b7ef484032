"""Ext groups over R, Pontryagin duals, and the explicit duality map.

Ext^{s,t}(M, R) is the degree-t slice cohomology of Hom_R(F, R) for a
minimal free resolution F of M.  The duality map against Sigma^D M^dual is
realized by a residue pairing: a class xi in Ext^{n+1, t+D} is paired with
m in M_t by lifting the classifying map of m through the Koszul resolution
of R/(p^N, x_1^{b_1}, ..., x_n^{b_n}) (a quotient that kills M), composing
with xi, and reading off the socle coefficient of x^{b-1} mod p^N.  For
M = Z/p^N with all b_i = 1 this is literally evaluation against the dual
of the top Koszul generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .abgroup import (PGroup, cokernel, hom_matrix, invert_iso,
                      is_isomorphism, mats_equal)
from .graded import (ChainComplex, GradedFreeModule, GradedMap, GradedRing,
                     Poly, multiplication_slice, slice_map)
from .plocal import (PLocalMatrix, kernel_basis, reduce_mod_pk,
                     solve_preimage, vp)
from .presentations import (GradedModulePresentation, check_local_finiteness,
                            content_range, direct_sum, presentation, suspend)
from .resolutions import (Resolution, koszul_resolution, lift_chain_map,
                          minimal_free_resolution, p_power, var_power)


class NotLocallyFinite(Exception):
    """Input module fails the locally-finite precondition."""


# ---------------------------------------------------------------------------
# cohomology presentations of the dual complex


class ExtGroupPresentation:
    """Ext^{s,t} presented as cycles-mod-boundaries of dual-complex slices."""

    def __init__(self, complex: ChainComplex, s: int, t: int,
                 ring: GradedRing):
        from .graded import dual_complex
        self.ring = ring
        self.s = s
        self.t = t
        self.dual_module = complex.module(s).dual()
        self.ambient_basis = self.dual_module.degree_slice(t, ring)
        m = len(self.ambient_basis)
        p = ring.p
        # outgoing codifferential: transpose of d_{s+1}
        nxt = complex.module(s + 1)
        if nxt.rank and s + 1 <= complex.length:
            delta_out = _dual_map(complex, s + 1)
            Z = slice_map(delta_out, t, ring)
            self.kb = kernel_basis(Z, p) if Z.rows else PLocalMatrix.identity(m)
        else:
            self.kb = PLocalMatrix.identity(m)
        # incoming codifferential: transpose of d_s
        if s >= 1 and complex.module(s - 1).rank:
            delta_in = _dual_map(complex, s)
            B = slice_map(delta_in, t, ring)
            rel_cols = []
            for j in range(B.cols):
                col = B.column(j)
                if self.kb.cols == 0:
                    if any(c != 0 for c in col):
                        raise ValueError("coboundary is not a cocycle")
                    continue
                x = solve_preimage(self.kb, col, p)
                if x is None:
                    raise ValueError("coboundary outside cocycle lattice")
                rel_cols.append(x)
            rel = PLocalMatrix.from_columns(rel_cols, rows=self.kb.cols)
        else:
            rel = PLocalMatrix.zero(self.kb.cols, 0)
        self.group = cokernel(rel, self.kb.cols, p)

    def generator_vectors(self) -> List[tuple]:
        """Ambient cocycle vectors mapping onto the torsion generators."""
        return [self.kb.apply(col) for col in self.group.gen_columns()]

    def project_cocycle(self, ambient_vec) -> tuple:
        coords = solve_preimage(self.kb, ambient_vec, self.ring.p) \
            if self.kb.cols else ()
        if self.kb.cols and coords is None:
            raise ValueError("vector is not a cocycle")
        return self.group.project(coords if self.kb.cols else ())

    def evaluate(self, xi_vec, w_vec, w_basis) -> Poly:
        """xi(w) in R, for xi an ambient dual vector and w a primal slice vector."""
        out: Dict[tuple, Fraction] = {}
        xi_by_gen: Dict[int, List[Tuple[tuple, Fraction]]] = {}
        for coeff, (a, k) in zip(xi_vec, self.ambient_basis):
            if coeff:
                xi_by_gen.setdefault(k, []).append((a, coeff))
        for coeff, (c, k) in zip(w_vec, w_basis):
            if not coeff:
                continue
            for a, xc in xi_by_gen.get(k, ()):
                mono = tuple(x + y for x, y in zip(a, c))
                out[mono] = out.get(mono, Fraction(0)) + coeff * xc
        return Poly(out)

    def pullback_cocycle(self, xi_vec, f_values, src_complex: ChainComplex,
                         ring: GradedRing, degree_shift: int = 0) -> tuple:
        """Pull xi back along a chain map f: src -> (complex of self).

        ``f_values[k]`` is the slice vector assigned to source stage-s
        generator k (living in our complex's stage-s slice at
        deg(gen k) - degree_shift).  Returns the ambient vector of the
        pulled-back cocycle over src's dual slice at degree t + (shift 0
        bookkeeping handled by caller degrees).
        """
        src_mod = src_complex.module(self.s)
        primal = self.dual_module.dual()     # the original stage-s module
        src_dual_basis = src_mod.dual().degree_slice(self.t + degree_shift, ring)
        values: Dict[int, Poly] = {}
        for k in range(src_mod.rank):
            d = src_mod.gen_degrees[k]
            w_basis = primal.degree_slice(d - degree_shift, ring)
            values[k] = self.evaluate(xi_vec, f_values[k], w_basis)
        out = []
        for (a, k) in src_dual_basis:
            out.append(values[k].terms.get(a, Fraction(0)))
        return tuple(out)


def _dual_map(complex: ChainComplex, s: int) -> GradedMap:
    """Transpose-dual of the chain differential d_s: C_s -> C_{s-1}."""
    d = complex.differentials[s - 1]
    src = complex.module(s - 1).dual()
    tgt = complex.module(s).dual()
    m = tuple(tuple(d.matrix[i][j] for i in range(complex.module(s - 1).rank))
              for j in range(complex.module(s).rank))
    return GradedMap(src, tgt, m)


def ext_group_presentation(res: Resolution, s: int, t: int) -> ExtGroupPresentation:
    return ExtGroupPresentation(res.complex, s, t, res.ring)


# ---------------------------------------------------------------------------
# Ext tables


@dataclass
class ExtTable:
    ring: GradedRing
    s_max: int
    t_min: int
    t_max: int
    entries: Dict[Tuple[int, int], Tuple[tuple, int]] = field(default_factory=dict)
    actions: Dict[Tuple[int, int, int], list] = field(default_factory=dict)
    valid_t_bound: Optional[int] = None

    def exponents_at(self, s: int, t: int) -> tuple:
        return self.entries.get((s, t), ((), 0))[0]

    def free_rank_at(self, s: int, t: int) -> int:
        return self.entries.get((s, t), ((), 0))[1]

    def order_at(self, s: int, t: int) -> int:
        exps, free = self.entries.get((s, t), ((), 0))
        if free:
            raise ValueError("infinite entry at (%d, %d)" % (s, t))
        return self.ring.p ** sum(exps)

    def nonzero(self) -> list:
        return sorted(k for k, v in self.entries.items() if v[0] or v[1])

    def to_dict(self) -> dict:
        doc = {
            "schema_version": 1,
            "ring": {"p": self.ring.p, "degrees": list(self.ring.degrees)},
            "s_max": self.s_max,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "entries": [[s, t, list(exps), free]
                        for (s, t), (exps, free) in sorted(self.entries.items())
                        if exps or free],
            "actions": [[i, s, t, mat]
                        for (i, s, t), mat in sorted(self.actions.items())],
        }
        if self.valid_t_bound is not None:
            doc["valid_t_bound"] = self.valid_t_bound
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "ExtTable":
        from .graded import ring_from_dict
        table = cls(ring=ring_from_dict(doc["ring"]), s_max=doc["s_max"],
                    t_min=doc["t_min"], t_max=doc["t_max"],
                    valid_t_bound=doc.get("valid_t_bound"))
        for s, t, exps, free in doc["entries"]:
            table.entries[(s, t)] = (tuple(exps), free)
        for i, s, t, mat in doc.get("actions", []):
            table.actions[(i, s, t)] = mat
        return table


def default_t_window(M: GradedModulePresentation) -> Tuple[int, int]:
    ring = M.ring
    lo, hi = content_range(M)
    step = max(ring.degrees, default=0)
    return (lo - step, hi + ring.D + step)


def annihilator_data(M: GradedModulePresentation) -> Tuple[int, tuple]:
    """(N, b): p^N and x_i^{b_i} annihilate M."""
    ring = M.ring
    lo, hi = content_range(M)
    if hi < lo:
        return (1, tuple(1 for _ in ring.degrees))
    N = max(1, M.exponent_bound(range(lo, hi + 1)))
    b = tuple((hi - lo) // d + 1 for d in ring.degrees)
    return (N, b)


def resolution_for_ext(M: GradedModulePresentation, s_max: int,
                       t_need: int) -> Resolution:
    """Minimal resolution complete through internal degree t_need."""
    ring = M.ring
    step = max(ring.degrees, default=0)
    t_res = t_need
    while True:
        res = minimal_free_resolution(M, s_max, t_res)
        top_gen = max((d for m in res.complex.modules
                       for d in m.gen_degrees), default=0)
        # a generator hugging the ceiling suggests the window truncated
        if step and top_gen >= t_res - step:
            t_res += max(step * 2, t_res // 2)
            continue
        return res


def ext_table(M: GradedModulePresentation, s_max: int,
              t_max: Optional[int] = None, t_min: Optional[int] = None,
              with_actions: bool = False,
              res: Optional[Resolution] = None) -> ExtTable:
    """Ext^{s,t}(M, R) for 0 <= s <= s_max, t_min <= t <= t_max."""
    ring = M.ring
    if t_max is None or t_min is None:
        lo, hi = default_t_window(M)
        t_min = lo if t_min is None else t_min
        t_max = hi if t_max is None else t_max
    if res is None:
        step = max(ring.degrees, default=0)
        try:
            N, b = annihilator_data(M)
            lo_c, hi_c = content_range(M)
            Db = sum(bi * di for bi, di in zip(b, ring.degrees))
            t_need = max(t_max, hi_c + Db + step)
        except ValueError:
            # not certified finite: resolve only through the requested window
            t_need = t_max + 2 * step
        res = resolution_for_ext(M, s_max, t_need)
    table = ExtTable(ring=ring, s_max=s_max, t_min=t_min, t_max=t_max)
    pres_cache: Dict[Tuple[int, int], ExtGroupPresentation] = {}

    def pres(s: int, t: int) -> ExtGroupPresentation:
        key = (s, t)
        if key not in pres_cache:
            pres_cache[key] = ExtGroupPresentation(res.complex, s, t, ring)
        return pres_cache[key]

    for s in range(0, s_max + 1):
        if s > res.complex.length:
            continue
        for t in range(t_min, t_max + 1):
            P = pres(s, t)
            exps = tuple(sorted(P.group.exponents))
            free = P.group.free_rank
            if exps or free:
                table.entries[(s, t)] = (exps, free)
    if with_actions:
        for (s, t) in list(table.entries):
            P = pres(s, t)
            if not P.group.exponents:
                continue
            for i in range(ring.n):
                t2 = t - ring.degrees[i]
                if t2 < t_min:
                    continue
                P2 = pres(s, t2)
                if not P2.group.exponents:
                    continue
                mult = multiplication_slice(P.dual_module, i, t, ring)
                mat = []
                for g in P.generator_vectors():
                    mat.append(P2.project_cocycle(mult.apply(g)))
                table.actions[(i, s, t)] = [[mat[j][r] for j in range(len(mat))]
                                            for r in range(len(P2.group.exponents))]
    return table


# ---------------------------------------------------------------------------
# Pontryagin duals


@dataclass
class GradedDualModule:
    """Degreewise Pontryagin dual with the transposed (degree-lowering) action."""

    ring: GradedRing
    groups: Dict[int, tuple]                 # t -> exponents of (M^dual)_t
    actions: Dict[Tuple[int, int], list]     # (i, t) -> matrix to degree t-|x_i|

    def order_at(self, t: int) -> int:
        return self.ring.p ** sum(self.groups.get(t, ()))


def dual_action_matrix(A: list, src_exps: Sequence[int],
                       dst_exps: Sequence[int], p: int) -> list:
    """Dual of a hom A: S -> T, as a map T^dual -> S^dual.

    A[i][j] gives T-coords of S-gen j; S has exponents src_exps, T has
    dst_exps.  Entry (j, i) of the dual is A[i][j] * p^(a_j - b_i) mod p^(a_j).
    """
    rows = len(src_exps)
    cols = len(dst_exps)
    out = [[0] * cols for _ in range(rows)]
    for j in range(rows):
        for i in range(cols):
            a, bb = src_exps[j], dst_exps[i]
            val = Fraction(A[i][j]) * Fraction(p) ** (a - bb)
            out[j][i] = reduce_mod_pk(val, p, a)
    return out


def pontryagin_dual(M: GradedModulePresentation,
                    t_range: Sequence[int]) -> GradedDualModule:
    ring = M.ring
    groups: Dict[int, tuple] = {}
    raw: Dict[int, PGroup] = {}
    for t in t_range:
        g = M.group_at(t)
        if not g.is_finite():
            raise ValueError("module infinite at degree %d" % t)
        raw[t] = g
        if g.exponents:
            groups[t] = tuple(g.exponents)
    actions: Dict[Tuple[int, int], list] = {}
    for t in t_range:
        for i in range(ring.n):
            t_src = t - ring.degrees[i]     # action (M^dual)_t -> (M^dual)_{t_src}
            if t_src not in raw or t not in raw:
                continue
            if not raw[t].exponents or not raw[t_src].exponents:
                continue
            A = M.action_matrix(i, t_src)    # M_{t_src} -> M_t
            actions[(i, t)] = dual_action_matrix(
                A, raw[t_src].exponents, raw[t].exponents, ring.p)
    return GradedDualModule(ring=ring, groups=groups, actions=actions)


# ---------------------------------------------------------------------------
# the duality map


@dataclass
class DualityMapReport:
    """Degreewise duality map Sigma^D M^dual -> Ext^{n+1}(M, R)."""

    ring: GradedRing
    N_exp: int
    b_powers: tuple
    degrees: tuple                          # t values of M with content
    psi: Dict[int, list]                    # t -> matrix Ext^{n+1,t+D} -> (M^dual)_t
    phi: Dict[int, list]                    # t -> inverse matrix
    iso_ok: bool
    action_ok: bool
    failures: tuple

    @property
    def ok(self) -> bool:
        return self.iso_ok and self.action_ok

    def __bool__(self):
        return self.ok


def duality_map(M: GradedModulePresentation,
                N_exp: Optional[int] = None,
                res: Optional[Resolution] = None) -> DualityMapReport:
    """Build the residue-pairing realization of the duality isomorphism.

    For every degree t with M_t != 0, pairs Ext^{n+1, t+D}(M, R) against
    M_t and reports whether the induced map Sigma^D M^dual -> Ext^{n+1} is
    a degreewise isomorphism commuting with every x_i action.
    """
    ring = M.ring
    p = ring.p
    n = ring.n
    D = ring.D
    N_auto, b = annihilator_data(M)
    N = N_exp if N_exp is not None else N_auto
    if N < N_auto:
        raise ValueError("p^N does not annihilate the module")
    lo, hi = content_range(M)
    Db = sum(bi * di for bi, di in zip(b, ring.degrees))
    step = max(ring.degrees, default=0)
    if res is None:
        res = resolution_for_ext(M, n + 2, max(hi + Db + step, hi + D + step))
    K = koszul_resolution(ring, [p_power(N)] +
                          [var_power(i, bi) for i, bi in enumerate(b)])
    socle = tuple(bi - 1 for bi in b)

    content = [t for t in range(lo, hi + 1) if M.group_at(t).exponents]
    ext_pres: Dict[int, ExtGroupPresentation] = {}
    for t in content:
        ext_pres[t] = ExtGroupPresentation(res.complex, n + 1, t + D, ring)

    psi: Dict[int, list] = {}
    phi: Dict[int, list] = {}
    failures: List[str] = []
    iso_ok = True
    pairings: Dict[int, list] = {}

    for t in content:
        Mt = M.group_at(t)
        P = ext_pres[t]
        ext_gens = P.generator_vectors()
        pairing = [[0] * len(ext_gens) for _ in Mt.exponents]
        for j, m_vec in enumerate(Mt.gen_columns()):
            v0 = res.to_ambient(m_vec, t)
            values = lift_chain_map(K.complex, res.complex, [v0],
                                    degree_shift=-t, ring=ring)
            w = values[n + 1][0]
            w_basis = res.stage(n + 1).degree_slice(t + Db, ring)
            for i, xi in enumerate(ext_gens):
                val = P.evaluate(xi, w, w_basis)
                coeff = val.terms.get(socle, Fraction(0))
                pairing[j][i] = reduce_mod_pk(coeff, p, N)
        pairings[t] = pairing
        # express in dual-generator coordinates: phi_j sends m_j to p^(N-a_j)
        a_exps = Mt.exponents
        e_exps = tuple(sorted(P.group.exponents))
        if P.group.free_rank:
            iso_ok = False
            failures.append("Ext^{%d,%d} has free rank %d"
                            % (n + 1, t + D, P.group.free_rank))
            continue
        mat = [[0] * len(ext_gens) for _ in a_exps]
        ok_here = True
        for j, a in enumerate(a_exps):
            for i in range(len(ext_gens)):
                val = Fraction(pairing[j][i]) / Fraction(p) ** (N - a)
                if vp(val, p) is not None and vp(val, p) < 0:
                    ok_here = False
                    failures.append("pairing not divisible at t=%d" % t)
                    break
                mat[j][i] = reduce_mod_pk(val, p, a)
            if not ok_here:
                break
        if not ok_here:
            iso_ok = False
            continue
        src_exps = tuple(P.group.exponents)
        if not is_isomorphism(mat, src_exps, a_exps, p):
            iso_ok = False
            failures.append("duality map not bijective at t=%d "
                            "(Ext %r vs dual %r)" % (t, src_exps, a_exps))
            psi[t] = mat
            continue
        psi[t] = mat
        phi[t] = invert_iso(mat, src_exps, a_exps, p)

    # x_i-equivariance of Psi
    action_ok = True
    dual = pontryagin_dual(M, range(lo, hi + 1))
    for t in content:
        if t not in psi:
            continue
        P = ext_pres[t]
        for i in range(n):
            t2 = t - ring.degrees[i]
            if t2 not in psi or t2 not in ext_pres:
                continue
            P2 = ext_pres[t2]
            mult = multiplication_slice(P.dual_module, i, t + D, ring)
            ext_act = []
            for g in P.generator_vectors():
                ext_act.append(P2.project_cocycle(mult.apply(g)))
            ext_act_mat = [[ext_act[jj][r] for jj in range(len(ext_act))]
                           for r in range(len(P2.group.exponents))]
            dual_act = dual.actions.get((i, t),
                                        [[0] * len(M.group_at(t).exponents)
                                         for _ in M.group_at(t2).exponents])
            from .abgroup import compose
            left = compose(psi[t2], ext_act_mat,
                           M.group_at(t2).exponents, p)
            right = compose(dual_act, psi[t],
                            M.group_at(t2).exponents, p)
            if not mats_equal(left, right, M.group_at(t2).exponents, p):
                action_ok = False
                failures.append("x_%d equivariance fails at t=%d" % (i + 1, t))

    return DualityMapReport(ring=ring, N_exp=N, b_powers=b,
                            degrees=tuple(content), psi=psi, phi=phi,
                            iso_ok=iso_ok, action_ok=action_ok,
                            failures=tuple(failures))


# ---------------------------------------------------------------------------
# the end-to-end verifier


@dataclass
class DualityReport:
    ring: GradedRing
    vanishing_ok: bool
    orders_ok: bool
    map_ok: bool
    window: tuple
    failures: tuple

    @property
    def ok(self) -> bool:
        return self.vanishing_ok and self.orders_ok and self.map_ok

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "ring": {"p": self.ring.p, "degrees": list(self.ring.degrees)},
            "window": list(self.window),
            "clauses": [
                {"name": "vanishing_off_top", "pass": self.vanishing_ok},
                {"name": "degreewise_orders", "pass": self.orders_ok},
                {"name": "duality_map_iso", "pass": self.map_ok},
            ],
            "pass": self.ok,
            "failures": list(self.failures),
        }


def verify_duality(M: GradedModulePresentation, s_max: Optional[int] = None,
                   t_max: Optional[int] = None,
                   probe_bound: int = 64) -> DualityReport:
    """Mechanical check of the top-concentration duality for a finite module."""
    ring = M.ring
    n = ring.n
    D = ring.D
    verdict = check_local_finiteness(M, probe_bound)
    if verdict != "finite":
        raise NotLocallyFinite("module is %s, not finite" % verdict)
    s_max = s_max if s_max is not None else n + 2
    lo_w, hi_w = default_t_window(M)
    t_max = t_max if t_max is not None else hi_w
    lo, hi = content_range(M)
    N, b = annihilator_data(M)
    Db = sum(bi * di for bi, di in zip(b, ring.degrees))
    step = max(ring.degrees, default=0)
    res = resolution_for_ext(M, s_max, max(t_max, hi + Db + step))
    table = ext_table(M, s_max, t_max=t_max, t_min=lo_w, res=res)

    failures: List[str] = []
    vanishing_ok = True
    for (s, t), (exps, free) in table.entries.items():
        if s != n + 1 and (exps or free):
            vanishing_ok = False
            failures.append("Ext^{%d,%d} nonzero: %r free %d"
                            % (s, t, exps, free))

    orders_ok = True
    for t in range(lo_w, t_max + 1):
        want = M.group_at(t - D).exponents if lo <= t - D <= hi else ()
        want_order = ring.p ** sum(want)
        got_exps, got_free = table.entries.get((n + 1, t), ((), 0))
        if got_free:
            orders_ok = False
            failures.append("Ext^{%d,%d} infinite" % (n + 1, t))
            continue
        if ring.p ** sum(got_exps) != want_order:
            orders_ok = False
            failures.append("order mismatch at t=%d: Ext %r vs dual %r"
                            % (t, got_exps, want))

    dmap = duality_map(M, res=res)
    if not dmap.ok:
        failures.extend(dmap.failures)

    return DualityReport(ring=ring, vanishing_ok=vanishing_ok,
                         orders_ok=orders_ok, map_ok=dmap.ok,
                         window=(s_max, lo_w, t_max),
                         failures=tuple(failures))


# ---------------------------------------------------------------------------
# locally finite families and truncation


@dataclass(frozen=True)
class LocallyFiniteFamily:
    """Indexed finite summands with degree offsets; content stays locally finite."""

    summands: tuple      # of (offset, GradedModulePresentation)

    def ring(self) -> GradedRing:
        return self.summands[0][1].ring

    def summand_ranges(self) -> list:
        out = []
        for off, M in self.summands:
            lo, hi = content_range(M)
            out.append((lo + off, hi + off))
        return out


def truncate_above(M: GradedModulePresentation, k: int) -> GradedModulePresentation:
    """Quotient of M by the submodule of elements in degrees > k."""
    ring = M.ring
    step = max(ring.degrees, default=0)
    limit = max(k + step, M.max_gen_degree())
    cols = [[M.relations.matrix[i][j] for i in range(M.generators.rank)]
            for j in range(M.relations.source.rank)]
    for d in range(k + 1, limit + 1):
        for (exps, j) in M.generators.degree_slice(d, ring):
            col = [Poly.zero()] * M.generators.rank
            col[j] = Poly.monomial(exps)
            cols.append(col)
    return presentation(ring, M.generators.gen_degrees, cols,
                        labels=M.generators.labels)


def materialize_truncation(F: LocallyFiniteFamily,
                           k: int) -> Optional[GradedModulePresentation]:
    """Q_k: all family content in degrees <= k, as one finite module."""
    parts = []
    for (off, M), (lo, hi) in zip(F.summands, F.summand_ranges()):
        if lo > k:
            continue
        S = suspend(M, off)
        if hi > k:
            S = truncate_above(S, k)
        parts.append(S)
    if not parts:
        return None
    return direct_sum(*parts)


def ext_via_truncation(F: LocallyFiniteFamily, k: int, s_max: int) -> ExtTable:
    """Ext of the family, valid in internal degrees t <= k."""
    ring = F.ring()
    Q = materialize_truncation(F, k)
    if Q is None:
        table = ExtTable(ring=ring, s_max=s_max, t_min=0, t_max=k)
        table.valid_t_bound = k
        return table
    lo_w, _ = default_t_window(Q)
    table = ext_table(Q, s_max, t_max=k, t_min=min(lo_w, 0))
    table.valid_t_bound = k
    return table
