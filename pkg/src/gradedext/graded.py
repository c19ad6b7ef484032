"""The graded ring R = Z_(p)[x_1..x_n] and graded free module machinery.

Conventions (fixed once, used everywhere):
  * maps between graded free modules preserve internal degree;
  * the dual of a generator of internal degree d again has degree d, and
    the ring action on a dual module *lowers* degree by |x_i| (variance -1);
  * slice bases are ordered by (generator index, lex exponent vector), so
    every matrix the engine produces is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .plocal import PLocalMatrix, is_p_regular, snf, kernel_basis

Exponents = Tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GradedRing:
    """Z_(p)[x_1..x_n] with |x_i| = degrees[i]; D is the total degree sum."""

    p: int
    degrees: tuple

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("p must be prime, got %r" % (self.p,))
        if any(d < 1 for d in self.degrees):
            raise ValueError("generator degrees must be positive")
        object.__setattr__(self, "degrees", tuple(self.degrees))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def D(self) -> int:
        return sum(self.degrees)

    def var_name(self, i: int) -> str:
        return "x%d" % (i + 1)

    def monomial_degree(self, exps: Exponents) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def monomials_of_degree(self, t: int) -> List[Exponents]:
        """All exponent vectors with total weighted degree t, lex-sorted."""
        if t < 0:
            return []
        out: List[Exponents] = []

        def rec(i: int, rem: int, acc: tuple):
            if i == len(self.degrees):
                if rem == 0:
                    out.append(acc)
                return
            d = self.degrees[i]
            for e in range(rem // d + 1):
                rec(i + 1, rem - e * d, acc + (e,))

        rec(0, t, ())
        out.sort()
        return out


def make_ring(p: int, degrees: Sequence[int]) -> GradedRing:
    return GradedRing(p=p, degrees=tuple(degrees))


def bp_ring(p: int, n: int) -> GradedRing:
    """Z_(p)[v_1..v_n] with the standard degrees |v_i| = 2(p^i - 1)."""
    return make_ring(p, [2 * (p ** i - 1) for i in range(1, n + 1)])


def ring_to_dict(ring: GradedRing) -> dict:
    return {"p": ring.p, "degrees": list(ring.degrees)}


def ring_from_dict(doc: dict) -> GradedRing:
    return make_ring(int(doc["p"]), [int(d) for d in doc["degrees"]])


def load_ring(path: str) -> GradedRing:
    with open(path) as fh:
        return ring_from_dict(json.load(fh))


class Poly:
    """Element of R: finite map from exponent vectors to Z_(p) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Exponents, Fraction]] = None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "Poly":
        return cls({})

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: Fraction(c)})

    @classmethod
    def monomial(cls, exps: Exponents, c=1) -> "Poly":
        return cls({tuple(exps): Fraction(c)})

    @classmethod
    def variable(cls, i: int, nvars: int, power: int = 1, c=1) -> "Poly":
        exps = [0] * nvars
        exps[i] = power
        return cls({tuple(exps): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly({e: c * x for e, x in self.terms.items()})

    def homogeneous_degree(self, ring: GradedRing) -> Optional[int]:
        """Degree if homogeneous (0 polynomial returns None); raises otherwise."""
        if not self.terms:
            return None
        degs = {ring.monomial_degree(e) for e in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous: %r" % (self.terms,))
        return degs.pop()

    def check_p_regular(self, p: int) -> None:
        for c in self.terms.values():
            if not is_p_regular(c, p):
                raise ValueError("coefficient %s not in Z_(%d)" % (c, p))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join("x%d^%d" % (i + 1, k) for i, k in enumerate(e) if k)
            bits.append(("%s" % c) + ("*" + mono if mono else ""))
        return " + ".join(bits)


@dataclass(frozen=True)
class GradedFreeModule:
    """Finitely generated graded free R-module.

    ``variance`` +1 for ordinary modules (x_i raises degree), -1 for duals
    (x_i lowers degree).  Generator labels are cosmetic.
    """

    gen_degrees: tuple
    labels: tuple = ()
    variance: int = 1

    def __post_init__(self):
        object.__setattr__(self, "gen_degrees", tuple(self.gen_degrees))
        if not self.labels:
            object.__setattr__(
                self, "labels",
                tuple("g%d" % i for i in range(len(self.gen_degrees))))
        if len(self.labels) != len(self.gen_degrees):
            raise ValueError("label/degree length mismatch")
        if self.variance not in (1, -1):
            raise ValueError("variance must be +-1")

    @property
    def rank(self) -> int:
        return len(self.gen_degrees)

    def degree_slice(self, t: int, ring: GradedRing) -> List[Tuple[Exponents, int]]:
        """Ordered basis of the degree-t piece: (monomial exponents, gen index).

        deg(x^a . g) = deg(g) + variance * |x^a|.
        """
        basis = []
        for k, d in enumerate(self.gen_degrees):
            need = self.variance * (t - d)
            for exps in ring.monomials_of_degree(need):
                basis.append((exps, k))
        basis.sort(key=lambda b: (b[1], b[0]))
        return basis

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(
            gen_degrees=self.gen_degrees,
            labels=tuple(lbl + "*" for lbl in self.labels),
            variance=-self.variance,
        )


def degree_slice(module: GradedFreeModule, t: int, ring: GradedRing):
    return module.degree_slice(t, ring)


@dataclass(frozen=True)
class GradedMap:
    """Degree-preserving map of graded free modules.

    ``matrix[i][j]`` is the Poly coefficient of target generator i in the
    image of source generator j.
    """

    source: GradedFreeModule
    target: GradedFreeModule
    matrix: tuple  # tuple of tuples of Poly, target.rank x source.rank

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or any(len(r) != self.source.rank for r in m):
            raise ValueError("matrix shape mismatch")

    @classmethod
    def zero(cls, source: GradedFreeModule, target: GradedFreeModule) -> "GradedMap":
        z = Poly.zero()
        return cls(source, target,
                   tuple(tuple(z for _ in range(source.rank))
                         for _ in range(target.rank)))

    def check_homogeneous(self, ring: GradedRing) -> None:
        for i in range(self.target.rank):
            for j in range(self.source.rank):
                e = self.matrix[i][j]
                if e.is_zero():
                    continue
                e.check_p_regular(ring.p)
                deg = e.homogeneous_degree(ring)
                want = self.source.variance * (
                    self.source.gen_degrees[j] - self.target.gen_degrees[i])
                if self.source.variance != self.target.variance:
                    raise ValueError("mixed-variance map")
                if deg != want or deg < 0:
                    raise ValueError(
                        "entry (%d,%d) has degree %s, expected %s >= 0"
                        % (i, j, deg, want))

    def compose(self, first: "GradedMap") -> "GradedMap":
        """self o first (apply ``first``, then ``self``)."""
        if first.target is not self.source and first.target != self.source:
            raise ValueError("composition mismatch")
        rows, mid, cols = self.target.rank, self.source.rank, first.source.rank
        out = []
        for i in range(rows):
            row = []
            for j in range(cols):
                acc = Poly.zero()
                for k in range(mid):
                    a = self.matrix[i][k]
                    b = first.matrix[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return GradedMap(first.source, self.target, tuple(out))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.matrix for e in row)

    def transpose_dual(self) -> "GradedMap":
        """Hom(-, R): map between the dual modules, matrix transposed."""
        src = self.target.dual()
        tgt = self.source.dual()
        m = tuple(tuple(self.matrix[i][j] for i in range(self.target.rank))
                  for j in range(self.source.rank))
        return GradedMap(src, tgt, m)

    def slice_matrix(self, t: int, ring: GradedRing) -> PLocalMatrix:
        return slice_map(self, t, ring)


def _slice_index(basis) -> dict:
    return {b: i for i, b in enumerate(basis)}


def slice_map(f: GradedMap, t: int, ring: GradedRing) -> PLocalMatrix:
    """Matrix of f on the degree-t slices, in the degree_slice bases."""
    src_basis = f.source.degree_slice(t, ring)
    tgt_basis = f.target.degree_slice(t, ring)
    tgt_index = _slice_index(tgt_basis)
    out = [[Fraction(0)] * len(src_basis) for _ in range(len(tgt_basis))]
    for col, (a, j) in enumerate(src_basis):
        for i in range(f.target.rank):
            e = f.matrix[i][j]
            for b, c in e.terms.items():
                mono = tuple(x + y for x, y in zip(a, b))
                row = tgt_index.get((mono, i))
                if row is None:
                    # degree bookkeeping guarantees membership for homogeneous f
                    raise ValueError("slice basis missing %r" % ((mono, i),))
                out[row][col] += c
    return PLocalMatrix(out, cols=len(src_basis))


def multiplication_slice(module: GradedFreeModule, i: int, t: int,
                         ring: GradedRing) -> PLocalMatrix:
    """Matrix of x_i: slice at t -> slice at t + variance*|x_i|."""
    t2 = t + module.variance * ring.degrees[i]
    src_basis = module.degree_slice(t, ring)
    tgt_basis = module.degree_slice(t2, ring)
    tgt_index = _slice_index(tgt_basis)
    out = [[Fraction(0)] * len(src_basis) for _ in range(len(tgt_basis))]
    for col, (a, k) in enumerate(src_basis):
        mono = tuple(x + (1 if idx == i else 0) for idx, x in enumerate(a))
        row = tgt_index[(mono, k)]
        out[row][col] = Fraction(1)
    return PLocalMatrix(out, cols=len(src_basis))


def monomial_multiplication_slice(module: GradedFreeModule, exps: Exponents,
                                  t: int, ring: GradedRing) -> PLocalMatrix:
    """Matrix of x^exps on the degree-t slice."""
    shift = module.variance * ring.monomial_degree(exps)
    t2 = t + shift
    src_basis = module.degree_slice(t, ring)
    tgt_basis = module.degree_slice(t2, ring)
    tgt_index = _slice_index(tgt_basis)
    out = [[Fraction(0)] * len(src_basis) for _ in range(len(tgt_basis))]
    for col, (a, k) in enumerate(src_basis):
        mono = tuple(x + y for x, y in zip(a, exps))
        out[tgt_index[(mono, k)]][col] = Fraction(1)
    return PLocalMatrix(out, cols=len(src_basis))


@dataclass(frozen=True)
class ChainComplex:
    """Finite complex of graded free modules.

    ``cochain=False``: differentials[s] maps modules[s] -> modules[s-1]
    (defined for s = 1..len-1).  ``cochain=True``: differentials[s] maps
    modules[s] -> modules[s+1] (defined for s = 0..len-2).
    """

    ring: GradedRing
    modules: tuple
    differentials: tuple
    cochain: bool = False

    def __post_init__(self):
        object.__setattr__(self, "modules", tuple(self.modules))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        want = max(len(self.modules) - 1, 0)
        if len(self.differentials) != want:
            raise ValueError("expected %d differentials" % want)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def module(self, s: int) -> GradedFreeModule:
        if 0 <= s < len(self.modules):
            return self.modules[s]
        return GradedFreeModule(())

    def diff_out(self, s: int) -> Optional[GradedMap]:
        """Differential leaving homological index s (or None)."""
        if self.cochain:
            return self.differentials[s] if 0 <= s < len(self.differentials) else None
        return self.differentials[s - 1] if 1 <= s <= len(self.differentials) else None

    def diff_in(self, s: int) -> Optional[GradedMap]:
        """Differential arriving at homological index s (or None)."""
        if self.cochain:
            return self.differentials[s - 1] if 1 <= s <= len(self.differentials) else None
        return self.differentials[s] if 0 <= s < len(self.differentials) else None

    def check(self) -> None:
        """Homogeneity of every differential and d∘d = 0, symbolically."""
        for d in self.differentials:
            d.check_homogeneous(self.ring)
        for s in range(len(self.differentials) - 1):
            a, b = self.differentials[s], self.differentials[s + 1]
            comp = a.compose(b) if not self.cochain else b.compose(a)
            if not comp.is_zero():
                raise ValueError("d o d != 0 at step %d" % s)


def dual_complex(C: ChainComplex) -> ChainComplex:
    """Hom_R(C, R) as a cochain complex indexed by the same s."""
    if C.cochain:
        raise ValueError("dual of a cochain complex not needed")
    mods = tuple(m.dual() for m in C.modules)
    diffs = tuple(d.transpose_dual() for d in C.differentials)
    # diffs[s] now maps dual(C_s) -> dual(C_{s+1}); reattach the dual modules
    fixed = []
    for s, d in enumerate(diffs):
        fixed.append(GradedMap(mods[s], mods[s + 1], d.matrix))
    return ChainComplex(ring=C.ring, modules=mods, differentials=tuple(fixed),
                        cochain=True)


def tensor_complexes(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """A (x) B with the Koszul sign (-1)^i on d(a_i (x) b)."""
    if A.cochain or B.cochain:
        raise ValueError("tensor of cochain complexes unsupported")
    ring = A.ring
    la, lb = A.length, B.length
    # generator bookkeeping: stage s holds pairs (i, ga, gb) with i+j=s
    stage_gens: List[List[Tuple[int, int, int]]] = []
    stage_mods: List[GradedFreeModule] = []
    for s in range(la + lb + 1):
        gens = []
        for i in range(max(0, s - lb), min(la, s) + 1):
            j = s - i
            ma, mb = A.module(i), B.module(j)
            for ka in range(ma.rank):
                for kb in range(mb.rank):
                    gens.append((i, ka, kb))
        degs = []
        labels = []
        for (i, ka, kb) in gens:
            degs.append(A.module(i).gen_degrees[ka] + B.module(s - i).gen_degrees[kb])
            labels.append("%s(x)%s" % (A.module(i).labels[ka],
                                       B.module(s - i).labels[kb]))
        stage_gens.append(gens)
        stage_mods.append(GradedFreeModule(tuple(degs), tuple(labels)))
    diffs = []
    for s in range(1, la + lb + 1):
        src_gens = stage_gens[s]
        tgt_gens = stage_gens[s - 1]
        tgt_index = {g: r for r, g in enumerate(tgt_gens)}
        rows = [[Poly.zero() for _ in src_gens] for _ in tgt_gens]
        for col, (i, ka, kb) in enumerate(src_gens):
            j = s - i
            dA = A.diff_out(i)
            if dA is not None:
                for ia in range(A.module(i - 1).rank):
                    e = dA.matrix[ia][ka]
                    if not e.is_zero():
                        r = tgt_index[(i - 1, ia, kb)]
                        rows[r][col] = rows[r][col] + e
            dB = B.diff_out(j)
            if dB is not None:
                sign = -1 if i % 2 else 1
                for ib in range(B.module(j - 1).rank):
                    e = dB.matrix[ib][kb]
                    if not e.is_zero():
                        r = tgt_index[(i, ka, ib)]
                        rows[r][col] = rows[r][col] + e.scale(sign)
        diffs.append(GradedMap(stage_mods[s], stage_mods[s - 1],
                               tuple(tuple(r) for r in rows)))
    return ChainComplex(ring=ring, modules=tuple(stage_mods),
                        differentials=tuple(diffs))


def homology_at(C: ChainComplex, s: int, t: int,
                ring: Optional[GradedRing] = None):
    """Invariant factors of H_s(C) in internal degree t.

    Returns (exponents, free_rank): exponents k >= 1 for Z/p^k summands.
    """
    ring = ring or C.ring
    from .abgroup import cokernel

    ambient = C.module(s).degree_slice(t, ring)
    m = len(ambient)
    d_out = C.diff_out(s)
    if d_out is not None and C.module(s + (1 if C.cochain else -1)).rank > 0:
        Z = slice_map(d_out, t, ring)
        if Z.rows == 0:
            kb = PLocalMatrix.identity(m)
        else:
            kb = kernel_basis(Z, ring.p)
    else:
        kb = PLocalMatrix.identity(m)
    d_in = C.diff_in(s)
    if d_in is None:
        rel = PLocalMatrix.zero(kb.cols, 0)
    else:
        Bm = slice_map(d_in, t, ring)
        from .plocal import solve_preimage
        rel_cols = []
        for j in range(Bm.cols):
            col = Bm.column(j)
            x = solve_preimage(kb, col, ring.p) if kb.cols else None
            if kb.cols == 0:
                if any(c != 0 for c in col):
                    raise ValueError("boundary not a cycle")
                continue
            if x is None:
                raise ValueError("boundary outside cycle lattice")
            rel_cols.append(x)
        rel = PLocalMatrix.from_columns(rel_cols, rows=kb.cols)
    grp = cokernel(rel, kb.cols, ring.p)
    return tuple(sorted(grp.exponents)), grp.free_rank
