"""Seeded random finite graded modules, for randomized verification sweeps."""

from __future__ import annotations

import random
from typing import Optional

from .graded import GradedRing, Poly
from .presentations import GradedModulePresentation, presentation


def random_finite_module(ring: GradedRing, seed: int,
                         max_gens: int = 4, max_degree: int = 12,
                         max_exponent: int = 3,
                         mixing_relations: int = 3) -> GradedModulePresentation:
    """A random finitely generated module that is finite as an abelian group.

    Every generator g_j carries relations p^{a_j} g_j = 0 and
    x_i^{b_{ij}} g_j = 0, which force finiteness; on top of that a few
    random homogeneous mixing relations entangle the generators.
    """
    rng = random.Random(seed)
    p = ring.p
    ngens = rng.randint(1, max_gens)
    gen_degrees = sorted(rng.choice(range(0, max_degree + 1, 2))
                         for _ in range(ngens))
    cols = []
    for j in range(ngens):
        a = rng.randint(1, max_exponent)
        col = [Poly.zero() for _ in range(ngens)]
        col[j] = Poly.constant(p ** a, ring.n)
        cols.append(col)
        for i in range(ring.n):
            b = rng.randint(1, max_exponent)
            col = [Poly.zero() for _ in range(ngens)]
            col[j] = Poly.variable(i, ring.n, power=b)
            cols.append(col)
    step = max(ring.degrees, default=2)
    for _ in range(mixing_relations):
        t = rng.choice(range(min(gen_degrees),
                             max(gen_degrees) + 2 * step + 1, 2))
        col = [Poly.zero() for _ in range(ngens)]
        for j in range(ngens):
            gap = t - gen_degrees[j]
            if gap < 0:
                continue
            monos = ring.monomials_of_degree(gap)
            if not monos:
                continue
            exps = rng.choice(monos)
            c = rng.randint(0, p ** 2)
            if c:
                col[j] = col[j] + Poly.monomial(exps, c)
        cols.append(col)
    return presentation(ring, gen_degrees, cols)


def random_finite_abelian_group(ring: GradedRing, seed: int,
                                max_gens: int = 4, max_degree: int = 12,
                                max_exponent: int = 3) -> GradedModulePresentation:
    """A random finite abelian p-group as a module over an n = 0 ring."""
    if ring.n != 0:
        raise ValueError("expected a ring with no polynomial generators")
    rng = random.Random(seed)
    ngens = rng.randint(1, max_gens)
    gen_degrees = sorted(rng.randint(0, max_degree) for _ in range(ngens))
    cols = []
    for j in range(ngens):
        a = rng.randint(1, max_exponent)
        col = [Poly.zero() for _ in range(ngens)]
        col[j] = Poly.constant(ring.p ** a, 0)
        cols.append(col)
    # a couple of same-degree mixing relations
    for _ in range(2):
        t = rng.choice(gen_degrees)
        col = [Poly.zero() for _ in range(ngens)]
        for j in range(ngens):
            if gen_degrees[j] == t:
                c = rng.randint(0, ring.p ** max_exponent)
                if c:
                    col[j] = Poly.constant(c, 0)
        cols.append(col)
    return presentation(ring, gen_degrees, cols)
