"""Reproducible random inputs for the property suites.

Everything is driven by ``random.Random(seed)``, so a fixed seed produces
identical corpora byte for byte when written out by the CLI.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import cocycle, coeff, hilbert, lattice


def random_vector(rng: random.Random, dim: int, max_num: int = 3,
                  max_den: int = 6, nonzero: bool = True):
    while True:
        v = tuple(Fraction(rng.randint(-max_num, max_num),
                           rng.randint(1, max_den)) for _ in range(dim))
        if not nonzero or not lattice.is_zero_vector(v):
            return v


def random_pointed_grading(rng: random.Random, dim: int, n: int,
                           max_den: int = 6) -> hilbert.GradedRingSpec:
    """Columns in Q^dim sampled until the configuration is pointed."""
    while True:
        cols = [random_vector(rng, dim, max_num=3, max_den=max_den) for _ in range(n)]
        if lattice.is_pointed(dim, cols).pointed:
            return hilbert.graded_ring_spec(dim, cols)


def random_monomial_ideal(rng: random.Random, n: int, max_gens: int = 6,
                          max_exp: int = 3) -> hilbert.MonomialIdeal:
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        g = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(g):
            gens.append(g)
    return hilbert.monomial_ideal(gens)


def random_bilinear(rng: random.Random, fld: coeff.Field, n: int,
                    max_entry: int = 3) -> cocycle.Bilinear:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(-max_entry, max_entry)
    if isinstance(fld, coeff.FiniteField):
        lam = fld.el(rng.randint(2, fld.q - 1)) if fld.q > 2 else fld.one()
    else:
        while True:
            lam = fld.el(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            if not lam.is_zero():
                break
    basis = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return cocycle.Bilinear(a, lam, basis)


def hilbert_corpus(seed: int, count: int, max_vars: int = 4, dim: int = 2,
                   max_gens: int = 6, max_den: int = 6):
    """(spec, ideal) pairs with pointed gradings into Q^dim."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_vars)
        spec = random_pointed_grading(rng, dim, n, max_den)
        ideal = random_monomial_ideal(rng, n, max_gens)
        out.append((spec, ideal))
    return out


def bilinear_corpus(seed: int, count: int, fields, max_rank: int = 3):
    """Symmetric bilinear rules on Z^n, cycling through the given fields."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        fld = fields[k % len(fields)]
        n = 1 + k % max_rank
        out.append(random_bilinear(rng, fld, n))
    return out
