"""The direct-limit graded field built from level Laurent rings.

Level i is a Laurent polynomial ring in t[1,i] .. t[d,i] over the rational
function field in fresh variables a[j,i'] for i' <= i, graded by
deg t[j,i] = e_j / (p_1 ... p_i) for a schedule of primes p_i.  The
transition map sends t[j,i] to a[j,i+1]^-1 * t[j,i+1]^(p_{i+1}); that
exponent, not p_i, is the unique degree-preserving choice, and the other
reading is available behind the ``exponent_convention`` flag for comparison
(it fails degree checks).  The induced limit cocycle on Q^d is a closed-form
Laurent monomial in the a-variables with unit coefficient 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from . import coeff, cocycle
from .coeff import FieldElement, FunctionField, LaurentMonomial
from .lattice import SubgroupBasis, Vector, vadd

GRADING = "grading"
PAPER_STYLE = "paper"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _nth_prime(k: int) -> int:
    count = 0
    n = 1
    while count < k:
        n += 1
        if _is_prime(n):
            count += 1
    return n


class PrimeSchedule:
    """Either the anti-diagonal enumeration hitting every prime infinitely
    often, or the constant sequence p, p, p, ... for prime characteristic."""

    def __init__(self, mode: str = "diagonal", p: Optional[int] = None):
        if mode == "constant":
            if p is None or not _is_prime(p):
                raise ValueError("constant schedules need a prime")
        elif mode != "diagonal":
            raise ValueError(f"unknown schedule mode {mode!r}")
        self.mode = mode
        self.p = p
        self._cache: list[int] = []
        self._products: list[int] = [1]  # products[i] = p_1 ... p_i
        self._lock = threading.Lock()

    def _extend(self, n: int):
        with self._lock:
            if self.mode == "constant":
                while len(self._cache) < n:
                    self._cache.append(self.p)
                    self._products.append(self._products[-1] * self.p)
                return
            # anti-diagonal d contributes the primes #d, #(d-1), ..., #1
            while len(self._cache) < n:
                k = len(self._cache) + 1
                d = 1
                acc = 0
                while acc + d < k:
                    acc += d
                    d += 1
                pos = k - acc  # 1-based position inside diagonal d
                self._cache.append(_nth_prime(d - pos + 1))
                self._products.append(self._products[-1] * self._cache[-1])

    def prime(self, i: int) -> int:
        """p_i, 1-indexed."""
        if i < 1:
            raise ValueError("schedule index starts at 1")
        if i > len(self._cache):
            self._extend(i)
        return self._cache[i - 1]

    def product(self, i: int) -> int:
        """N_i = p_1 ... p_i (N_0 = 1)."""
        if i < 0:
            raise ValueError("negative level")
        if i > len(self._cache):
            self._extend(i)
        return self._products[i]

    def level_of(self, g: Vector) -> int:
        """Minimal i >= 1 with N_i * g integral; constant mode rejects
        denominators that are not powers of its prime."""
        den = lcm(*(x.denominator for x in g)) if g else 1
        if self.mode == "constant":
            rem = den
            i = 0
            while rem > 1:
                if rem % self.p:
                    raise ValueError("degree not admissible for the constant schedule")
                rem //= self.p
                i += 1
            return max(1, i)
        i = 1
        while self.product(i) % den:
            i += 1
        return i

    def admissible(self, g: Vector) -> bool:
        try:
            self.level_of(g)
            return True
        except ValueError:
            return False

    def spec(self):
        return "diagonal" if self.mode == "diagonal" else {"constant": self.p}

    def __eq__(self, other):
        return (isinstance(other, PrimeSchedule) and other.mode == self.mode
                and other.p == self.p)

    def __hash__(self):
        return hash((self.mode, self.p))


def prime_seq(schedule: PrimeSchedule, n: int) -> list[int]:
    if n < 1:
        raise ValueError("need at least one term")
    return [schedule.prime(i) for i in range(1, n + 1)]


def alpha_name(j: int, i: int) -> str:
    return f"a[{j},{i}]"


def t_name(j: int, i: int) -> str:
    return f"t[{j},{i}]"


def coefficient_field(base: coeff.Field) -> FunctionField:
    """The open function field adjoining every a[j,i]."""
    return coeff.function_field(base, None)


@dataclass(frozen=True)
class CanonicalBasis:
    """The homogeneous basis monomial in degree g: the pure t-monomial at
    the minimal admissible level, with coefficient 1."""
    g: Vector
    level: int
    exponents: tuple[int, ...]


def level_of(g: Vector, schedule: PrimeSchedule) -> int:
    return schedule.level_of(g)


def canonical_basis(g: Vector, schedule: PrimeSchedule) -> CanonicalBasis:
    i = schedule.level_of(g)
    n = schedule.product(i)
    return CanonicalBasis(g, i, tuple(int(x * n) for x in g))


@dataclass
class LevelElement:
    """A Laurent polynomial of one level: t-exponent vectors mapping to
    coefficients in the a-variable function field."""
    level: int
    d: int
    terms: dict[tuple[int, ...], FieldElement]

    def __mul__(self, other: "LevelElement") -> "LevelElement":
        if other.level != self.level or other.d != self.d:
            raise ValueError("level mismatch")
        out: dict[tuple[int, ...], FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    c = out[e] + c
                    if c.is_zero():
                        del out[e]
                        continue
                out[e] = c
        return LevelElement(self.level, self.d, out)

    def __add__(self, other: "LevelElement") -> "LevelElement":
        if other.level != self.level or other.d != self.d:
            raise ValueError("level mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return LevelElement(self.level, self.d, out)

    def __eq__(self, other):
        return (isinstance(other, LevelElement) and other.level == self.level
                and other.d == self.d and other.terms == self.terms)

    def scale(self, c: FieldElement) -> "LevelElement":
        return LevelElement(self.level, self.d,
                            {e: c * v for e, v in self.terms.items()})


def basis_level_element(g: Vector, schedule: PrimeSchedule,
                        field: FunctionField) -> LevelElement:
    cb = canonical_basis(g, schedule)
    return LevelElement(cb.level, len(g), {cb.exponents: field.one()})


def phi_lift(a: LevelElement, schedule: PrimeSchedule, field: FunctionField,
             exponent_convention: str = GRADING) -> LevelElement:
    """The transition map into the next level.

    GRADING uses t[j,i] -> a[j,i+1]^-1 t[j,i+1]^(p_{i+1}) (degree
    preserving); PAPER_STYLE uses the exponent p_i instead and exists only
    so its degree failure can be demonstrated.
    """
    i = a.level
    p = schedule.prime(i + 1) if exponent_convention == GRADING else schedule.prime(i)
    out: dict[tuple[int, ...], FieldElement] = {}
    for exps, c in a.terms.items():
        mono = LaurentMonomial.make(field.base.one(),
                                    {alpha_name(j + 1, i + 1): -exps[j]
                                     for j in range(a.d) if exps[j]})
        factor = coeff.embed_monomial(mono, field)
        e = tuple(x * p for x in exps)
        v = c * factor
        if e in out:
            v = out[e] + v
            if v.is_zero():
                del out[e]
                continue
        out[e] = v
    return LevelElement(i + 1, a.d, out)


def lift_to(a: LevelElement, level: int, schedule: PrimeSchedule,
            field: FunctionField,
            exponent_convention: str = GRADING) -> LevelElement:
    out = a
    while out.level < level:
        out = phi_lift(out, schedule, field, exponent_convention)
    return out


def element_degree(a: LevelElement, schedule: PrimeSchedule) -> Optional[Vector]:
    """The common degree of the terms, or None if inhomogeneous/zero."""
    n = schedule.product(a.level)
    degs = {tuple(Fraction(e, n) for e in exps) for exps in a.terms}
    if len(degs) != 1:
        return None
    return degs.pop()


class LimitCocycle(cocycle.Cocycle):
    """The closed-form cocycle of the direct limit.

    c(g, h) compares the canonical basis monomials after lifting everything
    to the common level: the t-parts cancel by degree bookkeeping, and the
    a-variable exponents picked up along the lifts remain.
    """

    def __init__(self, d: int, schedule: PrimeSchedule, base: coeff.Field):
        ch = base.characteristic()
        if schedule.mode == "diagonal" and ch != 0:
            raise ValueError("the diagonal schedule needs characteristic 0")
        if schedule.mode == "constant" and ch != schedule.p:
            raise ValueError("a constant schedule needs matching characteristic")
        self.d = d
        self.schedule = schedule
        self.base = base
        self.field = coefficient_field(base)
        self.dim = d
        self.domain = None

    def contains(self, g: Vector) -> bool:
        return len(g) == self.d and self.schedule.admissible(g)

    def at(self, g: Vector, h: Vector) -> FieldElement:
        sch = self.schedule
        s = vadd(g, h)
        ig, ih, isum = sch.level_of(g), sch.level_of(h), sch.level_of(s)
        top = max(ig, ih)
        exps: dict[str, int] = {}
        for vec, lvl, sign in ((g, ig, -1), (h, ih, -1), (s, isum, 1)):
            for i in range(lvl + 1, top + 1):
                n_prev = sch.product(i - 1)
                for j in range(self.d):
                    e = sign * int(vec[j] * n_prev)
                    if e:
                        name = alpha_name(j + 1, i)
                        exps[name] = exps.get(name, 0) + e
        exps = {k: v for k, v in exps.items() if v}
        mono = LaurentMonomial.make(self.base.one(), exps)
        return coeff.embed_monomial(mono, self.field)


def limit_cocycle(d: int, schedule: PrimeSchedule,
                  base: Optional[coeff.Field] = None) -> LimitCocycle:
    """The induced cocycle on Q^d (diagonal) or Z[1/p]^d (constant)."""
    if base is None:
        base = coeff.QQ if schedule.mode == "diagonal" else coeff.finite_field(schedule.p)
    return LimitCocycle(d, schedule, base)


def restrict_to_subgroup(c: LimitCocycle, sub: SubgroupBasis) -> cocycle.Cocycle:
    return cocycle.restrict(c, sub)


def verify_level_irreducible(i: int, j: int, schedule: PrimeSchedule,
                             base: Optional[coeff.Field] = None) -> cocycle.CheckReport:
    """The degree-counting step: a[j,i+1] * t[j,i] is not a p-th power in the
    Laurent-monomial group, because the a-exponent 1 is not divisible by the
    step prime.  Passing means the level extension polynomial has no root."""
    if i < 1 or j < 1:
        raise ValueError("levels and coordinates are 1-indexed")
    if base is None:
        base = coeff.QQ if schedule.mode == "diagonal" else coeff.finite_field(schedule.p)
    p = schedule.prime(i + 1)
    mono = LaurentMonomial.make(base.one(), {alpha_name(j, i + 1): 1, t_name(j, i): 1})
    root = coeff.monomial_nth_root(mono, p)
    failures = [] if root is None else [(i, j, p, root)]
    return cocycle.CheckReport(trials=1, failures=failures)
