"""Multigraded Hilbert functions and summable Hilbert series for monomial
quotients of polynomial rings graded by Q^d.

Degrees are exact rational vectors and are never cleared to a common
denominator: series live in Z[[Q^d]] keyed by rational exponents.  The
summability certificate multiplies a truncated expansion back by the
denominator factors and compares against the inclusion-exclusion numerator
inside the window, dropping the boundary shell the convolution corrupts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import lattice
from .cocycle import CheckReport
from .lattice import (SubgroupBasis, Vector, is_pointed, is_zero_vector, member,
                      vadd, vdot, vneg, vscale, vsub, zero_vector)

Exponent = tuple[int, ...]
LaurentZ = dict  # Vector -> int coefficient


@dataclass(frozen=True)
class GradedRingSpec:
    """Columns a_i = deg x_i of a Q^d-grading of k[x_1..x_n]."""
    dim: int
    columns: tuple[Vector, ...]

    def __post_init__(self):
        for col in self.columns:
            if len(col) != self.dim:
                raise ValueError("column dimension mismatch")

    @property
    def n(self) -> int:
        return len(self.columns)

    def degree(self, u: Exponent) -> Vector:
        v = zero_vector(self.dim)
        for e, col in zip(u, self.columns):
            if e:
                v = vadd(v, vscale(e, col))
        return v


def graded_ring_spec(dim: int, columns: Sequence[Vector],
                     allow_zero_columns: bool = False) -> GradedRingSpec:
    cols = tuple(columns)
    if not allow_zero_columns and any(is_zero_vector(c) for c in cols):
        raise ValueError("zero-degree variables break truncation; "
                         "pass allow_zero_columns=True to force them")
    return GradedRingSpec(dim, cols)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Exponent, ...]

    @property
    def n(self) -> int:
        return len(self.generators[0]) if self.generators else 0


def monomial_ideal(generators: Sequence[Sequence[int]], n: Optional[int] = None
                   ) -> MonomialIdeal:
    """Minimalize: drop generators divisible by another; sort canonically."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if any(any(x < 0 for x in g) for g in gens):
        raise ValueError("exponents must be nonnegative")
    gens = [g for g in gens if any(g)]
    minimal = []
    for g in sorted(gens, key=lambda g: (sum(g), g)):
        if not any(_divides(m, g) for m in minimal):
            minimal.append(g)
    return MonomialIdeal(tuple(sorted(minimal)))


def is_standard(u: Exponent, ideal: MonomialIdeal) -> bool:
    return not any(_divides(g, u) for g in ideal.generators)


# ---------------------------------------------------------------------------
# modestness

@dataclass(frozen=True)
class ModestResult:
    status: str  # "modest" | "not_modest" | "undetermined"
    witness: Optional[Exponent] = None


def _strict_kernel_on(spec: GradedRingSpec, support: tuple[int, ...]
                      ) -> Optional[Exponent]:
    """Integer u >= 1 on the support, 0 elsewhere, with sum u_i a_i = 0."""
    cols = [spec.columns[i] for i in support]
    rows = [[cols[j][t] for j in range(len(cols))] for t in range(spec.dim)]
    rhs = [-sum((c[t] for c in cols), Fraction(0)) for t in range(spec.dim)]
    sol = lattice.feasible_nonneg(rows, rhs)
    if sol is None:
        return None
    from math import lcm
    den = lcm(*(x.denominator for x in sol)) if sol else 1
    u = [0] * spec.n
    for k, i in enumerate(support):
        u[i] = den + int(sol[k] * den)
    return tuple(u)


def modest_check(spec: GradedRingSpec, ideal: MonomialIdeal,
                 search_bound: int = 8) -> ModestResult:
    """Decide (when possible) whether every graded piece of R/I is finite.

    The route is support-wise: a nonzero standard monomial of degree zero
    must have a support S carrying a strictly positive rational kernel
    vector; if every generator inside S has all exponents <= 1 such a
    monomial is always divisible, killing S.  A surviving S with no
    generator inside it yields a witness whose powers are all standard.
    Supports in between trigger a bounded search and may end undetermined.
    """
    for i, col in enumerate(spec.columns):
        if is_zero_vector(col):
            e_i = tuple(int(t == i) for t in range(spec.n))
            if not any(all(g[t] == 0 for t in range(spec.n) if t != i)
                       for g in ideal.generators):
                return ModestResult("not_modest", witness=e_i)
    if is_pointed(spec.dim, spec.columns).pointed \
            and not any(is_zero_vector(c) for c in spec.columns):
        return ModestResult("modest")
    ambiguous = []
    for size in range(1, spec.n + 1):
        for support in itertools.combinations(range(spec.n), size):
            u = _strict_kernel_on(spec, support)
            if u is None:
                continue
            inside = [g for g in ideal.generators
                      if all(g[i] == 0 for i in range(spec.n) if i not in support)]
            if any(max(g) <= 1 for g in inside):
                continue  # every monomial with this full support is non-standard
            if not inside:
                return ModestResult("not_modest", witness=u)
            ambiguous.append((support, inside))
    if not ambiguous:
        return ModestResult("modest")
    # bounded search for a witness inside the ambiguous supports
    for support, inside in ambiguous:
        for u in _kernel_points(spec, support, search_bound):
            if not is_standard(u, ideal):
                continue
            sup = tuple(i for i, x in enumerate(u) if x)
            if not any(all(g[i] == 0 for i in range(spec.n) if i not in sup)
                       for g in ideal.generators):
                return ModestResult("not_modest", witness=u)
    return ModestResult("undetermined")


def _kernel_points(spec: GradedRingSpec, support, bound):
    """Nonzero integer points of the kernel with support inside the given
    set and total degree at most bound."""
    idx = list(support)
    for total in range(1, bound + 1):
        for combo in _compositions(total, len(idx)):
            u = [0] * spec.n
            for k, i in enumerate(idx):
                u[i] = combo[k]
            if is_zero_vector(spec.degree(tuple(u))):
                yield tuple(u)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# numerator and series

def _poly_add_term(poly: LaurentZ, deg: Vector, coef: int):
    cur = poly.get(deg, 0) + coef
    if cur:
        poly[deg] = cur
    elif deg in poly:
        del poly[deg]


def hilbert_numerator(spec: GradedRingSpec, ideal: MonomialIdeal,
                      method: str = "subsets") -> LaurentZ:
    """K(z) with K = HS * prod(1 - z^{a_i}); exponents are exact rationals."""
    if method == "subsets":
        return _numerator_subsets(spec, ideal)
    if method == "pivot":
        return _numerator_pivot(spec, ideal.generators)
    raise ValueError(f"unknown method {method!r}")


def _numerator_subsets(spec: GradedRingSpec, ideal: MonomialIdeal) -> LaurentZ:
    gens = ideal.generators
    if len(gens) > 20:
        raise ValueError("subset expansion supports at most 20 generators")
    out: LaurentZ = {}
    n = spec.n
    for size in range(len(gens) + 1):
        for subset in itertools.combinations(gens, size):
            lcm_exp = tuple(max((g[i] for g in subset), default=0) for i in range(n))
            _poly_add_term(out, spec.degree(lcm_exp), (-1) ** size)
    return out


def _numerator_pivot(spec: GradedRingSpec, gens: tuple[Exponent, ...]) -> LaurentZ:
    gens = monomial_ideal(gens).generators
    n = spec.n
    mixed = [g for g in gens if sum(1 for x in g if x) > 1]
    if len(mixed) <= 1:
        # pure powers plus at most one mixed generator: expand directly
        out: LaurentZ = {}
        for size in range(len(gens) + 1):
            for subset in itertools.combinations(gens, size):
                lcm_exp = tuple(max((g[i] for g in subset), default=0) for i in range(n))
                _poly_add_term(out, spec.degree(lcm_exp), (-1) ** size)
        return out
    counts = [sum(1 for g in mixed if g[i]) for i in range(n)]
    j = max(range(n), key=lambda i: counts[i])
    pivot = tuple(int(i == j) for i in range(n))
    # short exact sequence at the pivot: K(I) = K(I + p) + z^deg(p) * K(I : p)
    plus = [g for g in gens if g[j] == 0] + [pivot]
    colon = [tuple(x - 1 if i == j and x else x for i, x in enumerate(g))
             for g in gens]
    left = _numerator_pivot(spec, tuple(plus))
    if any(not any(g) for g in colon):
        right: LaurentZ = {}  # the colon is the unit ideal and R/(1) = 0
    else:
        right = _numerator_pivot(spec, monomial_ideal(colon).generators)
    shift = spec.degree(pivot)
    out = dict(left)
    for deg, coef in right.items():
        _poly_add_term(out, vadd(deg, shift), coef)
    return out


@dataclass(frozen=True)
class HilbertSeriesForm:
    """Numerator Laurent polynomial and denominator factor multiset: the
    pair asserts HS(z) * prod_i (1 - z^{v_i}) = numerator."""
    numerator: tuple[tuple[Vector, int], ...]
    denominator_factors: tuple[Vector, ...]

    def numerator_dict(self) -> LaurentZ:
        return {d: c for d, c in self.numerator}


def hilbert_series(spec: GradedRingSpec, ideal: MonomialIdeal) -> HilbertSeriesForm:
    check = modest_check(spec, ideal)
    if check.status == "not_modest":
        raise ValueError(f"module is not modest (witness {check.witness})")
    num = hilbert_numerator(spec, ideal)
    return HilbertSeriesForm(
        numerator=tuple(sorted(num.items())),
        denominator_factors=tuple(col for col in spec.columns
                                  if not is_zero_vector(col)))


def hilbert_function(spec: GradedRingSpec, ideal: MonomialIdeal, t: Vector,
                     bound: Optional[int] = None) -> int:
    """#{standard monomials of degree exactly t}, by pruned enumeration.

    A pointed grading bounds the search through its separating functional;
    otherwise the caller must certify a bound on the total exponent, and
    exceeding it raises.
    """
    if spec.n == 0:
        return int(is_zero_vector(t))
    cert = is_pointed(spec.dim, spec.columns)
    if cert.pointed and not any(is_zero_vector(c) for c in spec.columns):
        h = cert.functional
        weights = [vdot(h, col) for col in spec.columns]
        budget = vdot(h, t)
        count = 0
        u = [0] * spec.n

        def rec(i: int, rem: Vector, room: Fraction):
            nonlocal count
            if i == spec.n:
                if is_zero_vector(rem) and is_standard(tuple(u), ideal):
                    count += 1
                return
            w = weights[i]
            top = int(room / w)
            for e in range(top + 1):
                u[i] = e
                r = vsub(rem, vscale(e, spec.columns[i])) if e else rem
                rec(i + 1, r, room - e * w)
            u[i] = 0

        if budget < 0:
            return 0
        rec(0, t, budget)
        return count
    if bound is None:
        raise ValueError("grading is not pointed; supply an enumeration bound")
    count = 0
    for u in itertools.product(range(bound + 1), repeat=spec.n):
        if sum(u) > bound:
            continue
        if spec.degree(u) == t and is_standard(u, ideal):
            count += 1
    return count


@dataclass(frozen=True)
class TruncatedSeries:
    functional: Vector
    bound: Fraction
    counts: dict  # Vector -> positive int; absent keys are zero

    def value(self, t: Vector) -> int:
        return self.counts.get(t, 0)


def expand_truncated(form: HilbertSeriesForm, h: Vector, bound) -> TruncatedSeries:
    """Geometric expansion of the series below the cut h.t <= bound.

    Requires h to separate every denominator factor (h.v_i >= 1), which the
    pointedness certificate of the grading provides.
    """
    bound = Fraction(bound)
    for v in form.denominator_factors:
        if vdot(h, v) < 1:
            raise ValueError("functional does not separate the denominator factors")
    counts: dict[Vector, int] = {}
    for deg, coef in form.numerator:
        if vdot(h, deg) <= bound:
            counts[deg] = counts.get(deg, 0) + coef
    grid = _reachable_grid(counts.keys(), form.denominator_factors, h, bound)
    ordered = sorted(grid, key=lambda t: (vdot(h, t), t))
    for v in form.denominator_factors:
        new: dict[Vector, int] = {}
        for t in ordered:
            val = counts.get(t, 0) + new.get(vsub(t, v), 0)
            if val:
                new[t] = val
        counts = new
    counts = {t: c for t, c in counts.items() if c}
    return TruncatedSeries(functional=h, bound=bound, counts=counts)


def _reachable_grid(starts, factors, h, bound):
    grid = set(starts)
    frontier = list(starts)
    while frontier:
        t = frontier.pop()
        for v in factors:
            s = vadd(t, v)
            if s not in grid and vdot(h, s) <= bound:
                grid.add(s)
                frontier.append(s)
    return grid


def verify_summable(spec: GradedRingSpec, ideal: MonomialIdeal, h: Vector,
                    bound) -> CheckReport:
    """Desk-scale certificate that HS * prod(1 - z^{v_i}) equals the
    numerator: multiply the truncated expansion back and compare inside the
    window, discarding the shell of width max h.v_i at the boundary."""
    form = hilbert_series(spec, ideal)
    bound = Fraction(bound)
    series = expand_truncated(form, h, bound)
    product: dict[Vector, int] = dict(series.counts)
    for v in form.denominator_factors:
        new: dict[Vector, int] = {}
        for t, c in product.items():
            for deg, sign in ((t, c), (vadd(t, v), -c)):
                cur = new.get(deg, 0) + sign
                if cur:
                    new[deg] = cur
                elif deg in new:
                    del new[deg]
        product = new
    shell = max((vdot(h, v) for v in form.denominator_factors), default=Fraction(0))
    cut = bound - shell
    failures = []
    numerator = form.numerator_dict()
    degrees = {d for d in product if vdot(h, d) <= cut}
    degrees |= {d for d in numerator if vdot(h, d) <= cut}
    for d in degrees:
        if product.get(d, 0) != numerator.get(d, 0):
            failures.append((d, product.get(d, 0), numerator.get(d, 0)))
    return CheckReport(trials=len(degrees), failures=failures)


def units_annihilate(g_unit: Vector, subgroup: SubgroupBasis, bound: int
                     ) -> CheckReport:
    """For a graded field the function is 1 on the whole support subgroup,
    so convolving with (1 - z^{g_unit}) kills every interior degree."""
    if not member(subgroup, g_unit) or is_zero_vector(g_unit):
        raise ValueError("unit degree must be a nonzero element of the subgroup")
    window = set()
    for combo in itertools.product(range(-bound, bound + 1),
                                   repeat=subgroup.rank):
        v = zero_vector(subgroup.ambient_dim)
        for a, b in zip(combo, subgroup.basis):
            if a:
                v = vadd(v, vscale(a, b))
        window.add(v)
    indicator = {t: 1 for t in window}  # HF of a graded field on its support
    failures = []
    trials = 0
    for t in window:
        prev = vsub(t, g_unit)
        if prev not in window:
            continue  # boundary-corrupted degree
        trials += 1
        if indicator.get(t, 0) - indicator.get(prev, 0) != 0:
            failures.append(t)
    return CheckReport(trials=trials, failures=failures)
