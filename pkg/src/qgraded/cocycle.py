"""Symmetric normalized 2-cocycles on subgroups of Q^d with values in k*.

A cocycle is an evaluable rule c(g, h) satisfying, multiplicatively,
c(g,h)c(f,g+h) = c(f+g,h)c(f,g), c(g,h) = c(h,g) and c(0,.) = c(.,0) = 1.
Rules are immutable closures; class operations (sum, scaling, restriction,
root extension, division) build new rules on top of old ones.  Windows
(finite boxes inside a lattice) are the universal finite proxy for the
infinite grading group: every verified claim names its window.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

from . import coeff, lattice
from .coeff import FieldElement, UNSUPPORTED
from .lattice import (SubgroupBasis, Vector, member, solve_rational, subgroup_basis,
                      vadd, vneg, vscale, zero_vector, is_zero_vector)

_WINDOW_CAP = 500_000


class CocycleVerificationError(ValueError):
    """Raised when a claimed trivialization fails on its window."""

    def __init__(self, message, counterexample):
        super().__init__(f"{message}: {counterexample}")
        self.counterexample = counterexample


@dataclass
class CheckReport:
    trials: int
    failures: list

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def ok(self) -> bool:
        return not self.failures


def box_window(basis: Sequence[Vector], bound: int) -> list[Vector]:
    """All integer combinations of the basis with coefficients in [-bound, bound]."""
    n = len(basis)
    if (2 * bound + 1) ** n > _WINDOW_CAP:
        raise ValueError("window too large")
    out = []
    for combo in itertools.product(range(-bound, bound + 1), repeat=n):
        v = zero_vector(len(basis[0]))
        for a, b in zip(combo, basis):
            if a:
                v = vadd(v, vscale(a, b))
        out.append(v)
    return out


def iter_triples(window: Sequence, trials: int, seed: int = 0):
    """All |window|^3 triples when that fits in the budget, else a seeded sample."""
    n = len(window)
    if n ** 3 <= trials:
        yield from itertools.product(window, repeat=3)
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            yield rng.choice(window), rng.choice(window), rng.choice(window)


# ---------------------------------------------------------------------------
# rules

class Cocycle:
    """Base class: an evaluable symmetric normalized 2-cocycle rule."""

    field: coeff.Field
    dim: int
    domain: Optional[SubgroupBasis]  # None means all admissible points

    def at(self, g: Vector, h: Vector) -> FieldElement:
        raise NotImplementedError

    def contains(self, g: Vector) -> bool:
        if self.domain is None:
            return len(g) == self.dim
        return member(self.domain, g)

    def defined_pair(self, g: Vector, h: Vector) -> bool:
        return self.contains(g) and self.contains(h)


def evaluate(c: Cocycle, g: Vector, h: Vector) -> FieldElement:
    """Checked evaluation; arguments outside the domain raise."""
    if not c.defined_pair(g, h):
        raise ValueError("argument outside the cocycle domain")
    return c.at(g, h)


class Trivial(Cocycle):
    def __init__(self, fld: coeff.Field, dim: int, domain: Optional[SubgroupBasis] = None):
        self.field = fld
        self.dim = dim
        self.domain = domain
        self._one = fld.one()

    def at(self, g, h):
        return self._one


class Bilinear(Cocycle):
    """c(g, h) = lam ** (x^T A y) for x, y the coordinates in a fixed lattice
    basis; A symmetric makes the rule a symmetric normalized cocycle."""

    def __init__(self, a: Sequence[Sequence[int]], lam: FieldElement,
                 basis: Sequence[Vector]):
        n = len(basis)
        if len(a) != n or any(len(row) != n for row in a):
            raise ValueError("exponent matrix size must match the basis")
        if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
            raise ValueError("exponent matrix must be symmetric")
        if lam.is_zero():
            raise ValueError("base value must be nonzero")
        self.a = [[int(x) for x in row] for row in a]
        self.lam = lam
        self.lattice_basis = tuple(basis)
        self.field = lam.field
        self.dim = len(basis[0])
        self.domain = subgroup_basis(self.dim, basis)
        self._coords: dict[Vector, tuple[int, ...]] = {}
        self._pows: dict[int, object] = {0: lam.field.p_one()}

    def coords(self, g: Vector) -> tuple[int, ...]:
        got = self._coords.get(g)
        if got is None:
            sol = solve_rational(self.lattice_basis, g)
            if sol is None or any(x.denominator != 1 for x in sol):
                raise ValueError("argument outside the cocycle domain")
            got = tuple(int(x) for x in sol)
            self._coords[g] = got
        return got

    def pow_payload(self, e: int):
        got = self._pows.get(e)
        if got is None:
            got = self.field.p_pow(self.lam.payload, e)
            self._pows[e] = got
        return got

    def exponent(self, g: Vector, h: Vector) -> int:
        x = self.coords(g)
        y = self.coords(h)
        return sum(x[i] * sum(self.a[i][j] * y[j] for j in range(len(y)))
                   for i in range(len(x)))

    def at(self, g, h):
        return FieldElement(self.field, self.pow_payload(self.exponent(g, h)))


class Sum(Cocycle):
    def __init__(self, c1: Cocycle, c2: Cocycle):
        if c1.field != c2.field:
            raise ValueError("coefficient field mismatch")
        if c1.dim != c2.dim or c1.domain != c2.domain:
            raise ValueError("domain mismatch")
        self.c1, self.c2 = c1, c2
        self.field = c1.field
        self.dim = c1.dim
        self.domain = c1.domain

    def at(self, g, h):
        return self.c1.at(g, h) * self.c2.at(g, h)

    def contains(self, g):
        return self.c1.contains(g) and self.c2.contains(g)


class Power(Cocycle):
    def __init__(self, c: Cocycle, r: int):
        if r == 0:
            raise ValueError("scaling exponent must be nonzero")
        self.c = c
        self.r = r
        self.field = c.field
        self.dim = c.dim
        self.domain = c.domain

    def at(self, g, h):
        return self.c.at(g, h) ** self.r

    def contains(self, g):
        return self.c.contains(g)


class Restriction(Cocycle):
    def __init__(self, c: Cocycle, sub: SubgroupBasis):
        for b in sub.basis:
            if not c.contains(b):
                raise ValueError("subgroup is not inside the cocycle domain")
        self.c = c
        self.field = c.field
        self.dim = c.dim
        self.domain = sub

    def at(self, g, h):
        return self.c.at(g, h)


class PullbackLinear(Cocycle):
    """Precompose with an injective linear map: c'(g, h) = c(Mg, Mh)."""

    def __init__(self, c: Cocycle, rows: Sequence[Vector],
                 domain: Optional[SubgroupBasis], dim: int):
        self.c = c
        self.rows = tuple(rows)
        self.field = c.field
        self.dim = dim
        self.domain = domain

    def _map(self, g: Vector) -> Vector:
        return tuple(lattice.vdot(row, g) for row in self.rows)

    def at(self, g, h):
        return self.c.at(self._map(g), self._map(h))


@dataclass
class BetaRule:
    """A degree-wise rescaling g -> beta(g) in k*, with beta(0) = 1.

    Either a finite table on a window or a closed-form callable; its
    coboundary is beta(f)beta(g)/beta(f+g).
    """
    field: coeff.Field
    domain: Optional[SubgroupBasis]
    table: Optional[dict[Vector, FieldElement]] = None
    fn: Optional[Callable[[Vector], FieldElement]] = None

    def __post_init__(self):
        if self.table is not None:
            zero = next(iter(zero_vector(len(k)) for k in self.table), None)
            if zero is not None:
                cur = self.table.get(zero)
                if cur is None:
                    self.table[zero] = self.field.one()
                elif not cur.is_one():
                    raise ValueError("beta(0) must be 1")

    def value(self, g: Vector) -> FieldElement:
        if self.table is not None and g in self.table:
            return self.table[g]
        if self.fn is not None:
            return self.fn(g)
        raise ValueError("beta undefined at this degree")

    def defined_at(self, g: Vector) -> bool:
        return (self.table is not None and g in self.table) or self.fn is not None


class Coboundary(Cocycle):
    def __init__(self, beta: BetaRule, dim: int):
        self.beta = beta
        self.field = beta.field
        self.dim = dim
        self.domain = beta.domain

    def at(self, g, h):
        return self.beta.value(g) * self.beta.value(h) / self.beta.value(vadd(g, h))

    def contains(self, g):
        if self.domain is not None:
            return member(self.domain, g)
        return self.beta.defined_at(g)


class TableRule(Cocycle):
    """A finite, explicitly tabulated rule on a window (mostly a test and CLI
    vehicle: corrupted tables, finite-field solving).  Construction rescales
    by the constant c(0,0) so the unit degree is normalized."""

    def __init__(self, fld: coeff.Field, dim: int,
                 pairs: dict[tuple[Vector, Vector], FieldElement],
                 points: Sequence[Vector]):
        self.field = fld
        self.dim = dim
        self.domain = None
        self.points = list(points)
        zero = zero_vector(dim)
        u = pairs.get((zero, zero))
        if u is not None and not u.is_one():
            fixed = {}
            for (g, h), v in pairs.items():
                gz, hz = is_zero_vector(g), is_zero_vector(h)
                if gz and hz:
                    fixed[(g, h)] = v / u
                elif gz or hz:
                    fixed[(g, h)] = v / u
                elif is_zero_vector(vadd(g, h)):
                    fixed[(g, h)] = v * u
                else:
                    fixed[(g, h)] = v
            pairs = fixed
        self.pairs = pairs

    @staticmethod
    def sample(c: Cocycle, window: Sequence[Vector]) -> "TableRule":
        pairs = {(g, h): c.at(g, h) for g in window for h in window}
        return TableRule(c.field, c.dim, pairs, window)

    def contains(self, g):
        return g in self.points

    def defined_pair(self, g, h):
        return (g, h) in self.pairs

    def at(self, g, h):
        try:
            return self.pairs[(g, h)]
        except KeyError:
            raise ValueError("argument outside the tabulated window") from None

    def corrupt(self, g: Vector, h: Vector, value: FieldElement) -> "TableRule":
        pairs = dict(self.pairs)
        pairs[(g, h)] = value
        out = TableRule.__new__(TableRule)
        out.field, out.dim, out.domain = self.field, self.dim, None
        out.points, out.pairs = list(self.points), pairs
        return out


# ---------------------------------------------------------------------------
# checks

def check_cocycle(c: Cocycle, window: Sequence[Vector], trials: int = 2000,
                  seed: int = 0) -> CheckReport:
    """Verify the multiplicative cocycle identity and normalization on the
    window: exhaustively when |window|^3 <= trials, else on seeded samples."""
    failures = []
    if window:
        zero = zero_vector(len(window[0]))
        one = c.field.one()
        for g in window:
            if c.defined_pair(g, zero) and c.at(g, zero) != one:
                failures.append(("normalization", g))
            if c.defined_pair(zero, g) and c.at(zero, g) != one:
                failures.append(("normalization-left", g))
    count = 0
    for f, g, h in iter_triples(window, trials, seed):
        fg, gh = vadd(f, g), vadd(g, h)
        if not (c.defined_pair(g, h) and c.defined_pair(f, gh)
                and c.defined_pair(fg, h) and c.defined_pair(f, g)):
            continue
        count += 1
        if c.at(g, h) * c.at(f, gh) != c.at(fg, h) * c.at(f, g):
            failures.append((f, g, h))
    return CheckReport(trials=count, failures=failures)


def check_symmetric(c: Cocycle, window: Sequence[Vector], trials: int = 2000,
                    seed: int = 0) -> CheckReport:
    """Verify c(g,h) = c(h,g): exhaustive when |window|^2 <= trials."""
    failures = []
    count = 0
    pairs: list
    if len(window) ** 2 <= trials:
        pairs = itertools.combinations_with_replacement(window, 2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(window), rng.choice(window)) for _ in range(trials))
    for g, h in pairs:
        if not (c.defined_pair(g, h) and c.defined_pair(h, g)):
            continue
        count += 1
        if c.at(g, h) != c.at(h, g):
            failures.append((g, h))
    return CheckReport(trials=count, failures=failures)


# ---------------------------------------------------------------------------
# class operations

def segre(c1: Cocycle, c2: Cocycle) -> Cocycle:
    """Pointwise product of rules (class sum)."""
    return Sum(c1, c2)


def veronese(c: Cocycle, r: int) -> Cocycle:
    """Pointwise r-th power of a rule (class scaling); r = 0 is rejected."""
    if r == 0:
        raise ValueError("scaling exponent must be nonzero")
    if r == 1:
        return c
    return Power(c, r)


def inverse(c: Cocycle) -> Cocycle:
    return veronese(c, -1)


def restrict(c: Cocycle, sub: SubgroupBasis) -> Cocycle:
    return Restriction(c, sub)


def power_basis_factor(c: Cocycle, g: Vector, r: int) -> FieldElement:
    """The unit T with x_g^r = T * x_{rg} in the twisted algebra of c."""
    if r >= 0:
        out = c.field.one()
        cur = zero_vector(len(g))
        for _ in range(1, r):
            cur = vadd(cur, g)
            out = out * c.at(cur, g)
        return out
    s = -r
    t = power_basis_factor(c, g, s)
    sg = vscale(s, g)
    return (t * c.at(sg, vneg(sg))).inverse()


# ---------------------------------------------------------------------------
# trivialization on a lattice (telescoping along a basis)

def trivialize_on_lattice(c: Cocycle, basis: Sequence[Vector], bound: int) -> BetaRule:
    """Telescoping trivializer on span_Z(basis), verified exhaustively.

    Declares x'_g = x_{e_1}^{a_1} ... x_{e_n}^{a_n} for g = sum a_i e_i and
    accumulates the cocycle factors relating x'_g to x_g; the resulting beta
    satisfies c = d(beta) on every pair f, g with f, g, f+g inside the
    coefficient box [-bound, bound]^n.  A verification failure (non-cocycle
    input) raises with a counterexample.
    """
    n = len(basis)
    fld = c.field
    width = 2 * bound + 1
    if width ** n > _WINDOW_CAP:
        raise ValueError("window too large")
    offsets = list(itertools.product(range(-bound, bound + 1), repeat=n))
    dim = len(basis[0])

    def vec_of(off) -> Vector:
        v = zero_vector(dim)
        for a, b in zip(off, basis):
            if a:
                v = vadd(v, vscale(a, b))
        return v

    # P[j][a] with x_{e_j}^a = P[j][a] * x_{a e_j}
    p_tab = []
    for j in range(n):
        e = basis[j]
        tab = {0: fld.p_one()}
        for a in range(0, bound):
            tab[a + 1] = fld.p_mul(tab[a], c.at(vscale(a, e), e).payload)
        for a in range(0, -bound, -1):
            tab[a - 1] = fld.p_div(tab[a], c.at(vscale(a - 1, e), e).payload)
        p_tab.append(tab)

    # accumulate the word x_{e_1}^{a_1}...x_{e_n}^{a_n} = tilde * x_g axis by axis
    tilde: dict[tuple[int, ...], object] = {(): fld.p_one()}
    for j in range(n):
        nxt = {}
        for prefix, pv in tilde.items():
            gp = vec_of(prefix + (0,) * (n - j))
            for a in range(-bound, bound + 1):
                if a == 0:
                    nxt[prefix + (0,)] = pv
                else:
                    val = fld.p_mul(pv, p_tab[j][a])
                    val = fld.p_mul(val, c.at(gp, vscale(a, basis[j])).payload)
                    nxt[prefix + (a,)] = val
        tilde = nxt

    beta_payload = [fld.p_inv(tilde[off]) for off in offsets]

    # exhaustive d(beta) = c over the box
    strides = [width ** (n - 1 - t) for t in range(n)]

    def index_of(off):
        k = 0
        for a, s in zip(off, strides):
            if a < -bound or a > bound:
                return None
            k += (a + bound) * s
        return k

    fast = _bilinear_pair_payload(c, basis)
    vecs = [vec_of(off) for off in offsets]
    size = len(offsets)
    for i in range(size):
        fi = offsets[i]
        bi = beta_payload[i]
        for j in range(i, size):
            off_sum = tuple(a + b for a, b in zip(fi, offsets[j]))
            k = index_of(off_sum)
            if k is None:
                continue
            cval = fast(fi, offsets[j]) if fast else c.at(vecs[i], vecs[j]).payload
            lhs = fld.p_mul(bi, beta_payload[j])
            rhs = fld.p_mul(cval, beta_payload[k])
            if not fld.p_eq(lhs, rhs):
                raise CocycleVerificationError(
                    "trivialization failed (input is not a cocycle on the window)",
                    (vecs[i], vecs[j]))
    dom = subgroup_basis(dim, basis)
    table = {vecs[i]: FieldElement(fld, beta_payload[i]) for i in range(size)}
    return BetaRule(field=fld, domain=dom, table=table)


def _bilinear_pair_payload(c: Cocycle, basis: Sequence[Vector]):
    """Fast payload evaluator on basis offsets for bilinear rules, if usable."""
    if not isinstance(c, Bilinear):
        return None
    try:
        rows = [c.coords(b) for b in basis]
    except ValueError:
        return None
    m = len(c.lattice_basis)

    def ev(x_off, y_off):
        x = [sum(x_off[k] * rows[k][t] for k in range(len(rows))) for t in range(m)]
        y = [sum(y_off[k] * rows[k][t] for k in range(len(rows))) for t in range(m)]
        e = sum(x[i] * sum(c.a[i][j] * y[j] for j in range(m)) for i in range(m))
        return c.pow_payload(e)

    return ev


# ---------------------------------------------------------------------------
# trivialization through a filtration (needs roots in the coefficient field)

@dataclass
class RootUnavailable:
    """The coefficient field lacks an n-th root needed to extend the good
    basis across a filtration step; the class may be nontrivial."""
    step: int
    n: int
    element: FieldElement


def trivialize_via_roots(c: Cocycle, filtration, bound: int = 4,
                         root_oracle=None):
    """Extend a good basis step by step along the filtration.

    Each step multiplies out x_f^n against the current good basis element in
    degree e_d = n f and asks the oracle for an n-th root of the resulting
    unit.  Returns the final BetaRule (verified exhaustively on the bound box
    of the last group) or RootUnavailable.
    """
    oracle = root_oracle or coeff.nth_root
    steps = list(filtration)
    if not steps:
        raise ValueError("empty filtration")
    dim = len(steps[0].e_basis[0])
    fld = c.field
    cur_basis = list(steps[0].e_basis)
    cur_units = [fld.one()] * len(cur_basis)

    def beta(g: Vector) -> FieldElement:
        # beta(g) = prod u_j^{b_j} / tilde(g), where tilde relates the word
        # x_{v_1}^{b_1}...x_{v_n}^{b_n} to x_g by telescoping cocycle factors
        sol = solve_rational(cur_basis, g)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise ValueError("degree outside the current group")
        coords = [int(x) for x in sol]
        units = fld.one()
        tilde = fld.one()
        prefix = zero_vector(dim)
        for b, e, u in zip(coords, cur_basis, cur_units):
            if b:
                seg = vscale(b, e)
                tilde = tilde * power_basis_factor(c, e, b) * c.at(prefix, seg)
                units = units * (u ** b)
                prefix = vadd(prefix, seg)
        return units * tilde.inverse()

    for k, step in enumerate(steps):
        if subgroup_basis(dim, cur_basis) != subgroup_basis(dim, step.e_basis):
            raise ValueError(f"filtration step {k} does not match the current group")
        new_units = [beta(e) for e in step.e_basis[:-1]]
        q = power_basis_factor(c, step.f, step.n)
        zeta = q * beta(step.e_basis[-1])
        rho = oracle(zeta, step.n)
        if rho is None or rho is UNSUPPORTED:
            return RootUnavailable(step=k, n=step.n, element=zeta)
        cur_basis = list(step.e_basis[:-1]) + [step.f]
        cur_units = new_units + [rho]

    table = {}
    for off in itertools.product(range(-bound, bound + 1), repeat=len(cur_basis)):
        v = zero_vector(dim)
        for a, b in zip(off, cur_basis):
            if a:
                v = vadd(v, vscale(a, b))
        table[v] = beta(v)
    for f in list(table):
        for g in list(table):
            s = vadd(f, g)
            if s not in table:
                continue
            if table[f] * table[g] != c.at(f, g) * table[s]:
                raise CocycleVerificationError(
                    "filtration trivializer failed verification", (f, g))
    return BetaRule(field=fld, domain=subgroup_basis(dim, cur_basis), table=table)


# ---------------------------------------------------------------------------
# exhaustive coboundary solving over a finite field

def coboundary_solve_finite_field(c: Cocycle, window: Sequence[Vector],
                                  q: int) -> Optional[BetaRule]:
    """Solve d(beta) = c on the window over F_q, or report None.

    Discrete logarithms turn the multiplicative problem into a linear system
    over Z/(q-1), solved through the Smith form; any solution is verified
    exhaustively before being returned.
    """
    fld = coeff.finite_field(q)
    if c.field != fld:
        raise ValueError("cocycle values must lie in the requested finite field")
    pts = list(window)
    zero = zero_vector(len(pts[0]))
    if zero not in pts:
        pts.append(zero)
    index = {p: i for i, p in enumerate(pts)}
    rows: list[list[int]] = []
    rhs: list[int] = []
    used_pairs = []
    for i, f in enumerate(pts):
        for g in pts[i:]:
            s = vadd(f, g)
            if s not in index or not c.defined_pair(f, g):
                continue
            row = [0] * len(pts)
            row[index[f]] += 1
            row[index[g]] += 1
            row[index[s]] -= 1
            rows.append(row)
            rhs.append(fld.dlog(c.at(f, g).payload))
            used_pairs.append((f, g))
    norm_row = [0] * len(pts)
    norm_row[index[zero]] = 1
    rows.append(norm_row)
    rhs.append(0)
    sol = lattice.solve_mod(rows, rhs, q - 1)
    if sol is None:
        return None
    table = {p: FieldElement(fld, fld.exp(sol[i])) for p, i in index.items()}
    beta = BetaRule(field=fld, domain=None, table=table)
    for f, g in used_pairs:
        if table[f] * table[g] != c.at(f, g) * table[vadd(f, g)]:
            raise CocycleVerificationError("modular solve failed verification", (f, g))
    return beta


# ---------------------------------------------------------------------------
# root extension and class division

class RootExtension(Cocycle):
    """Extension of c from G to G + Ze where p*e is in G and e is not.

    Fixes the transversal {0..p-1} and the basis choice x_{g+ae} = x_g x_e^a
    with x_e^p = y_scalar * x_{pe}; the carry formula is then closed-form.
    """

    def __init__(self, c: Cocycle, e: Vector, p: int, y_scalar: FieldElement,
                 verify: bool = True):
        if c.domain is None:
            raise ValueError("root extension needs an explicit lattice domain")
        if p < 2 or any(p % t == 0 for t in range(2, int(p ** 0.5) + 1)):
            raise ValueError("extension index must be prime")
        if y_scalar.field != c.field or y_scalar.is_zero():
            raise ValueError("y scalar must be a nonzero coefficient")
        if member(c.domain, e):
            raise ValueError("extension degree already lies in the group")
        pe = vscale(p, e)
        if not member(c.domain, pe):
            raise ValueError("p times the extension degree must lie in the group")
        self.c = c
        self.e = e
        self.p = p
        self.pe = pe
        self.y = y_scalar
        self.field = c.field
        self.dim = c.dim
        self.domain = subgroup_basis(c.dim, c.domain.basis + (e,))
        self._decomp: dict[Vector, tuple[Vector, int]] = {}
        if verify:
            self._verify_window()

    def decompose(self, u: Vector) -> tuple[Vector, int]:
        got = self._decomp.get(u)
        if got is None:
            for a in range(self.p):
                g = vsub_cached(u, self.e, a)
                if member(self.c.domain, g):
                    got = (g, a)
                    break
            else:
                raise ValueError("degree outside the extended group")
            self._decomp[u] = got
        return got

    def at(self, u, w):
        g, a = self.decompose(u)
        h, b = self.decompose(w)
        base = self.c.at(g, h)
        if a + b < self.p:
            return base
        return base * self.y * self.c.at(vadd(g, h), self.pe)

    def _verify_window(self):
        ladder = [vscale(a, self.e) for a in range(2 * self.p)]
        rep = check_cocycle(self, ladder, trials=len(ladder) ** 3 + 1)
        if not rep.ok:
            raise CocycleVerificationError("root extension violates the cocycle "
                                           "identity", rep.failures[0])
        mixed = box_window(self.domain.basis, 1)
        rep = check_cocycle(self, mixed, trials=400, seed=7)
        if not rep.ok:
            raise CocycleVerificationError("root extension violates the cocycle "
                                           "identity", rep.failures[0])


def vsub_cached(u: Vector, e: Vector, a: int) -> Vector:
    return vadd(u, vscale(-a, e)) if a else u


def extend_root(c: Cocycle, e: Vector, p: int, y_scalar: FieldElement,
                verify: bool = True) -> RootExtension:
    return RootExtension(c, e, p, y_scalar, verify=verify)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divide_class(c: Cocycle, r: int, bound: int = 6, root_oracle=None
                 ) -> tuple[Cocycle, BetaRule]:
    """A rule c' on the same group with r * [c'] = [c], plus the explicit
    coboundary relating veronese(c', r) to c.

    Extends c to the r-th refinement of its lattice by iterated prime root
    extensions (the unit choice y = 1 always works, so the oracle is never
    actually consulted), pulls back along division by r, and certifies
    veronese(c', r) = c * d(beta) exhaustively on the bound box.
    """
    if r < 1:
        raise ValueError("division index must be a positive integer")
    if c.domain is None or c.domain.rank != c.dim:
        raise ValueError("class division needs a full-rank lattice domain")
    g0 = c.domain
    if r == 1:
        one = c.field.one()
        return c, BetaRule(field=c.field, domain=g0, fn=lambda g: one)
    cur_group = g0
    cur = c
    for b in g0.basis:
        target = vscale(Fraction(1, r), b)
        if member(cur_group, target):
            continue
        nxt, step = lattice.filtration_step(cur_group, target)
        n = step.n
        f = step.f
        rem = n
        for p in _prime_factors(n):
            rem //= p
            e = vscale(rem, f) if rem > 1 else f
            if member(cur.domain, e):
                continue
            cur = RootExtension(cur, e, p, c.field.one(), verify=False)
        cur_group = nxt
    refined = subgroup_basis(g0.ambient_dim,
                             tuple(vscale(Fraction(1, r), b) for b in g0.basis))
    if cur_group != refined or cur.domain != refined:
        raise RuntimeError("refinement chain did not reach the expected group")

    inv_r = Fraction(1, r)
    rows = tuple(tuple(Fraction(int(i == j), r) for j in range(c.dim))
                 for i in range(c.dim))
    root = PullbackLinear(cur, rows, domain=g0, dim=c.dim)

    tilde = cur

    def beta_fn(g: Vector) -> FieldElement:
        return power_basis_factor(tilde, vscale(inv_r, g), r)

    beta = BetaRule(field=c.field, domain=g0, fn=beta_fn)

    # certificate: veronese(root, r) = c * d(beta) on the window
    window = box_window(g0.basis, bound)
    wset = set(window)
    for i, f in enumerate(window):
        bf = beta_fn(f)
        for g in window[i:]:
            s = vadd(f, g)
            if s not in wset:
                continue
            lhs = root.at(f, g) ** r
            rhs = c.at(f, g) * bf * beta_fn(g) / beta_fn(s)
            if lhs != rhs:
                raise CocycleVerificationError("division certificate failed", (f, g))
    return root, beta
