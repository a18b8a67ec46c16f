"""Exact linear algebra over Z and Q for subgroups and sub-semigroups of Q^d.

Vectors are tuples of ``Fraction``.  Finitely generated subgroups of Q^d are
held through canonical bases: the column-style Hermite form of the
denominator-cleared generator matrix, scaled back.  Equality of subgroups is
therefore equality of bases.  Semigroup questions (pointedness, unit
subgroup, separating functionals) are settled by exact rational linear
programming; no floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Vector = tuple[Fraction, ...]
IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# vectors

def vector(entries) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vector(dim: int) -> Vector:
    return (Fraction(0),) * dim


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vscale(c, u: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)

def vdot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(u: Vector) -> bool:
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# integer matrices

def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a or not b:
        return []
    n = len(b)
    return [[sum(row[k] * b[k][j] for k in range(n)) for j in range(len(b[0]))]
            for row in a]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)] if a else []


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def row_hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite form: returns (H, U) with H = U*A, U unimodular.

    Pivots are positive, pivot columns strictly increase down the rows,
    entries above each pivot are reduced into [0, pivot), zero rows sink
    to the bottom.
    """
    h = [row[:] for row in a]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity_matrix(rows)
    piv = 0
    for col in range(cols):
        if piv >= rows:
            break
        base = None
        for i in range(piv, rows):
            if h[i][col]:
                base = i
                break
        if base is None:
            continue
        if base != piv:
            h[piv], h[base] = h[base], h[piv]
            u[piv], u[base] = u[base], u[piv]
        for i in range(piv + 1, rows):
            if not h[i][col]:
                continue
            p, q = h[piv][col], h[i][col]
            g, x, y = _egcd(p, q)
            p_, q_ = p // g, q // g
            # unimodular 2x2 combination of rows piv and i
            r1 = [x * h[piv][j] + y * h[i][j] for j in range(cols)]
            r2 = [-q_ * h[piv][j] + p_ * h[i][j] for j in range(cols)]
            h[piv], h[i] = r1, r2
            r1 = [x * u[piv][j] + y * u[i][j] for j in range(rows)]
            r2 = [-q_ * u[piv][j] + p_ * u[i][j] for j in range(rows)]
            u[piv], u[i] = r1, r2
        if h[piv][col] < 0:
            h[piv] = [-v for v in h[piv]]
            u[piv] = [-v for v in u[piv]]
        p = h[piv][col]
        for i in range(piv):
            q = h[i][col] // p
            if q:
                h[i] = [h[i][j] - q * h[piv][j] for j in range(cols)]
                u[i] = [u[i][j] - q * u[piv][j] for j in range(rows)]
        piv += 1
    return h, u


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite form: (h, u) with h = m*u, u unimodular.

    Pivots are the first nonzero entries of the nonzero columns, positive,
    with pivot rows strictly increasing column by column; entries left of a
    pivot are reduced into [0, pivot); zero columns sit on the right.
    """
    if not m or not m[0]:
        n = len(m[0]) if m else 0
        return [row[:] for row in m], identity_matrix(n)
    ht, ut = row_hnf(transpose(m))
    return transpose(ht), transpose(ut)


def snf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith form: (d, u, v) with d = u*a*v diagonal, d_i | d_{i+1}, d_i >= 0."""
    d = [row[:] for row in a]
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i, j, x, y, p_, q_):
        for t in range(cols):
            d[i][t], d[j][t] = x * d[i][t] + y * d[j][t], -q_ * d[i][t] + p_ * d[j][t]
        for t in range(rows):
            u[i][t], u[j][t] = x * u[i][t] + y * u[j][t], -q_ * u[i][t] + p_ * u[j][t]

    def col_op(i, j, x, y, p_, q_):
        for t in range(rows):
            d[t][i], d[t][j] = x * d[t][i] + y * d[t][j], -q_ * d[t][i] + p_ * d[t][j]
        for t in range(cols):
            v[t][i], v[t][j] = x * v[t][i] + y * v[t][j], -q_ * v[t][i] + p_ * v[t][j]

    k = 0
    while k < min(rows, cols):
        # move a nonzero entry of minimal magnitude to (k, k)
        pos = None
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                e = abs(d[i][j])
                if e and (best is None or e < best):
                    best, pos = e, (i, j)
        if pos is None:
            break
        i, j = pos
        if i != k:
            d[k], d[i] = d[i], d[k]
            u[k], u[i] = u[i], u[k]
        if j != k:
            for t in range(rows):
                d[t][k], d[t][j] = d[t][j], d[t][k]
            for t in range(cols):
                v[t][k], v[t][j] = v[t][j], v[t][k]
        while True:
            for i in range(k + 1, rows):
                if d[i][k]:
                    g, x, y = _egcd(d[k][k], d[i][k])
                    row_op(k, i, x, y, d[k][k] // g, d[i][k] // g)
            for j in range(k + 1, cols):
                if d[k][j]:
                    g, x, y = _egcd(d[k][k], d[k][j])
                    col_op(k, j, x, y, d[k][k] // g, d[k][j] // g)
            if all(d[i][k] == 0 for i in range(k + 1, rows)) and \
               all(d[k][j] == 0 for j in range(k + 1, cols)):
                break
        # divisibility fix-up: fold offending entries back into column k
        bad = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if d[k][k] and d[i][j] % d[k][k]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for t in range(cols):
                d[k][t] += d[bad][t]
            for t in range(rows):
                u[k][t] += u[bad][t]
            continue
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
        k += 1
    return d, u, v


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """One integer solution x of a*x = b, or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d, u, v = snf(a)
    ub = [sum(u[i][t] * b[t] for t in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
        elif ub[i]:
            return None
    return [sum(v[i][t] * y[t] for t in range(cols)) for i in range(cols)]


def solve_mod(a: IntMatrix, b: Sequence[int], m: int) -> Optional[list[int]]:
    """One solution x of a*x = b (mod m), entries reduced into [0, m)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [m * int(i == j) for j in range(rows)] for i in range(rows)]
    z = solve_integer(aug, list(b))
    if z is None:
        return None
    return [z[i] % m for i in range(cols)]


# ---------------------------------------------------------------------------
# rational linear algebra

def solve_rational(cols: Sequence[Vector], target: Vector) -> Optional[list[Fraction]]:
    """Coefficients x with sum x_i * cols[i] = target, or None if inconsistent.

    When the columns are linearly independent the solution is unique.
    """
    n = len(cols)
    dim = len(target)
    aug = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(target[i])]
           for i in range(dim)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, dim) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == dim:
            break
    for i in range(r, dim):
        if aug[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def rational_nullspace(rows: Sequence[Vector], dim: int) -> list[Vector]:
    """Basis of {w in Q^dim : row . w = 0 for every row}, from the RREF."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(dim):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        w = [Fraction(0)] * dim
        w[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            w[pc] = -m[i][fc]
        basis.append(tuple(w))
    return basis


# ---------------------------------------------------------------------------
# exact phase-1 simplex

def feasible_nonneg(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """Find x >= 0 with rows*x = rhs exactly, or None if infeasible.

    Phase-1 simplex over Fractions with Bland's rule, so it terminates on
    degenerate systems.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    tab = []
    for i in range(m):
        r = [Fraction(x) for x in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            r = [-x for x in r]
            b = -b
        tab.append(r + [Fraction(int(i == j)) for j in range(m)] + [b])
    basis = [n + i for i in range(m)]
    width = n + m + 1
    cost = [Fraction(0)] * width
    for i in range(m):
        for j in range(width):
            cost[j] -= tab[i][j]
    for j in range(n, n + m):
        cost[j] = Fraction(0)
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # cannot happen: phase-1 objective is bounded below
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    return x


# ---------------------------------------------------------------------------
# subgroups of Q^d

@dataclass(frozen=True)
class SubgroupBasis:
    """Canonical Z-basis of a finitely generated subgroup of Q^d."""
    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def subgroup_basis(ambient_dim: int, generators: Sequence[Vector]) -> SubgroupBasis:
    """Canonical basis of the subgroup Z-generated by the given vectors."""
    gens = [g for g in generators if not is_zero_vector(g)]
    if not gens:
        return SubgroupBasis(ambient_dim, ())
    scale = lcm(*(f.denominator for g in gens for f in g)) if gens else 1
    m = [[int(g[i] * scale) for g in gens] for i in range(ambient_dim)]
    h, _ = hnf(m)
    cols = []
    for j in range(len(gens)):
        col = tuple(Fraction(h[i][j], scale) for i in range(ambient_dim))
        if not is_zero_vector(col):
            cols.append(col)
    return SubgroupBasis(ambient_dim, tuple(cols))


def member(sub: SubgroupBasis, v: Vector) -> bool:
    """Is v a Z-combination of the basis?"""
    if is_zero_vector(v):
        return True
    if sub.rank == 0:
        return False
    coords = solve_rational(sub.basis, v)
    return coords is not None and all(c.denominator == 1 for c in coords)


def integer_coordinates(sub: SubgroupBasis, v: Vector) -> Optional[list[int]]:
    if sub.rank == 0:
        return [] if is_zero_vector(v) else None
    coords = solve_rational(sub.basis, v)
    if coords is None or any(c.denominator != 1 for c in coords):
        return None
    return [int(c) for c in coords]


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    n = len(u)
    cols = [tuple(Fraction(u[i][j]) for i in range(n)) for j in range(n)]
    inv_cols = []
    for k in range(n):
        e = tuple(Fraction(int(i == k)) for i in range(n))
        x = solve_rational(cols, e)
        inv_cols.append([int(c) for c in x])
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]


def _complete_primitive(v: list[int]) -> IntMatrix:
    """Unimodular integer matrix whose last column is the primitive vector v."""
    d = len(v)
    dmat, u, _ = snf([[x] for x in v])
    assert dmat[0][0] == 1, "vector must be primitive"
    w = _unimodular_inverse(u)  # first column of w is v (up to the SNF sign)
    cols = [[w[i][j] for i in range(d)] for j in range(d)]
    first = cols.pop(0)
    if first != v:
        first = [-x for x in first]
    assert first == v
    cols.append(first)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


@dataclass(frozen=True)
class FiltrationStep:
    """One extension step: the old group span(e_1..e_d) grows to
    span(e_1..e_{d-1}, f) with e_d = n*f."""
    e_basis: tuple[Vector, ...]
    f: Vector
    n: int


def filtration_step(current: SubgroupBasis, a: Vector) -> tuple[SubgroupBasis, FiltrationStep]:
    """Extend a full-rank subgroup by one vector, reporting the step data."""
    d = current.ambient_dim
    if current.rank != d:
        raise ValueError("filtration_step needs a full-rank subgroup")
    coords = solve_rational(current.basis, a)
    if coords is None:
        raise ValueError("vector outside the rational span of the subgroup")
    t = lcm(*(c.denominator for c in coords)) if coords else 1
    if t == 1:
        step = FiltrationStep(current.basis, current.basis[-1], 1)
        return current, step
    s = [int(c * t) for c in coords]
    m = gcd(*s)
    prim = [si // m for si in s]
    w = _complete_primitive(prim)
    # columns of w are coordinates of the new basis in the old one; the last
    # column is prim, so the last new basis vector is (t/m)*a.
    e_basis = []
    for j in range(d):
        v = zero_vector(d)
        for i in range(d):
            if w[i][j]:
                v = vadd(v, vscale(w[i][j], current.basis[i]))
        e_basis.append(v)
    f = vscale(Fraction(1, t), e_basis[-1])
    nxt = subgroup_basis(d, tuple(e_basis[:-1]) + (f,))
    return nxt, FiltrationStep(tuple(e_basis), f, t)


def quotient_by_scaling(g: SubgroupBasis, r: int) -> tuple[list[Vector], list[int]]:
    """Transversal and cyclic factors of G/rG, via the Smith form of r*G in G."""
    if r <= 0:
        raise ValueError("scaling factor must be a positive integer")
    k = g.rank
    if k == 0:
        return [zero_vector(g.ambient_dim)], []
    a = [[r * int(i == j) for j in range(k)] for i in range(k)]
    d, u, _ = snf(a)
    uinv = _unimodular_inverse(u)
    new_basis = []
    for j in range(k):
        v = zero_vector(g.ambient_dim)
        for i in range(k):
            if uinv[i][j]:
                v = vadd(v, vscale(uinv[i][j], g.basis[i]))
        new_basis.append(v)
    factors = [d[i][i] for i in range(k)]
    reps = []
    for combo in itertools.product(*(range(f) for f in factors)):
        v = zero_vector(g.ambient_dim)
        for c, b in zip(combo, new_basis):
            if c:
                v = vadd(v, vscale(c, b))
        reps.append(v)
    return reps, [f for f in factors if f > 1]


# ---------------------------------------------------------------------------
# pointedness and unit subgroups

@dataclass(frozen=True)
class PointednessCertificate:
    verdict: str  # "pointed" | "not_pointed"
    functional: Optional[Vector] = None
    witness: Optional[Vector] = None
    # nonnegative integer combination sum n_i * a_i = 0 backing the witness
    combination: Optional[tuple[int, ...]] = None

    @property
    def pointed(self) -> bool:
        return self.verdict == "pointed"


def nonneg_kernel_combination(generators: Sequence[Vector]) -> Optional[list[int]]:
    """Nonnegative integers n, not all zero, with sum n_i*generators[i] = 0."""
    gens = list(generators)
    if not gens:
        return None
    d = len(gens[0])
    rows = [[gens[j][i] for j in range(len(gens))] for i in range(d)]
    rows.append([Fraction(1)] * len(gens))
    rhs = [Fraction(0)] * d + [Fraction(1)]
    lam = feasible_nonneg(rows, rhs)
    if lam is None:
        return None
    den = lcm(*(x.denominator for x in lam))
    return [int(x * den) for x in lam]


def separating_functional(generators: Sequence[Vector], dim: int) -> Optional[Vector]:
    """Rational h with h . a >= 1 for every generator a, or None."""
    gens = list(generators)
    if not gens:
        return tuple(Fraction(1) for _ in range(dim))
    m = len(gens)
    rows = []
    for i, a in enumerate(gens):
        row = [Fraction(x) for x in a] + [-Fraction(x) for x in a]
        row += [Fraction(-int(i == j)) for j in range(m)]
        rows.append(row)
    sol = feasible_nonneg(rows, [Fraction(1)] * m)
    if sol is None:
        return None
    return tuple(sol[i] - sol[dim + i] for i in range(dim))


def is_pointed(ambient_dim: int, generators: Sequence[Vector]) -> PointednessCertificate:
    """Decide whether the semigroup generated is pointed (N ∩ -N = 0).

    Gordan duality at desk scale: either a nonzero nonnegative combination
    of the generators vanishes, or a separating functional exists.  The
    returned certificate carries the witnessing object either way.
    """
    gens = [g for g in generators if not is_zero_vector(g)]
    if not gens:
        return PointednessCertificate("pointed",
                                      functional=tuple(Fraction(1) for _ in range(ambient_dim)))
    combo = nonneg_kernel_combination(gens)
    if combo is not None:
        j = next(i for i, n in enumerate(combo) if n > 0)
        return PointednessCertificate("not_pointed", witness=gens[j],
                                      combination=tuple(combo))
    h = separating_functional(gens, ambient_dim)
    if h is None:  # Gordan: exactly one alternative holds
        raise RuntimeError("exact LP reached an impossible state")
    return PointednessCertificate("pointed", functional=h)


def in_rational_cone(v: Vector, generators: Sequence[Vector]) -> bool:
    """Is v a nonnegative rational combination of the generators?"""
    gens = list(generators)
    if is_zero_vector(v):
        return True
    if not gens:
        return False
    d = len(v)
    rows = [[gens[j][i] for j in range(len(gens))] for i in range(d)]
    return feasible_nonneg(rows, list(v)) is not None


def support_units(ambient_dim: int, generators: Sequence[Vector]) -> SubgroupBasis:
    """Basis of the unit subgroup N ∩ (-N) of the generated semigroup.

    A generator lies in the unit subgroup exactly when its negative is in
    the rational cone of all generators; the units found Z-generate the
    whole unit subgroup.
    """
    gens = [g for g in generators if not is_zero_vector(g)]
    units = [g for g in gens if in_rational_cone(vneg(g), gens)]
    return subgroup_basis(ambient_dim, units)


def projection_mod(units: SubgroupBasis, ambient_dim: int) -> tuple[Vector, ...]:
    """Rows of a surjection Q^d -> Q^c whose kernel is the span of the units."""
    if units.rank == 0:
        return tuple(tuple(Fraction(int(i == j)) for j in range(ambient_dim))
                     for i in range(ambient_dim))
    return tuple(rational_nullspace(units.basis, ambient_dim))


def apply_projection(pi: Sequence[Vector], v: Vector) -> Vector:
    return tuple(vdot(row, v) for row in pi)
