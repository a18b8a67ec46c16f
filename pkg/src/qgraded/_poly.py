"""Sparse multivariate polynomials over an exact base field.

Polynomials are dicts mapping a canonical monomial key to a nonzero base
field payload.  A monomial key is a tuple of (variable, exponent) pairs with
positive exponents, sorted by the global variable order: indexed names like
"a[j,i]" sort by (family, i, j), everything else lexicographically after.
The gcd is a primitive polynomial-remainder sequence recursing on the top
variable, with a fast path for single-term inputs, and is normalized monic
under graded lex so canonical forms are unique.
"""

from __future__ import annotations

import re
from typing import Optional

Monomial = tuple[tuple[str, int], ...]
Poly = dict  # Monomial -> base field payload

_INDEXED = re.compile(r"^([^\[\]]+)\[(-?\d+),(-?\d+)\]$")


def variable_key(name: str):
    m = _INDEXED.match(name)
    if m:
        fam, j, i = m.group(1), int(m.group(2)), int(m.group(3))
        return (fam, i, j)
    return (name, 0, 0)


def monomial_key(exps: dict[str, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in exps.items() if e),
                        key=lambda p: variable_key(p[0])))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return monomial_key(exps)


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) - e
    return monomial_key(exps)


def monomial_gcd(a: Monomial, b: Monomial) -> Monomial:
    db = dict(b)
    return tuple((v, min(e, db[v])) for v, e in a if v in db and min(e, db[v]) > 0)


def _gradedlex_greater(a: Monomial, b: Monomial) -> bool:
    da, db = monomial_degree(a), monomial_degree(b)
    if da != db:
        return da > db
    ea, eb = dict(a), dict(b)
    for v in sorted(set(ea) | set(eb), key=variable_key):
        xa, xb = ea.get(v, 0), eb.get(v, 0)
        if xa != xb:
            return xa > xb
    return False


def leading_monomial(f: Poly) -> Monomial:
    it = iter(f)
    lead = next(it)
    for m in it:
        if _gradedlex_greater(m, lead):
            lead = m
    return lead


def poly_vars(f: Poly) -> set[str]:
    out = set()
    for m in f:
        for v, _ in m:
            out.add(v)
    return out


def poly_const(fld, c) -> Poly:
    return {} if fld.p_is_zero(c) else {(): c}


def poly_add(fld, f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for m, c in g.items():
        s = fld.p_add(out[m], c) if m in out else c
        if m in out and fld.p_is_zero(s):
            del out[m]
        else:
            out[m] = s
    return out


def poly_neg(fld, f: Poly) -> Poly:
    return {m: fld.p_neg(c) for m, c in f.items()}


def poly_sub(fld, f: Poly, g: Poly) -> Poly:
    return poly_add(fld, f, poly_neg(fld, g))


def poly_mul(fld, f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = monomial_mul(m1, m2)
            c = fld.p_mul(c1, c2)
            if m in out:
                c = fld.p_add(out[m], c)
                if fld.p_is_zero(c):
                    del out[m]
                    continue
            out[m] = c
    return out


def poly_scale(fld, c, f: Poly) -> Poly:
    if fld.p_is_zero(c):
        return {}
    return {m: fld.p_mul(c, x) for m, x in f.items()}


def poly_monic(fld, f: Poly) -> Poly:
    if not f:
        return f
    lc = f[leading_monomial(f)]
    if fld.p_is_one(lc):
        return f
    inv = fld.p_inv(lc)
    return {m: fld.p_mul(inv, c) for m, c in f.items()}


def poly_divexact(fld, f: Poly, g: Poly) -> Poly:
    """f / g assuming the division is exact; raises ArithmeticError if not."""
    if not g:
        raise ZeroDivisionError("exact division by zero polynomial")
    if len(g) == 1:
        (mg, cg), = g.items()
        inv = fld.p_inv(cg)
        out = {}
        for m, c in f.items():
            if not monomial_divides(mg, m):
                raise ArithmeticError("division is not exact")
            out[monomial_div(m, mg)] = fld.p_mul(inv, c)
        return out
    rem = dict(f)
    q: Poly = {}
    lg = leading_monomial(g)
    lgc = g[lg]
    while rem:
        lr = leading_monomial(rem)
        if not monomial_divides(lg, lr):
            raise ArithmeticError("division is not exact")
        m = monomial_div(lr, lg)
        c = fld.p_mul(rem[lr], fld.p_inv(lgc))
        q[m] = fld.p_add(q[m], c) if m in q else c
        rem = poly_sub(fld, rem, poly_mul(fld, {m: c}, g))
    return {m: c for m, c in q.items() if not fld.p_is_zero(c)}


# -- recursive-univariate view for the gcd ----------------------------------

def _top_var(f: Poly, g: Poly) -> Optional[str]:
    vs = poly_vars(f) | poly_vars(g)
    if not vs:
        return None
    return max(vs, key=variable_key)


def _univ(f: Poly, x: str) -> dict[int, Poly]:
    """View f as a univariate polynomial in x with polynomial coefficients."""
    out: dict[int, Poly] = {}
    for m, c in f.items():
        e = dict(m).get(x, 0)
        rest = tuple(p for p in m if p[0] != x)
        out.setdefault(e, {})[rest] = c
    return out


def _from_univ(co: dict[int, Poly], x: str) -> Poly:
    out: Poly = {}
    for e, p in co.items():
        for m, c in p.items():
            key = monomial_mul(m, ((x, e),) if e else ())
            out[key] = c
    return out


def _content(fld, f: Poly, x: str) -> Poly:
    co = _univ(f, x)
    g: Poly = {}
    for p in co.values():
        g = poly_gcd(fld, g, p)
    return g


def _prem(fld, f: Poly, g: Poly, x: str) -> Poly:
    """Pseudo-remainder of f by g with respect to x."""
    fu = _univ(f, x)
    gu = _univ(g, x)
    dg = max(gu)
    lg = gu[dg]
    r = fu
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        shift = dr - dg
        new: dict[int, Poly] = {}
        degs = set(r) | {e + shift for e in gu}
        for e in degs:
            a = poly_mul(fld, lg, r.get(e, {}))
            b = poly_mul(fld, lr, gu.get(e - shift, {})) if e - shift in gu else {}
            p = poly_sub(fld, a, b)
            if p:
                new[e] = p
        r = new
    return _from_univ(r, x)


def poly_gcd(fld, f: Poly, g: Poly) -> Poly:
    """Monic gcd under graded lex; gcd with 0 returns the other argument monic."""
    if not f:
        return poly_monic(fld, g)
    if not g:
        return poly_monic(fld, f)
    if len(f) == 1 and len(g) == 1:
        (mf, _), = f.items()
        (mg, _), = g.items()
        return {monomial_gcd(mf, mg): fld.p_one()}
    if f.keys() == g.keys() and all(fld.p_eq(f[m], g[m]) for m in f):
        return poly_monic(fld, f)
    x = _top_var(f, g)
    if x is None:
        return {(): fld.p_one()}
    cf = _content(fld, f, x)
    cg = _content(fld, g, x)
    c = poly_gcd(fld, cf, cg)
    fp = poly_divexact(fld, f, cf)
    gp = poly_divexact(fld, g, cg)
    if max(_univ(fp, x)) < max(_univ(gp, x)):
        fp, gp = gp, fp
    while gp:
        r = _prem(fld, fp, gp, x)
        if r:
            r = poly_divexact(fld, r, _content(fld, r, x))
        fp, gp = gp, r
    return poly_monic(fld, poly_mul(fld, c, fp))
