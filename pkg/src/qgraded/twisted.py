"""Arithmetic in twisted group algebras k[G, c].

Elements are finite sparse sums of basis monomials x_g keyed by exact
rational degree vectors, multiplied through the cocycle:
x_g * x_h = c(g, h) * x_{g+h}.  Everything is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import cocycle as _cocycle
from .cocycle import CheckReport, Cocycle, iter_triples, power_basis_factor
from .coeff import Field, FieldElement
from .lattice import Vector, vadd, vneg, vscale, zero_vector, vdot


@dataclass(frozen=True)
class AlgebraContext:
    """Coefficient field, cocycle, and grading dimension of one algebra.

    A context without a cocycle supports only the additive structure (it
    shows up as the target of regrading along a non-injective map)."""
    field: Field
    cocycle: Optional[Cocycle]
    dim: int

    def compatible(self, other: "AlgebraContext") -> bool:
        return self is other or (self.field == other.field and self.dim == other.dim
                                 and self.cocycle is other.cocycle)


def context(c: Cocycle) -> AlgebraContext:
    return AlgebraContext(c.field, c, c.dim)


class TwistedElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: dict[Vector, FieldElement]):
        self.ctx = ctx
        self.terms = {g: v for g, v in terms.items() if not v.is_zero()}

    def __eq__(self, other):
        return (isinstance(other, TwistedElement) and other.ctx.compatible(self.ctx)
                and other.terms == self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for g in sorted(self.terms):
            co = self.terms[g]
            deg = ",".join(f"{x.numerator}/{x.denominator}" for x in g)
            bits.append(f"({co!r})*x[{deg}]")
        return " + ".join(bits)

    def is_zero(self) -> bool:
        return not self.terms

    def _need(self, other: "TwistedElement"):
        if not self.ctx.compatible(other.ctx):
            raise ValueError("algebra context mismatch")

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        self._need(other)
        out = dict(self.terms)
        for g, v in other.terms.items():
            s = out[g] + v if g in out else v
            if g in out and s.is_zero():
                del out[g]
            else:
                out[g] = s
        return TwistedElement(self.ctx, out)

    def __neg__(self) -> "TwistedElement":
        return TwistedElement(self.ctx, {g: -v for g, v in self.terms.items()})

    def __sub__(self, other: "TwistedElement") -> "TwistedElement":
        return self + (-other)

    def __mul__(self, other: "TwistedElement") -> "TwistedElement":
        self._need(other)
        c = self.ctx.cocycle
        if c is None:
            raise ValueError("context has no cocycle; products are undefined")
        out: dict[Vector, FieldElement] = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = vadd(g, h)
                v = a * b * c.at(g, h)
                if k in out:
                    v = out[k] + v
                    if v.is_zero():
                        del out[k]
                        continue
                out[k] = v
        return TwistedElement(self.ctx, out)

    def support(self) -> set[Vector]:
        return set(self.terms)


def monomial(ctx: AlgebraContext, g: Vector, coefficient=None) -> TwistedElement:
    co = ctx.field.one() if coefficient is None else coefficient
    return TwistedElement(ctx, {g: co})


def unit(ctx: AlgebraContext) -> TwistedElement:
    return monomial(ctx, zero_vector(ctx.dim))


def invert_homogeneous(a: TwistedElement) -> TwistedElement:
    """Inverse of a single-term element: every nonzero homogeneous element
    of a graded field is a unit."""
    if len(a.terms) != 1:
        raise ValueError("only nonzero homogeneous elements are invertible")
    (g, co), = a.terms.items()
    c = a.ctx.cocycle
    val = co.inverse() * c.at(g, vneg(g)).inverse()
    return TwistedElement(a.ctx, {vneg(g): val})


def is_associative_window(ctx: AlgebraContext, window: Sequence[Vector],
                          trials: int = 2000, seed: int = 0) -> CheckReport:
    """(x_f x_g) x_h = x_f (x_g x_h) over the window; runs the same triple
    schedule as the cocycle identity check, so the verdicts must agree."""
    c = ctx.cocycle
    failures = []
    count = 0
    for f, g, h in iter_triples(window, trials, seed):
        fg, gh = vadd(f, g), vadd(g, h)
        if not (c.defined_pair(g, h) and c.defined_pair(f, gh)
                and c.defined_pair(fg, h) and c.defined_pair(f, g)):
            continue
        count += 1
        left = (monomial(ctx, f) * monomial(ctx, g)) * monomial(ctx, h)
        right = monomial(ctx, f) * (monomial(ctx, g) * monomial(ctx, h))
        if left != right:
            failures.append((f, g, h))
    return CheckReport(trials=count, failures=failures)


def segre_element(a: TwistedElement, b: TwistedElement) -> TwistedElement:
    """Diagonal part of the tensor product: terms survive only in degrees
    where both factors have support."""
    if a.ctx.dim != b.ctx.dim or a.ctx.field != b.ctx.field:
        raise ValueError("grading mismatch")
    target = context(_cocycle.segre(a.ctx.cocycle, b.ctx.cocycle))
    out = {}
    for g, v in a.terms.items():
        if g in b.terms:
            out[g] = v * b.terms[g]
    return TwistedElement(target, out)


def regrade(a: TwistedElement, pi: Sequence[Vector],
            target: Optional[AlgebraContext] = None) -> TwistedElement:
    """Re-key the terms by the linear map pi; colliding degrees add.

    Unless a target context is supplied, the result lives in a cocycle-free
    context (products need the pushforward cocycle, which only exists when
    pi is injective on the support lattice)."""
    rows = tuple(pi)
    newdim = len(rows)
    ctx = target or AlgebraContext(a.ctx.field, None, newdim)
    out: dict[Vector, FieldElement] = {}
    for g, v in a.terms.items():
        k = tuple(vdot(r, g) for r in rows)
        if k in out:
            s = out[k] + v
            if s.is_zero():
                del out[k]
                continue
            out[k] = s
        else:
            out[k] = v
    return TwistedElement(ctx, out)


def veronese_element(a: TwistedElement, r: int) -> TwistedElement:
    """Divide all degrees by r and rewrite the coefficients against the
    basis x_g^r of the r-th power algebra."""
    if r < 1:
        raise ValueError("the power index must be a positive integer")
    c = a.ctx.cocycle
    target = context(_cocycle.veronese(c, r))
    out = {}
    for g, v in a.terms.items():
        g0 = vscale(Fraction(1, r), g)
        if not c.contains(g0):
            raise ValueError("degree is not divisible by the power index")
        out[g0] = v / power_basis_factor(c, g0, r)
    return TwistedElement(target, out)
