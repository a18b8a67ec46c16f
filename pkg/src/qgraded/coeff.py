"""Exact coefficient fields: Q, finite fields F_q, and rational-function
fields k(a[1,1], a[1,2], ...).

Elements are canonical, so payload equality is field equality.  Rational
functions are reduced by multivariate gcd and the denominator is monic
under graded lex.  Root extraction is total on Q and F_q; on function
fields only the Laurent-monomial subgroup supports roots (everything else
answers UNSUPPORTED, which is distinct from "no root exists").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from . import _poly
from ._poly import (Monomial, monomial_key, poly_add, poly_divexact, poly_gcd,
                    poly_mul, poly_neg, leading_monomial, variable_key)


class _Unsupported:
    """Answer for root queries the field cannot decide (not the same as None)."""

    def __repr__(self):
        return "UNSUPPORTED"


UNSUPPORTED = _Unsupported()


def _int_nth_root(m: int, n: int) -> Optional[int]:
    """Exact floor-free n-th root of m >= 0, or None."""
    if m < 0:
        raise ValueError("negative radicand")
    if m in (0, 1) or n == 1:
        return m
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x ** n == m else None


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# field objects (payload-level arithmetic lives on the field)

class Field:
    kind = "?"

    def el(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def one(self) -> "FieldElement":
        return FieldElement(self, self.p_one())

    def zero(self) -> "FieldElement":
        return FieldElement(self, self.p_zero())

    def p_is_one(self, a) -> bool:
        return self.p_eq(a, self.p_one())

    def p_is_zero(self, a) -> bool:
        return self.p_eq(a, self.p_zero())

    def p_eq(self, a, b) -> bool:
        return a == b

    def p_sub(self, a, b):
        return self.p_add(a, self.p_neg(b))

    def p_div(self, a, b):
        if self.p_is_zero(b):
            raise ZeroDivisionError("division by zero field element")
        return self.p_mul(a, self.p_inv(b))

    def p_pow(self, a, n: int):
        if n < 0:
            return self.p_pow(self.p_inv(a), -n)
        out = self.p_one()
        base = a
        while n:
            if n & 1:
                out = self.p_mul(out, base)
            base = self.p_mul(base, base)
            n >>= 1
        return out

    def characteristic(self) -> int:
        raise NotImplementedError


class Rationals(Field):
    kind = "rationals"

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("field mismatch")
            return x.payload
        return Fraction(x)

    def p_zero(self):
        return Fraction(0)

    def p_one(self):
        return Fraction(1)

    def p_add(self, a, b):
        return a + b

    def p_neg(self, a):
        return -a

    def p_mul(self, a, b):
        return a * b

    def p_inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero field element")
        return 1 / a

    def p_pow(self, a, n):
        return a ** n

    def nth_root_payload(self, a: Fraction, n: int):
        if a == 0:
            return Fraction(0)
        neg = a < 0
        if neg and n % 2 == 0:
            return None
        rn = _int_nth_root(abs(a.numerator), n)
        rd = _int_nth_root(a.denominator, n)
        if rn is None or rd is None:
            return None
        return Fraction(-rn if neg else rn, rd)

    def characteristic(self):
        return 0

    def format(self, a: Fraction) -> str:
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Q"


QQ = Rationals()


def _pp_trim(a: list[int]) -> tuple[int, ...]:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pp_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # reduce by the monic modulus
    k = len(mod) - 1
    while len(out) > k:
        lead = out.pop()
        if lead:
            for t in range(k):
                out[len(out) - k + t] = (out[len(out) - k + t] - lead * mod[t]) % p
    return _pp_trim(list(out))


def _pp_powmod(a, e, mod, p):
    out = (1,)
    base = a
    while e:
        if e & 1:
            out = _pp_mulmod(out, base, mod, p)
        base = _pp_mulmod(base, base, mod, p)
        e >>= 1
    return out


def _pp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # make b monic, reduce a mod b
        inv = pow(b[-1], p - 2, p)
        b = [(inv * c) % p for c in b]
        while len(a) >= len(b) and any(a):
            if a[-1]:
                lead = a[-1]
                off = len(a) - len(b)
                for t in range(len(b)):
                    a[off + t] = (a[off + t] - lead * b[t]) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, list(_pp_trim(a))
    return _pp_trim(a)


def _irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over F_p with the smallest encoding."""
    x = (0, 1)
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        mod = tuple(coeffs) + (1,)
        if _pp_powmod(x, p ** k, mod, p) != x:
            continue
        ok = True
        for t in _factor(k):
            probe = _pp_powmod(x, p ** (k // t), mod, p)
            diff = list(probe)
            while len(diff) < 2:
                diff.append(0)
            diff[1] = (diff[1] - 1) % p
            if len(_pp_gcd(_pp_trim(diff), mod, p)) > 1:
                ok = False
                break
        if ok:
            return mod
    raise RuntimeError("no irreducible polynomial found")


class FiniteField(Field):
    """F_q for a prime power q <= 2^16; payloads are integers in [0, q).

    For q = p^k with k > 1 the integer encodes base-p digits of the
    coordinates in the power basis of the smallest-encoded irreducible
    modulus.  Log/exp tables against the smallest generator are built
    lazily and shared.
    """

    kind = "prime_field"

    def __init__(self, q: int):
        if q < 2 or q > 2 ** 16:
            raise ValueError("field size must be a prime power <= 2^16")
        fac = _factor(q)
        if len(fac) != 1:
            raise ValueError(f"{q} is not a prime power")
        (self.p, self.k), = fac.items()
        self.q = q
        self._mod = _irreducible_modulus(self.p, self.k) if self.k > 1 else None
        self._exp: Optional[list[int]] = None
        self._log: Optional[dict[int, int]] = None

    # encoding helpers
    def _dec(self, a: int):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return _pp_trim(out)

    def _enc(self, poly) -> int:
        out = 0
        for i, c in enumerate(poly):
            out += c * self.p ** i
        return out

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("field mismatch")
            return x.payload
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes in the field")
            return self.p_mul(x.numerator % self.q if self.k == 1 else self.coerce(x.numerator),
                              self.p_inv(self.coerce(x.denominator)))
        x = int(x)
        if self.k == 1:
            return x % self.p
        return self._enc([x % self.p])

    def from_encoding(self, code: int) -> "FieldElement":
        """The element whose base-p digit encoding is ``code`` (equals el(code)
        only for prime q)."""
        if not 0 <= code < self.q:
            raise ValueError("encoding out of range")
        return FieldElement(self, code)

    def p_zero(self):
        return 0

    def p_one(self):
        return 1

    def p_add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        pa, pb = self._dec(a), self._dec(b)
        n = max(len(pa), len(pb))
        return self._enc(_pp_trim([( (pa[i] if i < len(pa) else 0)
                                   + (pb[i] if i < len(pb) else 0)) % self.p
                                   for i in range(n)]))

    def p_neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self._enc(_pp_trim([(-c) % self.p for c in self._dec(a)]))

    def p_mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._enc(_pp_mulmod(self._dec(a), self._dec(b), self._mod, self.p))

    def p_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.p_pow(a, self.q - 2)

    def _tables(self):
        if self._exp is None:
            g = self._generator()
            exp = [1] * (self.q - 1)
            log = {1: 0}
            cur = 1
            for i in range(1, self.q - 1):
                cur = self.p_mul(cur, g)
                exp[i] = cur
                log[cur] = i
            self._exp, self._log, self._gen = exp, log, g
        return self._exp, self._log

    def _generator(self) -> int:
        primes = list(_factor(self.q - 1))
        for g in range(2, self.q):
            if self.k > 1 and self._dec(g) == ():
                continue
            if all(self.p_pow(g, (self.q - 1) // t) != 1 for t in primes):
                return g
        raise RuntimeError("no generator found")

    def generator(self) -> int:
        self._tables()
        return self._gen

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("discrete log of zero")
        _, log = self._tables()
        return log[a]

    def exp(self, e: int) -> int:
        exp, _ = self._tables()
        return exp[e % (self.q - 1)]

    def nth_root_payload(self, a: int, n: int):
        if a == 0:
            return 0
        s = self.dlog(a)
        g0 = gcd(n, self.q - 1)
        if s % g0:
            return None
        m = (self.q - 1) // g0
        x = (s // g0) * pow(n // g0, -1, m) % m
        return self.exp(x)

    def characteristic(self):
        return self.p

    def format(self, a: int) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("gf", self.q))

    def __repr__(self):
        return f"GF({self.q})"


_GF_CACHE: dict[int, FiniteField] = {}


def finite_field(q: int) -> FiniteField:
    if q not in _GF_CACHE:
        _GF_CACHE[q] = FiniteField(q)
    return _GF_CACHE[q]


def dlog_table(q: int) -> dict[int, int]:
    """The isomorphism F_q* -> Z/(q-1) for the smallest generator."""
    f = finite_field(q)
    f._tables()
    return dict(f._log)


class FunctionField(Field):
    """Rational functions over a base field.

    ``variables`` is either an explicit tuple of admissible names or None
    for an open family (any indexed name is admissible; the direct-limit
    construction needs fresh variables a[j,i] at every level).  Payloads
    are reduced (numerator, denominator) pairs frozen as sorted tuples of
    (monomial, coefficient); the denominator is monic under graded lex.
    """

    kind = "function_field"

    def __init__(self, base: Field, variables: Optional[tuple[str, ...]] = None):
        if isinstance(base, FunctionField) and base.variables is None:
            raise ValueError("cannot nest over an open function field")
        self.base = base
        self.variables = tuple(variables) if variables is not None else None

    def allows(self, name: str) -> bool:
        return self.variables is None or name in self.variables

    # payload <-> dict helpers
    @staticmethod
    def _thaw(t) -> _poly.Poly:
        return dict(t)

    @staticmethod
    def _freeze(d: _poly.Poly):
        return tuple(sorted(d.items(), key=lambda kv: kv[0]))

    def _normalize(self, num: _poly.Poly, den: _poly.Poly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ((), (((), self.base.p_one()),))
        g = poly_gcd(self.base, num, den)
        if g != {(): self.base.p_one()}:
            num = poly_divexact(self.base, num, g)
            den = poly_divexact(self.base, den, g)
        lc = den[leading_monomial(den)]
        if not self.base.p_is_one(lc):
            inv = self.base.p_inv(lc)
            num = {m: self.base.p_mul(inv, c) for m, c in num.items()}
            den = {m: self.base.p_mul(inv, c) for m, c in den.items()}
        return (self._freeze(num), self._freeze(den))

    def from_polys(self, num: _poly.Poly, den: _poly.Poly) -> "FieldElement":
        return FieldElement(self, self._normalize(num, den))

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field == self:
                return x.payload
            if x.field == self.base:
                return self._normalize({(): x.payload} if not x.field.p_is_zero(x.payload) else {},
                                       {(): self.base.p_one()})
            raise ValueError("field mismatch")
        c = self.base.coerce(x)
        return self._normalize({(): c} if not self.base.p_is_zero(c) else {},
                               {(): self.base.p_one()})

    def variable(self, name: str) -> "FieldElement":
        if not self.allows(name):
            raise ValueError(f"unknown variable {name!r}")
        return self.from_polys({((name, 1),): self.base.p_one()}, {(): self.base.p_one()})

    def p_zero(self):
        return ((), (((), self.base.p_one()),))

    def p_one(self):
        return ((((), self.base.p_one()),), (((), self.base.p_one()),))

    def p_is_zero(self, a):
        return not a[0]

    def p_add(self, a, b):
        n1, d1 = self._thaw(a[0]), self._thaw(a[1])
        n2, d2 = self._thaw(b[0]), self._thaw(b[1])
        num = poly_add(self.base, poly_mul(self.base, n1, d2), poly_mul(self.base, n2, d1))
        return self._normalize(num, poly_mul(self.base, d1, d2))

    def p_neg(self, a):
        return (tuple((m, self.base.p_neg(c)) for m, c in a[0]), a[1])

    def p_mul(self, a, b):
        n = poly_mul(self.base, self._thaw(a[0]), self._thaw(b[0]))
        d = poly_mul(self.base, self._thaw(a[1]), self._thaw(b[1]))
        return self._normalize(n, d)

    def p_inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("division by zero field element")
        return self._normalize(self._thaw(a[1]), self._thaw(a[0]))

    def nth_root_payload(self, a, n: int):
        if not a[0]:
            raise ZeroDivisionError("root of zero")
        mono = self.as_monomial_payload(a)
        if mono is None:
            return UNSUPPORTED
        unit, exps = mono
        if any(e % n for e in exps.values()):
            return None
        r = self.base.nth_root_payload(unit, n)
        if r is UNSUPPORTED:
            return UNSUPPORTED
        if r is None:
            return None
        num = {monomial_key({v: e // n for v, e in exps.items() if e > 0}): r}
        den = {monomial_key({v: -e // n for v, e in exps.items() if e < 0}): self.base.p_one()}
        return self._normalize(num, den)

    def as_monomial_payload(self, a):
        """(unit, exponent dict) when the payload is a Laurent monomial."""
        if len(a[0]) != 1 or len(a[1]) != 1:
            return None
        (mn, cn), = a[0]
        (md, cd), = a[1]
        if not self.base.p_is_one(cd):
            return None  # cannot happen for normalized payloads
        exps = dict(mn)
        for v, e in md:
            exps[v] = exps.get(v, 0) - e
        return cn, {v: e for v, e in exps.items() if e}

    def characteristic(self):
        return self.base.characteristic()

    def format(self, a) -> str:
        def fmt_poly(t):
            if not t:
                return "0"
            parts = []
            for m, c in t:
                factors = [] if self.base.p_is_one(c) and m else [self.base.format(c)]
                for v, e in m:
                    factors.append(v if e == 1 else f"{v}^{e}")
                parts.append("*".join(factors) if factors else self.base.format(c))
            return " + ".join(parts)

        num, den = a
        if den == (((), self.base.p_one()),):
            return fmt_poly(num)
        return f"({fmt_poly(num)})/({fmt_poly(den)})"

    def __eq__(self, other):
        return (isinstance(other, FunctionField) and other.base == self.base
                and other.variables == self.variables)

    def __hash__(self):
        return hash(("ff", self.base, self.variables))

    def __repr__(self):
        vs = "..." if self.variables is None else ",".join(self.variables)
        return f"{self.base!r}({vs})"


def function_field(base: Field, variables=None) -> FunctionField:
    return FunctionField(base, variables)


# ---------------------------------------------------------------------------
# elements

class FieldElement:
    __slots__ = ("field", "payload")

    def __init__(self, field: Field, payload):
        self.field = field
        self.payload = payload

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            return self.field.el(other)
        if other.field != self.field:
            raise ValueError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.p_add(self.payload, other.payload))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.p_sub(self.payload, other.payload))

    def __neg__(self):
        return FieldElement(self.field, self.field.p_neg(self.payload))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.p_mul(self.payload, other.payload))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.p_div(self.payload, other.payload))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.p_pow(self.payload, n))

    def inverse(self):
        return FieldElement(self.field, self.field.p_inv(self.payload))

    def is_zero(self) -> bool:
        return self.field.p_is_zero(self.payload)

    def is_one(self) -> bool:
        return self.field.p_is_one(self.payload)

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and other.field == self.field
                and self.field.p_eq(self.payload, other.payload))

    def __hash__(self):
        return hash((self.field, self.payload))

    def __repr__(self):
        return self.field.format(self.payload)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact field arithmetic; descriptor mismatch and x/0 raise."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def nth_root(a: FieldElement, n: int):
    """An exact n-th root, None if none exists, or UNSUPPORTED when the
    field cannot decide (non-monomial rational functions)."""
    if n < 1:
        raise ValueError("root index must be positive")
    if a.is_zero():
        raise ValueError("root of zero is excluded")
    r = a.field.nth_root_payload(a.payload, n)
    if r is None or r is UNSUPPORTED:
        return r
    return FieldElement(a.field, r)


# ---------------------------------------------------------------------------
# Laurent monomials (the fast path for root extraction)

@dataclass(frozen=True)
class LaurentMonomial:
    """unit * prod var^exp with a nonzero unit from the base field."""
    unit: FieldElement
    exps: tuple[tuple[str, int], ...]

    @staticmethod
    def make(unit: FieldElement, exps: dict[str, int]) -> "LaurentMonomial":
        if unit.is_zero():
            raise ValueError("monomial unit must be nonzero")
        return LaurentMonomial(unit, monomial_key(exps))

    def exponents(self) -> dict[str, int]:
        return dict(self.exps)

    def __mul__(self, other: "LaurentMonomial") -> "LaurentMonomial":
        e = self.exponents()
        for v, k in other.exps:
            e[v] = e.get(v, 0) + k
        return LaurentMonomial.make(self.unit * other.unit, e)

    def __pow__(self, n: int) -> "LaurentMonomial":
        return LaurentMonomial.make(self.unit ** n,
                                    {v: e * n for v, e in self.exps})

    def is_one(self) -> bool:
        return not self.exps and self.unit.is_one()


def monomial_nth_root(m: LaurentMonomial, n: int) -> Optional[LaurentMonomial]:
    """Root iff every exponent is divisible by n and the unit has a root."""
    if n < 1:
        raise ValueError("root index must be positive")
    if any(e % n for _, e in m.exps):
        return None
    r = m.unit.field.nth_root_payload(m.unit.payload, n)
    if r is None or r is UNSUPPORTED:
        return None
    return LaurentMonomial.make(FieldElement(m.unit.field, r),
                                {v: e // n for v, e in m.exps})


def embed_monomial(m: LaurentMonomial, field: FunctionField) -> FieldElement:
    """Faithful multiplicative embedding into a rational-function field."""
    if m.unit.field != field.base:
        raise ValueError("monomial unit lives in a different base field")
    for v, _ in m.exps:
        if not field.allows(v):
            raise ValueError(f"unknown variable {v!r}")
    num = {monomial_key({v: e for v, e in m.exps if e > 0}): m.unit.payload}
    den = {monomial_key({v: -e for v, e in m.exps if e < 0}): field.base.p_one()}
    return field.from_polys(num, den)


def as_monomial(a: FieldElement) -> Optional[LaurentMonomial]:
    """Recover the Laurent monomial from a function-field element, if it is one."""
    if not isinstance(a.field, FunctionField):
        return None
    got = a.field.as_monomial_payload(a.payload)
    if got is None:
        return None
    unit, exps = got
    return LaurentMonomial.make(FieldElement(a.field.base, unit), exps)
