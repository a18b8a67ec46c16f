"""JSON schemas shared by the CLI.

Rationals serialize as reduced "p/q" strings with q > 0; vectors as arrays
of those; integer matrices as row-major arrays.  Cocycle rules are tagged
unions, rational functions are {"num": [...], "den": [...]} with polynomials
as lists of (coefficient, exponent-map) pairs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from . import cocycle as cmod
from . import coeff, lattice, tower
from ._poly import monomial_key
from .coeff import FieldElement
from .lattice import SubgroupBasis, Vector


# -- rationals, vectors, matrices -------------------------------------------

def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    return Fraction(s)


def format_vector(v: Vector) -> list[str]:
    return [format_fraction(x) for x in v]


def parse_vector(doc) -> Vector:
    return tuple(Fraction(x) for x in doc)


def format_basis(sub: SubgroupBasis) -> list[list[str]]:
    return [format_vector(v) for v in sub.basis]


def parse_basis(doc, ambient_dim: int) -> SubgroupBasis:
    return lattice.subgroup_basis(ambient_dim, [parse_vector(v) for v in doc])


# -- fields and elements -----------------------------------------------------

def format_field(f: coeff.Field) -> dict:
    if isinstance(f, coeff.Rationals):
        return {"kind": "rationals"}
    if isinstance(f, coeff.FiniteField):
        return {"kind": "prime_field", "q": f.q}
    if isinstance(f, coeff.FunctionField):
        return {"kind": "function_field", "base": format_field(f.base),
                "vars": list(f.variables) if f.variables is not None else None}
    raise ValueError(f"unknown field {f!r}")


def parse_field(doc) -> coeff.Field:
    if doc is None:
        return coeff.QQ
    kind = doc.get("kind")
    if kind == "rationals":
        return coeff.QQ
    if kind == "prime_field":
        return coeff.finite_field(int(doc["q"]))
    if kind == "function_field":
        vs = doc.get("vars")
        return coeff.function_field(parse_field(doc.get("base")),
                                    tuple(vs) if vs is not None else None)
    raise ValueError(f"unknown field kind {kind!r}")


def _format_poly(f: coeff.FunctionField, terms) -> list:
    out = []
    for mono, c in terms:
        out.append([format_element(FieldElement(f.base, c)), dict(mono)])
    return out


def _parse_poly(f: coeff.FunctionField, doc) -> dict:
    poly = {}
    for coef, exps in doc:
        c = parse_element(f.base, coef).payload
        key = monomial_key({str(v): int(e) for v, e in exps.items()})
        if key in poly:
            raise ValueError("duplicate monomial in polynomial")
        poly[key] = c
    return poly


def format_element(x: FieldElement):
    f = x.field
    if isinstance(f, coeff.Rationals):
        return format_fraction(x.payload)
    if isinstance(f, coeff.FiniteField):
        return int(x.payload)
    if isinstance(f, coeff.FunctionField):
        num, den = x.payload
        return {"num": _format_poly(f, num), "den": _format_poly(f, den)}
    raise ValueError(f"unknown field {f!r}")


def parse_element(f: coeff.Field, doc) -> FieldElement:
    if isinstance(f, coeff.Rationals):
        return f.el(Fraction(doc))
    if isinstance(f, coeff.FiniteField):
        return f.from_encoding(int(doc))
    if isinstance(f, coeff.FunctionField):
        if isinstance(doc, dict):
            return f.from_polys(_parse_poly(f, doc["num"]), _parse_poly(f, doc["den"]))
        return f.el(Fraction(doc))
    raise ValueError(f"unknown field {f!r}")


def format_monomial(m: coeff.LaurentMonomial) -> dict:
    return {"unit": format_element(m.unit), "exps": dict(m.exps)}


def parse_monomial(base: coeff.Field, doc) -> coeff.LaurentMonomial:
    return coeff.LaurentMonomial.make(parse_element(base, doc["unit"]),
                                      {str(v): int(e) for v, e in doc["exps"].items()})


# -- cocycle rules ------------------------------------------------------------

def format_cocycle(c: cmod.Cocycle) -> dict:
    if isinstance(c, cmod.Trivial):
        out: dict[str, Any] = {"type": "trivial", "dim": c.dim,
                               "field": format_field(c.field)}
        if c.domain is not None:
            out["basis"] = format_basis(c.domain)
        return out
    if isinstance(c, cmod.Bilinear):
        return {"type": "bilinear", "A": [row[:] for row in c.a],
                "lambda": format_element(c.lam),
                "basis": [format_vector(v) for v in c.lattice_basis],
                "field": format_field(c.lam.field)}
    if isinstance(c, tower.LimitCocycle):
        return {"type": "rkd", "d": c.d, "schedule": c.schedule.spec(),
                "base": format_field(c.base)}
    if isinstance(c, cmod.Sum):
        return {"type": "sum", "of": [format_cocycle(c.c1), format_cocycle(c.c2)]}
    if isinstance(c, cmod.Power):
        return {"type": "power", "of": format_cocycle(c.c), "r": c.r}
    if isinstance(c, cmod.Restriction):
        return {"type": "restriction", "of": format_cocycle(c.c),
                "basis": format_basis(c.domain)}
    if isinstance(c, cmod.RootExtension):
        return {"type": "root_extension", "of": format_cocycle(c.c),
                "e": format_vector(c.e), "p": c.p, "y": format_element(c.y)}
    if isinstance(c, cmod.PullbackLinear):
        return {"type": "pullback", "of": format_cocycle(c.c),
                "rows": [format_vector(r) for r in c.rows],
                "basis": format_basis(c.domain) if c.domain else None,
                "dim": c.dim}
    if isinstance(c, cmod.Coboundary):
        return {"type": "coboundary", "dim": c.dim, "beta": format_beta(c.beta)}
    if isinstance(c, cmod.TableRule):
        return {"type": "table", "dim": c.dim, "field": format_field(c.field),
                "points": [format_vector(p) for p in c.points],
                "values": [{"g": format_vector(g), "h": format_vector(h),
                            "val": format_element(v)}
                           for (g, h), v in sorted(c.pairs.items())]}
    raise ValueError(f"cannot serialize {type(c).__name__}")


_KNOWN_KEYS = {
    "trivial": {"type", "dim", "field", "basis"},
    "bilinear": {"type", "A", "lambda", "basis", "field"},
    "rkd": {"type", "d", "schedule", "base", "char"},
    "sum": {"type", "of"},
    "power": {"type", "of", "r"},
    "restriction": {"type", "of", "basis"},
    "root_extension": {"type", "of", "e", "p", "y"},
    "pullback": {"type", "of", "rows", "basis", "dim"},
    "coboundary": {"type", "dim", "beta"},
    "table": {"type", "dim", "field", "points", "values"},
}


def parse_cocycle(doc) -> cmod.Cocycle:
    kind = doc.get("type")
    if kind not in _KNOWN_KEYS:
        raise ValueError(f"unknown cocycle type {kind!r}")
    unknown = set(doc) - _KNOWN_KEYS[kind]
    if unknown:
        raise ValueError(f"unknown fields {sorted(unknown)} in {kind!r} cocycle")
    if kind == "trivial":
        fld = parse_field(doc.get("field"))
        dom = parse_basis(doc["basis"], int(doc["dim"])) if "basis" in doc else None
        return cmod.Trivial(fld, int(doc["dim"]), dom)
    if kind == "bilinear":
        fld = parse_field(doc.get("field"))
        lam = parse_element(fld, doc["lambda"])
        basis = [parse_vector(v) for v in doc["basis"]]
        return cmod.Bilinear(doc["A"], lam, basis)
    if kind == "rkd":
        sch = parse_schedule(doc["schedule"])
        if "base" in doc:
            base = parse_field(doc["base"])
        elif doc.get("char", 0):
            base = coeff.finite_field(int(doc["char"]))
        else:
            base = None
        return tower.limit_cocycle(int(doc["d"]), sch, base)
    if kind == "sum":
        c1, c2 = (parse_cocycle(d) for d in doc["of"])
        return cmod.segre(c1, c2)
    if kind == "power":
        return cmod.veronese(parse_cocycle(doc["of"]), int(doc["r"]))
    if kind == "restriction":
        inner = parse_cocycle(doc["of"])
        return cmod.restrict(inner, parse_basis(doc["basis"], inner.dim))
    if kind == "root_extension":
        inner = parse_cocycle(doc["of"])
        return cmod.extend_root(inner, parse_vector(doc["e"]), int(doc["p"]),
                                parse_element(inner.field, doc["y"]))
    if kind == "pullback":
        inner = parse_cocycle(doc["of"])
        dim = int(doc["dim"])
        dom = parse_basis(doc["basis"], dim) if doc.get("basis") else None
        rows = tuple(parse_vector(r) for r in doc["rows"])
        return cmod.PullbackLinear(inner, rows, dom, dim)
    if kind == "coboundary":
        beta = parse_beta(doc["beta"])
        return cmod.Coboundary(beta, int(doc["dim"]))
    if kind == "table":
        fld = parse_field(doc.get("field"))
        points = [parse_vector(p) for p in doc["points"]]
        pairs = {(parse_vector(e["g"]), parse_vector(e["h"])):
                 parse_element(fld, e["val"]) for e in doc["values"]}
        return cmod.TableRule(fld, int(doc["dim"]), pairs, points)
    raise AssertionError


def parse_schedule(doc) -> tower.PrimeSchedule:
    if doc == "diagonal":
        return tower.PrimeSchedule("diagonal")
    if isinstance(doc, dict) and "constant" in doc:
        return tower.PrimeSchedule("constant", int(doc["constant"]))
    raise ValueError(f"unknown schedule {doc!r}")


# -- beta rules and reports ---------------------------------------------------

def format_beta(beta: cmod.BetaRule) -> dict:
    if beta.table is None:
        raise ValueError("only tabulated beta rules serialize")
    return {"field": format_field(beta.field),
            "domain": format_basis(beta.domain) if beta.domain else None,
            "values": [{"deg": format_vector(g), "val": format_element(v)}
                       for g, v in sorted(beta.table.items())]}


def parse_beta(doc) -> cmod.BetaRule:
    fld = parse_field(doc.get("field"))
    table = {parse_vector(e["deg"]): parse_element(fld, e["val"])
             for e in doc["values"]}
    dim = len(next(iter(table)))
    dom = parse_basis(doc["domain"], dim) if doc.get("domain") else None
    return cmod.BetaRule(field=fld, domain=dom, table=table)


def format_report(rep: cmod.CheckReport) -> dict:
    return {"trials": rep.trials, "verdict": rep.verdict,
            "failures": [repr(f) for f in rep.failures[:10]],
            "failure_count": len(rep.failures)}


# -- twisted elements ---------------------------------------------------------

def format_twisted(a) -> dict:
    return {"terms": [{"deg": format_vector(g), "coef": format_element(v)}
                      for g, v in sorted(a.terms.items())]}


def parse_twisted(ctx, doc):
    from .twisted import TwistedElement
    terms = {parse_vector(e["deg"]): parse_element(ctx.field, e["coef"])
             for e in doc["terms"]}
    return TwistedElement(ctx, terms)
