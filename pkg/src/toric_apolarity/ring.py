"""Sparse multigraded polynomials over exact rationals.

The coordinate ring S (side PRIMAL) and its dual module T (side DUAL)
share one term representation: a map from exponent tuples to nonzero
Fractions.  Graded pieces are enumerated with a positivity certificate
that bounds exponents; bases are ordered by total exponent degree, then
lexicographically, largest first, which fixes every matrix layout.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .abelian import DegreeClass
from .errors import NoCertificate, ParseError, SideMismatch


class Side(Enum):
    PRIMAL = "S"
    DUAL = "T"


def monomial_key(exponents):
    """Sort key of the monomial order: graded (total degree) then lex."""
    return (sum(exponents), exponents)


class MultiPoly:
    """Immutable sparse polynomial; ``degree`` is set when homogeneous."""

    __slots__ = ("side", "terms", "degree")

    def __init__(self, side: Side, terms, degree: DegreeClass | None = None):
        self.side = side
        self.terms = {tuple(m): Fraction(c) for m, c in dict(terms).items()
                      if c != 0}
        self.degree = degree

    @classmethod
    def zero(cls, side: Side) -> "MultiPoly":
        return cls(side, {})

    @classmethod
    def one(cls, side: Side, nvars: int) -> "MultiPoly":
        return cls(side, {(0,) * nvars: Fraction(1)})

    @classmethod
    def monomial(cls, side: Side, exponents, coeff=1,
                 degree: DegreeClass | None = None) -> "MultiPoly":
        return cls(side, {tuple(exponents): Fraction(coeff)}, degree)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.side == other.side
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.side, frozenset(self.terms.items())))

    def _require_side(self, other: "MultiPoly"):
        if self.side != other.side:
            raise SideMismatch(
                f"cannot combine {self.side.name} with {other.side.name}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._require_side(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        degree = self.degree if self.degree == other.degree else None
        if self.is_zero():
            degree = other.degree
        elif other.is_zero():
            degree = self.degree
        return MultiPoly(self.side, terms, degree)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.side, {m: -c for m, c in self.terms.items()},
                         self.degree)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly.zero(self.side)
        return MultiPoly(self.side, {m: c * v for m, v in self.terms.items()},
                         self.degree)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.side is not Side.PRIMAL or other.side is not Side.PRIMAL:
            raise SideMismatch("multiplication is defined on the primal ring only")
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        degree = None
        if self.degree is not None and other.degree is not None:
            degree = self.degree + other.degree
        return MultiPoly(Side.PRIMAL, terms, degree)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]),
                      reverse=True)

    def __repr__(self):
        return f"MultiPoly({self.side.name}, {dict(self.terms)!r})"


def homogeneous_degree(fan, poly: MultiPoly) -> DegreeClass | None:
    """The common degree of all terms, or None if inhomogeneous/zero."""
    degree = None
    for m in poly.terms:
        d = fan.monomial_degree(m)
        if degree is None:
            degree = d
        elif degree != d:
            return None
    return degree


def tag_degree(fan, poly: MultiPoly) -> MultiPoly:
    return MultiPoly(poly.side, poly.terms, homogeneous_degree(fan, poly))


@dataclass(frozen=True)
class PositivityCertificate:
    """Weight vector pairing every variable's free degree part to >= 1,
    which guarantees graded pieces are finite."""

    weight: tuple

    def grade(self, degree: DegreeClass) -> int:
        return sum(w * x for w, x in zip(self.weight, degree.free))


def find_certificate(fan, bound: int = 16) -> PositivityCertificate:
    """Search |coords| <= bound for a valid weight vector (deterministic)."""
    rank = fan.class_group.free_rank
    frees = [d.free for d in fan.var_degrees]
    if rank == 0:
        raise NoCertificate("class group has no free part")

    def valid(w):
        return all(sum(a * b for a, b in zip(w, f)) >= 1 for f in frees)

    for radius in range(1, bound + 1):
        for w in product(range(-radius, radius + 1), repeat=rank):
            if max(abs(x) for x in w) == radius and valid(w):
                return PositivityCertificate(tuple(w))
    raise NoCertificate(f"no weight vector with coordinates up to {bound}")


def default_certificate(fan) -> PositivityCertificate:
    cert = getattr(fan, "_certificate", None)
    if cert is None:
        cert = find_certificate(fan)
        fan._certificate = cert
    return cert


@lru_cache(maxsize=None)
def _basis_cached(fan, cert: PositivityCertificate, degree: DegreeClass):
    weights = [cert.grade(d) for d in fan.var_degrees]
    budget = cert.grade(degree)
    nvars = len(fan.rays)
    found = []
    expo = [0] * nvars

    def walk(i, left):
        if i == nvars:
            if fan.monomial_degree(expo) == degree:
                found.append(tuple(expo))
            return
        for e in range(left // weights[i] + 1):
            expo[i] = e
            walk(i + 1, left - e * weights[i])
        expo[i] = 0

    if budget >= 0:
        walk(0, budget)
    return tuple(sorted(found, key=monomial_key, reverse=True))


def monomial_basis(fan, cert: PositivityCertificate, degree: DegreeClass):
    """All monomials of the given degree, in the fixed matrix order."""
    return _basis_cached(fan, cert, degree)


def basis(fan, degree: DegreeClass):
    """Monomial basis under the fan's cached default certificate."""
    return monomial_basis(fan, default_certificate(fan), degree)


# --- text syntax --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<int>\d+)"
                    r"|(?P<op>[*^/+()-]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"bad character at ...{text[pos:pos + 10]!r}")
        if m.lastgroup == "name":
            out.append(("name", m.group("name")))
        elif m.lastgroup == "int":
            out.append(("int", int(m.group("int"))))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


def parse_poly(text: str, names, side: Side, fan=None) -> MultiPoly:
    """Parse the shared polynomial syntax, e.g. ``3/4*a0^2*b1 - a1^3``.

    Variables must come from ``names``; when ``fan`` is given the result
    carries its degree tag if homogeneous.
    """
    index = {n: i for i, n in enumerate(names)}
    tokens = _tokenize(text)
    nvars = len(names)
    terms = {}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_exponent() -> int:
        kind, val = take()
        sign = 1
        if (kind, val) == ("op", "-"):
            sign = -1
            kind, val = take()
        if kind != "int":
            raise ParseError("expected integer exponent")
        return sign * val

    def parse_term():
        coeff = Fraction(1)
        expo = [0] * nvars
        expect_factor = True
        while True:
            kind, val = peek()
            if kind is None or (kind == "op" and val in "+-"):
                break
            if kind == "op" and val == "*":
                take()
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"unexpected token {val!r}")
            if kind == "int":
                take()
                num = Fraction(val)
                if peek() == ("op", "/"):
                    take()
                    dkind, dval = take()
                    if dkind != "int" or dval == 0:
                        raise ParseError("expected nonzero integer denominator")
                    num /= dval
                coeff *= num
            elif kind == "name":
                take()
                if val not in index:
                    raise ParseError(f"unknown variable {val!r}")
                e = 1
                if peek() == ("op", "^"):
                    take()
                    e = parse_exponent()
                if e < 0:
                    raise ParseError("negative exponents are not allowed here")
                expo[index[val]] += e
            else:
                raise ParseError(f"unexpected token {val!r}")
            expect_factor = False
        return coeff, tuple(expo)

    first = True
    while pos < len(tokens):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms")
        coeff, expo = parse_term()
        coeff *= sign
        terms[expo] = terms.get(expo, Fraction(0)) + coeff
        first = False

    poly = MultiPoly(side, terms)
    if fan is not None:
        poly = tag_degree(fan, poly)
    return poly


def _format_monomial(exponents, names) -> str:
    parts = []
    for name, e in zip(names, exponents):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(poly: MultiPoly, names) -> str:
    """Canonical printer; round-trips bit-exactly through parse_poly."""
    if poly.is_zero():
        return "0"
    pieces = []
    for i, (mono, coeff) in enumerate(poly.sorted_terms()):
        mstr = _format_monomial(mono, names)
        mag = abs(coeff)
        if mstr and mag == 1:
            body = mstr
        elif mstr:
            body = f"{mag}*{mstr}"
        else:
            body = str(mag)
        if i == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)
