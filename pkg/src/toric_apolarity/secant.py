"""Monomial parametrization of the embedding, exact decomposition checks,
symbolic limit certificates for border-rank upper bounds, and randomized
Terracini tangent-rank probes over a prime field.

Tangent matrices stack, per sampled point, its coordinate row followed by
one symbolic derivative row per free chart parameter; derivatives use the
exponent-drop rule, never numerics.  Prime-field ranks only ever
underestimate the rational rank, so probe results are certified lower
bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .abelian import DegreeClass
from .errors import (NegativeExponentResidue, NonSquare, ParseError,
                     PointInIrrelevantLocus)
from .linalg import det_bareiss, det_mod, mat_mod, rank_bareiss, rank_mod
from .ring import MultiPoly, Side, _tokenize, basis

DEFAULT_PRIME = 101
DEFAULT_TRIALS = 5


def parametrize(fan, degree: DegreeClass, coords) -> MultiPoly:
    """Image of a point under the degree's monomial parametrization:
    the sum over the dual basis of (coordinate monomial) * (basis monomial)."""
    coords = [Fraction(c) for c in coords]
    if len(coords) != len(fan.rays):
        raise ParseError(f"expected {len(fan.rays)} coordinates")
    if not fan.irrelevant.nonvanishing_at(coords):
        raise PointInIrrelevantLocus(f"coordinates {coords} lie in the cut locus")
    terms = {}
    for mono in basis(fan, degree):
        value = Fraction(1)
        for c, e in zip(coords, mono):
            if e:
                value *= c ** e
        if value:
            terms[mono] = value
    return MultiPoly(Side.DUAL, terms, degree)


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    residual: MultiPoly


def verify_decomposition(form, terms) -> DecompositionCheck:
    """Exact check that sum(coeff * parametrize(point)) equals the form.

    ``terms`` is a sequence of (coefficient, coordinates) pairs.
    """
    total = MultiPoly.zero(Side.DUAL)
    for coeff, coords in terms:
        total = total + parametrize(form.fan, form.degree, coords).scale(coeff)
    residual = total - form.poly
    return DecompositionCheck(ok=residual.is_zero(), residual=residual)


# --- symbolic limit families ---------------------------------------------

@dataclass(frozen=True)
class LaurentScalar:
    """coeff * (product of parameters to integer powers); 0 has coeff 0."""

    coeff: Fraction
    expo: tuple

    @classmethod
    def zero(cls, nparams: int):
        return cls(Fraction(0), (0,) * nparams)

    @classmethod
    def constant(cls, value, nparams: int):
        return cls(Fraction(value), (0,) * nparams)

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        if self.coeff == 0 or other.coeff == 0:
            return LaurentScalar.zero(len(self.expo))
        return LaurentScalar(self.coeff * other.coeff,
                             tuple(a + b for a, b in zip(self.expo, other.expo)))

    def power(self, e: int) -> "LaurentScalar":
        if e == 0:
            return LaurentScalar.constant(1, len(self.expo))
        if self.coeff == 0:
            return LaurentScalar.zero(len(self.expo))
        return LaurentScalar(self.coeff ** e,
                             tuple(a * e for a in self.expo))


@dataclass(frozen=True)
class LaurentFamily:
    """Finitely many terms (coefficient, point), all entries Laurent
    monomials in the named parameters."""

    params: tuple
    terms: tuple  # ((LaurentScalar, (LaurentScalar, ...)), ...)


def parse_laurent(text: str, params) -> LaurentScalar:
    """Parse a Laurent monomial such as ``-1/4*l^-2*m`` or ``0``."""
    index = {n: i for i, n in enumerate(params)}
    tokens = _tokenize(text)
    coeff = Fraction(1)
    expo = [0] * len(params)
    pos = 0
    sign = 1
    if pos < len(tokens) and tokens[pos] == ("op", "-"):
        sign = -1
        pos += 1
    if pos >= len(tokens):
        raise ParseError(f"empty scalar {text!r}")
    expect_factor = True
    while pos < len(tokens):
        kind, val = tokens[pos]
        if kind == "op" and val == "*":
            pos += 1
            expect_factor = True
            continue
        if not expect_factor:
            raise ParseError(f"unexpected token {val!r} in {text!r}")
        if kind == "int":
            num = Fraction(val)
            pos += 1
            if pos < len(tokens) and tokens[pos] == ("op", "/"):
                pos += 1
                if pos >= len(tokens) or tokens[pos][0] != "int" or tokens[pos][1] == 0:
                    raise ParseError(f"bad denominator in {text!r}")
                num /= tokens[pos][1]
                pos += 1
            coeff *= num
        elif kind == "name":
            if val not in index:
                raise ParseError(f"unknown parameter {val!r}")
            pos += 1
            e = 1
            if pos < len(tokens) and tokens[pos] == ("op", "^"):
                pos += 1
                esign = 1
                if pos < len(tokens) and tokens[pos] == ("op", "-"):
                    esign = -1
                    pos += 1
                if pos >= len(tokens) or tokens[pos][0] != "int":
                    raise ParseError(f"bad exponent in {text!r}")
                e = esign * tokens[pos][1]
                pos += 1
            expo[index[val]] += e
        else:
            raise ParseError(f"unexpected token {val!r} in {text!r}")
        expect_factor = False
    return LaurentScalar(sign * coeff, tuple(expo))


@dataclass(frozen=True)
class LimitCertificate:
    """VALID means: the parameter-free part of the expansion cancels
    exactly and every surviving term vanishes as the parameters go to 0,
    so the border rank is at most the number of family terms."""

    valid: bool
    term_count: int
    residue: tuple          # ((param expo, monomial, coeff), ...) sorted
    constant_defect: tuple  # nonzero parameter-free part when INVALID

    @property
    def status(self) -> str:
        return "VALID" if self.valid else "INVALID"


def limit_certificate(form, family: LaurentFamily) -> LimitCertificate:
    """Expand sum(coeff * parametrize(point)) - form symbolically in the
    family parameters.

    The parameter-free part is checked first: if it is nonzero the
    certificate is INVALID.  Otherwise any residue term with a negative
    exponent means the family diverges and is refused.
    """
    nparams = len(family.params)
    zero_expo = (0,) * nparams
    total = {}
    for coeff, coords in family.terms:
        if len(coords) != len(form.fan.rays):
            raise ParseError(f"expected {len(form.fan.rays)} point coordinates")
        for mono in basis(form.fan, form.degree):
            value = coeff
            for c, e in zip(coords, mono):
                if e:
                    value = value * c.power(e)
                if value.coeff == 0:
                    break
            if value.coeff != 0:
                key = (value.expo, mono)
                total[key] = total.get(key, Fraction(0)) + value.coeff
    for mono, c in form.poly.terms.items():
        key = (zero_expo, mono)
        total[key] = total.get(key, Fraction(0)) - c
    total = {k: v for k, v in total.items() if v != 0}

    defect = tuple(sorted((mono, c) for (expo, mono), c in total.items()
                          if expo == zero_expo))
    if defect:
        return LimitCertificate(valid=False, term_count=len(family.terms),
                                residue=(), constant_defect=defect)
    negative = [(expo, mono) for (expo, mono) in total
                if any(e < 0 for e in expo)]
    if negative:
        raise NegativeExponentResidue(
            f"{len(negative)} residue terms have negative parameter exponents")
    residue = tuple(sorted((expo, mono, c) for (expo, mono), c in total.items()))
    return LimitCertificate(valid=True, term_count=len(family.terms),
                            residue=residue, constant_defect=())


# --- Terracini probes -----------------------------------------------------

def default_pins(fan):
    """Default chart: pin to 1 the first variable on each free generator's
    ray; greedy rank-increasing fallback when degrees are not axis-aligned."""
    rank = fan.class_group.free_rank
    pins = []
    for k in range(rank):
        hit = next((i for i, d in enumerate(fan.var_degrees)
                    if d.free[k] > 0
                    and all(d.free[j] == 0 for j in range(rank) if j != k)
                    and i not in pins), None)
        if hit is None:
            break
        pins.append(hit)
    if len(pins) == rank:
        return tuple(sorted(pins))
    pins, chosen = [], []
    for i, d in enumerate(fan.var_degrees):
        if rank_bareiss(chosen + [list(d.free)]) > len(chosen):
            chosen.append(list(d.free))
            pins.append(i)
    return tuple(pins)


def _tangent_rows(fan, degree, coords, free_positions):
    """Value row plus one exponent-drop derivative row per free position."""
    mons = basis(fan, degree)

    def ev(mono, drop=None):
        value = 1
        for i, e in enumerate(mono):
            if drop == i:
                e -= 1
            if e < 0:
                return 0
            if e:
                value *= coords[i] ** e
        return value

    rows = [[ev(m) for m in mons]]
    for j in free_positions:
        rows.append([m[j] * ev(m, drop=j) for m in mons])
    return rows


@dataclass(frozen=True)
class TerraciniProbe:
    """Max tangent-stack rank over the trials; a certified lower bound for
    the secant dimension (mod-p rank never exceeds the rational rank)."""

    degree: DegreeClass
    points: int
    prime: int
    seed: int
    trials: int
    pins: tuple
    ranks: tuple
    rank: int
    ambient_dim: int        # dim of the full dual graded piece
    dim_estimate: int       # projective dimension estimate: rank - 1
    fills_space: bool
    degenerate: bool        # every trial stayed below the expected cap


def terracini_probe(fan, degree: DegreeClass, r: int, prime: int = DEFAULT_PRIME,
                    trials: int = DEFAULT_TRIALS, seed: int = 0,
                    pins=None) -> TerraciniProbe:
    if pins is None:
        pins = default_pins(fan)
    pins = tuple(pins)
    free_positions = [i for i in range(len(fan.rays)) if i not in pins]
    mons = basis(fan, degree)
    rng = random.Random(seed)
    ranks = []
    for _ in range(trials):
        rows = []
        for _ in range(r):
            for _ in range(50):
                coords = [1 if i in pins else rng.randrange(prime)
                          for i in range(len(fan.rays))]
                if fan.irrelevant.nonvanishing_at(coords):
                    break
            else:
                raise PointInIrrelevantLocus("sampling kept hitting the cut locus")
            rows.extend(_tangent_rows(fan, degree, coords, free_positions))
        ranks.append(rank_mod([[x % prime for x in row] for row in rows], prime))
    best = max(ranks)
    cap = min(len(mons), r * (len(free_positions) + 1))
    return TerraciniProbe(degree=degree, points=r, prime=prime, seed=seed,
                          trials=trials, pins=pins, ranks=tuple(ranks),
                          rank=best, ambient_dim=len(mons),
                          dim_estimate=best - 1,
                          fills_space=(best == len(mons)),
                          degenerate=(best < cap))


def terracini_determinant_check(fan, degree: DegreeClass, r: int, assignment,
                                prime: int | None = None, pins=None):
    """Exact determinant of the stacked tangent matrix at an explicit
    parameter assignment, over Q or over Z/prime."""
    if pins is None:
        pins = default_pins(fan)
    pins = tuple(pins)
    free_positions = [i for i in range(len(fan.rays)) if i not in pins]
    mons = basis(fan, degree)
    per_point = len(free_positions)
    if len(assignment) != r * per_point:
        raise ParseError(f"need {r * per_point} assignment values, "
                         f"got {len(assignment)}")
    if r * (per_point + 1) != len(mons):
        raise NonSquare(
            f"stacked matrix is {r * (per_point + 1)}x{len(mons)}")
    rows = []
    for k in range(r):
        values = [Fraction(v) for v in assignment[k * per_point:(k + 1) * per_point]]
        coords = [Fraction(1)] * len(fan.rays)
        for pos, val in zip(free_positions, values):
            coords[pos] = val
        rows.extend(_tangent_rows(fan, degree, coords, free_positions))
    if prime is None:
        return det_bareiss(rows)
    return det_mod(mat_mod(rows, prime), prime)
