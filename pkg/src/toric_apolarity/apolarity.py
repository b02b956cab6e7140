"""The contraction action of the coordinate ring on its dual module,
annihilator pieces, Hilbert functions of apolar algebras, and the
ideal-containment test behind every upper-bound certificate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .abelian import DegreeClass
from .errors import BadPrime, NonHomogeneousGenerator, SideMismatch
from .linalg import mat_mod, nullspace, rank_bareiss, rank_mod
from .ring import MultiPoly, Side, basis, homogeneous_degree

PRESCREEN_PRIME = 101


def contract(g: MultiPoly, form: MultiPoly) -> MultiPoly:
    """Exponent-dropping action: x^a acting on y^b gives y^(b-a) when
    b >= a componentwise, else 0.  No multiplicity constants."""
    if g.side is not Side.PRIMAL:
        raise SideMismatch("left factor of the action must be primal")
    if form.side is not Side.DUAL:
        raise SideMismatch("right factor of the action must be dual")
    terms = {}
    for a, ca in g.terms.items():
        for b, cb in form.terms.items():
            if all(bi >= ai for ai, bi in zip(a, b)):
                m = tuple(bi - ai for ai, bi in zip(a, b))
                terms[m] = terms.get(m, Fraction(0)) + ca * cb
    degree = None
    if g.degree is not None and form.degree is not None:
        degree = form.degree - g.degree
    return MultiPoly(Side.DUAL, terms, degree)


class ApolarForm:
    """A nonzero homogeneous dual element together with its fan."""

    def __init__(self, fan, poly: MultiPoly):
        if poly.side is not Side.DUAL:
            raise SideMismatch("an apolar form lives on the dual side")
        if poly.is_zero():
            raise NonHomogeneousGenerator("the zero form has no apolar theory")
        degree = homogeneous_degree(fan, poly)
        if degree is None:
            raise NonHomogeneousGenerator("form is not homogeneous")
        self.fan = fan
        self.poly = MultiPoly(Side.DUAL, poly.terms, degree)
        self.degree = degree


def catalecticant_entries(form: ApolarForm, degree: DegreeClass):
    """Rows (domain basis), columns (target basis), and the exact matrix of
    the contraction map from the graded piece at ``degree``."""
    fan = form.fan
    rows = basis(fan, degree)
    cols = basis(fan, form.degree - degree)
    coeffs = form.poly.terms
    matrix = [[coeffs.get(tuple(a + c for a, c in zip(row, col)), Fraction(0))
               for col in cols] for row in rows]
    return rows, cols, matrix


def exact_rank(matrix, prescreen_prime: int | None = PRESCREEN_PRIME) -> int:
    """Exact rank; a full-rank result mod p certifies it without exact
    elimination (a modular rank can only drop)."""
    if not matrix or not matrix[0]:
        return 0
    cap = min(len(matrix), len(matrix[0]))
    if prescreen_prime:
        try:
            modular = rank_mod(mat_mod(matrix, prescreen_prime), prescreen_prime)
            if modular == cap:
                return cap
        except BadPrime:
            pass
    return rank_bareiss(matrix)


def annihilator_in_degree(form: ApolarForm, degree: DegreeClass):
    """Basis of the annihilator's graded piece, as coefficient vectors over
    the monomial basis at ``degree`` (canonical echelon kernel)."""
    rows, cols, matrix = catalecticant_entries(form, degree)
    if not rows:
        return []
    transpose = [[matrix[i][j] for i in range(len(rows))]
                 for j in range(len(cols))]
    return [tuple(v) for v in nullspace(transpose, len(rows))]


def hilbert_value(form: ApolarForm, degree: DegreeClass) -> int:
    """Dimension of the apolar algebra's graded piece: the rank of the
    contraction matrix at ``degree``."""
    _, _, matrix = catalecticant_entries(form, degree)
    return exact_rank(matrix)


@dataclass(frozen=True)
class DegreeBox:
    """Product of inclusive free-coordinate ranges; torsion residues are
    enumerated in full."""

    group: object
    free_ranges: tuple  # tuple of (lo, hi) pairs

    def __post_init__(self):
        assert len(self.free_ranges) == self.group.free_rank

    def __iter__(self):
        axes = [range(lo, hi + 1) for lo, hi in self.free_ranges]
        axes += [range(d) for d in self.group.torsion_orders]
        rank = self.group.free_rank
        for coords in product(*axes):
            yield DegreeClass(self.group, coords[:rank], coords[rank:])

    def __contains__(self, degree: DegreeClass) -> bool:
        if degree.group != self.group:
            return False
        return all(lo <= x <= hi
                   for x, (lo, hi) in zip(degree.free, self.free_ranges))


@dataclass(frozen=True)
class HilbertGrid:
    """Hilbert function values of an apolar algebra over a degree box."""

    form_degree: DegreeClass
    box: DegreeBox
    values: dict

    def value(self, degree: DegreeClass) -> int:
        return self.values[degree]


def hilbert_grid(form: ApolarForm, box: DegreeBox) -> HilbertGrid:
    values = {degree: hilbert_value(form, degree) for degree in box}
    return HilbertGrid(form.degree, box, values)


@dataclass(frozen=True)
class SymmetryVerdict:
    ok: bool
    witness: DegreeClass | None = None

    def __str__(self):
        if self.ok:
            return "symmetric"
        return f"symmetry FAILS at {self.witness}"


def check_symmetry(form: ApolarForm, box: DegreeBox) -> SymmetryVerdict:
    """Verify hilbert(beta) == hilbert(alpha - beta) over the box."""
    for degree in box:
        if hilbert_value(form, degree) != hilbert_value(form,
                                                        form.degree - degree):
            return SymmetryVerdict(False, degree)
    return SymmetryVerdict(True)


def apolar_contains(generators, form: ApolarForm) -> bool:
    """True iff every generator annihilates the form.

    Sufficient for ideal containment in the annihilator: the annihilator is
    an ideal and (h*g) acting on F equals h acting on (g acting on F).
    """
    gens = getattr(generators, "generators", generators)
    for g in gens:
        if homogeneous_degree(form.fan, g) is None:
            raise NonHomogeneousGenerator("ideal generators must be homogeneous")
        if not contract(g, form.poly).is_zero():
            return False
    return True
