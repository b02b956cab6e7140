"""Degreewise linear algebra on homogeneous ideals: graded pieces spanned
by monomial multiples of the generators, colon pieces against the
irrelevant ideal, and zero-dimensional length estimation by Hilbert
function stabilization along multiples of an ample class."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abelian import DegreeClass
from .apolarity import ApolarForm, apolar_contains
from .errors import ContainmentFailed, NonHomogeneousGenerator
from .fan import IrrelevantIdeal
from .linalg import SparseEchelon, nullspace, rref
from .ring import Side, basis, tag_degree


class IdealGens:
    """Homogeneous generating set of an ideal in the coordinate ring."""

    def __init__(self, fan, generators):
        gens = []
        for g in generators:
            if g.side is not Side.PRIMAL:
                raise NonHomogeneousGenerator("generators must be primal")
            if g.is_zero():
                raise NonHomogeneousGenerator("zero generator")
            tagged = tag_degree(fan, g)
            if tagged.degree is None:
                raise NonHomogeneousGenerator("generator is not homogeneous")
            gens.append(tagged)
        self.fan = fan
        self.generators = tuple(gens)


def _column_index(fan, degree: DegreeClass):
    return {m: i for i, m in enumerate(basis(fan, degree))}


def _piece_rows(ideal: IdealGens, degree: DegreeClass, index):
    """Sparse rows spanning the graded piece: every monomial multiple of
    every generator landing in ``degree``."""
    fan = ideal.fan
    for g in ideal.generators:
        for mult in basis(fan, degree - g.degree):
            yield {index[tuple(a + b for a, b in zip(mult, mono))]: coeff
                   for mono, coeff in g.terms.items()}


def ideal_piece_dimension(ideal: IdealGens, degree: DegreeClass) -> int:
    index = _column_index(ideal.fan, degree)
    ech = SparseEchelon()
    for row in _piece_rows(ideal, degree, index):
        ech.add(row)
    return ech.rank


def ideal_piece(ideal: IdealGens, degree: DegreeClass):
    """Canonical basis (coefficient vectors over the monomial basis) of the
    ideal's graded piece."""
    index = _column_index(ideal.fan, degree)
    ncols = len(index)
    dense = []
    for row in _piece_rows(ideal, degree, index):
        vec = [Fraction(0)] * ncols
        for col, val in row.items():
            vec[col] = val
        dense.append(vec)
    echelon, _ = rref(dense, ncols)
    return [tuple(r) for r in echelon]


def colon_piece(ideal: IdealGens, irrelevant: IrrelevantIdeal,
                degree: DegreeClass):
    """Basis of the colon piece: elements whose product with every
    irrelevant-ideal generator lands in the ideal (simultaneous preimage)."""
    fan = ideal.fan
    domain = basis(fan, degree)
    n = len(domain)
    if n == 0:
        return []
    conditions = []
    for expo in irrelevant.generators:
        shift_degree = degree + fan.monomial_degree(expo)
        target_index = _column_index(fan, shift_degree)
        piece = ideal_piece(ideal, shift_degree)
        # functionals vanishing exactly on the piece's span
        checks = nullspace([list(v) for v in piece], len(target_index)) \
            if piece else [[Fraction(int(i == j)) for i in range(len(target_index))]
                           for j in range(len(target_index))]
        shifted = [target_index[tuple(a + b for a, b in zip(m, expo))]
                   for m in domain]
        for v in checks:
            conditions.append([v[shifted[i]] for i in range(n)])
    return [tuple(v) for v in nullspace(conditions, n)]


def saturation_gap(ideal: IdealGens, irrelevant: IrrelevantIdeal,
                   degree: DegreeClass) -> int:
    """dim(colon piece) - dim(ideal piece); zero means the ideal already
    agrees with its saturation in this degree.  The agreement theorem only
    covers Cartier degrees; elsewhere the number is informational."""
    return (len(colon_piece(ideal, irrelevant, degree))
            - ideal_piece_dimension(ideal, degree))


@dataclass(frozen=True)
class LengthEstimate:
    """Stabilized value of dim(S/I) along multiples of an ample class.

    Valid as a length if the scheme is zero-dimensional and the ideal is
    saturated in high degrees; ``stabilized`` is False when the last
    ``window`` samples disagree.
    """

    value: int
    stabilized: bool
    samples: tuple  # ((k, dim) ...)
    window: int


def length_estimate(ideal: IdealGens, ample: DegreeClass,
                    window: int = 3, max_k: int = 12) -> LengthEstimate:
    fan = ideal.fan
    samples = []
    for k in range(1, max_k + 1):
        degree = ample.scale(k)
        dim = len(basis(fan, degree)) - ideal_piece_dimension(ideal, degree)
        samples.append((k, dim))
    tail = [d for _, d in samples[-window:]]
    stabilized = len(tail) == window and len(set(tail)) == 1
    return LengthEstimate(value=samples[-1][1], stabilized=stabilized,
                          samples=tuple(samples), window=window)


@dataclass(frozen=True)
class CactusCertificate:
    """Containment plus a length estimate: an upper bound for cactus rank,
    and for rank too when the scheme is asserted reduced."""

    form_degree: DegreeClass
    length: LengthEstimate
    reduced_asserted: bool

    @property
    def cactus_bound(self) -> int:
        return self.length.value

    @property
    def rank_bound(self) -> int | None:
        return self.length.value if self.reduced_asserted else None


def cactus_certificate(form: ApolarForm, ideal: IdealGens,
                       ample: DegreeClass, window: int = 3, max_k: int = 12,
                       reduced_asserted: bool = False) -> CactusCertificate:
    """Verify the ideal annihilates the form, then estimate the length of
    the scheme it cuts out.  Refuses when containment fails."""
    if not apolar_contains(ideal, form):
        raise ContainmentFailed("ideal is not contained in the annihilator")
    estimate = length_estimate(ideal, ample, window=window, max_k=max_k)
    return CactusCertificate(form_degree=form.degree, length=estimate,
                             reduced_asserted=reduced_asserted)
