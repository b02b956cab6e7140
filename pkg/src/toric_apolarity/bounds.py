"""Catalecticant matrices and the three lower bounds they induce.

Border-rank and rank bounds hold for every class; the cactus bound is
gated hard on the class being Cartier, because a non-Cartier class can
overshoot the true cactus rank.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import DegreeClass
from .apolarity import ApolarForm, DegreeBox, catalecticant_entries, exact_rank
from .ring import default_certificate


@dataclass(frozen=True)
class CatMatrix:
    """Contraction matrix of a form at a fixed domain degree, with its
    exact rank.  Row i, column j holds the coefficient of the j-th target
    monomial in (i-th domain monomial acting on the form)."""

    form_degree: DegreeClass
    degree: DegreeClass
    rows: tuple
    cols: tuple
    entries: tuple
    rank: int

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))


def catalecticant(form: ApolarForm, degree: DegreeClass) -> CatMatrix:
    rows, cols, matrix = catalecticant_entries(form, degree)
    return CatMatrix(form_degree=form.degree, degree=degree,
                     rows=rows, cols=cols,
                     entries=tuple(tuple(r) for r in matrix),
                     rank=exact_rank(matrix))


@dataclass(frozen=True)
class BoundReport:
    """Lower bounds certified by one catalecticant rank.  ``cactus`` is
    None exactly when the domain degree is not Cartier."""

    degree: DegreeClass
    rank_of_matrix: int
    border: int
    rank: int
    cactus: int | None
    cartier: bool


def bound_report(form: ApolarForm, degree: DegreeClass) -> BoundReport:
    value = catalecticant(form, degree).rank
    cartier = form.fan.is_cartier(degree)
    return BoundReport(degree=degree, rank_of_matrix=value,
                       border=value, rank=value,
                       cactus=value if cartier else None,
                       cartier=cartier)


@dataclass(frozen=True)
class BestBounds:
    border: int
    border_at: DegreeClass | None
    rank: int
    rank_at: DegreeClass | None
    cactus: int
    cactus_at: DegreeClass | None


def best_bounds(form: ApolarForm, box: DegreeBox) -> BestBounds:
    """Per-kind maxima over a degree box; ties broken by the graded-lex
    order on the degree (certificate grade, then coordinates)."""
    cert = default_certificate(form.fan)
    ordered = sorted(box, key=lambda d: (cert.grade(d), d.free, d.torsion))
    best = {"border": (0, None), "rank": (0, None), "cactus": (0, None)}
    for degree in ordered:
        report = bound_report(form, degree)
        if report.border > best["border"][0]:
            best["border"] = (report.border, degree)
            best["rank"] = (report.rank, degree)
        if report.cactus is not None and report.cactus > best["cactus"][0]:
            best["cactus"] = (report.cactus, degree)
    return BestBounds(border=best["border"][0], border_at=best["border"][1],
                      rank=best["rank"][0], rank_at=best["rank"][1],
                      cactus=best["cactus"][0], cactus_at=best["cactus"][1])
