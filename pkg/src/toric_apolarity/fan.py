"""Fan input model for simplicial toric varieties: class group and variable
degrees from the ray matrix, irrelevant ideal, completeness verdicts, and
the per-cone integral test for Cartier classes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from pathlib import Path

from .abelian import DegreeClass, cokernel, solve_integer
from .errors import (GroupMismatch, NonPrimitiveRay, NonSimplicialCone,
                     NotFullRank, ParseError, TorusFactor)
from .linalg import rank_bareiss


class Completeness(Enum):
    COMPLETE = "Complete"
    NOT_COMPLETE = "NotComplete"
    COMPLETE_LIKELY = "CompleteLikely"
    UNVERIFIED = "Unverified"


@dataclass(frozen=True)
class IrrelevantIdeal:
    """One square-free monomial generator per maximal cone: exponent 1 on
    exactly the rays outside the cone."""

    generators: tuple  # tuple of exponent tuples, one per maximal cone

    def nonvanishing_at(self, coords) -> bool:
        """True unless every generator vanishes at the coordinates."""
        for expo in self.generators:
            if all(coords[i] != 0 for i, e in enumerate(expo) if e):
                return True
        return False


class FanModel:
    """Immutable fan data with the derived grading.

    Attributes: ambient_rank, rays, max_cones, class_group, projection,
    var_degrees, irrelevant, var_names, dual_var_names.
    """

    def __init__(self, rays, max_cones, var_names=None, dual_var_names=None,
                 assert_complete: bool = False):
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        if not rays:
            raise TorusFactor("a fan needs at least one ray")
        n = len(rays[0])
        if any(len(r) != n for r in rays):
            raise ParseError("rays have inconsistent lengths")
        for r in rays:
            g = 0
            for x in r:
                g = gcd(g, abs(x))
            if g != 1:
                raise NonPrimitiveRay(f"ray {list(r)} is not primitive")
        cones = []
        for cone in max_cones:
            idx = tuple(sorted(set(int(i) for i in cone)))
            if len(idx) != len(tuple(cone)) or not idx or idx[0] < 0 or idx[-1] >= len(rays):
                raise ParseError(f"bad cone index set {list(cone)}")
            if rank_bareiss([rays[i] for i in idx]) != len(idx):
                raise NonSimplicialCone(
                    f"cone {list(idx)} has linearly dependent rays")
            cones.append(idx)

        self.ambient_rank = n
        self.rays = rays
        self.max_cones = tuple(cones)
        self.assert_complete = assert_complete
        try:
            self.class_group, self.projection = cokernel([list(r) for r in rays])
        except NotFullRank as exc:
            raise TorusFactor("rays do not span the ambient space") from exc
        self.var_degrees = tuple(
            self.projection([int(i == k) for i in range(len(rays))])
            for k in range(len(rays)))
        self.irrelevant = IrrelevantIdeal(tuple(
            tuple(int(i not in cone) for i in range(len(rays)))
            for cone in self.max_cones))
        self.var_names = tuple(var_names) if var_names else tuple(
            f"x{i}" for i in range(len(rays)))
        self.dual_var_names = tuple(dual_var_names) if dual_var_names else tuple(
            f"y{i}" for i in range(len(rays)))
        if len(self.var_names) != len(rays) or len(self.dual_var_names) != len(rays):
            raise ParseError("need one variable name per ray")
        self._cartier_cache = {}

    # -- degrees ---------------------------------------------------------

    def degree(self, free, torsion=()) -> DegreeClass:
        return self.class_group.degree(free, torsion)

    def zero_degree(self) -> DegreeClass:
        return self.class_group.zero()

    def monomial_degree(self, exponents) -> DegreeClass:
        return self.projection(list(exponents))

    # -- completeness ------------------------------------------------------

    def check_complete(self) -> Completeness:
        n = self.ambient_rank
        if n == 1:
            have = {r[0] for r in self.rays}
            covered = {self.rays[c[0]][0] for c in self.max_cones if len(c) == 1}
            return (Completeness.COMPLETE
                    if have == {1, -1} and covered == {1, -1}
                    else Completeness.NOT_COMPLETE)
        if n == 2:
            return self._check_complete_2d()
        facets = {}
        for cone in self.max_cones:
            if len(cone) != n:
                return Completeness.UNVERIFIED
            for skip in cone:
                facet = tuple(i for i in cone if i != skip)
                facets[facet] = facets.get(facet, 0) + 1
        if facets and all(v == 2 for v in facets.values()):
            return Completeness.COMPLETE_LIKELY
        return Completeness.UNVERIFIED

    def _check_complete_2d(self) -> Completeness:
        def angle_key(i):
            # (half-plane, axis-start flag, cotangent): exact angular order
            x, y = self.rays[i]
            half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
            if y == 0:
                return (half, 0, Fraction(0))
            return (half, 1, Fraction(-x, y))

        order = sorted(range(len(self.rays)), key=angle_key)
        k = len(order)
        if k < 3:
            return Completeness.NOT_COMPLETE
        expected = set()
        for a in range(k):
            i, j = order[a], order[(a + 1) % k]
            u, v = self.rays[i], self.rays[j]
            cross = u[0] * v[1] - u[1] * v[0]
            if cross <= 0:  # adjacent gap must be a pointed positive turn
                return Completeness.NOT_COMPLETE
            expected.add(tuple(sorted((i, j))))
        return (Completeness.COMPLETE if expected == set(self.max_cones)
                else Completeness.NOT_COMPLETE)

    # -- divisors ----------------------------------------------------------

    def weil_representative(self, degree: DegreeClass):
        """Integer coefficients a with sum(a_i * deg x_i) == degree."""
        if degree.group != self.class_group:
            raise GroupMismatch("degree belongs to a different class group")
        return self.projection.section(degree)

    def is_cartier(self, degree: DegreeClass) -> bool:
        """True iff every maximal cone admits an integral trivializing
        character: <m, u_rho> = -a_rho for all rays of the cone."""
        if degree in self._cartier_cache:
            return self._cartier_cache[degree]
        coeffs = self.weil_representative(degree)
        result = True
        for cone in self.max_cones:
            system = [list(self.rays[i]) for i in cone]
            rhs = [-coeffs[i] for i in cone]
            if solve_integer(system, rhs) is None:
                result = False
                break
        self._cartier_cache[degree] = result
        return result


def build_fan(rays, max_cones, var_names=None, dual_var_names=None,
              assert_complete: bool = False) -> FanModel:
    return FanModel(rays, max_cones, var_names, dual_var_names, assert_complete)


def load_fan(path) -> FanModel:
    """Read a fan file: JSON with fields ambient_rank, rays, max_cones,
    optional var_names, dual_var_names, assert_complete."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read fan file {path}: {exc}") from exc
    for field in ("rays", "max_cones"):
        if field not in data:
            raise ParseError(f"fan file {path} lacks required field '{field}'")
    fan = build_fan(data["rays"], data["max_cones"],
                    var_names=data.get("var_names"),
                    dual_var_names=data.get("dual_var_names"),
                    assert_complete=bool(data.get("assert_complete", False)))
    declared = data.get("ambient_rank")
    if declared is not None and int(declared) != fan.ambient_rank:
        raise ParseError(
            f"fan file declares ambient_rank {declared}, rays have {fan.ambient_rank}")
    return fan
