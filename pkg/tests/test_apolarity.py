import random
from fractions import Fraction

import pytest

from toric_apolarity import (ApolarForm, DegreeBox, MultiPoly,
                             NonHomogeneousGenerator, Side, annihilator_in_degree,
                             apolar_contains, check_symmetry, contract,
                             hilbert_grid, hilbert_value)
from toric_apolarity.ring import basis

from conftest import dual, form, primal


def test_contract_monomial_pairing(f1):
    for mono in basis(f1, f1.degree((3, 2))):
        g = MultiPoly.monomial(Side.PRIMAL, mono)
        F = MultiPoly.monomial(Side.DUAL, mono)
        result = contract(g, F)
        assert result.terms == {(0, 0, 0, 0): Fraction(1)}


def test_contract_linear_action_example(f1):
    F = dual(f1, "x0*x1*y0*y1")
    g = primal(f1, "3*a0 + 5*a1")
    assert contract(g, F) == dual(f1, "3*x1*y0*y1 + 5*x0*y0*y1")


def test_contract_degree_two_one_example(f1):
    F = dual(f1, "x0*x1*y0*y1")
    g = primal(f1, "a0*a1*b1")
    assert contract(g, F) == dual(f1, "y0")
    assert not contract(g, F).is_zero()


def test_contract_unit(f1):
    F = dual(f1, "x0*x1*y0*y1 - 2*x0^2*y0*y1")
    one = MultiPoly.one(Side.PRIMAL, 4)
    assert contract(one, F) == F


def test_contract_module_law_random(f1, fake):
    # (g*h) acting on F must equal g acting on (h acting on F)
    rng = random.Random(12)
    for fan in (f1, fake):
        if fan is f1:
            degrees = [fan.degree((1, 0)), fan.degree((1, 1)), fan.degree((2, 1))]
            big = fan.degree((4, 3))
        else:
            degrees = [fan.degree((1,), (t,)) for t in range(3)]
            big = fan.degree((5,), (1,))
        pool = [m for d in degrees for m in basis(fan, d)]
        target = list(basis(fan, big))

        def rand_poly(mons, side):
            terms = {}
            for _ in range(rng.randrange(1, 3)):
                terms[rng.choice(mons)] = Fraction(rng.randrange(-3, 4) or 1)
            return MultiPoly(side, terms)

        for _ in range(50):
            g = rand_poly(pool, Side.PRIMAL)
            h = rand_poly(pool, Side.PRIMAL)
            F = rand_poly(target, Side.DUAL)
            assert contract(g * h, F) == contract(g, contract(h, F))


def test_contract_degree_law(f1):
    F = form(f1, "x0*x1*y0*y1")
    g = primal(f1, "a0*b0")
    assert g.degree == f1.degree((2, 1))
    result = contract(g, F.poly)
    assert result.degree == F.degree - g.degree
    assert result.degree == f1.degree((1, 1))


def test_duality_pairing_identity(f1, p114, fake):
    boxes = [(f1, DegreeBox(f1.class_group, ((0, 3), (0, 2)))),
             (p114, DegreeBox(p114.class_group, ((0, 5),))),
             (fake, DegreeBox(fake.class_group, ((0, 4),)))]
    for fan, box in boxes:
        for degree in box:
            mons = basis(fan, degree)
            for i, a in enumerate(mons):
                row_g = MultiPoly.monomial(Side.PRIMAL, a)
                for j, b in enumerate(mons):
                    pairing = contract(row_g, MultiPoly.monomial(Side.DUAL, b))
                    value = pairing.terms.get((0,) * len(fan.rays), Fraction(0))
                    assert value == (1 if i == j else 0)


def test_annihilator_degree_one_trivial(f1):
    F = form(f1, "x0*x1*y0*y1")
    assert annihilator_in_degree(F, f1.degree((1, 0))) == []


def test_annihilator_two_one_basis(f1):
    F = form(f1, "x0*x1*y0*y1")
    vectors = annihilator_in_degree(F, f1.degree((2, 1)))
    mons = basis(f1, f1.degree((2, 1)))
    spanned = {mons[i] for v in vectors for i, c in enumerate(v) if c != 0}
    assert len(vectors) == 2
    # the kernel is exactly the two pure powers times b1
    assert spanned == {(2, 0, 0, 1), (0, 2, 0, 1)}


def test_annihilator_at_top_degree_has_codimension_one(f1, p114):
    for fan, text in [(f1, "x0*x1*y0*y1"), (p114, "x^2*y^2 + z")]:
        F = form(fan, text)
        vectors = annihilator_in_degree(F, F.degree)
        assert len(vectors) == len(basis(fan, F.degree)) - 1


GRID_F1_A = {(0, 0): 1, (1, 0): 2, (2, 0): 1, (3, 0): 0,
             (0, 1): 1, (1, 1): 3, (2, 1): 3, (3, 1): 1,
             (0, 2): 0, (1, 2): 1, (2, 2): 2, (3, 2): 1}

GRID_F1_B = {(0, 0): 1, (1, 0): 2, (2, 0): 3, (3, 0): 2, (4, 0): 1, (5, 0): 0,
             (0, 1): 1, (1, 1): 3, (2, 1): 5, (3, 1): 5, (4, 1): 3, (5, 1): 1,
             (0, 2): 0, (1, 2): 1, (2, 2): 2, (3, 2): 3, (4, 2): 2, (5, 2): 1}


def test_hilbert_grid_f1_first_example(f1):
    F = form(f1, "x0*x1*y0*y1")
    for (a, b), want in GRID_F1_A.items():
        assert hilbert_value(F, f1.degree((a, b))) == want


def test_hilbert_grid_f1_second_example(f1):
    F = form(f1, "x0^2*x1^2*y0*y1")
    for (a, b), want in GRID_F1_B.items():
        assert hilbert_value(F, f1.degree((a, b))) == want


def test_hilbert_weighted_plane(p114):
    F = form(p114, "x^2*y^2")
    assert [hilbert_value(F, p114.degree((k,))) for k in range(5)] \
        == [1, 2, 3, 2, 1]


def test_hilbert_fake_plane_value(fake):
    F = form(fake, "x0^2*x1^2*x2^2")
    assert hilbert_value(F, fake.degree((3,), (1,))) == 3


def test_hilbert_endpoints_are_one(f1, fake):
    for fan, text in [(f1, "x0*x1*y0*y1"), (fake, "x0^2*x1^2*x2^2")]:
        F = form(fan, text)
        assert hilbert_value(F, fan.zero_degree()) == 1
        assert hilbert_value(F, F.degree) == 1


def test_grid_vanishes_outside_support_rectangle(f1):
    # computed, not assumed: values beyond the symmetry rectangle are zero
    F = form(f1, "x0*x1*y0*y1")
    box = DegreeBox(f1.class_group, ((0, 4), (0, 3)))
    grid = hilbert_grid(F, box)
    for degree, value in grid.values.items():
        a, b = degree.free
        if a > 3 or b > 2:
            assert value == 0


def test_symmetry_on_all_fixture_grids(f1, p114, fake):
    cases = [(f1, "x0*x1*y0*y1", ((0, 3), (0, 2))),
             (f1, "x0^2*x1^2*y0*y1", ((0, 5), (0, 2))),
             (p114, "x^2*y^2", ((0, 4),)),
             (fake, "x0^2*x1^2*x2^2", ((0, 6),))]
    for fan, text, ranges in cases:
        F = form(fan, text)
        verdict = check_symmetry(F, DegreeBox(fan.class_group, ranges))
        assert verdict.ok, f"{text}: {verdict}"


def test_symmetry_random_monomials(f1):
    rng = random.Random(5)
    degree = f1.degree((2, 2))
    box = DegreeBox(f1.class_group, ((0, 2), (0, 2)))
    for mono in rng.sample(list(basis(f1, degree)), 3):
        F = ApolarForm(f1, MultiPoly.monomial(Side.DUAL, mono))
        assert check_symmetry(F, box).ok


def test_apolar_contains_fixtures(f1, p114):
    F = form(f1, "x0*x1*y0*y1")
    gens = [primal(f1, "a0^2 - a1^2"), primal(f1, "b0^2 - a1^2*b1^2")]
    assert apolar_contains(gens, F)
    G = form(p114, "x^2*y^2")
    assert apolar_contains([primal(p114, "a^3 - b^3"), primal(p114, "c")], G)
    assert not apolar_contains([primal(f1, "a0")], F)


def test_apolar_contains_rejects_inhomogeneous(f1):
    F = form(f1, "x0*x1*y0*y1")
    with pytest.raises(NonHomogeneousGenerator):
        apolar_contains([primal(f1, "a0 + b0")], F)
