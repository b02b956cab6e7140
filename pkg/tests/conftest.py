from pathlib import Path

import pytest

from toric_apolarity import ApolarForm, Side, load_fan, parse_poly

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def f1():
    return load_fan(FIXTURES / "f1.fan")


@pytest.fixture(scope="session")
def p114():
    return load_fan(FIXTURES / "p114.fan")


@pytest.fixture(scope="session")
def fake():
    return load_fan(FIXTURES / "fake_plane.fan")


def primal(fan, text):
    return parse_poly(text, fan.var_names, Side.PRIMAL, fan)


def dual(fan, text):
    return parse_poly(text, fan.dual_var_names, Side.DUAL, fan)


def form(fan, text):
    return ApolarForm(fan, dual(fan, text))
