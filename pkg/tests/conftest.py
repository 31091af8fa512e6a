"""Shared model fixtures built from exact data."""

from fractions import Fraction

import pytest

from finitype.exactfield import make_field
from finitype.ifsmodel import (
    Ifs,
    binomial_convolution_probabilities,
    cantor_ifs,
    uniform_probabilities,
    validate,
)


def golden_ifs(name="golden"):
    f = make_field([-1, 1, 1], (Fraction(1, 2), Fraction(7, 10)))
    r = f.rho()
    return Ifs(field=f, translations=(f.zero, f.one - r),
               probabilities=uniform_probabilities(1), name=name)


def golden_square_ifs():
    f = make_field([-1, 1, 1], (Fraction(1, 2), Fraction(7, 10)))
    r = f.rho()
    half = (f.one - r) * Fraction(1, 2)
    return Ifs(field=f, translations=(f.zero, half, f.one - r),
               probabilities=(Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)),
               name="golden-convolution-square")


def bernoulli_ifs(minpoly, interval, name=None):
    f = make_field(minpoly, interval)
    return Ifs(field=f, translations=(f.zero, f.one - f.rho()),
               probabilities=uniform_probabilities(1), name=name)


@pytest.fixture(scope="session")
def golden_model():
    return validate(golden_ifs())


@pytest.fixture(scope="session")
def golden_square_model():
    return validate(golden_square_ifs())


@pytest.fixture(scope="session")
def cantor5_binomial_model():
    # 5-fold convolution of the fair two-map measure at contraction 1/3
    return validate(cantor_ifs(3, 5, binomial_convolution_probabilities(5),
                               name="cantor-r3-m5-binomial"))


@pytest.fixture(scope="session")
def cantor5_uniform_model():
    return validate(cantor_ifs(3, 5, uniform_probabilities(5),
                               name="cantor-r3-m5-uniform"))


@pytest.fixture(scope="session")
def cantor3_binomial_model():
    return validate(cantor_ifs(3, 3, binomial_convolution_probabilities(3),
                               name="cantor-r3-m3-binomial"))


@pytest.fixture(scope="session")
def plastic_bc_model():
    # rho is the root of x^3 + x - 1 (~.6823); two-map uniform convolution
    return validate(bernoulli_ifs([-1, 1, 0, 1], (Fraction(3, 5), Fraction(7, 10)),
                                  name="bc-x3+x-1"))
