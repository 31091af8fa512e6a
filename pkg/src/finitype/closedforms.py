"""Closed-form dimension predictions for Cantor-like measures S_j = x/R + j(R-1)/(mR).

These are the published minimum/maximum formulas for m-fold convolutions of
the fair two-map measure (binomial weights), plus the endpoint-isolation
bound. They exist to be compared against the graph pipeline; the comparison
itself happens in the tests and the CLI, not here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionViolated
from .ifsmodel import binomial_convolution_probabilities


@dataclass(frozen=True)
class CantorParams:
    R: int
    m: int
    probabilities: tuple[Fraction, ...]

    def __post_init__(self):
        if self.R < 2 or self.m < 1:
            raise ValueError("need R >= 2 and m >= 1")
        if self.m < self.R - 1:
            raise ValueError("support is not an interval unless m >= R - 1")
        if len(self.probabilities) != self.m + 1:
            raise ValueError("need m + 1 weights")

    @classmethod
    def binomial(cls, R: int, m: int) -> "CantorParams":
        return cls(R=R, m=m,
                   probabilities=binomial_convolution_probabilities(m))

    def weight(self, j: int) -> Fraction:
        """p_j, read as zero outside 0..m."""
        if 0 <= j <= self.m:
            return self.probabilities[j]
        return Fraction(0)


def bhm_min_formula(params: CantorParams) -> float:
    """Predicted minimal dimension (m log 2 - log C(m, floor(m/2))) / log R.

    Valid for binomial weights; the published proof covers R <= m <= 2R-2,
    and the pipeline shows the formula fails beyond that range.
    """
    m, R = params.m, params.R
    return (m * math.log(2) - math.log(math.comb(m, m // 2))) / math.log(R)


def bhm_max_formula(params: CantorParams) -> float:
    """Predicted maximal dimension away from the endpoints (binomial weights)."""
    m, R = params.m, params.R
    r = (m - R) // 2
    a = float(params.weight(r + R + 1))
    b = float(params.weight(r))
    c = float(params.weight(r + 1))
    d = float(params.weight(r + R))
    top = (a + b + math.sqrt((a - b) ** 2 + 4 * c * d)) / 2
    return -math.log(top) / math.log(R)


def x_min_location(params: CantorParams) -> Fraction:
    """floor(m/2) / m: where the predicted minimum is attained."""
    return Fraction(params.m // 2, params.m)


def x_max_location(params: CantorParams) -> Fraction:
    """Closed form of (1/m) sum (R-1) R^-j l_j with l alternating between
    m - r - R (odd steps) and r + 1 (even steps)."""
    m, R = params.m, params.R
    r = (m - R) // 2
    return Fraction((m - r - R) * R + (r + 1), (R + 1) * m)


def isolated_point_bound(params: CantorParams) -> tuple[float, float]:
    """(dimension at the endpoints, upper bound on every interior dimension).

    Requires p_0 = p_m < min interior weight and m >= R >= 2; the first
    component then strictly exceeds the second, so the endpoint dimension is
    an isolated point of the dimension set.
    """
    p = params.probabilities
    m, R = params.m, params.R
    interior = p[1:-1]
    if not (m >= R >= 2):
        raise PreconditionViolated("need m >= R >= 2")
    if not interior or not (p[0] == p[-1] < min(interior)):
        raise PreconditionViolated(
            "need p_0 = p_m strictly below every interior weight")
    log_r = math.log(R)
    dim_zero = -(math.log(p[0].numerator) - math.log(p[0].denominator)) / log_r
    cut = min([2 * p[0]] + list(interior))
    interior_bound = -(math.log(cut.numerator) - math.log(cut.denominator)) / log_r
    return dim_zero, interior_bound
