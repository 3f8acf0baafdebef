"""Optimal polynomial approximants to 1/f and the optimal distances.

``p_n*`` minimises ``||p f - 1||`` over ``p`` in ``P_n = span(chi_0..chi_n)``.
It is assembled here as a sum of closed-form blocks ``Phi_{j,k}`` (one per
admitted monomial) and, independently, by solving the normal equations of
the projection onto ``f * P_n``.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, NamedTuple

from .hgamma_space import SpaceParams, Weight, inner, norm_sq, weighted_inner
from .monomial_order import MonomialIndex, last_index_of_degree, monomial_at
from .orthopoly import closed_form_coefficient, closed_form_norm_sq
from .poly2 import Poly, monomial, weight_f
from .qfield import ZERO, QSqrt2, pochhammer, rational_str, sqrt2_half_pow, to_float

__all__ = [
    "Approximant",
    "DistanceEntry",
    "DistanceSeries",
    "SingularSystemError",
    "ConventionMismatch",
    "InsufficientData",
    "phi_cap",
    "lemma31_scalar",
    "lemma31_consistency",
    "optimal_approximant",
    "approximant_oracle",
    "optimal_distance",
    "direct_distances",
    "series_term",
    "optimal_distance_series",
    "decay_slope",
    "solve_exact",
]


class SingularSystemError(ArithmeticError):
    pass


class ConventionMismatch(AssertionError):
    """The distance series disagrees with the directly computed norm."""

    def __init__(self, gamma, n, series_value, direct_value):
        self.gamma, self.n = gamma, n
        self.series_value, self.direct_value = series_value, direct_value
        super().__init__(
            f"gamma={gamma}, n={n}: series gives {series_value}, direct norm gives {direct_value}"
        )


class InsufficientData(ValueError):
    pass


@dataclass(frozen=True)
class Approximant:
    n: int
    poly: Poly
    bidegree: MonomialIndex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "bidegree", monomial_at(self.n))

    def to_json(self) -> dict:
        return {"n": self.n, "bidegree": list(self.bidegree), "poly": self.poly.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> Approximant:
        out = cls(obj["n"], Poly.from_json(obj["poly"]))
        if list(out.bidegree) != list(obj["bidegree"]):
            raise ValueError(f"bidegree {obj['bidegree']} does not match order {obj['n']}")
        return out


def _gamma(gamma) -> Fraction:
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return gamma


def phi_cap(gamma, j: int, k: int) -> Poly:
    """The block ``Phi_{j,k}`` contributed to ``p_n*`` by the monomial ``(j, k)``."""
    gamma = _gamma(gamma)
    s = j + k
    rising = [Fraction(1)]
    for i in range(s + 2):
        rising.append(rising[-1] * (gamma + i))
    terms = {}
    for m in range(j + 1):
        for n in range(k + 1):
            e = s - m - n
            c = gamma * Fraction(
                factorial(s) * factorial(e),
                factorial(m) * factorial(n) * factorial(j - m) * factorial(k - n),
            ) * rising[m + n + 1] / rising[s + 2]
            terms[(m, n)] = sqrt2_half_pow(2 * s - m - n) * c
    return Poly(terms)


def lemma31_scalar(gamma, j: int, k: int) -> QSqrt2:
    """``(sqrt2/2)**(j+k) * C(j+k, j) * gamma / (gamma+j+k+1)``."""
    gamma = _gamma(gamma)
    return sqrt2_half_pow(j + k) * (comb(j + k, j) * gamma / (gamma + j + k + 1))


def lemma31_consistency(gamma, j: int, k: int) -> bool:
    """``Phi_{j,k}`` equals ``phi_{j,k}(0,0)/||phi_{j,k}||**2 * phi_{j,k}``.

    Both the block and the projection coefficient are checked against the
    orthogonal-polynomial closed form.
    """
    gamma = _gamma(gamma)
    phi = Poly({(m, n): closed_form_coefficient(gamma, j, k, m, n)
                for m in range(j + 1) for n in range(k + 1)})
    scalar = phi.coefficient(0, 0) / closed_form_norm_sq(gamma, j, k)
    return scalar == lemma31_scalar(gamma, j, k) and phi_cap(gamma, j, k) == phi.scale(scalar)


def _approximant_polys(gamma: Fraction, n_max: int) -> Iterator[Poly]:
    p = Poly()
    for idx in range(n_max + 1):
        p = p + phi_cap(gamma, *monomial_at(idx))
        yield p


def optimal_approximant(gamma, n: int) -> Approximant:
    """``p_n*`` as the sum of ``Phi_{j,k}`` over monomials up to ``chi_n``."""
    gamma = _gamma(gamma)
    if n < 0:
        raise ValueError("order must be nonnegative")
    for p in _approximant_polys(gamma, n):
        pass
    return Approximant(n, p)


def optimal_approximants(gamma, n_max: int) -> list[Approximant]:
    gamma = _gamma(gamma)
    return [Approximant(i, p) for i, p in enumerate(_approximant_polys(gamma, n_max))]


def solve_exact(matrix: list[list[QSqrt2]], rhs: list[QSqrt2]) -> list[QSqrt2]:
    """Gaussian elimination over Q(sqrt 2) with nonzero-pivot search."""
    size = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col]), None)
        if pivot is None:
            raise SingularSystemError(f"no pivot in column {col}")
        a[col], a[pivot] = a[pivot], a[col]
        inv_p = a[col][col].inverse()
        row = [x * inv_p for x in a[col]]
        a[col] = row
        for r in range(size):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], row)]
    return [a[i][size] for i in range(size)]


def approximant_oracle(gamma, n: int) -> Approximant:
    """``p_n*`` from the normal equations ``G c = b`` of the projection of 1 onto ``f P_n``."""
    gamma = _gamma(gamma)
    params = SpaceParams(gamma, Weight.F)
    f = weight_f()
    chis = [monomial(*monomial_at(i)) for i in range(n + 1)]
    gram = [[ZERO] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(i, n + 1):
            gram[i][j] = gram[j][i] = weighted_inner(params, chis[i], chis[j])
    one = Poly.constant(1)
    rhs = [inner(gamma, one, f * chi) for chi in chis]
    coeffs = solve_exact(gram, rhs)
    return Approximant(n, Poly(zip((monomial_at(i) for i in range(n + 1)), coeffs)))


def optimal_distance(gamma, n: int) -> QSqrt2:
    """``||p_n* f - 1||**2`` by expanding the residual polynomial."""
    gamma = _gamma(gamma)
    residual = optimal_approximant(gamma, n).poly * weight_f() - 1
    return norm_sq(gamma, residual)


def direct_distances(gamma, n_max: int) -> list[QSqrt2]:
    """``optimal_distance`` for every order up to ``n_max`` in one sweep."""
    gamma = _gamma(gamma)
    f = weight_f()
    return [norm_sq(gamma, p * f - 1) for p in _approximant_polys(gamma, n_max)]


def series_term(gamma, j: int, k: int) -> Fraction:
    """``gamma**2 2**-(j+k) (j+k)!/(gamma)_(j+k+2) C(j+k, j)``."""
    s = j + k
    return gamma * gamma * Fraction(factorial(s) * comb(s, j), 2 ** s) / pochhammer(gamma, s + 2)


class DistanceEntry(NamedTuple):
    n: int
    degree: int
    nu_sq: QSqrt2
    nu_sq_float: float


@dataclass
class DistanceSeries:
    gamma: Fraction
    entries: list[DistanceEntry]
    fitted_slope: float | None = None

    def csv_rows(self) -> list[list[str]]:
        return [
            [str(e.n), str(e.degree), rational_str(e.nu_sq.a), rational_str(e.nu_sq.b),
             repr(e.nu_sq_float)]
            for e in self.entries
        ]

    def to_json(self) -> dict:
        return {
            "gamma": rational_str(self.gamma),
            "entries": [
                {"n": e.n, "degree": e.degree, "nu_sq": e.nu_sq.to_json(),
                 "nu_sq_float": e.nu_sq_float}
                for e in self.entries
            ],
            "fitted_slope": self.fitted_slope,
        }


def optimal_distance_series(gamma, n_max: int, check: bool = True) -> DistanceSeries:
    """Distances from the closed series, summing over every admitted monomial.

    The sum runs over all ``(j, k)`` with position ``<= n`` (inclusive), the
    same set that builds ``p_n*``.  With ``check`` on, each value is compared
    with :func:`direct_distances` and :class:`ConventionMismatch` is raised on
    the first disagreement.
    """
    gamma = _gamma(gamma)
    if n_max < 0:
        raise ValueError("order must be nonnegative")
    direct = direct_distances(gamma, n_max) if check else None
    entries = []
    acc = Fraction(0)
    for idx in range(n_max + 1):
        jk = monomial_at(idx)
        acc += series_term(gamma, *jk)
        value = QSqrt2(1 - acc)
        if direct is not None and direct[idx] != value:
            raise ConventionMismatch(gamma, idx, value, direct[idx])
        entries.append(DistanceEntry(idx, jk.degree, value, to_float(value)))
    return DistanceSeries(gamma, entries)


def decay_slope(series: DistanceSeries, d_min: int, d_max: int) -> float:
    """Least-squares slope of ``log nu_n**2`` against ``log d``.

    Only the last order of each total degree ``d`` is used.  For the weight
    f the slope approaches ``-gamma``.
    """
    if d_min < 2:
        raise ValueError("d_min must be at least 2")
    by_order = {e.n: e for e in series.entries}
    xs, ys = [], []
    for d in range(d_min, d_max + 1):
        e = by_order.get(last_index_of_degree(d))
        if e is None:
            raise InsufficientData(f"series stops before total degree {d}")
        xs.append(math.log(d))
        ys.append(math.log(e.nu_sq_float))
    if len(xs) < 3:
        raise InsufficientData("need at least three degrees to fit a slope")
    return statistics.linear_regression(xs, ys).slope
