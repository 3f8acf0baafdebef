"""The spaces H_gamma on the unit ball of C^2 and their f-weighted versions.

Monomials are orthogonal in H_gamma with

    ||z1**m z2**n||**2 = m! n! / (gamma)_(m+n)      (and 1 for the constant),

so inner products of polynomials reduce to weighted coefficient sums.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import factorial

from .poly2 import Poly, weight_f, weight_f_squared
from .qfield import SQRT2_HALF, ZERO, QSqrt2, pochhammer

__all__ = [
    "Weight",
    "SpaceParams",
    "weight_a",
    "inner",
    "norm_sq",
    "weighted_inner",
    "monomial_weighted_inner",
    "weighted_inner_fast",
]


class Weight(enum.Enum):
    F = "f"
    F_SQUARED = "f2"

    def polynomial(self) -> Poly:
        return weight_f() if self is Weight.F else weight_f_squared()


@dataclass(frozen=True)
class SpaceParams:
    gamma: Fraction
    weight: Weight = Weight.F

    def __post_init__(self):
        g = Fraction(self.gamma)
        if g <= 0:
            raise ValueError("gamma must be positive")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "weight", Weight(self.weight))


def weight_a(gamma, m: int, n: int) -> Fraction:
    """Squared norm of ``z1**m z2**n`` in H_gamma."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return _weight_a(Fraction(gamma), m, n)


# lru_cache is safe under concurrent readers and writers
@lru_cache(maxsize=1 << 16)
def _weight_a(gamma: Fraction, m: int, n: int) -> Fraction:
    if m == 0 and n == 0:
        return Fraction(1)
    return factorial(m) * factorial(n) / pochhammer(gamma, m + n)


def inner(gamma, p: Poly, q: Poly) -> QSqrt2:
    """``<p, q>`` in H_gamma (coefficients are real, so no conjugation)."""
    if len(q) < len(p):
        p, q = q, p
    total = ZERO
    for (m, n), c in p.items():
        d = q.coefficient(m, n)
        if d:
            total = total + c * d * weight_a(gamma, m, n)
    return total


def norm_sq(gamma, p: Poly) -> QSqrt2:
    return inner(gamma, p, p)


def weighted_inner(params: SpaceParams, p: Poly, q: Poly) -> QSqrt2:
    """``<p*w, q*w>`` in H_gamma by explicit multiplication.

    This is the brute-force reference path; see :func:`weighted_inner_fast`
    for the monomial-pair shortcut valid for the weight f.
    """
    w = params.weight.polynomial()
    return inner(params.gamma, p * w, q * w)


def monomial_weighted_inner(gamma, a, j: int, k: int, m: int, n: int) -> QSqrt2:
    """``<z1^j z2^k, z1^m z2^n>`` weighted by ``1 - a*(z1 + z2)``, in closed form.

    Only the seven neighbour configurations of ``(m, n)`` around ``(j, k)``
    are nonzero.
    """
    a = QSqrt2.coerce(a)
    dm, dn = m - j, n - k
    if dm == 0 and dn == 0:
        return (weight_a(gamma, j, k)
                + a * a * (weight_a(gamma, j + 1, k) + weight_a(gamma, j, k + 1)))
    if (dm, dn) in ((-1, 0), (0, -1)):
        return -a * weight_a(gamma, j, k)
    if (dm, dn) == (1, 0):
        return -a * weight_a(gamma, j + 1, k)
    if (dm, dn) == (0, 1):
        return -a * weight_a(gamma, j, k + 1)
    if (dm, dn) == (1, -1):
        return a * a * weight_a(gamma, j + 1, k)
    if (dm, dn) == (-1, 1):
        return a * a * weight_a(gamma, j, k + 1)
    return ZERO


_NEIGHBOURS = ((0, 0), (-1, 0), (0, -1), (1, 0), (0, 1), (1, -1), (-1, 1))


def weighted_inner_fast(gamma, p: Poly, q: Poly, a=SQRT2_HALF) -> QSqrt2:
    """``<p, q>`` weighted by ``1 - a*(z1 + z2)`` via monomial pairs.

    Equal to :func:`weighted_inner` with the weight f when ``a = sqrt(2)/2``.
    """
    total = ZERO
    for (j, k), c in p.items():
        for dm, dn in _NEIGHBOURS:
            m, n = j + dm, k + dn
            if m < 0 or n < 0:
                continue
            d = q.coefficient(m, n)
            if d:
                total = total + c * d * monomial_weighted_inner(gamma, a, j, k, m, n)
    return total
