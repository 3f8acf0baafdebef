"""Monic orthogonal polynomials for the weighted inner product <g f, h f>.

Three independent routes produce ``phi_{j,k}``, the first orthogonal
polynomial containing ``z1**j z2**k``:

* :func:`phi_closed_form` evaluates every coefficient from factorials and
  Pochhammer symbols, with the norm from its own closed formula;
* :func:`phi_recursive` runs the two-term recursion in ``phi_{j,k-1}`` and
  ``phi_{j-1,k}``;
* :func:`gram_schmidt_oracle` runs classical Gram-Schmidt on the monomials
  with the brute-force weighted inner product, for either weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .hgamma_space import SpaceParams, Weight, weighted_inner
from .monomial_order import MonomialIndex, index_of, monomial_at
from .poly2 import Poly, monomial
from .qfield import SQRT2, SQRT2_HALF, QSqrt2, pochhammer, sqrt2_half_pow

__all__ = [
    "OrthoPoly",
    "IndexMappingError",
    "closed_form_coefficient",
    "closed_form_norm_sq",
    "phi_closed_form",
    "phi_recursive",
    "gram_schmidt_oracle",
    "verify_f_squared_recursion",
]


class IndexMappingError(LookupError):
    """An oracle polynomial is not monic in the monomial its position names."""


@dataclass(frozen=True)
class OrthoPoly:
    jk: MonomialIndex
    poly: Poly
    norm_sq: QSqrt2

    @property
    def j(self) -> int:
        return self.jk.m

    @property
    def k(self) -> int:
        return self.jk.n

    def to_json(self) -> dict:
        return {"j": self.j, "k": self.k, "norm_sq": self.norm_sq.to_json(),
                "poly": self.poly.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> OrthoPoly:
        return cls(MonomialIndex(obj["j"], obj["k"]), Poly.from_json(obj["poly"]),
                   QSqrt2.from_json(obj["norm_sq"]))


def _check_gamma(gamma) -> Fraction:
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return gamma


def closed_form_coefficient(gamma, j: int, k: int, m: int, n: int) -> QSqrt2:
    """Coefficient of ``z1**m z2**n`` in ``phi_{j,k}`` for the weight f."""
    if not (0 <= m <= j and 0 <= n <= k):
        return QSqrt2()
    e = j + k - m - n
    ratio = pochhammer(gamma, m + n + 1) / pochhammer(gamma, j + k + 1)
    combinatorial = Fraction(
        factorial(j) * factorial(k) * factorial(e),
        factorial(m) * factorial(n) * factorial(j - m) * factorial(k - n),
    )
    return sqrt2_half_pow(e) * (ratio * combinatorial)


def closed_form_norm_sq(gamma, j: int, k: int) -> Fraction:
    s = j + k
    return (gamma + s + 1) / (gamma + s) * factorial(j) * factorial(k) / pochhammer(gamma, s)


def phi_closed_form(gamma, j: int, k: int) -> OrthoPoly:
    gamma = _check_gamma(gamma)
    terms = {
        (m, n): closed_form_coefficient(gamma, j, k, m, n)
        for m in range(j + 1)
        for n in range(k + 1)
    }
    return OrthoPoly(MonomialIndex(j, k), Poly(terms), QSqrt2(closed_form_norm_sq(gamma, j, k)))


def phi_recursive(gamma, j: int, k: int) -> OrthoPoly:
    """``phi_{j,k} = z1^j z2^k + (sqrt2/2)/(gamma+j+k) * (k phi_{j,k-1} + j phi_{j-1,k})``."""
    gamma = _check_gamma(gamma)
    return OrthoPoly(MonomialIndex(j, k), _recursive_poly(gamma, j, k),
                     QSqrt2(closed_form_norm_sq(gamma, j, k)))


@lru_cache(maxsize=4096)
def _recursive_poly(gamma: Fraction, j: int, k: int) -> Poly:
    p = monomial(j, k)
    acc = Poly()
    # a predecessor with a negative index has a zero multiplier, so it is skipped
    if k > 0:
        acc = acc + _recursive_poly(gamma, j, k - 1).scale(k)
    if j > 0:
        acc = acc + _recursive_poly(gamma, j - 1, k).scale(j)
    return p + acc.scale(SQRT2_HALF / (gamma + j + k))


def gram_schmidt_oracle(params: SpaceParams, count: int) -> list[OrthoPoly]:
    """Classical Gram-Schmidt on the first ``count`` monomials, exactly.

    Norms come from the weighted inner product itself, never from a formula.
    """
    if count < 1:
        raise ValueError("count must be positive")
    out: list[OrthoPoly] = []
    for idx in range(count):
        jk = monomial_at(idx)
        chi = monomial(*jk)
        phi = chi
        for prev in out:
            c = weighted_inner(params, chi, prev.poly)
            if c:
                phi = phi - prev.poly.scale(c / prev.norm_sq)
        out.append(OrthoPoly(jk, phi, weighted_inner(params, phi, phi)))
    return out


def _f_squared_rhs(table: dict, j: int, k: int) -> Poly:
    s = j + k
    rhs = monomial(j, k)
    first = Poly()
    if k >= 1:
        first = first + table[(j, k - 1)].scale(k)
    if j >= 1:
        first = first + table[(j - 1, k)].scale(j)
    rhs = rhs + first.scale(SQRT2 / (s + 2))
    second = Poly()
    if k >= 2:
        second = second + table[(j, k - 2)].scale(Fraction(k * (k - 1), 2))
    if j >= 1 and k >= 1:
        second = second + table[(j - 1, k - 1)].scale(j * k)
    if j >= 2:
        second = second + table[(j - 2, k)].scale(Fraction(j * (j - 1), 2))
    return rhs - second.scale(Fraction(1, (s + 1) * (s + 2)))


def verify_f_squared_recursion(j: int, k: int, oracle: list[OrthoPoly] | None = None) -> bool:
    """Check the three-level recursion of the f**2-weighted polynomials at gamma = 1.

    ``oracle`` may be a precomputed :func:`gram_schmidt_oracle` list for
    gamma = 1 and weight f**2 long enough to contain ``(j, k)``.
    """
    need = index_of(j, k) + 1
    if oracle is None or len(oracle) < need:
        oracle = gram_schmidt_oracle(SpaceParams(Fraction(1), Weight.F_SQUARED), need)
    table = {}
    for pos, op in enumerate(oracle[:need]):
        jk = monomial_at(pos)
        if op.jk != jk or op.poly.coefficient(*jk) != 1:
            raise IndexMappingError(f"oracle polynomial at position {pos} is not monic in {jk}")
        table[jk] = op.poly
    return table[(j, k)] == _f_squared_rhs(table, j, k)
