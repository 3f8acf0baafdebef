"""Degree-lexicographic order on monomials ``z1**m * z2**n``.

Monomials are sorted by total degree, ties broken lexicographically, so the
sequence starts ``1, z1, z2, z1**2, z1*z2, z2**2, z1**3, ...``.  Position of
``(m, n)`` is ``d*(d+1)/2 + n`` with ``d = m + n``.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterator, NamedTuple


class MonomialIndex(NamedTuple):
    m: int
    n: int

    @property
    def degree(self) -> int:
        return self.m + self.n

    @property
    def index(self) -> int:
        return index_of(self.m, self.n)


def index_of(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise ValueError(f"exponents must be nonnegative, got ({m}, {n})")
    d = m + n
    return d * (d + 1) // 2 + n


def monomial_at(j: int) -> MonomialIndex:
    if j < 0:
        raise ValueError(f"index must be nonnegative, got {j}")
    d = (isqrt(8 * j + 1) - 1) // 2
    n = j - d * (d + 1) // 2
    return MonomialIndex(d - n, n)


def precedes(p, q) -> bool:
    """Strict order ``p < q``; arguments are ``(m, n)`` pairs."""
    return index_of(*p) < index_of(*q)


def last_index_of_degree(d: int) -> int:
    """Order n whose space P_n holds exactly the monomials of degree <= d."""
    return index_of(0, d)


def monomials(count: int) -> Iterator[MonomialIndex]:
    """The first ``count`` monomials in order."""
    for j in range(count):
        yield monomial_at(j)
