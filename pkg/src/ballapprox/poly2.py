"""Sparse bivariate polynomials with coefficients in Q(sqrt 2)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .monomial_order import MonomialIndex, index_of
from .qfield import ONE, SQRT2_HALF, ZERO, QSqrt2, parse_rational, rational_str

__all__ = [
    "Poly",
    "poly_add",
    "poly_mul",
    "scale",
    "weight_f",
    "weight_f_squared",
    "coefficient_at",
    "monomial",
]


def _key(mn) -> MonomialIndex:
    return mn if isinstance(mn, MonomialIndex) else MonomialIndex(*mn)


class Poly:
    """Immutable map ``(m, n) -> coefficient`` holding only nonzero entries.

    Iteration follows degree-lex order.  Equality is structural, which is
    mathematical equality because zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[MonomialIndex, QSqrt2] = {}
        for mn, c in items:
            k = _key(mn)
            acc[k] = acc.get(k, ZERO) + QSqrt2.coerce(c)
        self._terms = {k: acc[k] for k in sorted(acc, key=lambda k: index_of(*k)) if acc[k]}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Poly:
        # terms already pruned; only ordering is fixed up
        p = cls.__new__(cls)
        p._terms = {k: terms[k] for k in sorted(terms, key=lambda k: index_of(*k))}
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> Poly:
        return cls({(0, 0): c})

    # -- mapping-ish access -------------------------------------------------

    def items(self) -> Iterator[tuple[MonomialIndex, QSqrt2]]:
        return iter(self._terms.items())

    def support(self) -> list[MonomialIndex]:
        return list(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, mn) -> QSqrt2:
        return self._terms.get(_key(mn), ZERO)

    def coefficient(self, m: int, n: int) -> QSqrt2:
        return self._terms.get((m, n), ZERO)

    @property
    def total_degree(self) -> int:
        """Largest total degree present; -1 for the zero polynomial."""
        return max((m + n for m, n in self._terms), default=-1)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[tuple[int, int], QSqrt2] = {}
        for (m1, n1), c1 in self._terms.items():
            for (m2, n2), c2 in other._terms.items():
                k = (m1 + m2, n1 + n2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return Poly._raw({MonomialIndex(*k): c for k, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> Poly:
        c = QSqrt2.coerce(c)
        if not c:
            return Poly()
        return Poly._raw({k: c * v for k, v in self._terms.items()})

    def swap_variables(self) -> Poly:
        """``p(z2, z1)``."""
        return Poly._raw({MonomialIndex(n, m): c for (m, n), c in self._terms.items()})

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"({m}, {n}): {c}" for (m, n), c in self._terms.items())
        return f"Poly({{{body}}})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {"m": m, "n": n, "coeff": c.to_json()} for (m, n), c in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, obj: dict) -> Poly:
        return cls(((t["m"], t["n"]), QSqrt2.from_json(t["coeff"])) for t in obj["terms"])

    def csv_rows(self) -> list[list[str]]:
        """Rows ``m, n, a, b`` in degree-lex order (no header)."""
        return [
            [str(m), str(n), rational_str(c.a), rational_str(c.b)]
            for (m, n), c in self._terms.items()
        ]

    @classmethod
    def from_csv_rows(cls, rows) -> Poly:
        return cls(
            ((int(m), int(n)), QSqrt2(parse_rational(a), parse_rational(b)))
            for m, n, a, b in rows
        )


def monomial(m: int, n: int, coeff=ONE) -> Poly:
    return Poly({(m, n): coeff})


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def scale(c, p: Poly) -> Poly:
    return p.scale(c)


def coefficient_at(p: Poly, m: int, n: int) -> QSqrt2:
    return p.coefficient(m, n)


def weight_f() -> Poly:
    """``1 - (sqrt(2)/2)*(z1 + z2)``, i.e. ``1 - (z1 + z2)/sqrt(2)``."""
    return Poly({(0, 0): ONE, (1, 0): -SQRT2_HALF, (0, 1): -SQRT2_HALF})


def weight_f_squared() -> Poly:
    f = weight_f()
    return f * f
