from fractions import Fraction

import pytest

from ballapprox.hgamma_space import SpaceParams, Weight, weighted_inner, weighted_inner_fast
from ballapprox.monomial_order import index_of, monomial_at
from ballapprox.orthopoly import (
    IndexMappingError,
    OrthoPoly,
    closed_form_coefficient,
    gram_schmidt_oracle,
    phi_closed_form,
    phi_recursive,
    verify_f_squared_recursion,
)
from ballapprox.poly2 import Poly, monomial
from ballapprox.qfield import QSqrt2

r2 = lambda q: QSqrt2(0, q)  # noqa: E731


def test_closed_form_base_case(gamma):
    op = phi_closed_form(gamma, 0, 0)
    assert op.poly == Poly.constant(1)
    assert op.norm_sq == (gamma + 1) / gamma


def test_closed_form_examples():
    op = phi_closed_form(1, 1, 0)
    assert op.poly == Poly({(1, 0): 1, (0, 0): r2(Fraction(1, 4))})
    assert op.norm_sq == Fraction(3, 2)
    assert phi_closed_form(2, 1, 1).poly.coefficient(0, 0) == Fraction(1, 12)


# values from an independent symbolic Gram-Schmidt
def test_closed_form_matches_symbolic_oracle():
    assert phi_closed_form(1, 1, 1).poly == Poly({
        (1, 1): 1, (1, 0): r2(Fraction(1, 6)), (0, 1): r2(Fraction(1, 6)), (0, 0): Fraction(1, 6)})
    assert phi_closed_form(1, 1, 1).norm_sq == Fraction(2, 3)
    assert phi_closed_form(2, 1, 0).norm_sq == Fraction(2, 3)
    assert phi_closed_form(2, 1, 1).poly == Poly({
        (1, 1): 1, (1, 0): r2(Fraction(1, 8)), (0, 1): r2(Fraction(1, 8)), (0, 0): Fraction(1, 12)})
    assert phi_closed_form(2, 1, 1).norm_sq == Fraction(5, 24)


def test_recursive_examples():
    assert phi_recursive(3, 0, 0).poly == Poly.constant(1)
    assert phi_recursive(2, 1, 0).poly == Poly({(1, 0): 1, (0, 0): r2(Fraction(1, 6))})
    phi10 = Poly({(1, 0): 1, (0, 0): r2(Fraction(1, 4))})
    expanded = monomial(1, 1) + (phi10 + phi10.swap_variables()).scale(r2(Fraction(1, 6)))
    assert phi_recursive(1, 1, 1).poly == expanded == phi_closed_form(1, 1, 1).poly


def test_gram_schmidt_first_step(gamma):
    for weight in Weight:
        params = SpaceParams(gamma, weight)
        (op,) = gram_schmidt_oracle(params, 1)
        assert op.poly == Poly.constant(1)
        assert op.norm_sq == weighted_inner(params, op.poly, op.poly)


def test_gram_schmidt_matches_closed_form_gamma2():
    for op in gram_schmidt_oracle(SpaceParams(2), 15):
        cf = phi_closed_form(2, *op.jk)
        assert op.poly == cf.poly and op.norm_sq == cf.norm_sq


def test_gram_schmidt_f_squared_example():
    oracle = gram_schmidt_oracle(SpaceParams(1, Weight.F_SQUARED), 6)
    assert oracle[index_of(1, 0)].poly == Poly({(1, 0): 1, (0, 0): r2(Fraction(1, 3))})
    assert oracle[index_of(1, 0)].norm_sq == Fraction(10, 3)


def test_support_and_orthogonality(gamma):
    params = SpaceParams(gamma)
    ops = gram_schmidt_oracle(params, index_of(0, 6) + 1)
    for op in ops:
        assert all(m <= op.j and n <= op.k for m, n in op.poly)
        assert op.poly.coefficient(op.j, op.k) == 1
        assert op.norm_sq > 0
    polys = [phi_closed_form(gamma, *monomial_at(i)).poly for i in range(len(ops))]
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            assert not weighted_inner_fast(gamma, polys[a], polys[b])


def test_cancellation(gamma):
    params = SpaceParams(gamma)
    for s in range(1, 7):
        for k in range(1, s + 1):
            j = s - k
            phi = phi_closed_form(gamma, j + 1, k - 1).poly
            assert weighted_inner(params, monomial(j, k), phi) == 0


def test_coefficient_symmetry(gamma):
    for j in range(6):
        for k in range(6):
            for m in range(j + 1):
                for n in range(k + 1):
                    assert closed_form_coefficient(gamma, j, k, m, n) == \
                        closed_form_coefficient(gamma, k, j, n, m)


@pytest.mark.parametrize("jk", [(0, 0), (1, 0), (2, 1)])
def test_f_squared_recursion_examples(jk):
    assert verify_f_squared_recursion(*jk)


def test_f_squared_recursion_detects_bad_oracle():
    oracle = gram_schmidt_oracle(SpaceParams(1, Weight.F_SQUARED), 3)
    broken = list(oracle)
    broken[1] = OrthoPoly(broken[1].jk, broken[1].poly + monomial(0, 0), broken[1].norm_sq)
    assert not verify_f_squared_recursion(1, 0, broken)
    mislabelled = [oracle[0], oracle[2], oracle[1]]
    with pytest.raises(IndexMappingError):
        verify_f_squared_recursion(0, 1, mislabelled)


def test_f_squared_support_not_rectangular():
    # no rectangle claim for f**2, but the polynomials are still monic
    for pos, op in enumerate(gram_schmidt_oracle(SpaceParams(1, Weight.F_SQUARED), 10)):
        assert op.poly.coefficient(*monomial_at(pos)) == 1


def test_orthopoly_json_roundtrip():
    op = phi_closed_form(Fraction(5, 2), 2, 1)
    assert OrthoPoly.from_json(op.to_json()) == op


def test_gamma_validation():
    with pytest.raises(ValueError):
        phi_closed_form(0, 1, 1)
    with pytest.raises(ValueError):
        phi_recursive(-1, 1, 1)
