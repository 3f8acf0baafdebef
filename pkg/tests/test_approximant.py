import math
from fractions import Fraction

import pytest

from ballapprox.approximant import (
    Approximant,
    ConventionMismatch,
    DistanceEntry,
    DistanceSeries,
    InsufficientData,
    SingularSystemError,
    approximant_oracle,
    decay_slope,
    direct_distances,
    lemma31_consistency,
    lemma31_scalar,
    optimal_approximant,
    optimal_approximants,
    optimal_distance,
    optimal_distance_series,
    phi_cap,
    solve_exact,
)
from ballapprox.hgamma_space import inner
from ballapprox.monomial_order import MonomialIndex, last_index_of_degree, monomial_at
from ballapprox.poly2 import Poly, monomial, weight_f
from ballapprox.qfield import ONE, ZERO, QSqrt2

r2 = lambda q: QSqrt2(0, q)  # noqa: E731
F = Fraction


def test_phi_cap_examples():
    assert phi_cap(2, 0, 0) == Poly.constant(F(2, 3))
    assert phi_cap(2, 1, 0) == Poly({(0, 0): F(1, 12), (1, 0): r2(F(1, 4))})
    assert phi_cap(3, 0, 0) == Poly.constant(F(3, 4))


@pytest.mark.parametrize("g, jk", [(2, (0, 0)), (1, (1, 1)), (3, (2, 0)), (F(5, 2), (3, 2))])
def test_lemma31(g, jk):
    assert lemma31_consistency(g, *jk)


def test_lemma31_scalars():
    assert lemma31_scalar(2, 0, 0) == F(2, 3)
    assert lemma31_scalar(1, 1, 1) == F(1, 4)


def test_optimal_approximant_examples():
    p = optimal_approximant(2, 2)
    assert p.poly == Poly({(0, 0): F(5, 6), (1, 0): r2(F(1, 4)), (0, 1): r2(F(1, 4))})
    assert p.bidegree == (0, 1)
    assert optimal_approximant(3, 4).poly == Poly({
        (0, 0): F(15, 16), (1, 0): r2(F(2, 5)), (0, 1): r2(F(7, 20)),
        (2, 0): F(1, 4), (1, 1): F(1, 2)})
    assert optimal_approximant(2, 0).poly == Poly.constant(F(2, 3))


def test_oracle_examples():
    assert approximant_oracle(2, 1).poly == Poly({(0, 0): F(3, 4), (1, 0): r2(F(1, 4))})
    assert approximant_oracle(3, 2).poly == Poly({
        (0, 0): F(9, 10), (1, 0): r2(F(3, 10)), (0, 1): r2(F(3, 10))})
    assert approximant_oracle(1, 0).poly == Poly.constant(F(1, 2))


def test_oracle_matches_closed_form_small(gamma):
    for n in range(10):
        assert optimal_approximant(gamma, n) == approximant_oracle(gamma, n)


def test_support_within_pn():
    for r in optimal_approximants(F(5, 2), 20):
        assert all(MonomialIndex(*mn).index <= r.n for mn in r.poly)


def test_p2_symmetric(gamma):
    p = optimal_approximant(gamma, 2).poly
    assert p.swap_variables() == p


def test_residual_orthogonal(gamma):
    f = weight_f()
    for n in range(10):
        residual = optimal_approximant(gamma, n).poly * f - 1
        for i in range(n + 1):
            assert inner(gamma, residual, f * monomial(*monomial_at(i))) == 0


# direct norm values confirmed by an independent symbolic expansion
@pytest.mark.parametrize("g, n, expected", [(2, 0, F(1, 3)), (2, 1, F(1, 4)), (1, 0, F(1, 2)), (1, 1, F(5, 12))])
def test_optimal_distance_examples(g, n, expected):
    assert optimal_distance(g, n) == expected


@pytest.mark.parametrize("g", [1, 2, 3, F(5, 2)])
def test_distance_at_order_zero(g):
    assert optimal_distance_series(g, 0).entries[0].nu_sq == 1 / (F(g) + 1)


def test_series_entries_and_monotonicity():
    s = optimal_distance_series(2, last_index_of_degree(6))
    assert [e.nu_sq for e in s.entries[:2]] == [F(1, 3), F(1, 4)]
    vals = [e.nu_sq for e in s.entries]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_series_equals_direct(gamma):
    n_max = last_index_of_degree(8)
    s = optimal_distance_series(gamma, n_max, check=False)
    assert [e.nu_sq for e in s.entries] == direct_distances(gamma, n_max)
    assert [optimal_distance(gamma, n) for n in (0, 5, 17)] == [s.entries[n].nu_sq for n in (0, 5, 17)]


def test_strict_reading_of_sum_is_inconsistent():
    # summing only over (j,k) strictly before the bidegree gives nu_0^2 = 1
    assert optimal_distance(2, 0) != 1


def test_convention_mismatch_raised(monkeypatch):
    import ballapprox.approximant as ap

    monkeypatch.setattr(ap, "series_term", lambda g, j, k: F(0))
    with pytest.raises(ConventionMismatch) as err:
        ap.optimal_distance_series(2, 3)
    assert err.value.n == 0


def test_cyclicity_sanity():
    s = optimal_distance_series(1, last_index_of_degree(40), check=False)
    assert s.entries[-1].nu_sq < F(1, 20)


def _series(values_by_degree):
    entries = []
    for d, v in values_by_degree.items():
        n = last_index_of_degree(d)
        entries.append(DistanceEntry(n, d, QSqrt2(v), float(v)))
    return DistanceSeries(F(1), entries)


def test_decay_slope_constant_and_power_law():
    assert decay_slope(_series({d: F(1, 3) for d in range(2, 12)}), 2, 11) == pytest.approx(0.0, abs=1e-12)
    s = _series({d: F(1, d ** 3) for d in range(2, 12)})
    assert decay_slope(s, 2, 11) == pytest.approx(-3.0, abs=1e-12)


def test_decay_slope_errors():
    s = _series({d: F(1, d) for d in range(2, 12)})
    with pytest.raises(InsufficientData):
        decay_slope(s, 2, 3)
    with pytest.raises(InsufficientData):
        decay_slope(s, 5, 20)
    with pytest.raises(ValueError):
        decay_slope(s, 1, 10)


def test_solve_exact_singular():
    with pytest.raises(SingularSystemError):
        solve_exact([[ONE, ONE], [ONE, ONE]], [ONE, ZERO])


def test_solve_exact_pivoting():
    x = solve_exact([[ZERO, ONE], [ONE, ZERO]], [QSqrt2(2), QSqrt2(0, 3)])
    assert x == [QSqrt2(0, 3), QSqrt2(2)]


def test_approximant_json_roundtrip():
    r = optimal_approximant(3, 7)
    assert Approximant.from_json(r.to_json()) == r
    bad = r.to_json()
    bad["bidegree"] = [0, 0]
    with pytest.raises(ValueError):
        Approximant.from_json(bad)


def test_distance_series_float_projection():
    s = optimal_distance_series(3, 5)
    for e in s.entries:
        assert math.isclose(e.nu_sq_float, float(e.nu_sq.a), rel_tol=1e-15)
        assert e.nu_sq.b == 0
