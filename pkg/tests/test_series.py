from __future__ import annotations

import json

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import a4x_expr, coeffs, pipeline_expr, quad_expr, sym_expr, t
from quillen_workbench.errors import RealizabilityError
from quillen_workbench.series import (
    PowerSeries,
    alt_dim_degree2,
    series_a4x,
    series_gysin,
    series_quadratic,
    series_sylow_alt_pipeline,
    series_sylow_alt_pipeline_steps,
    series_sylow_symmetric,
    series_sym_invariants,
    series_tau_quadratic,
)

N = 10


def geom(power=1, n=N):
    return PowerSeries.geometric(n, power)


def one(n=N):
    return PowerSeries.constant(1, n)


def poly_of(cs):
    return sum((c * t**i for i, c in enumerate(cs)), sp.Integer(0))


# -- arithmetic -------------------------------------------------------


def test_rational_expansion():
    assert geom().to_list() == [1] * (N + 1)
    assert geom(2).to_list() == list(range(1, N + 2))
    # t / ((1 - t)(1 - t^2))
    s = PowerSeries.rational([0, 1], [1, -1, -1, 1], 8)
    assert s.to_list() == coeffs(t / ((1 - t) * (1 - t**2)), 8)
    with pytest.raises(ValueError):
        PowerSeries.rational([1], [2, 1], 4)


def test_substitution_and_shift():
    s = PowerSeries.from_list([1, 2, 3, 4, 5])
    assert s.substitute_power(2).to_list() == [1, 0, 2, 0, 3]
    assert s.shift(2).to_list() == [0, 0, 1, 2, 3]
    assert s[7] == 0


def test_mixed_truncation_takes_the_smaller():
    assert (geom(1, 4) + geom(1, 6)).truncation == 4
    assert (geom(1, 4) * geom(1, 6)).to_list() == [1, 2, 3, 4, 5]


def test_exact_division():
    assert PowerSeries.from_list([2, 4]).exact_div(2).to_list() == [1, 2]
    with pytest.raises(RealizabilityError):
        PowerSeries.from_list([2, 3]).exact_div(2)


def test_json_shape():
    data = json.loads(json.dumps(geom(1, 3).to_json("S")))
    assert data == {"label": "S", "truncation": 3, "coefficients": [1, 1, 1, 1]}


# -- quadratic and invariant series -----------------------------------


def test_quadratic_examples():
    assert series_quadratic(one()).to_list() == [1] * (N + 1)
    assert series_quadratic(geom()).to_list() == list(range(1, N + 2))
    two = series_quadratic(PowerSeries.constant(2, N))
    assert two.to_list() == [3] + [2] * N
    assert two != 2 * series_quadratic(one())


def test_sym_invariant_examples():
    assert series_sym_invariants(one()).to_list() == [1] + [0] * N
    assert series_sym_invariants(geom()).to_list() == [d // 2 + 1 for d in range(N + 1)]
    assert series_sym_invariants(PowerSeries.from_list([1, 1], N)).to_list() == [1, 1, 1] + [0] * (N - 2)


coefficient_lists = st.lists(st.integers(0, 6), min_size=1, max_size=7)


@settings(max_examples=25, deadline=None)
@given(coefficient_lists)
def test_quadratic_matches_symbolic_oracle(cs):
    s = PowerSeries.from_list(cs, 8)
    expr = poly_of(cs)
    assert series_quadratic(s).to_list() == coeffs(quad_expr(expr), 8)
    assert series_sym_invariants(s).to_list() == coeffs(sym_expr(expr), 8)


@settings(max_examples=15, deadline=None)
@given(coefficient_lists)
def test_a4x_matches_symbolic_oracle(cs):
    s = PowerSeries.from_list(cs, 8)
    assert series_a4x(s).to_list() == coeffs(a4x_expr(poly_of(cs)), 8)


# -- Gysin and tau ----------------------------------------------------


def test_gysin_examples():
    assert series_gysin(geom(), PowerSeries.zero(N)).to_list() == [1] + [0] * N
    ker = PowerSeries.rational([0, 1], [1, -1, -1, 1], N)
    assert series_gysin(geom(2), ker) == geom(2)
    s3, t3, _ = series_sylow_alt_pipeline(3, 6)
    a = series_gysin(s3, t3)
    assert a[1] == 3 and a[2] == 7


def test_gysin_rejects_negative_output():
    with pytest.raises(RealizabilityError):
        series_gysin(one(), PowerSeries.zero(N))


def test_tau_examples():
    got = series_tau_quadratic(geom(), PowerSeries.zero(N))
    assert got.to_list() == coeffs(t / ((1 - t) * (1 - t**2)), N)
    # the u-trivial part of the quadratic construction on a u-trivial F2
    assert series_tau_quadratic(one(), one()).to_list() == [1] * (N + 1)


def test_tau_rejects_negative_output():
    with pytest.raises(RealizabilityError):
        series_tau_quadratic(PowerSeries.constant(-1, N), PowerSeries.zero(N))


# -- pipeline ---------------------------------------------------------


def test_pipeline_base_and_klein():
    s1, t1, a1 = series_sylow_alt_pipeline(1, N)
    assert s1 == geom() and t1 == PowerSeries.zero(N)
    assert a1.to_list() == [1] + [0] * N
    _, _, a2 = series_sylow_alt_pipeline(2, N)
    assert a2 == geom(2)
    with pytest.raises(ValueError):
        series_sylow_alt_pipeline(0, N)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_pipeline_matches_symbolic_oracle(m):
    s, tau, a = series_sylow_alt_pipeline(m, 8)
    es, et, ea = pipeline_expr(m)
    assert s.to_list() == coeffs(es, 8)
    assert tau.to_list() == coeffs(et, 8)
    assert a.to_list() == coeffs(ea, 8)


@pytest.mark.parametrize("m", range(2, 7))
def test_alternating_low_degrees(m):
    _, _, a = series_sylow_alt_pipeline(m, 3)
    assert a[0] == 1
    assert a[1] == m
    if m >= 3:
        assert a[2] == alt_dim_degree2(m)


def test_degree_two_values():
    assert [alt_dim_degree2(m) for m in range(3, 7)] == [7, 13, 23, 38]


def test_pipeline_is_nonnegative():
    for step in series_sylow_alt_pipeline_steps(6, 16):
        assert step.s.is_nonnegative() and step.t.is_nonnegative() and step.a.is_nonnegative()


def test_a4x_examples():
    assert series_a4x(one()) == geom(2)
    _, _, a3 = series_sylow_alt_pipeline(3, 20)
    assert series_a4x(geom(1, 20)) == a3
    _, _, a4 = series_sylow_alt_pipeline(4, 4)
    assert a4[2] == 13
    assert series_a4x(geom(2, 4))[2] == 15


def test_symmetric_series_is_a_product_over_binary_digits():
    assert series_sylow_symmetric(1, N) == one()
    assert series_sylow_symmetric(2, N) == geom()
    assert series_sylow_symmetric(4, N) == geom(2)
    s4 = series_sylow_symmetric(4, N)
    assert series_sylow_symmetric(6, N) == s4 * geom()
    s8 = series_sylow_alt_pipeline(3, N)[0]
    assert series_sylow_symmetric(13, N) == s8 * s4 * one()
