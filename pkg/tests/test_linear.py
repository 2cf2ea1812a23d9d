import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hydroelastic import (
    ModelParams,
    TorusGrid,
    dispersion_roots,
    dispersion_table,
    linear_propagate_bi,
    propagator_entries,
    symbol_ab,
    symbol_alphagamma,
    uni_linear_symbol,
)
from hydroelastic.linear import uni_linear_symbol_grid

import oracles

PARAM_GRID = st.sampled_from(
    [
        ModelParams(upsilon=0.5, delta=0.0, beta=0.0, epsilon=0.2),
        ModelParams(upsilon=1.0, delta=1.0, beta=4.0, epsilon=0.2),
        ModelParams(upsilon=3.0, delta=0.5, beta=0.0, epsilon=0.1),
        ModelParams(upsilon=1.0, delta=10.0, beta=2.0, epsilon=0.5),
    ]
)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(upsilon=0.0)
    with pytest.raises(ValueError):
        ModelParams(upsilon=1.0, delta=-0.1)
    with pytest.raises(ValueError):
        ModelParams(upsilon=1.0, beta=-1.0)
    with pytest.raises(ValueError):
        ModelParams(upsilon=1.0, epsilon=-1.0)


def test_dispersion_roots_frozen_underdamped():
    # 2 r^2 + r + 2 = 0 at ups=delta=1, beta=4, k=1 (hand algebra)
    r = dispersion_roots(1.0, ModelParams(upsilon=1.0, delta=1.0, beta=4.0))
    want = complex(-0.25, np.sqrt(15.0) / 4.0)
    assert abs(r.r_plus - want) <= 1e-15
    assert abs(r.r_minus - want.conjugate()) <= 1e-15


def test_dispersion_roots_frozen_overdamped():
    # A=2, B=10, C=1: sum -5, product 1/2; r_plus is the slow root
    r = dispersion_roots(1.0, ModelParams(upsilon=1.0, delta=10.0))
    assert abs(r.r_plus + r.r_minus + 5.0) <= 1e-13
    assert abs(r.r_plus * r.r_minus - 0.5) <= 1e-13
    assert r.r_plus.imag == 0.0 and abs(r.r_plus) < abs(r.r_minus)


def test_dispersion_roots_frozen_double():
    # delta^2 = 8(1 + beta/4) at ups=1, k=1: double root -B/(2A) = -sqrt(2)/2
    r = dispersion_roots(1.0, ModelParams(upsilon=1.0, delta=2.0 * np.sqrt(2.0)))
    assert r.r_plus == r.r_minus
    assert abs(r.r_plus + np.sqrt(2.0) / 2.0) <= 1e-14


def test_dispersion_roots_undamped_frequency():
    # omega^2 = (|k| + beta/4 |k|^5)/(1 + ups |k|); at ups=1, beta=0, k=4: 4/5
    r = dispersion_roots(4.0, ModelParams(upsilon=1.0, delta=0.0))
    assert abs(r.r_plus - 1j * 2.0 / np.sqrt(5.0)) <= 1e-14
    assert abs(r.r_plus.real) == 0.0


def test_dispersion_roots_zero_k_rejected():
    with pytest.raises(ValueError):
        dispersion_roots(0.0, ModelParams(upsilon=1.0))


@settings(max_examples=30, deadline=None)
@given(params=PARAM_GRID, k=st.sampled_from([-9.0, -2.0, -1.0, 1.0, 2.0, 5.0, 16.0]))
def test_dispersion_roots_satisfy_quadratic(params, k):
    kmag = abs(k)
    A = 1.0 + params.upsilon * kmag
    B = params.delta * kmag**3
    C = kmag + 0.25 * params.beta * kmag**5
    r = dispersion_roots(k, params)
    scale = A * max(1.0, abs(r.r_plus)) ** 2 + B * max(1.0, abs(r.r_plus)) + C
    for root in (r.r_plus, r.r_minus):
        assert abs(A * root**2 + B * root + C) <= 1e-12 * scale


def test_propagator_identity_and_zero_mode():
    p = ModelParams(upsilon=1.0, delta=1.0, beta=4.0)
    kmag = np.array([0.0, 1.0, 3.0])
    m11, m12, m21, m22 = propagator_entries(kmag, 0.0, p)
    assert np.allclose([m11, m22], 1.0, atol=1e-14) and np.allclose([m12, m21], 0.0, atol=1e-14)
    m11, m12, m21, m22 = propagator_entries(kmag, 0.7, p)
    assert (m11[0], m12[0], m21[0], m22[0]) == (1.0, 0.7, 0.0, 1.0)


def test_propagator_matches_expm_oracle():
    # scipy expm of the 2x2 companion matrix, all damping branches
    cases = [
        (ModelParams(upsilon=1.0, delta=1.0, beta=4.0), [1.0, 2.0, 7.0]),
        (ModelParams(upsilon=1.0, delta=10.0), [1.0, 2.0]),  # overdamped
        (ModelParams(upsilon=1.0, delta=2.0 * np.sqrt(2.0)), [1.0]),  # double
        (ModelParams(upsilon=0.5, delta=0.0, beta=1.0), [1.0, 5.0]),  # undamped
    ]
    rng = np.random.default_rng(7)
    for params, ks in cases:
        for kmag in ks:
            for t in (0.3, 1.7):
                f0, v0 = rng.standard_normal(2)
                want_f, want_v = oracles.expm_mode(kmag, params, t, f0, v0)
                got_f, got_v = linear_propagate_bi(f0, v0, np.array([kmag]), t, params)
                assert abs(got_f[0] - want_f) <= 1e-12 * max(1.0, abs(want_f))
                assert abs(got_v[0] - want_v) <= 1e-12 * max(1.0, abs(want_v))


@settings(max_examples=25, deadline=None)
@given(
    params=PARAM_GRID,
    t=st.floats(0.1, 2.0),
    s=st.floats(0.1, 2.0),
    kmag=st.sampled_from([0.0, 1.0, 2.0, 6.0]),
)
def test_propagator_semigroup(params, t, s, kmag):
    karr = np.array([kmag])
    a = np.array(propagator_entries(karr, t, params))[:, 0]
    b = np.array(propagator_entries(karr, s, params))[:, 0]
    c = np.array(propagator_entries(karr, t + s, params))[:, 0]
    prod = (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )
    scale = max(1.0, np.abs(c).max())
    assert np.abs(np.array(prod) - c).max() <= 1e-10 * scale


@settings(max_examples=25, deadline=None)
@given(params=PARAM_GRID, kmag=st.sampled_from([1.0, 2.0, 6.0]), t=st.floats(0.0, 3.0))
def test_propagator_liouville_determinant(params, kmag, t):
    # det M(t) = exp(-B t / A)
    A = 1.0 + params.upsilon * kmag
    B = params.delta * kmag**3
    m11, m12, m21, m22 = propagator_entries(np.array([kmag]), t, params)
    det = m11[0] * m22[0] - m12[0] * m21[0]
    assert abs(det - np.exp(-B * t / A)) <= 1e-10 * max(1.0, np.exp(-B * t / A))


@settings(max_examples=25, deadline=None)
@given(
    params=PARAM_GRID,
    kmag=st.sampled_from([1.0, 3.0]),
    t1=st.floats(0.1, 1.0),
    dt=st.floats(0.1, 2.0),
    seed=st.integers(0, 100),
)
def test_propagator_energy_decay(params, kmag, t1, dt, seed):
    # E = A v^2 + C f^2 obeys E' = -2 B v^2 <= 0 per mode
    A = 1.0 + params.upsilon * kmag
    C = kmag + 0.25 * params.beta * kmag**5
    rng = np.random.default_rng(seed)
    f0, v0 = rng.standard_normal(2)
    karr = np.array([kmag])
    f1, v1 = linear_propagate_bi(f0, v0, karr, t1, params)
    f2, v2 = linear_propagate_bi(f0, v0, karr, t1 + dt, params)
    E1 = A * v1[0] ** 2 + C * f1[0] ** 2
    E2 = A * v2[0] ** 2 + C * f2[0] ** 2
    assert E2 <= E1 * (1.0 + 1e-10)


def test_propagator_eigenmode():
    # initial data on an eigenvector evolves by exp(r t)
    p = ModelParams(upsilon=1.0, delta=1.0, beta=4.0)
    r = dispersion_roots(2.0, p).r_plus
    t = 0.9
    f, v = linear_propagate_bi(1.0 + 0j, r, np.array([2.0]), t, p)
    assert abs(f[0] - np.exp(r * t)) <= 1e-12
    assert abs(v[0] - r * np.exp(r * t)) <= 1e-12


def test_symbol_ab_frozen():
    # D = 4(1+ups)^2 + delta^2 = 17 at ups=delta=1, k=1
    p = ModelParams(upsilon=1.0, delta=1.0)
    a, b = symbol_ab(1.0, p)
    assert abs(a - 4.0 / 17.0) <= 1e-16
    assert abs(b - 1.0 / 17.0) <= 1e-16
    a0, b0 = symbol_ab(0.0, p)
    assert (a0, b0) == (0.5, 0.0)


@settings(max_examples=25, deadline=None)
@given(params=PARAM_GRID, k=st.sampled_from([-5.0, -1.0, 1.0, 2.0, 12.0]))
def test_symbol_ab_inversion_identity(params, k):
    # 2(1+ups|k|) a + delta k^2 b = 1 and both symbols are even in k
    kmag = abs(k)
    a, b = symbol_ab(k, params)
    assert abs(2.0 * (1.0 + params.upsilon * kmag) * a + params.delta * kmag**2 * b - 1.0) <= 1e-14
    am, bm = symbol_ab(-k, params)
    assert (am, bm) == (a, b)


def test_symbol_alphagamma_frozen():
    # D2 = delta^2 + 4(1+ups)^2 = 17 at ups=delta=1, k=1
    p = ModelParams(upsilon=1.0, delta=1.0)
    alpha, gamma = symbol_alphagamma(1.0, p)
    assert abs(alpha + 1.0 / 17.0) <= 1e-16
    assert abs(gamma - 4.0 / 17.0) <= 1e-16
    with pytest.raises(ValueError):
        symbol_alphagamma(0.0, p)
    assert symbol_alphagamma(0.0, p, zero_convention=True) == (0.0, 0.0)


@settings(max_examples=25, deadline=None)
@given(params=PARAM_GRID, k=st.sampled_from([-5.0, -1.0, 1.0, 2.0, 12.0]))
def test_symbol_alphagamma_inversion_identity(params, k):
    # 2(1+ups|k|)|k| gamma - delta |k|^3 alpha = 1
    kmag = abs(k)
    alpha, gamma = symbol_alphagamma(k, params)
    lhs = 2.0 * (1.0 + params.upsilon * kmag) * kmag * gamma - params.delta * kmag**3 * alpha
    assert abs(lhs - 1.0) <= 1e-13


def test_symbol_array_scalar_consistency():
    p = ModelParams(upsilon=1.3, delta=0.7, beta=2.0)
    ks = np.array([-3.0, 0.0, 1.0, 4.0])
    a_arr, b_arr = symbol_ab(ks, p)
    al_arr, ga_arr = symbol_alphagamma(ks, p, zero_convention=True)
    for i, k in enumerate(ks):
        a, b = symbol_ab(float(k), p)
        assert (a_arr[i], b_arr[i]) == (a, b)
        al, ga = symbol_alphagamma(float(k), p, zero_convention=True)
        assert (al_arr[i], ga_arr[i]) == (al, ga)


def test_uni_linear_symbol_matches_sympy_oracle():
    # independent route: solve the per-mode slow-time balance symbolically
    p = ModelParams(upsilon=1.0, delta=1.0, beta=4.0, epsilon=0.2)
    for k in (1, -2, 3):
        for model in (1, 2):
            want = oracles.sympy_uni_L(k, 1.0, 1.0, 4.0, 0.2, model)
            got = uni_linear_symbol(float(k), p, model)
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_uni_linear_symbol_closed_form_no_damping():
    # delta=beta=0 reduces to i((1+ups|k|)k - sgn k)/(2(1+ups|k|) eps)
    p = ModelParams(upsilon=0.7, delta=0.0, beta=0.0, epsilon=0.3)
    for k in (1.0, -3.0, 5.0):
        A = 1.0 + 0.7 * abs(k)
        want = 1j * (A * k - np.sign(k)) / (2.0 * A * 0.3)
        assert abs(uni_linear_symbol(k, p, 1) - want) <= 1e-13


@settings(max_examples=30, deadline=None)
@given(params=PARAM_GRID, k=st.sampled_from([-9.0, -2.0, 1.0, 2.0, 5.0, 16.0]))
def test_uni_models_share_linear_rate(params, k):
    L1 = uni_linear_symbol(k, params, 1)
    L2 = uni_linear_symbol(k, params, 2)
    assert abs(L1 - L2) <= 1e-11 * max(1.0, abs(L1))


@settings(max_examples=30, deadline=None)
@given(params=PARAM_GRID, k=st.sampled_from([1.0, 2.0, 5.0, 16.0]))
def test_uni_linear_symbol_conjugate_and_dissipative(params, k):
    L = uni_linear_symbol(k, params, 1)
    assert abs(uni_linear_symbol(-k, params, 1) - np.conj(L)) <= 1e-12 * max(1.0, abs(L))
    assert L.real <= 1e-13
    if params.delta == 0.0:
        assert abs(L.real) <= 1e-13 * max(1.0, abs(L))


def test_uni_linear_symbol_validation():
    p = ModelParams(upsilon=1.0, delta=1.0, epsilon=0.2)
    with pytest.raises(ValueError):
        uni_linear_symbol(0.0, p, 1)
    with pytest.raises(ValueError):
        uni_linear_symbol(1.0, p, 3)
    with pytest.raises(ValueError):
        uni_linear_symbol(1.0, ModelParams(upsilon=1.0, delta=1.0), 1)  # eps=0


def test_uni_linear_symbol_grid_layout():
    p = ModelParams(upsilon=1.0, delta=1.0, beta=4.0, epsilon=0.2)
    g = TorusGrid(32)
    vals = uni_linear_symbol_grid(g, p, 2)
    assert vals[0] == 0.0
    k = g.k[0]
    for i in (1, 5, -3):
        want = uni_linear_symbol(float(k[i]), p, 2)
        assert abs(vals[i] - want) <= 1e-15 * abs(want)
    with pytest.raises(ValueError):
        uni_linear_symbol_grid(TorusGrid(16, dim=2), p, 1)


def test_dispersion_table_rows():
    p = ModelParams(upsilon=1.0, delta=1.0, beta=4.0)
    rows = dispersion_table([0.0, 1.0, 2.0], p)
    assert len(rows) == 2  # k=0 skipped
    k, re_p, im_p, re_m, im_m, a, b, alpha, gamma = rows[0]
    assert k == 1.0
    r = dispersion_roots(1.0, p)
    assert (re_p, im_p) == (r.r_plus.real, r.r_plus.imag)
    assert (a, b) == symbol_ab(1.0, p)
    assert (alpha, gamma) == symbol_alphagamma(1.0, p)
