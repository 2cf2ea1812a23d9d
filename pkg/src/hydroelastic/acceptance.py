"""Numbered acceptance checks, shared by the CLI driver and the test suite.

Each criterion returns a CriterionResult; a raised exception inside a
criterion is reported as a failure, never propagated.  Budgets are wall
clock seconds and generous on purpose.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .bi import BiState, compare_uni_bi, elliptic_solve_U, run_bi, step_bi, BiConfig
from .geometry import SurfaceField, biharmonic_reduction_slope, gauss_bonnet_integral
from .linear import ModelParams, linear_propagate_bi, uni_linear_symbol_grid
from .nonlinear import first_order_expansion_residual, tricomi_residual
from .spectral import (
    SpectralField,
    TorusGrid,
    derivative,
    hilbert,
    inner,
    lambda_pow,
    random_field,
    riesz,
)
from .diagnostics import temporal_order_study
from .uni import UniConfig, decay_rate_fit, energy_calE, run, step


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit_seconds: float


def _cosine(grid: TorusGrid, mode, amplitude=1.0) -> SpectralField:
    c = np.zeros(grid.shape, dtype=complex)
    if grid.dim == 1:
        c[mode % grid.n] = amplitude / 2.0
        c[-mode % grid.n] = amplitude / 2.0
    else:
        k1, k2 = mode
        c[k1 % grid.n, k2 % grid.n] = amplitude / 2.0
        c[-k1 % grid.n, -k2 % grid.n] = amplitude / 2.0
    return SpectralField(grid, c)


def _sup_coeff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max())


def criterion_1() -> dict:
    """Operator identity suite at N=64 (1d) and 64^2 (2d)."""
    g1 = TorusGrid(64, dim=1)
    g2 = TorusGrid(64, dim=2)
    f1 = random_field(g1, seed=11, band=21)
    h1 = random_field(g1, seed=12, band=21)
    f2 = random_field(g2, seed=13, band=10)
    h2 = random_field(g2, seed=14, band=10)
    res = {}
    res["tricomi"] = tricomi_residual(f1)
    hh = hilbert(hilbert(f1))
    res["hilbert_squared"] = float(np.abs(hh.coeffs + f1.coeffs).max())
    dxl = derivative(lambda_pow(f1, -1.0), 0)
    res["dx_lambda_inv"] = float(np.abs(dxl.coeffs + hilbert(f1).coeffs).max())
    rsum = riesz(riesz(f2, 0), 0).coeffs + riesz(riesz(f2, 1), 1).coeffs
    res["riesz_sum"] = float(np.abs(rsum + f2.coeffs).max())
    res["lambda_self_adjoint"] = abs(inner(lambda_pow(f1, 1.0), h1) - inner(f1, lambda_pow(h1, 1.0)))
    res["hilbert_skew"] = abs(inner(hilbert(f1), h1) + inner(f1, hilbert(h1)))
    res["lambda_self_adjoint_2d"] = abs(
        inner(lambda_pow(f2, 1.0), h2) - inner(f2, lambda_pow(h2, 1.0))
    )
    return res


def criterion_2() -> float:
    grid = TorusGrid(32, dim=2)
    eta0 = _cosine(grid, (1, 0))
    psi0 = _cosine(grid, (0, 1))
    return first_order_expansion_residual(eta0, psi0)


def criterion_3() -> dict:
    out = {}
    params = ModelParams(upsilon=1.0, delta=0.5, beta=1.0, epsilon=0.1)
    g1 = TorusGrid(64, dim=1)
    for model in (1, 2):
        F = random_field(g1, seed=21 + model, band=8)
        cfg = UniConfig(model, params, g1, dt=1e-3, t_end=1.0, linear_only=True)
        G = F
        for _ in range(1000):
            G = step(G, cfg)
        L = uni_linear_symbol_grid(g1, params, model)
        exact = np.exp(L * 1.0) * F.coeffs
        out[f"uni{model}"] = _sup_coeff(G.coeffs, exact)
    g2 = TorusGrid(32, dim=2)
    params0 = replace(params, epsilon=0.0)
    f0 = random_field(g2, seed=31, band=5)
    v0 = random_field(g2, seed=32, band=5)
    state = BiState(f0, v0)
    for _ in range(1000):
        state = step_bi(state, params0, 1e-3, model=1)
    fe, ve = linear_propagate_bi(f0.coeffs, v0.coeffs, g2.kmag, 1.0, params0)
    out["bi_f"] = _sup_coeff(state.f.coeffs, fe)
    out["bi_v"] = _sup_coeff(state.v.coeffs, ve)
    return out


def criterion_4() -> dict:
    params = ModelParams(upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.1)
    g1 = TorusGrid(64, dim=1)
    out = {}
    for model, norm, s in ((1, 0.01, 2.0), (2, 0.005, 3.0)):
        F0 = random_field(g1, seed=40 + model, band=8, s=s, norm=norm)
        cfg = UniConfig(model, params, g1, dt=0.05, t_end=500.0, output_every=500)
        traj = run(cfg, F0)
        if traj.blew_up:
            raise RuntimeError(f"uni{model} run blew up")
        drift = float(np.abs(traj.means - traj.means[0]).max())
        out[f"uni{model}"] = drift
    return out


def criterion_5():
    params = ModelParams(upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.1)
    grid = TorusGrid(128, dim=1)
    F0 = random_field(grid, seed=5, band=16, s=2.0, norm=0.01)
    cfg = UniConfig(1, params, grid, dt=0.05, t_end=20.0, output_every=2)
    traj = run(cfg, F0)
    if traj.blew_up:
        raise RuntimeError("decay run blew up")
    times = np.asarray(traj.times)
    E = traj.energies
    late = times >= 0.5
    worst_rise = float(np.max(np.diff(E[late]) / E[late][:-1]))
    c_fit, C_fit, resid = decay_rate_fit(traj)
    return worst_rise, c_fit, resid


def criterion_6():
    params = ModelParams(upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.1)
    grid = TorusGrid(128, dim=1)
    F0 = random_field(grid, seed=6, band=16, s=3.0, norm=0.005)
    cfg = UniConfig(2, params, grid, dt=0.05, t_end=20.0, output_every=2)
    traj = run(cfg, F0)
    if traj.blew_up:
        raise RuntimeError("bounded run blew up")
    cal0 = energy_calE(traj.states[0], params)
    worst = max(energy_calE(F, params) for F in traj.states)
    return worst, cal0


def criterion_7():
    params = ModelParams(upsilon=1.0)
    grid = TorusGrid(64, dim=2)
    f = random_field(grid, seed=71, band=8, s=3.0, norm=0.01)
    rhs = random_field(grid, seed=72, band=8, norm=1.0)
    _, rep = elliptic_solve_U(f, rhs, params, tol=1e-11, max_iter=30)
    f_half = SpectralField(grid, 0.5 * f.coeffs)
    _, rep_half = elliptic_solve_U(f_half, rhs, params, tol=1e-11, max_iter=30)
    halving = rep_half.contraction_estimate / (0.5 * rep.contraction_estimate)
    return rep, rep_half, halving


def criterion_8():
    grid = TorusGrid(64, dim=2)
    eta = SpectralField(
        grid, _cosine(grid, (1, 0)).coeffs + _cosine(grid, (1, 1), amplitude=0.5).coeffs
    )
    eps_list = (0.1, 0.05, 0.025)
    slope = biharmonic_reduction_slope(eta, eps_list)
    gb = max(abs(gauss_bonnet_integral(SurfaceField(eta, e))) for e in eps_list)
    return slope, gb


def criterion_9():
    # Weak-dispersion regime: the one-way reduction assumes the carrier rides
    # the unit-speed characteristic, so O(1) dispersion coefficients leave an
    # eps-independent linear mismatch. Upsilon must stay positive.
    params = ModelParams(upsilon=1e-6, delta=0.0, beta=0.0, epsilon=0.2)
    table = compare_uni_bi((0.2, 0.1, 0.05), params)
    errs = [e for _, e in table]
    eps = [e for e, _ in table]
    slope, _ = np.polyfit(np.log(eps), np.log(errs), 1)
    decreasing = errs[0] > errs[1] > errs[2]
    return table, float(slope), decreasing


def criterion_10():
    params = ModelParams(upsilon=1.0, delta=1.0, beta=1.0, epsilon=0.5)
    g1 = TorusGrid(64, dim=1)
    F0 = random_field(g1, seed=101, band=6, s=2.0, norm=0.5)

    def uni_factory(dt: float) -> SpectralField:
        cfg = UniConfig(1, params, g1, dt=dt, t_end=1.0, output_every=10**9)
        traj = run(cfg, F0)
        if traj.blew_up:
            raise RuntimeError("order-study run blew up")
        return traj.states[-1]

    _, uni_order = temporal_order_study(uni_factory, (1 / 40, 1 / 80, 1 / 160, 1 / 640))

    g2 = TorusGrid(32, dim=2)
    f0 = random_field(g2, seed=102, band=4, norm=0.1)
    v0 = random_field(g2, seed=103, band=4, norm=0.1)

    def bi_factory(dt: float) -> SpectralField:
        cfg = BiConfig(1, params, g2, dt=dt, t_end=1.0, output_every=10**9)
        traj = run_bi(cfg, BiState(f0, v0))
        if traj.blew_up:
            raise RuntimeError("splitting-study run blew up")
        return traj.states[-1].f

    _, bi_order = temporal_order_study(bi_factory, (0.1, 0.05, 0.025, 0.003125))
    return uni_order, bi_order


def _run_1() -> CriterionResult:
    res = criterion_1()
    worst = max(res.values())
    ok = worst <= 1e-11
    detail = "worst residual %.2e (%s)" % (worst, max(res, key=res.get))
    return CriterionResult(1, "operator-identities", ok, detail, 0.0, 5.0)


def _run_2() -> CriterionResult:
    r = criterion_2()
    return CriterionResult(2, "expansion-residual", r <= 1e-10, "residual %.2e" % r, 0.0, 5.0)


def _run_3() -> CriterionResult:
    res = criterion_3()
    worst = max(res.values())
    ok = worst <= 1e-10
    detail = "worst deviation %.2e (%s)" % (worst, max(res, key=res.get))
    return CriterionResult(3, "linear-exactness", ok, detail, 0.0, 30.0)


def _run_4() -> CriterionResult:
    res = criterion_4()
    worst = max(res.values())
    ok = worst <= 1e-12
    return CriterionResult(4, "mean-conservation", ok, "worst drift %.2e" % worst, 0.0, 60.0)


def _run_5() -> CriterionResult:
    worst_rise, c_fit, resid = criterion_5()
    ok = worst_rise <= 1e-12 and c_fit > 0.0
    detail = "max relative rise %.2e, fitted c=%.4f (rms %.2e)" % (worst_rise, c_fit, resid)
    return CriterionResult(5, "uni1-decay", ok, detail, 0.0, 120.0)


def _run_6() -> CriterionResult:
    worst, cal0 = criterion_6()
    ok = worst <= 4.0 * cal0
    detail = "max calE %.3e vs 4*calE(0) %.3e" % (worst, 4.0 * cal0)
    return CriterionResult(6, "uni2-boundedness", ok, detail, 0.0, 120.0)


def _run_7() -> CriterionResult:
    rep, rep_half, halving = criterion_7()
    ok = (
        rep.contraction_estimate < 0.5
        and rep.final_residual <= 1e-10
        and rep.iterations <= 30
        and abs(halving - 1.0) <= 0.2
    )
    detail = "factor %.3e, residual %.2e in %d iters, halving ratio %.3f" % (
        rep.contraction_estimate,
        rep.final_residual,
        rep.iterations,
        halving,
    )
    return CriterionResult(7, "elliptic-fixed-point", ok, detail, 0.0, 10.0)


def _run_8() -> CriterionResult:
    slope, gb = criterion_8()
    ok = abs(slope - 2.0) <= 0.2 and gb <= 1e-9
    detail = "slope %.3f, curvature integral %.2e" % (slope, gb)
    return CriterionResult(8, "biharmonic-reduction", ok, detail, 0.0, 20.0)


def _run_9() -> CriterionResult:
    table, slope, decreasing = criterion_9()
    ok = decreasing and slope >= 1.0
    pairs = ", ".join("eps=%.2g err=%.3e" % (e, r) for e, r in table)
    return CriterionResult(9, "model-hierarchy", ok, "slope %.2f (%s)" % (slope, pairs), 0.0, 300.0)


def _run_10() -> CriterionResult:
    uni_order, bi_order = criterion_10()
    ok = uni_order >= 3.5 and abs(bi_order - 2.0) <= 0.3
    detail = "exponential order %.2f, splitting order %.2f" % (uni_order, bi_order)
    return CriterionResult(10, "temporal-orders", ok, detail, 0.0, 180.0)


RUNNERS = {
    1: _run_1,
    2: _run_2,
    3: _run_3,
    4: _run_4,
    5: _run_5,
    6: _run_6,
    7: _run_7,
    8: _run_8,
    9: _run_9,
    10: _run_10,
}

NAMES = {
    "operator-identities": 1,
    "expansion-residual": 2,
    "linear-exactness": 3,
    "mean-conservation": 4,
    "uni1-decay": 5,
    "uni2-boundedness": 6,
    "elliptic-fixed-point": 7,
    "biharmonic-reduction": 8,
    "model-hierarchy": 9,
    "temporal-orders": 10,
}

_LIMITS = {1: 5.0, 2: 5.0, 3: 30.0, 4: 60.0, 5: 120.0, 6: 120.0, 7: 10.0, 8: 20.0, 9: 300.0, 10: 180.0}


def run_criterion(number: int) -> CriterionResult:
    if number not in RUNNERS:
        raise ValueError(f"unknown criterion {number}")
    t0 = time.perf_counter()
    try:
        result = RUNNERS[number]()
    except Exception as exc:  # a crash is a failure, not an error
        elapsed = time.perf_counter() - t0
        name = {v: k for k, v in NAMES.items()}[number]
        return CriterionResult(number, name, False, f"raised {type(exc).__name__}: {exc}", elapsed, _LIMITS[number])
    result.seconds = time.perf_counter() - t0
    return result


def run_suite(selection=None) -> list:
    """Run all criteria, a single number, or a single name."""
    if selection in (None, "all"):
        numbers = sorted(RUNNERS)
    else:
        if isinstance(selection, str):
            if selection in NAMES:
                numbers = [NAMES[selection]]
            elif selection.isdigit() and int(selection) in RUNNERS:
                numbers = [int(selection)]
            else:
                raise ValueError(f"unknown suite {selection!r}")
        else:
            numbers = [int(selection)]
    return [run_criterion(n) for n in numbers]


def format_result(r: CriterionResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return "%s %2d %-22s %s [%.1fs]" % (status, r.number, r.name, r.detail, r.seconds)
