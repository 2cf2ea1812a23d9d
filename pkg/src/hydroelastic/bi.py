"""Bidirectional models: elliptic closure, Strang stepping, one-way comparison.

Model 1 keeps the coupling on the accelerated side, so each evaluation of
the rate solves (I + Upsilon Lambda) U + N(eps f, U) = forcing by resolvent
fixed-point iteration.  Model 2 moves all coupling into the forcing and the
resolvent applies directly.  Time stepping is a Strang split: the linear
oscillator advances by its exact per-mode propagator, the quadratic
remainder by an explicit midpoint rule.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import ceil

import numpy as np

from .linear import ModelParams, propagator_entries
from .nonlinear import bi1_forcing, bi2_forcing
from .spectral import (
    SpectralField,
    TorusGrid,
    derivative,
    from_padded,
    lambda_pow,
    linf_norm,
    mollify,
    resolvent,
    to_padded,
)
from .uni import BLOWUP_LINF, BlowUpError, Trajectory, UniConfig, make_report, run


class EllipticError(RuntimeError):
    """Fixed-point iteration failed to contract or to converge."""


@dataclass(frozen=True)
class EllipticSolveReport:
    iterations: int
    final_residual: float
    contraction_estimate: float


@dataclass
class BiState:
    f: SpectralField
    v: SpectralField

    def __post_init__(self):
        if self.f.grid != self.v.grid:
            raise ValueError("f and v must share a grid")
        if self.f.grid.dim != 2:
            raise ValueError("bidirectional states are two-dimensional")
        scale = 1.0 + max(np.abs(self.f.coeffs).max(), np.abs(self.v.coeffs).max())
        if abs(self.f.mean) > 1e-13 * scale or abs(self.v.mean) > 1e-13 * scale:
            raise ValueError("bidirectional states must be mean-zero")

    def copy(self) -> "BiState":
        return BiState(self.f.copy(), self.v.copy())


@dataclass(frozen=True)
class BiConfig:
    model: int
    params: ModelParams
    grid: TorusGrid
    dt: float
    t_end: float
    output_every: int = 1
    linear_only: bool = False

    def __post_init__(self):
        if self.model not in (1, 2):
            raise ValueError("model must be 1 or 2")
        if self.grid.dim != 2:
            raise ValueError("bidirectional runs are two-dimensional")
        if self.dt <= 0 or self.t_end < 0:
            raise ValueError("dt must be positive and t_end nonnegative")
        if self.output_every < 1:
            raise ValueError("output_every must be at least 1")


def elliptic_solve_U(
    f: SpectralField,
    rhs: SpectralField,
    params: ModelParams,
    tol: float = 1e-11,
    max_iter: int = 100,
    mollify_nu: float | None = None,
):
    """Solve (I + Upsilon Lambda) U + N(f, U) = rhs for mean-zero U.

    Iterates U <- resolvent(rhs - N(f, U)) from U0 = resolvent(rhs).  The
    report carries the iteration count, the final residual (discrete L2 of
    the equation defect) and the last increment contraction ratio.  Three
    consecutive non-contracting increments abort with EllipticError; small
    coupling fields keep the ratio well below one.
    """
    if f.grid != rhs.grid:
        raise ValueError("grid mismatch")
    grid = f.grid
    if grid.dim != 2:
        raise ValueError("the elliptic step is two-dimensional")
    scale = 1.0 + np.abs(rhs.coeffs).max()
    if abs(f.mean) > 1e-13 * (1.0 + np.abs(f.coeffs).max()) or abs(rhs.mean) > 1e-13 * scale:
        raise ValueError("f and rhs must be mean-zero")
    ups = params.upsilon
    if mollify_nu is not None:
        f = mollify(f, mollify_nu)
    if not np.any(f.coeffs):
        # no coupling: the resolvent is the exact solution
        return resolvent(rhs, ups), EllipticSolveReport(1, 0.0, 0.0)

    f_pad = to_padded(f)
    fx_pad = to_padded(derivative(f, 0))
    fy_pad = to_padded(derivative(f, 1))
    one_plus = 1.0 + ups * grid.kmag
    moll_sym = None if mollify_nu is None else np.exp(-mollify_nu * grid.kmag**2)

    def couple(U: SpectralField) -> np.ndarray:
        # [Lambda, f] U + grad f . grad Lambda^{-1} U, with f transforms reused
        if mollify_nu is not None:
            U = mollify(U, mollify_nu)
        U_pad = to_padded(U)
        LU_pad = to_padded(lambda_pow(U, 1.0))
        comm = (
            lambda_pow(from_padded(f_pad * U_pad, grid), 1.0).coeffs
            - from_padded(f_pad * LU_pad, grid).coeffs
        )
        Ui = lambda_pow(U, -1.0)
        pair_pad = fx_pad * to_padded(derivative(Ui, 0)) + fy_pad * to_padded(derivative(Ui, 1))
        out = comm + from_padded(pair_pad, grid).coeffs
        if moll_sym is not None:
            out = moll_sym * out
        return out

    U = resolvent(rhs, ups)
    iterations = 1
    prev_inc = None
    ratio = 0.0
    noncontracting = 0
    for _ in range(max_iter):
        NU = couple(U)
        defect = one_plus * U.coeffs + NU - rhs.coeffs
        residual = float(np.sqrt(np.sum(np.abs(defect) ** 2)))
        if residual <= tol:
            return U, EllipticSolveReport(iterations, residual, ratio)
        U_next = resolvent(SpectralField(grid, rhs.coeffs - NU), ups)
        inc = float(np.sqrt(np.sum(np.abs(U_next.coeffs - U.coeffs) ** 2)))
        if prev_inc is not None and prev_inc > 0.0:
            ratio = inc / prev_inc
            if ratio >= 1.0:
                noncontracting += 1
                if noncontracting >= 3:
                    raise EllipticError(
                        f"iteration is not contracting (ratio {ratio:.3g} after {iterations} steps)"
                    )
            else:
                noncontracting = 0
        prev_inc = inc
        U = U_next
        iterations += 1
    raise EllipticError(f"no convergence in {max_iter} iterations (residual {residual:.3g})")


def _linear_forcing(f: SpectralField, v: SpectralField, params: ModelParams) -> np.ndarray:
    out = -(f.grid.kmag + 0.25 * params.beta * f.grid.kmag**5) * f.coeffs
    if params.delta:
        out = out - params.delta * f.grid.kmag**3 * v.coeffs
    return out


def _full_vdot(f: SpectralField, v: SpectralField, params: ModelParams, model: int, nonlinear: bool):
    """Acceleration of the second-order system; returns (v_dot, elliptic report or None)."""
    grid = f.grid
    eps = params.epsilon
    forcing = _linear_forcing(f, v, params)
    if not nonlinear or eps == 0.0:
        return resolvent(SpectralField(grid, forcing), params.upsilon), None
    if model == 1:
        forcing = forcing + eps * bi1_forcing(v).coeffs
        f_scaled = SpectralField(grid, eps * f.coeffs)
        U, report = elliptic_solve_U(f_scaled, SpectralField(grid, forcing), params)
        return U, report
    forcing = forcing + eps * bi2_forcing(f, v, params).coeffs
    return resolvent(SpectralField(grid, forcing), params.upsilon), None


def rhs_bi(state: BiState, params: ModelParams, model: int, report_sink: list | None = None):
    """Rates (f_dot, v_dot) of the first-order system."""
    if model not in (1, 2):
        raise ValueError("model must be 1 or 2")
    v_dot, report = _full_vdot(state.f, state.v, params, model, nonlinear=True)
    if report is not None and report_sink is not None:
        report_sink.append(report)
    c = v_dot.coeffs.copy()
    c[0, 0] = 0.0
    return state.v.copy(), SpectralField(state.f.grid, c)


@lru_cache(maxsize=None)
def _propagator(grid: TorusGrid, params: ModelParams, t: float):
    entries = propagator_entries(grid.kmag, t, params)
    for m in entries:
        m.setflags(write=False)
    return entries


def step_bi(
    state: BiState,
    params: ModelParams,
    dt: float,
    model: int,
    linear_only: bool = False,
    report_sink: list | None = None,
) -> BiState:
    """Strang step: exact linear half, midpoint on the coupling remainder, linear half."""
    grid = state.f.grid
    m11, m12, m21, m22 = _propagator(grid, params, dt / 2.0)
    fc = m11 * state.f.coeffs + m12 * state.v.coeffs
    vc = m21 * state.f.coeffs + m22 * state.v.coeffs
    if not linear_only and params.epsilon != 0.0:
        f_mid = SpectralField(grid, fc)

        def remainder(v_coeffs: np.ndarray) -> np.ndarray:
            v_f = SpectralField(grid, v_coeffs)
            full, report = _full_vdot(f_mid, v_f, params, model, nonlinear=True)
            if report is not None and report_sink is not None:
                report_sink.append(report)
            lin = resolvent(SpectralField(grid, _linear_forcing(f_mid, v_f, params)), params.upsilon)
            return full.coeffs - lin.coeffs

        r1 = remainder(vc)
        r2 = remainder(vc + 0.5 * dt * r1)
        vc = vc + dt * r2
    fc2 = m11 * fc + m12 * vc
    vc2 = m21 * fc + m22 * vc
    if not (np.all(np.isfinite(fc2)) and np.all(np.isfinite(vc2))):
        raise BlowUpError("nonfinite coefficients after a step")
    fc2 = fc2.copy()
    vc2 = vc2.copy()
    fc2[0, 0] = 0.0
    vc2[0, 0] = 0.0
    return BiState(SpectralField(grid, fc2), SpectralField(grid, vc2))


def run_bi(config: BiConfig, state0: BiState) -> Trajectory:
    """March the second-order system, reporting on the displacement field."""
    state = state0.copy()
    sink = [] if config.model == 1 and not config.linear_only else None

    def report_for(s: BiState, t: float):
        if sink is None:
            extra = {}
        else:
            if sink:
                extra = {
                    "contraction": sink[-1].contraction_estimate,
                    "elliptic_iters": float(max(r.iterations for r in sink)),
                }
            else:
                extra = {"contraction": 0.0, "elliptic_iters": 0.0}
            sink.clear()
        return make_report(s.f, t, config.params, extra)

    traj = Trajectory(times=[0.0], states=[state], reports=[report_for(state, 0.0)])
    n_steps = int(round(config.t_end / config.dt))
    for i in range(1, n_steps + 1):
        t = i * config.dt
        try:
            state = step_bi(
                state,
                config.params,
                config.dt,
                config.model,
                linear_only=config.linear_only,
                report_sink=sink,
            )
        except (BlowUpError, EllipticError):
            traj.blew_up = True
            return traj
        if max(linf_norm(state.f), linf_norm(state.v)) > BLOWUP_LINF:
            traj.blew_up = True
            return traj
        traj.last_good_time = t
        if i % config.output_every == 0 or i == n_steps:
            traj.times.append(t)
            traj.states.append(state)
            traj.reports.append(report_for(state, t))
    return traj


def embed_profile(F: SpectralField, grid2: TorusGrid) -> SpectralField:
    """Lift a one-dimensional profile to the plane, constant in x2."""
    if F.grid.dim != 1 or grid2.dim != 2:
        raise ValueError("embed a 1d profile into a 2d grid")
    if F.grid.n != grid2.n:
        raise ValueError("grids must share n")
    c = np.zeros(grid2.shape, dtype=complex)
    c[:, 0] = F.coeffs
    return SpectralField(grid2, c)


def compare_uni_bi(
    eps_list,
    params_base: ModelParams,
    F0: SpectralField | None = None,
    model: int = 1,
    n: int = 32,
    T_slow: float = 12.0,
    dt_bi: float = 0.04,
    samples: int = 200,
):
    """Error of the one-way reduction against the two-way run it approximates.

    The two-way run starts from (f0, v0 = -f0_x) constant in x2; at each
    sample time t the one-way profile is advected to F(x - t, eps t) and the
    sup over samples of the L2 difference is recorded.  Returns a list of
    (eps, error) pairs.

    Both runs excite O(eps) harmonics whose frequencies the one-way model
    gets wrong by an O(1) amount, so T_slow must be large enough that the
    resulting beat fully decoheres at the largest eps; the sup then measures
    the transient amplitude (prop. to eps) instead of the drift rate, and
    needs dense sampling to land on the beat maximum at every eps.
    """
    grid1 = TorusGrid(n, dim=1)
    grid2 = TorusGrid(n, dim=2)
    if F0 is None:
        c = np.zeros(n, dtype=complex)
        c[1] = 0.125
        c[-1] = 0.125
        F0 = SpectralField(grid1, c)  # 0.25 cos(x)
    if F0.grid != grid1:
        raise ValueError("F0 must live on the 1d grid of size n")
    out = []
    k1 = grid1.k[0]
    for eps in eps_list:
        if eps <= 0:
            raise ValueError("eps must be positive")
        params = replace(params_base, epsilon=float(eps))
        dtau = T_slow / samples
        m_sub = max(1, ceil(dtau / (0.25 * eps)))
        cfg = UniConfig(model, params, grid1, dt=dtau / m_sub, t_end=T_slow, output_every=m_sub)
        traj = run(cfg, F0)
        if traj.blew_up or len(traj.states) != samples + 1:
            raise RuntimeError(f"one-way run failed at eps={eps}")

        f2 = embed_profile(F0, grid2)
        v2 = SpectralField(grid2, -derivative(f2, 0).coeffs)
        state = BiState(f2, v2)
        worst = 0.0
        for j in range(1, samples + 1):
            t_prev = (j - 1) * dtau / eps
            t_next = j * dtau / eps
            steps = max(1, ceil((t_next - t_prev) / dt_bi))
            h = (t_next - t_prev) / steps
            for _ in range(steps):
                state = step_bi(state, params, h, model)
            expected = np.zeros(grid2.shape, dtype=complex)
            expected[:, 0] = traj.states[j].coeffs * np.exp(-1j * k1 * t_next)
            err = float(np.sqrt(np.sum(np.abs(state.f.coeffs - expected) ** 2)))
            worst = max(worst, err)
        out.append((float(eps), worst))
    return out
