"""Unidirectional models: RHS assembly, exponential stepping, runs, energies.

The linear part is advanced by its exact per-mode integrating factor
e^{L(k) dt}; the quadratic part by fourth-order exponential Runge-Kutta
(Cox-Matthews coefficients, evaluated by contour averaging near z=0).
The mean mode has L(0)=0 and a mean-free nonlinear rate, so <F> never moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .diagnostics import EnergyReport
from .linear import ModelParams, symbol_ab, symbol_alphagamma, uni_linear_symbol_grid
from .nonlinear import uni1_nonlinearity, uni2_nonlinearity
from .spectral import SpectralField, TorusGrid, linf_norm, sobolev_norm

BLOWUP_LINF = 1e6
_CONTOUR_POINTS = 32
_CONTOUR_BELOW = 0.5  # |L dt| under which the averaged evaluation is used


class BlowUpError(RuntimeError):
    """Raised when a trajectory leaves the resolvable regime."""

    def __init__(self, message: str, last_good_time: float = 0.0):
        super().__init__(message)
        self.last_good_time = last_good_time


@dataclass(frozen=True)
class UniConfig:
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
        if self.grid.dim != 1:
            raise ValueError("unidirectional runs are one-dimensional")
        if self.dt <= 0 or self.t_end < 0:
            raise ValueError("dt must be positive and t_end nonnegative")
        if self.params.epsilon <= 0:
            raise ValueError("epsilon must be positive (the linear part carries 1/epsilon)")
        if self.output_every < 1:
            raise ValueError("output_every must be at least 1")


@dataclass
class Trajectory:
    times: list
    states: list
    reports: list
    blew_up: bool = False
    last_good_time: float = 0.0

    @property
    def energies(self) -> np.ndarray:
        return np.array([r.E for r in self.reports])

    @property
    def means(self) -> np.ndarray:
        return np.array([r.mean for r in self.reports])


@lru_cache(maxsize=None)
def _inversion_op(grid: TorusGrid, params: ModelParams, model: int) -> np.ndarray:
    """Symbol array of (a + b H) or (alpha + gamma H)."""
    k = grid.k[0]
    if model == 1:
        a, b = symbol_ab(k, params)
        op = a - 1j * b * np.sign(k)
    else:
        alpha, gamma = symbol_alphagamma(k, params, zero_convention=True)
        op = alpha - 1j * gamma * np.sign(k)
    op.setflags(write=False)
    return op


def _nonlinear_rate(F: SpectralField, config: UniConfig) -> np.ndarray:
    """Coefficients of -(inversion op)(quadratic terms), mean mode zeroed."""
    if config.linear_only:
        return np.zeros(F.grid.shape, dtype=complex)
    if config.model == 1:
        N = uni1_nonlinearity(F)
    else:
        N = uni2_nonlinearity(F, config.params)
    out = -_inversion_op(config.grid, config.params, config.model) * N.coeffs
    out[0] = 0.0
    return out


def rhs_uni(F: SpectralField, config: UniConfig) -> SpectralField:
    """Full slow-time rate L F + nonlinear part; output is mean-zero."""
    if abs(F.mean) > 1e-13 * (1.0 + np.abs(F.coeffs).max()):
        raise ValueError("rhs needs a mean-zero field")
    L = uni_linear_symbol_grid(config.grid, config.params, config.model)
    out = L * F.coeffs + _nonlinear_rate(F, config)
    out[0] = 0.0
    return SpectralField(F.grid, out)


def _etd_phi_block(w, dt: float):
    """Q, f1, f2, f3 of the fourth-order exponential scheme at nodes w."""
    ew, ew2 = np.exp(w), np.exp(w / 2.0)
    Q = dt * (ew2 - 1.0) / w
    f1 = dt * (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w**3
    f2 = 2.0 * dt * (2.0 + w + ew * (-2.0 + w)) / w**3
    f3 = dt * (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w**3
    return Q, f1, f2, f3


@dataclass(frozen=True)
class _EtdTables:
    E: np.ndarray
    E2: np.ndarray
    Q: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    f3: np.ndarray


@lru_cache(maxsize=None)
def _etd_tables(config: UniConfig) -> _EtdTables:
    L = uni_linear_symbol_grid(config.grid, config.params, config.model)
    z = L * config.dt
    E, E2 = np.exp(z), np.exp(z / 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        Q, f1, f2, f3 = _etd_phi_block(z, config.dt)
    near = np.abs(z) < _CONTOUR_BELOW
    if near.any():
        # average the same expressions over a unit circle around each z;
        # L is complex so the circle cannot be folded onto a half plane
        theta = np.exp(2j * np.pi * (np.arange(_CONTOUR_POINTS) + 0.5) / _CONTOUR_POINTS)
        w = z[near][:, None] + theta[None, :]
        Qn, f1n, f2n, f3n = _etd_phi_block(w, config.dt)
        Q[near] = Qn.mean(axis=1)
        f1[near] = f1n.mean(axis=1)
        f2[near] = f2n.mean(axis=1)
        f3[near] = f3n.mean(axis=1)
    return _EtdTables(E, E2, Q, f1, f2, f3)


def step(F: SpectralField, config: UniConfig) -> SpectralField:
    """One dt advance of the slow-time evolution."""
    t = _etd_tables(config)
    grid = F.grid
    v = F.coeffs
    Nv = _nonlinear_rate(F, config)
    a = t.E2 * v + t.Q * Nv
    Na = _nonlinear_rate(SpectralField(grid, a), config)
    b = t.E2 * v + t.Q * Na
    Nb = _nonlinear_rate(SpectralField(grid, b), config)
    c = t.E2 * a + t.Q * (2.0 * Nb - Nv)
    Nc = _nonlinear_rate(SpectralField(grid, c), config)
    out = t.E * v + t.f1 * Nv + t.f2 * (Na + Nb) + t.f3 * Nc
    if not np.all(np.isfinite(out)):
        raise BlowUpError("nonfinite coefficients after a step")
    return SpectralField(grid, out)


def energy_E(F: SpectralField, params: ModelParams) -> float:
    """L2 + 2 Upsilon H^{1/2} + Upsilon^2 H^1 + (delta^2/4) H^2, squared seminorms."""
    u, d = params.upsilon, params.delta
    return (
        sobolev_norm(F, 0.0) ** 2
        + 2.0 * u * sobolev_norm(F, 0.5, homogeneous=True) ** 2
        + u**2 * sobolev_norm(F, 1.0, homogeneous=True) ** 2
        + 0.25 * d**2 * sobolev_norm(F, 2.0, homogeneous=True) ** 2
    )


def energy_calE(F: SpectralField, params: ModelParams) -> float:
    """Shifted variant: H^1 + 2 Upsilon H^{3/2} + Upsilon^2 H^2 + (delta^2/4) H^3."""
    u, d = params.upsilon, params.delta
    return (
        sobolev_norm(F, 1.0, homogeneous=True) ** 2
        + 2.0 * u * sobolev_norm(F, 1.5, homogeneous=True) ** 2
        + u**2 * sobolev_norm(F, 2.0, homogeneous=True) ** 2
        + 0.25 * d**2 * sobolev_norm(F, 3.0, homogeneous=True) ** 2
    )


def make_report(F: SpectralField, time: float, params: ModelParams, extra=None) -> EnergyReport:
    return EnergyReport(
        time=time,
        mean=F.mean,
        E=energy_E(F, params),
        calE=energy_calE(F, params),
        h0=sobolev_norm(F, 0.0),
        h_half=sobolev_norm(F, 0.5),
        h1=sobolev_norm(F, 1.0),
        h3_half=sobolev_norm(F, 1.5),
        h2=sobolev_norm(F, 2.0),
        h3=sobolev_norm(F, 3.0),
        linf=linf_norm(F),
        extra=dict(extra or {}),
    )


def run(config: UniConfig, F0: SpectralField) -> Trajectory:
    """March to t_end, recording diagnostics every output_every steps.

    Blow-up (nonfinite coefficients or |F| beyond 1e6) ends the run cleanly
    with the last good time recorded.
    """
    if abs(F0.mean) > 1e-13 * (1.0 + np.abs(F0.coeffs).max()):
        raise ValueError("initial data must be mean-zero")
    n_steps = int(round(config.t_end / config.dt))
    F = F0.copy()
    traj = Trajectory(times=[0.0], states=[F], reports=[make_report(F, 0.0, config.params)])
    traj.last_good_time = 0.0
    for i in range(1, n_steps + 1):
        t = i * config.dt
        try:
            F = step(F, config)
        except BlowUpError:
            traj.blew_up = True
            return traj
        if linf_norm(F) > BLOWUP_LINF:
            traj.blew_up = True
            return traj
        traj.last_good_time = t
        if i % config.output_every == 0 or i == n_steps:
            traj.times.append(t)
            traj.states.append(F)
            traj.reports.append(make_report(F, t, config.params))
    return traj


def decay_rate_fit(traj: Trajectory):
    """Least-squares (c, C, rms residual) of E ~ C e^{-c tau} on the tail half."""
    times = np.asarray(traj.times, dtype=float)
    E = traj.energies
    if len(E) < 20:
        raise ValueError("need at least 20 samples")
    if np.any(E <= 0):
        raise ValueError("energies must be positive for a log fit")
    tail = slice(len(E) // 2, None)
    t, y = times[tail], np.log(E[tail])
    slope, intercept = np.polyfit(t, y, 1)
    resid = float(np.sqrt(np.mean((np.polyval([slope, intercept], t) - y) ** 2)))
    return -float(slope), float(np.exp(intercept)), resid
