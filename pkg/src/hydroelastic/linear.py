"""Exact linear theory: dispersion roots, per-mode propagation, inversion symbols.

Per mode k != 0 the bidirectional linearization is the damped oscillator

    (1 + Upsilon|k|) r^2 + delta |k|^3 r + (|k| + (beta/4)|k|^5) = 0,

and the unidirectional models have exact growth rates L(k) assembled from the
(a, b) / (alpha, gamma) inversion symbols below.  Everything here is the
oracle layer for the integrators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# relative discriminant size below which the double-root branch is used
_DOUBLE_ROOT_TOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless constants: plate inertia, damping, bending, steepness."""

    upsilon: float
    delta: float = 0.0
    beta: float = 0.0
    epsilon: float = 0.0

    def __post_init__(self):
        if self.upsilon <= 0:
            raise ValueError("upsilon must be positive")
        if self.delta < 0 or self.beta < 0 or self.epsilon < 0:
            raise ValueError("delta, beta, epsilon must be nonnegative")


@dataclass(frozen=True)
class DispersionRoots:
    k: float
    r_plus: complex
    r_minus: complex


def _oscillator_coeffs(kmag, params: ModelParams):
    A = 1.0 + params.upsilon * kmag
    B = params.delta * kmag**3
    C = kmag + 0.25 * params.beta * kmag**5
    return A, B, C


def dispersion_roots(k, params: ModelParams) -> DispersionRoots:
    """Characteristic roots at wavenumber k != 0, stable quadratic formula.

    r_plus is the root with the larger imaginary part (underdamped) or the
    one closer to zero (overdamped).
    """
    kmag = abs(float(k))
    if kmag == 0:
        raise ValueError("k must be nonzero")
    A, B, C = _oscillator_coeffs(kmag, params)
    disc = B * B - 4.0 * A * C
    scale = B * B + 4.0 * A * abs(C)
    if abs(disc) <= _DOUBLE_ROOT_TOL * scale:
        r = -B / (2.0 * A)
        return DispersionRoots(float(k), complex(r), complex(r))
    if disc < 0.0:
        root = np.sqrt(-disc)
        return DispersionRoots(
            float(k), complex(-B, root) / (2.0 * A), complex(-B, -root) / (2.0 * A)
        )
    # real roots; B > 0 here since C > 0 forces disc < 0 when B = 0
    q = -0.5 * (B + np.sqrt(disc))
    return DispersionRoots(float(k), complex(C / q), complex(q / A))


def propagator_entries(kmag, t: float, params: ModelParams):
    """Entries of the exact 2x2 flow of the per-mode oscillator over time t.

    Vectorized over an array of |k|; |k| = 0 rows give the free drift
    (f, v) -> (f + t v, v).  All four entries are real.
    """
    kmag = np.asarray(kmag, dtype=float)
    A, B, C = _oscillator_coeffs(kmag, params)
    disc = B * B - 4.0 * A * C
    scale = B * B + 4.0 * A * np.abs(C)
    sqrt_disc = np.sqrt(disc.astype(complex))
    with np.errstate(divide="ignore", invalid="ignore"):
        # stable branch: the +/- order never subtracts like-signed quantities
        big = -0.5 * (B + np.where(B >= 0, 1.0, -1.0) * sqrt_disc)
        r1 = np.where(big != 0, C / np.where(big != 0, big, 1.0), 0.0)
        r2 = big / A
        dr = r1 - r2
        E1, E2 = np.exp(r1 * t), np.exp(r2 * t)
        m11 = (r1 * E2 - r2 * E1) / dr
        m12 = (E1 - E2) / dr
        m21 = r1 * r2 * (E2 - E1) / dr
        m22 = (r1 * E1 - r2 * E2) / dr
        # double (or nearly double) roots: confluent limit
        r = -B / (2.0 * A)
        Er = np.exp(r * t)
        double = np.abs(disc) <= _DOUBLE_ROOT_TOL * scale
        m11 = np.where(double, (1.0 - r * t) * Er, m11)
        m12 = np.where(double, t * Er, m12)
        m21 = np.where(double, -(r**2) * t * Er, m21)
        m22 = np.where(double, (1.0 + r * t) * Er, m22)
    zero = kmag == 0
    m11 = np.where(zero, 1.0, m11)
    m12 = np.where(zero, t, m12)
    m21 = np.where(zero, 0.0, m21)
    m22 = np.where(zero, 1.0, m22)
    return m11.real, m12.real, m21.real, m22.real


def linear_propagate_bi(f_hat, v_hat, kmag, t: float, params: ModelParams):
    """Exact linear evolution of per-mode pairs (f^, f_t^) over time t."""
    m11, m12, m21, m22 = propagator_entries(kmag, t, params)
    return m11 * f_hat + m12 * v_hat, m21 * f_hat + m22 * v_hat


def symbol_ab(k, params: ModelParams):
    """Inversion symbols (a_k, b_k) of the first unidirectional model.

    The formula already yields the mean-mode convention a(0)=1/2, b(0)=0.
    """
    kmag = np.abs(np.asarray(k, dtype=float))
    D = 4.0 * (1.0 + params.upsilon * kmag) ** 2 + params.delta**2 * kmag**4
    return 2.0 * (1.0 + params.upsilon * kmag) / D, params.delta * kmag**2 / D


def symbol_alphagamma(k, params: ModelParams, zero_convention: bool = False):
    """Inversion symbols (alpha_k, gamma_k) of the second unidirectional model.

    gamma has a 1/|k| factor; the mean mode is only defined under the
    explicit zero convention (both symbols 0 at k=0).
    """
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr == 0) and not zero_convention:
        raise ValueError("k=0 needs zero_convention=True")
    kmag = np.abs(k_arr)
    safe = np.where(kmag == 0, 1.0, kmag)
    D2 = params.delta**2 * kmag**4 + 4.0 * (1.0 + params.upsilon * kmag) ** 2
    alpha = -params.delta * kmag / D2
    gamma = 2.0 * (1.0 + params.upsilon * kmag) / (safe * D2)
    if np.ndim(k_arr) == 0:
        if k_arr == 0:
            return 0.0, 0.0
        return float(alpha), float(gamma)
    gamma = np.where(kmag == 0, 0.0, gamma)
    return alpha, gamma


def uni_linear_symbol(k, params: ModelParams, model: int):
    """Exact growth rate L(k) of the linearized unidirectional models, k != 0.

    Model 1 applies (a + b H) to (I+Upsilon Lambda) d_xi + (beta/4) Lambda
    d_xi^3 + delta Lambda d_xi^2 + H; model 2 applies (alpha + gamma H) to
    (I+Upsilon Lambda) d_xi^2 + (beta/4) Lambda d_xi^4 + delta Lambda d_xi^3
    + Lambda; both carry the 1/epsilon prefactor.
    """
    if params.epsilon <= 0:
        raise ValueError("epsilon must be positive for the slow-time rate")
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr == 0):
        raise ValueError("k must be nonzero")
    kmag = np.abs(k_arr)
    sgn = np.sign(k_arr)
    if model == 1:
        a, b = symbol_ab(k_arr, params)
        op = a - 1j * b * sgn
        bracket = (
            1j * ((1.0 + params.upsilon * kmag) * k_arr - 0.25 * params.beta * kmag * k_arr**3 - sgn)
            - params.delta * kmag * k_arr**2
        )
    elif model == 2:
        alpha, gamma = symbol_alphagamma(k_arr, params)
        op = alpha - 1j * gamma * sgn
        bracket = (
            -(1.0 + params.upsilon * kmag) * k_arr**2
            + 0.25 * params.beta * kmag * k_arr**4
            + kmag
            - 1j * params.delta * kmag * k_arr**3
        )
    else:
        raise ValueError("model must be 1 or 2")
    L = op * bracket / params.epsilon
    if np.ndim(k_arr) == 0:
        return complex(L)
    return L


def uni_linear_symbol_grid(grid, params: ModelParams, model: int) -> np.ndarray:
    """L(k) tabulated on a 1D grid, zero at the mean mode."""
    if grid.dim != 1:
        raise ValueError("unidirectional models are one-dimensional")
    k = grid.k[0]
    out = np.zeros(grid.shape, dtype=complex)
    nz = k != 0
    out[nz] = uni_linear_symbol(k[nz], params, model)
    return out


def dispersion_table(k_values, params: ModelParams):
    """Rows (k, Re r+, Im r+, Re r-, Im r-, a, b, alpha, gamma) for CSV export."""
    rows = []
    for k in k_values:
        if k == 0:
            continue
        roots = dispersion_roots(k, params)
        a, b = symbol_ab(k, params)
        alpha, gamma = symbol_alphagamma(k, params)
        rows.append(
            (
                float(k),
                roots.r_plus.real,
                roots.r_plus.imag,
                roots.r_minus.real,
                roots.r_minus.imag,
                float(a),
                float(b),
                float(alpha),
                float(gamma),
            )
        )
    return rows
