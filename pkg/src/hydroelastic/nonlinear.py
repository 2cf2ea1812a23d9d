"""Quadratic terms of the four reduced models.

All products are evaluated alias-free (3/2 padding + 2/3 truncation); all
derivatives and multipliers act on the spectral side.  The gradient pairing
inside the couplings is grad(f) . grad(Lambda^{-1} g), which in one dimension
is -f_xi H(g); this choice keeps every forcing mean-free and the evolution
mean-preserving.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .spectral import (
    SpectralField,
    derivative,
    dn_map_with_source,
    hilbert,
    lambda_pow,
    linf_norm,
    product,
    sobolev_norm,
    t_op,
)


class NonlinearityKind(Enum):
    UNI1 = "uni1"
    UNI2 = "uni2"
    BI1_FORCING = "bi1_forcing"
    BI2_FORCING = "bi2_forcing"
    COUPLING_N = "coupling_N"
    QUADRATIC_Q = "quadratic_Q"


def commutator_lambda(f: SpectralField, g: SpectralField) -> SpectralField:
    """[Lambda, f] g = Lambda(f g) - f Lambda(g), dealiased."""
    if f.grid != g.grid:
        raise ValueError("grid mismatch")
    return lambda_pow(product(f, g), 1.0) - product(f, lambda_pow(g, 1.0))


def gradient_pairing(f: SpectralField, g: SpectralField) -> SpectralField:
    """sum_j (d_j f) (d_j Lambda^{-1} g); g must be mean-zero."""
    gi = lambda_pow(g, -1.0)
    out = product(derivative(f, 0), derivative(gi, 0))
    for j in range(1, f.grid.dim):
        out = out + product(derivative(f, j), derivative(gi, j))
    return out


def coupling_N(f: SpectralField, g: SpectralField) -> SpectralField:
    """Bilinear interface coupling [Lambda,f]g + grad f . grad Lambda^{-1} g (2D)."""
    if f.grid.dim != 2:
        raise ValueError("the coupling is two-dimensional")
    return commutator_lambda(f, g) + gradient_pairing(f, g)


def quadratic_Q(v: SpectralField) -> SpectralField:
    """(1/2) Lambda(v^2 - |grad Lambda^{-1} v|^2) - [Lambda,v]v - grad v . grad Lambda^{-1} v."""
    if v.grid.dim != 2:
        raise ValueError("the quadratic forcing is two-dimensional")
    vi = lambda_pow(v, -1.0)
    sq = product(v, v)
    for j in range(2):
        rj = derivative(vi, j)
        sq = sq - product(rj, rj)
    return 0.5 * lambda_pow(sq, 1.0) - commutator_lambda(v, v) - gradient_pairing(v, v)


def bi1_forcing(f_t: SpectralField) -> SpectralField:
    """Instantaneous quadratic forcing of the first bidirectional model."""
    return quadratic_Q(f_t)


def bi2_forcing(f: SpectralField, f_t: SpectralField, params) -> SpectralField:
    """Full explicit forcing of the second bidirectional model.

    Assembled in the grouping Q(f_t) + N(f, T f) + (beta/4) N(f, T Lambda^4 f)
    + delta N(f, T Lambda^2 f_t); the last slot uses d_t(Delta f) = -Lambda^2 f_t.
    """
    ups, beta, delta = params.upsilon, params.beta, params.delta
    out = quadratic_Q(f_t) + coupling_N(f, t_op(f, ups))
    if beta != 0.0:
        out = out + (beta / 4.0) * coupling_N(f, t_op(lambda_pow(f, 4.0), ups))
    if delta != 0.0:
        out = out + delta * coupling_N(f, t_op(lambda_pow(f_t, 2.0), ups))
    return out


def uni1_nonlinearity(F: SpectralField) -> SpectralField:
    """2 F_xi Lambda F - [Lambda, F] F_xi (1D)."""
    if F.grid.dim != 1:
        raise ValueError("one-dimensional operator")
    F_xi = derivative(F)
    return 2.0 * product(F_xi, lambda_pow(F, 1.0)) - commutator_lambda(F, F_xi)


def uni2_nonlinearity(F: SpectralField, params) -> SpectralField:
    """Eight-term quadratic forcing of the second unidirectional model (1D)."""
    if F.grid.dim != 1:
        raise ValueError("one-dimensional operator")
    ups, beta, delta = params.upsilon, params.beta, params.delta
    F_xi = derivative(F)
    F_xixi = derivative(F_xi)
    LF = lambda_pow(F, 1.0)
    TF = t_op(F, ups)
    out = (
        0.5 * lambda_pow(product(F_xi, F_xi) - product(LF, LF), 1.0)
        - commutator_lambda(F_xi, F_xi)
        + product(F_xixi, LF)
        + commutator_lambda(F, TF)
        - product(F_xi, hilbert(TF))
    )
    if beta != 0.0:
        T4 = t_op(derivative(F_xixi, 0), ups)  # T F_xixixi
        out = out + (beta / 4.0) * (
            commutator_lambda(F, derivative(T4)) - product(F_xi, lambda_pow(T4, 1.0))
        )
    if delta != 0.0:
        T2 = t_op(F_xixi, ups)
        out = out + delta * (
            commutator_lambda(F, derivative(T2)) - product(F_xi, lambda_pow(T2, 1.0))
        )
    return out


def uni1_dropped_terms(F: SpectralField, G: SpectralField) -> SpectralField:
    """Quadratic cross terms discarded by the one-way reduction.

    G stands in for the slow derivative F_tau.  Returned for diagnostics
    only; nothing in this package adds these to a right-hand side.  The
    discarded linear piece (I + Upsilon Lambda) F_tautau is not representable
    from (F, G) and is not included.
    """
    if F.grid != G.grid or F.grid.dim != 1:
        raise ValueError("one-dimensional fields on a shared grid")
    F_xi, G_xi = derivative(F), derivative(G)
    LF, LG, HG = lambda_pow(F, 1.0), lambda_pow(G, 1.0), hilbert(G)
    out = lambda_pow(product(LF, HG) - product(F_xi, G), 1.0)
    out = out + derivative(commutator_lambda(F, G)) + commutator_lambda(G, F_xi)
    out = out + commutator_lambda(F, G_xi)
    out = out - derivative(product(F_xi, HG)) - product(G_xi, LF) - product(F_xi, LG)
    return out


def tricomi_residual(f: SpectralField) -> float:
    """L2 defect of H(f Hf) = ((Hf)^2 - f^2)/2, with dealiased products."""
    Hf = hilbert(f)
    lhs = hilbert(product(f, Hf))
    rhs = 0.5 * (product(Hf, Hf) - product(f, f))
    diff = lhs - rhs
    return float(np.sqrt(np.sum(np.abs(diff.coeffs) ** 2)))


def _band(field: SpectralField) -> int:
    """Largest |k_j| carrying a nonzero coefficient."""
    nz = np.abs(field.coeffs) > 0
    if not nz.any():
        return 0
    return max(int(np.abs(kj[nz]).max()) for kj in field.grid.k)


def first_order_expansion_residual(eta0: SpectralField, psi0: SpectralField) -> float:
    """Distance between the two routes to the first-order boundary correction.

    Route one builds the depth-exponential source driven by (eta0, psi0) and
    evaluates the half-space boundary map with zero boundary datum; route two
    is the commutator form -[Lambda, eta0] Lambda psi0.  Both are compared on
    their mean-zero parts in L2.
    """
    grid = eta0.grid
    if grid != psi0.grid or grid.dim != 2:
        raise ValueError("two-dimensional fields on a shared grid")
    if _band(eta0) + _band(psi0) > grid.n // 2 - 1:
        raise ValueError("inputs too wide in frequency for an alias-free convolution")
    kmag = grid.kmag
    pc = psi0.coeffs
    profile = []
    for idx in zip(*np.nonzero(np.abs(pc) > 0)):
        m = kmag[idx]
        if m == 0:
            continue
        shift = tuple(int(grid.k[j][idx]) for j in range(2))
        eta_shift = np.roll(eta0.coeffs, shift, axis=(0, 1))
        amp = -m * (kmag**2 - m**2) * eta_shift * pc[idx]
        profile.append((m, amp))
    dn = dn_map_with_source(SpectralField.zero(grid), profile)
    target = -commutator_lambda_full(eta0, lambda_pow(psi0, 1.0)).project_mean_zero()
    return float(np.sqrt(np.sum(np.abs((dn - target).coeffs) ** 2)))


def commutator_lambda_full(f: SpectralField, g: SpectralField) -> SpectralField:
    """Commutator with all coarse-grid modes kept (no 2/3 mask).

    Exact when the factor bands sum to at most n/2 - 1; used where the
    dealiased version would truncate modes another exact route retains.
    """
    if f.grid != g.grid:
        raise ValueError("grid mismatch")
    fg = product(f, g, full_band=True)
    return lambda_pow(fg, 1.0) - product(f, lambda_pow(g, 1.0), full_band=True)


def commutator_smoothing_ratio(f: SpectralField, g: SpectralField) -> float:
    """||[Lambda,f]g||_{L2} / (||f_xi||_{Linf} ||g||_{L2}), the observed constant."""
    num = sobolev_norm(commutator_lambda(f, g), 0.0)
    den = linf_norm(derivative(f, 0)) * sobolev_norm(g, 0.0)
    if den == 0.0:
        raise ValueError("degenerate inputs")
    return num / den
