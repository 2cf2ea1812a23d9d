"""Pseudospectral models of waves under an elastic damped plate.

Four reduced evolutions on the torus (two second-order in time on the
plane, two one-way on the line), the Fourier-multiplier calculus behind
them, graph-surface curvature operators, and the diagnostics needed to
cross-validate the hierarchy.
"""

from .spectral import (
    SpectralField,
    TorusGrid,
    dealias,
    derivative,
    dn_map_with_source,
    hilbert,
    inner,
    lambda_pow,
    linf_norm,
    mollify,
    product,
    random_field,
    resolvent,
    riesz,
    sobolev_norm,
    t_op,
)
from .nonlinear import (
    commutator_lambda,
    coupling_N,
    first_order_expansion_residual,
    gradient_pairing,
    quadratic_Q,
    tricomi_residual,
    uni1_dropped_terms,
    uni1_nonlinearity,
    uni2_nonlinearity,
)
from .linear import (
    DispersionRoots,
    ModelParams,
    dispersion_roots,
    dispersion_table,
    linear_propagate_bi,
    propagator_entries,
    symbol_ab,
    symbol_alphagamma,
    uni_linear_symbol,
)
from .uni import (
    BlowUpError,
    Trajectory,
    UniConfig,
    decay_rate_fit,
    energy_E,
    energy_calE,
    rhs_uni,
    run,
    step,
)
from .bi import (
    BiConfig,
    BiState,
    EllipticError,
    EllipticSolveReport,
    compare_uni_bi,
    elliptic_solve_U,
    rhs_bi,
    run_bi,
    step_bi,
)
from .geometry import (
    SurfaceField,
    biharmonic_reduction_slope,
    elastic_operator,
    gauss_bonnet_integral,
    gauss_curvature,
    laplace_beltrami,
    mean_curvature,
    metric_quantities,
)
from .diagnostics import (
    EnergyReport,
    read_diagnostics_csv,
    read_snapshot,
    refinement_study,
    temporal_order_study,
    write_diagnostics_csv,
    write_snapshot,
)
from .cli import nondimensionalize

__version__ = "0.1.0"
