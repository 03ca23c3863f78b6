"""Two-qubit open-quantum-system battery simulations."""

from .linalg import (
    DensityMatrix,
    InvariantViolation,
    SpectralDecomposition,
    expectation,
    herm_eigen,
    integrate_ode,
    kron,
    partial_trace,
    propagator,
    thermal_state,
)
from .ergotropy import (
    MetricsSample,
    PowerSegment,
    PowerSummary,
    average_powers,
    coherent_ergotropy,
    dephase,
    ergotropy,
    incoherent_ergotropy,
    passive_state,
    series_metrics,
)

__version__ = "0.1.0"
