"""Entropy production and correlations in the steady state of two coupled damped oscillators."""

from __future__ import annotations

__version__ = "0.1.0"

from .core import (
    IntegrationError,
    OscillatorParams,
    StabilityError,
    Trajectory,
    UnphysicalStateError,
    build_diffusion,
    build_drift,
    integrate_covariance,
    is_stable,
    lyapunov_steady_state,
    steady_state,
    symplectic_eigenvalues,
)
from .correlations import (
    CorrelationReport,
    correlation_report,
    discord_closed_form,
    discord_numeric,
    log_negativity,
    mutual_information,
    renyi2_entropy,
    symplectic_invariants,
)
from .entropy import (
    EntropyBreakdown,
    entropy_flux_trace,
    entropy_production_diagonal,
    entropy_production_offdiagonal,
    entropy_production_trace,
    entropy_rate,
    stationary_entropy,
)
from .optomech import OptomechConfig, cooperativity, enhanced_coupling, regime_report, to_oscillator_params
from .sampler import SamplePoint, SampleSpec, bound_curves, sample_steady_states
