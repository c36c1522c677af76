"""
Entropy production rate and entropy flux for the two-oscillator system.

Stationary production is available in three equivalent forms: from the
local occupations (``entropy_production_diagonal``), from the position-
momentum cross correlations (``entropy_production_offdiagonal``) and from
the phase-space current (``entropy_production_trace``). The last one is
valid for any Gaussian state, not only the stationary one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    TIME_REVERSAL,
    Matrix,
    OscillatorParams,
    StabilityError,
    UnphysicalStateError,
    build_diffusion,
    build_drift,
    covariance_derivative,
    equilibrium_covariance,
    steady_state_deviation,
)


@dataclass(frozen=True)
class EntropyBreakdown:
    """Per-oscillator contributions to the stationary production rate."""

    mu_a: float
    mu_b: float

    @property
    def pi_s(self) -> float:
        return self.mu_a + self.mu_b

    @property
    def phi_s(self) -> float:
        return -self.pi_s


@dataclass(frozen=True)
class TimeReversalSplit:
    A_irr: Matrix
    A_rev: Matrix
    E: Matrix


def time_reversal_split(A: Matrix) -> TimeReversalSplit:
    """Split the drift into its time-reversal even and odd parts."""
    E = TIME_REVERSAL
    mirrored = E @ A @ E.T
    return TimeReversalSplit(0.5 * (A + mirrored), 0.5 * (A - mirrored), E.copy())


def stationary_occupations(sigma_s: Matrix) -> tuple[float, float]:
    """Mean excitation numbers ``N_{a,s}``, ``N_{b,s}`` of a covariance matrix."""
    na = 0.5 * (sigma_s[0, 0] + sigma_s[1, 1]) - 0.5
    nb = 0.5 * (sigma_s[2, 2] + sigma_s[3, 3]) - 0.5
    return float(na), float(nb)


def _deviation(sigma: Matrix, params: OscillatorParams, deviation: Matrix | None) -> Matrix:
    if deviation is not None:
        return np.asarray(deviation, dtype=float)
    return np.asarray(sigma, dtype=float) - equilibrium_covariance(params)


def entropy_production_diagonal(
    sigma_s: Matrix, params: OscillatorParams, deviation: Matrix | None = None
) -> EntropyBreakdown:
    """
    Production rate from the excess occupation of each oscillator.

    ``deviation`` (``sigma_s`` minus the thermal covariance of the baths) may
    be passed to avoid the cancellation in ``sigma_kk - (N_k + 1/2)`` at weak
    coupling; see ``core.steady_state_deviation``.
    """
    d = _deviation(sigma_s, params, deviation)
    mu_a = 2 * params.kappa_a * (d[0, 0] + d[1, 1]) / (2 * params.N_a + 1)
    mu_b = 2 * params.kappa_b * (d[2, 2] + d[3, 3]) / (2 * params.N_b + 1)
    return EntropyBreakdown(float(mu_a), float(mu_b))


def entropy_production_offdiagonal(sigma_s: Matrix, params: OscillatorParams) -> EntropyBreakdown:
    """Production rate from the <p_a q_b> and <q_a p_b> correlations."""
    mu_a = params.G * sigma_s[1, 2] / (params.N_a + 0.5)
    mu_b = params.G * sigma_s[0, 3] / (params.N_b + 0.5)
    return EntropyBreakdown(float(mu_a), float(mu_b))


def _trace_terms(sigma: Matrix, params: OscillatorParams, deviation: Matrix | None):
    """
    The three trace terms of the phase-space current, each minus its value at
    the bath thermal state. The reference values sum to zero for both the
    production rate and the flux, so only the O(deviation) parts are formed.
    """
    sigma = np.asarray(sigma, dtype=float)
    d = _deviation(sigma, params, deviation)
    A = build_drift(params)
    D = build_diffusion(params)
    a_irr = time_reversal_split(A).A_irr
    d_inv = np.diag(1.0 / np.diag(D))
    sigma_th = equilibrium_covariance(params)
    try:
        # tr(s^-1 D) - tr(s_th^-1 D) = -tr(s^-1 d s_th^-1 D)
        t_sd = -0.5 * np.trace(np.linalg.solve(sigma, d) @ np.linalg.solve(sigma_th, D))
    except np.linalg.LinAlgError as exc:
        raise UnphysicalStateError("singular covariance matrix") from exc
    t_q = np.trace(a_irr.T @ d_inv @ a_irr @ d)
    return float(t_sd), float(t_q)


def entropy_production_trace(sigma: Matrix, params: OscillatorParams, deviation: Matrix | None = None) -> float:
    """
    Instantaneous production rate Pi(t) of a Gaussian state with covariance ``sigma``.

    Evaluates ``tr(s^-1 D)/2 + 2 tr(A_irr) + 2 tr(A_irr^T D^-1 A_irr s)`` with
    the thermal-state contribution (which vanishes) removed analytically.
    """
    t_sd, t_q = _trace_terms(sigma, params, deviation)
    return t_sd + 2 * t_q


def entropy_flux_trace(sigma: Matrix, params: OscillatorParams, deviation: Matrix | None = None) -> float:
    """Instantaneous entropy flux Phi(t) = -tr(A_irr) - 2 tr(A_irr^T D^-1 A_irr s)."""
    _, t_q = _trace_terms(sigma, params, deviation)
    return -2 * t_q


def entropy_rate(sigma: Matrix, params: OscillatorParams) -> float:
    """dS/dt = tr(sigma^-1 dsigma/dt)/2 along the covariance equation of motion."""
    sigma = np.asarray(sigma, dtype=float)
    sdot = covariance_derivative(sigma, build_drift(params), build_diffusion(params))
    return float(0.5 * np.trace(np.linalg.solve(sigma, sdot)))


def stationary_entropy(params: OscillatorParams) -> EntropyBreakdown:
    """Steady-state breakdown computed through the Lyapunov route."""
    d = steady_state_deviation(params)
    return entropy_production_diagonal(equilibrium_covariance(params) + d, params, deviation=d)


def expand_small_G(params: OscillatorParams) -> tuple[float, float]:
    """
    Leading O(G^2) terms of mu_a and mu_b (rescaled units, omega_b = 1).

    The error with respect to the exact contributions is O(G^4).
    """
    G, wa = params.G, params.omega_a
    Na, Nb = params.N_a, params.N_b
    kt = params.kappa_tot
    # ((wa - 1)^2 + kt^2) ((wa + 1)^2 + kt^2)
    den = 2 * wa**2 * (kt**2 - 1) + (kt**2 + 1) ** 2 + wa**4
    s = 1 + kt**2 + wa**2
    mu_a = G**2 * kt * (s - 2 * wa * (2 * Na + 1) + 2 * Nb * s) / ((2 * Na + 1) * den)
    mu_b = G**2 * kt * (s - 2 * wa * (2 * Nb + 1) + 2 * Na * s) / ((2 * Nb + 1) * den)
    return float(mu_a), float(mu_b)


def expand_large_omega(params: OscillatorParams) -> tuple[float, float]:
    """Leading 1/omega_a^2 tails of mu_a and mu_b for a far-detuned oscillator a."""
    G, wa, kb = params.G, params.omega_a, params.kappa_b
    Na, Nb = params.N_a, params.N_b
    kt = params.kappa_tot
    mu_a = G**2 * kt * (1 + 2 * Nb) / (1 + 2 * Na) / wa**2
    mu_b = (G**2 * kt * (1 + 2 * Na) / (1 + 2 * Nb) + G**4 * kb / (2 * (kb**2 + 1))) / wa**2
    return float(mu_a), float(mu_b)


def identical_oscillators_pi(kappa_a: float, kappa_b: float, G: float) -> float:
    """
    Closed-form production rate for omega_a = omega_b = 1 and N_a = N_b.

    The result does not depend on the common bath occupation. For
    ``kappa_a == kappa_b == k`` it reduces to ``G^2 k (k^2+1) / ((k^2+1)^2 - G^2)``.

    Raises
    ------
    StabilityError
        When the coupling is at or beyond the stability edge.
    """
    ka, kb = kappa_a, kappa_b
    kt = ka + kb
    chi = (ka**2 + 1) * (kb**2 + 1)
    if chi - G**2 <= 0:
        raise StabilityError(f"G = {G} beyond the stability edge sqrt(chi) = {np.sqrt(chi):.6g}")
    num = G**2 * kt * (G**2 * (kt**2 - 3 * ka * kb + 1) + 4 * ka * kb * chi)
    den = 2 * (chi - G**2) * (G**2 + ka * kb * (kt**2 + 4))
    return float(num / den)
