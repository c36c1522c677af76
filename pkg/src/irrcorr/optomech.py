"""
Linearized cavity optomechanics as a special case of the two-oscillator model.

The optical mode plays oscillator a (frequency = effective detuning, no
thermal photons) and the mechanical mode plays oscillator b. All
frequencies are in units of the mechanical frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import OscillatorParams, build_drift, max_real_part
from .sampler import STABILITY_MARGIN, evaluate_point


@dataclass(frozen=True)
class OptomechConfig:
    Delta: float
    g: float
    kappa: float
    gamma_m: float
    N: float
    omega_m: float = 1.0

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if not self.gamma_m > 0:
            raise ValueError(f"gamma_m must be positive, got {self.gamma_m}")
        if not self.N >= 0:
            raise ValueError(f"N must be non-negative, got {self.N}")
        if self.omega_m != 1.0:
            raise ValueError("frequencies are in units of omega_m; omega_m must be 1")

    def with_(self, **changes) -> "OptomechConfig":
        return replace(self, **changes)


def to_oscillator_params(cfg: OptomechConfig) -> OscillatorParams:
    return OscillatorParams(
        omega_a=cfg.Delta,
        G=2.0 * cfg.g,
        kappa_a=cfg.kappa,
        kappa_b=cfg.gamma_m,
        N_a=0.0,
        N_b=cfg.N,
        omega_b=cfg.omega_m,
    )


def enhanced_coupling(g0: float, E: float, kappa: float, Delta: float) -> float:
    """Drive-enhanced coupling ``sqrt(2) g0 |E| / sqrt(kappa^2 + Delta^2)``."""
    return math.sqrt(2.0) * g0 * abs(E) / math.hypot(kappa, Delta)


def effective_detuning(Delta0: float, g0: float, alpha: complex, omega_m: float = 1.0) -> float:
    """Detuning shifted by the static radiation-pressure displacement."""
    return Delta0 - g0**2 * abs(alpha) ** 2 / omega_m


def cooperativity(cfg: OptomechConfig) -> float:
    """Multi-photon quantum cooperativity ``4 g^2 / (kappa gamma_m N)``."""
    if cfg.N == 0:
        raise ValueError("cooperativity is undefined for N = 0")
    return 4.0 * cfg.g**2 / (cfg.kappa * cfg.gamma_m * cfg.N)


def pi_small_g_expansion(cfg: OptomechConfig) -> float:
    """
    Stationary production rate to second order in the coupling, mechanical
    damping neglected. Valid when ``G^2 / kappa`` is small compared with
    ``gamma_m``, i.e. far from the dynamical back-action regime.
    """
    G, k, d, N = 2.0 * cfg.g, cfg.kappa, cfg.Delta, cfg.N
    red = N**2 / ((d - 1.0) ** 2 + k**2)
    blue = (N + 1.0) ** 2 / ((d + 1.0) ** 2 + k**2)
    return 2.0 * k * G**2 / (2.0 * N + 1.0) * (red + blue)


@dataclass(frozen=True)
class RegimeRecord:
    Delta: float
    g: float
    stable: bool
    max_real_part: float
    mu_a: float
    mu_b: float
    pi_s: float
    mutual_info: float
    discord: float
    log_neg: float

    @property
    def regime(self) -> str:
        """``cooling`` when the mechanics loses entropy to the light, else ``heating``."""
        if not self.stable:
            return "unstable"
        return "cooling" if self.mu_b < 0 else "heating"


def default_margin(cfg: OptomechConfig) -> float:
    # the uncoupled mechanics decays at gamma_m / 2, which can sit below the generic margin
    return min(STABILITY_MARGIN, 1e-2 * min(cfg.kappa, cfg.gamma_m))


def evaluate(cfg: OptomechConfig, margin: float | None = None) -> RegimeRecord:
    if margin is None:
        margin = default_margin(cfg)
    pt = evaluate_point(to_oscillator_params(cfg), margin)
    return RegimeRecord(
        cfg.Delta,
        cfg.g,
        pt.stable,
        pt.max_real_part,
        pt.mu_a,
        pt.mu_b,
        pt.pi_s,
        pt.mutual_info,
        pt.discord,
        pt.log_neg,
    )


def regime_report(cfg: OptomechConfig, deltas, margin: float | None = None) -> list[RegimeRecord]:
    """Figures of merit along a detuning sweep; ``cfg.Delta`` is ignored."""
    deltas = np.asarray(deltas, dtype=float)
    if deltas.size == 0 or not np.all(np.isfinite(deltas)):
        raise ValueError("detuning grid must be non-empty and finite")
    return [evaluate(cfg.with_(Delta=float(d)), margin) for d in deltas]


def coupling_sweep(cfg: OptomechConfig, gs, margin: float | None = None) -> list[RegimeRecord]:
    """Figures of merit along a coupling sweep at fixed ``cfg.Delta``."""
    gs = np.asarray(gs, dtype=float)
    if gs.size == 0 or not np.all(np.isfinite(gs)):
        raise ValueError("coupling grid must be non-empty and finite")
    return [evaluate(cfg.with_(g=float(g)), margin) for g in gs]


def stability_edge_g(cfg: OptomechConfig, g_max: float = 10.0, margin: float | None = None) -> float | None:
    """
    Largest stable coupling in ``[0, g_max]`` at fixed detuning, by bisection.

    Returns None if every coupling up to ``g_max`` is stable. Assumes the
    uncoupled system (g = 0) is stable, which holds for positive damping.
    """

    if margin is None:
        margin = default_margin(cfg)

    def stable(g):
        return max_real_part(build_drift(to_oscillator_params(cfg.with_(g=g)))) < -margin

    if stable(g_max):
        return None
    lo, hi = 0.0, g_max
    while hi - lo > 1e-14 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid
    return lo
