"""
Random non-equilibrium steady states and the extremal curves bounding them
in the (entropy production, correlation) plane.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .core import OscillatorParams, build_drift, equilibrium_covariance, max_real_part, steady_state_deviation
from .correlations import discord_closed_form, log_negativity, mutual_information
from .entropy import entropy_production_diagonal

RNG_ALGORITHM = "numpy.random.Generator(PCG64)"

# sweeps reject drifts whose spectrum sits closer than this to the imaginary axis
STABILITY_MARGIN = 1e-6


@dataclass(frozen=True)
class SampleSpec:
    """Uniform sampling domain for random steady states."""

    omega_a_range: tuple[float, float] = (0.0, 3.0)
    G_range: tuple[float, float] = (0.0, 2.0)
    N_a_range: tuple[float, float] = (0.0, 10.0)
    N_b_range: tuple[float, float] = (0.0, 10.0)
    kappa_a: float = 0.5
    kappa_b: float = 1.0
    count: int = 10_000
    seed: int = 0

    def __post_init__(self):
        for name in ("omega_a_range", "G_range", "N_a_range", "N_b_range"):
            lo, hi = getattr(self, name)
            if not hi > lo:
                raise ValueError(f"{name} must be a non-degenerate interval, got {(lo, hi)}")
        if self.N_a_range[0] < 0 or self.N_b_range[0] < 0:
            raise ValueError("occupation ranges must be non-negative")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not (self.kappa_a > 0 and self.kappa_b > 0):
            raise ValueError("dissipation rates must be positive")

    @property
    def N_max(self) -> float:
        return max(self.N_a_range[1], self.N_b_range[1])


@dataclass(frozen=True)
class SamplePoint:
    params: OscillatorParams
    stable: bool
    max_real_part: float
    mu_a: float = math.nan
    mu_b: float = math.nan
    mutual_info: float = math.nan
    discord: float = math.nan
    log_neg: float = math.nan

    @property
    def pi_s(self) -> float:
        return self.mu_a + self.mu_b

    @property
    def entangled(self) -> bool:
        return self.stable and self.log_neg > 0


def draw_parameters(spec: SampleSpec) -> np.ndarray:
    """Rows of ``(omega_a, G, N_a, N_b)`` drawn uniformly, in draw order."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    lo = np.array([spec.omega_a_range[0], spec.G_range[0], spec.N_a_range[0], spec.N_b_range[0]])
    hi = np.array([spec.omega_a_range[1], spec.G_range[1], spec.N_a_range[1], spec.N_b_range[1]])
    return lo + (hi - lo) * rng.random((spec.count, 4))


def evaluate_point(params: OscillatorParams, margin: float = STABILITY_MARGIN) -> SamplePoint:
    """All figures of merit of the steady state of ``params`` (NaN if unstable)."""
    lam = max_real_part(build_drift(params))
    if not lam < -margin:
        return SamplePoint(params, False, lam)
    dev = steady_state_deviation(params)
    sigma = equilibrium_covariance(params) + dev
    ent = entropy_production_diagonal(sigma, params, deviation=dev)
    return SamplePoint(
        params,
        True,
        lam,
        mu_a=ent.mu_a,
        mu_b=ent.mu_b,
        mutual_info=mutual_information(sigma),
        discord=discord_closed_form(sigma),
        log_neg=log_negativity(sigma),
    )


def _evaluate_rows(args) -> list[SamplePoint]:
    rows, kappa_a, kappa_b = args
    return [
        evaluate_point(OscillatorParams(float(w), float(g), kappa_a, kappa_b, float(na), float(nb)))
        for w, g, na, nb in rows
    ]


def sample_steady_states(spec: SampleSpec, workers: int = 1) -> list[SamplePoint]:
    """
    Draw ``spec.count`` parameter sets and evaluate their steady states.

    Unstable draws stay in the output with ``stable=False`` so the stable
    fraction of the uniform measure can be read off. The result depends only
    on ``spec``; ``workers`` changes wall time, not output.
    """
    rows = draw_parameters(spec)
    if workers <= 1:
        return _evaluate_rows((rows, spec.kappa_a, spec.kappa_b))
    chunks = np.array_split(rows, workers * 4)
    jobs = [(chunk, spec.kappa_a, spec.kappa_b) for chunk in chunks if len(chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_evaluate_rows, jobs))
    return [p for part in parts for p in part]


# --- extremal configurations ----------------------------------------------


@dataclass(frozen=True)
class ExtremalConfiguration:
    """A one-parameter family (in G) of steady states tracing a bound curve."""

    name: str
    kind: str  # "mutual_info" or "discord"
    side: str  # "upper" or "lower"
    omega_a: float
    N_a: float
    N_b: float
    kappa_a: float
    kappa_b: float

    def params(self, G: float) -> OscillatorParams:
        return OscillatorParams(self.omega_a, G, self.kappa_a, self.kappa_b, self.N_a, self.N_b)

    def evaluate(self, G: float) -> tuple[float, float]:
        """``(pi_s, value)`` at coupling ``G``."""
        p = self.params(G)
        dev = steady_state_deviation(p)
        sigma = equilibrium_covariance(p) + dev
        pi_s = entropy_production_diagonal(sigma, p, deviation=dev).pi_s
        value = mutual_information(sigma) if self.kind == "mutual_info" else discord_closed_form(sigma)
        return pi_s, value

    def is_stable(self, G: float, margin: float = STABILITY_MARGIN) -> bool:
        return max_real_part(build_drift(self.params(G))) < -margin

    def stability_edge(self, G_hi: float, margin: float = STABILITY_MARGIN) -> float | None:
        """Smallest unstable G in ``[0, G_hi]`` by bisection, or None if stable throughout."""
        if self.is_stable(G_hi, margin):
            return None
        lo, hi = 0.0, G_hi
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.is_stable(mid, margin):
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * max(1.0, hi):
                break
        return lo


def bound_configurations(kind: str, kappa_a: float, kappa_b: float, N_max: float) -> dict[str, ExtremalConfiguration]:
    """
    Extremal configurations for ``kind`` in ``{"mutual_info", "discord"}``.

    Mutual information: upper from resonant oscillators with equal baths
    (the value is independent of the common occupation, zero is used), lower
    from ``omega_a = 0`` with all thermal excitations in bath b. Discord: upper
    from ``omega_a = 0`` with both baths in the vacuum.
    """
    if kind == "mutual_info":
        return {
            "upper": ExtremalConfiguration("upper", kind, "upper", 1.0, 0.0, 0.0, kappa_a, kappa_b),
            "lower": ExtremalConfiguration("lower", kind, "lower", 0.0, 0.0, N_max, kappa_a, kappa_b),
        }
    if kind == "discord":
        return {"upper": ExtremalConfiguration("upper", kind, "upper", 0.0, 0.0, 0.0, kappa_a, kappa_b)}
    raise ValueError(f"unknown bound kind {kind!r}")


@dataclass
class BoundCurve:
    config: ExtremalConfiguration
    G: np.ndarray
    pi_s: np.ndarray
    value: np.ndarray
    truncated: bool
    stability_edge: float | None = None

    @property
    def name(self) -> str:
        return f"{self.config.kind}_{self.config.side}"


def bound_curves(
    kind: str,
    kappa_a: float,
    kappa_b: float,
    G_max: float,
    n_points: int,
    N_max: float = 10.0,
) -> dict[str, BoundCurve]:
    """
    Parametric curves ``(pi_s(G), value(G))`` for ``G`` on a uniform grid in ``[0, G_max]``.

    Grid points beyond the stability edge are dropped and the curve is
    flagged ``truncated``.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    grid = np.linspace(0.0, G_max, n_points)
    out = {}
    for side, cfg in bound_configurations(kind, kappa_a, kappa_b, N_max).items():
        edge = cfg.stability_edge(G_max)
        keep = grid if edge is None else grid[grid < edge]
        vals = np.array([cfg.evaluate(g) for g in keep]).reshape(-1, 2)
        out[side] = BoundCurve(cfg, keep, vals[:, 0], vals[:, 1], edge is not None, edge)
    return out


def mutual_info_lower_asymptote(kappa_a: float, kappa_b: float) -> float:
    """Infinite-coupling limit of the lower mutual-information bound."""
    ka, kb = kappa_a, kappa_b
    num = (ka + 2 * kb) * (2 * ka**3 + kb + 8 * ka**2 * kb + 8 * ka * kb**2 + kb**3)
    return 0.5 * math.log(num / (ka * kb * (1 + kb**2)))


# --- bound checks ----------------------------------------------------------


@dataclass
class _Envelope:
    """Dense reference table of a bound curve plus exact refinement by root finding."""

    config: ExtremalConfiguration
    G_hi: float
    G: np.ndarray = field(init=False)
    pi: np.ndarray = field(init=False)
    value: np.ndarray = field(init=False)

    def __post_init__(self):
        edge = self.config.stability_edge(self.G_hi)
        top = self.G_hi if edge is None else edge * (1 - 1e-12)
        # dense near zero and near the top end where pi_s varies fastest
        g = np.concatenate(
            [
                np.linspace(0.0, top, 1500),
                top * np.geomspace(1e-6, 1.0, 600),
                top * (1 - np.geomspace(1e-10, 1.0, 600)),
            ]
        )
        g = np.unique(np.clip(g, 0.0, top))
        vals = np.array([self.config.evaluate(x) for x in g])
        if np.any(np.diff(vals[:, 0]) < 0):
            raise RuntimeError(f"pi_s is not monotone in G along the {self.config.name} curve")
        self.G, self.pi, self.value = g, vals[:, 0], vals[:, 1]

    def covers(self, pi: float) -> bool:
        return self.pi[0] <= pi <= self.pi[-1]

    def approx(self, pi: float) -> float:
        return float(np.interp(pi, self.pi, self.value))

    def exact(self, pi: float) -> float:
        k = int(np.searchsorted(self.pi, pi))
        if k == 0:
            return float(self.value[0])
        lo, hi = self.G[k - 1], self.G[min(k, len(self.G) - 1)]
        if hi == lo:
            return float(self.value[k - 1])
        g = brentq(lambda x: self.config.evaluate(x)[0] - pi, lo, hi, xtol=1e-15, rtol=1e-15)
        return self.config.evaluate(g)[1]


@dataclass(frozen=True)
class BoundViolation:
    point: SamplePoint
    side: str
    value: float
    bound: float

    @property
    def excess(self) -> float:
        return self.value - self.bound if self.side == "upper" else self.bound - self.value


def bound_violations(
    points: list[SamplePoint],
    kind: str,
    kappa_a: float,
    kappa_b: float,
    N_max: float,
    tol: float = 1e-6,
    G_hi: float = 1e4,
    screen: float = 1e-3,
) -> tuple[list[BoundViolation], int]:
    """
    Stable points lying outside the bound curves by more than ``tol``.

    Each point is matched to the curve at equal ``pi_s``. A dense table
    screens the points; any point within ``screen`` of (or beyond) a curve
    is re-checked exactly by root finding in G.

    Returns
    -------
    violations, uncovered
        The violations and the number of (point, curve) pairs whose ``pi_s``
        lies outside the range the curve reaches.
    """
    envs = {side: _Envelope(cfg, G_hi) for side, cfg in bound_configurations(kind, kappa_a, kappa_b, N_max).items()}
    violations = []
    uncovered = 0
    for p in points:
        if not p.stable:
            continue
        value = p.mutual_info if kind == "mutual_info" else p.discord
        for side, env in envs.items():
            if not env.covers(p.pi_s):
                uncovered += 1
                continue
            sign = 1.0 if side == "upper" else -1.0
            if sign * (value - env.approx(p.pi_s)) < -screen:
                continue
            bound = env.exact(p.pi_s)
            if sign * (value - bound) > tol:
                violations.append(BoundViolation(p, side, value, bound))
    return violations, uncovered
