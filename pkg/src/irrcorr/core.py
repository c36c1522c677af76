"""
Dynamical matrices, steady state and covariance dynamics of two linearly
coupled, locally damped oscillators.

Quadratures are ordered ``(q_a, p_a, q_b, p_b)`` and the vacuum variance is
1/2, so an oscillator in equilibrium with a bath of occupation ``N`` has
covariance ``(N + 1/2) * identity``. All frequencies and rates are in units
of ``omega_b``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

Matrix = NDArray[np.float64]

# Symplectic form over (q_a, p_a, q_b, p_b).
SYMPLECTIC_FORM: Matrix = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)
SYMPLECTIC_FORM.setflags(write=False)

# Time-reversal parity of the quadratures: positions even, momenta odd.
TIME_REVERSAL: Matrix = np.diag([1.0, -1.0, 1.0, -1.0])
TIME_REVERSAL.setflags(write=False)


class StabilityError(ValueError):
    """The drift matrix has an eigenvalue with non-negative real part."""


class UnphysicalStateError(ValueError):
    """A covariance matrix violates the uncertainty principle or is singular."""


class IntegrationError(RuntimeError):
    """The covariance integrator produced a non-finite or asymmetric state."""


@dataclass(frozen=True)
class OscillatorParams:
    """Physical parameters of the two oscillators and their baths."""

    omega_a: float
    G: float
    kappa_a: float
    kappa_b: float
    N_a: float = 0.0
    N_b: float = 0.0
    omega_b: float = 1.0

    def __post_init__(self):
        if not (self.kappa_a > 0 and self.kappa_b > 0):
            raise ValueError(f"dissipation rates must be positive, got {self.kappa_a}, {self.kappa_b}")
        if self.N_a < 0 or self.N_b < 0:
            raise ValueError(f"bath occupations must be non-negative, got {self.N_a}, {self.N_b}")
        for name in ("omega_a", "G", "kappa_a", "kappa_b", "N_a", "N_b", "omega_b"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def kappa_tot(self) -> float:
        return self.kappa_a + self.kappa_b

    def with_(self, **changes) -> "OscillatorParams":
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {
            "omega_a": self.omega_a,
            "omega_b": self.omega_b,
            "G": self.G,
            "kappa_a": self.kappa_a,
            "kappa_b": self.kappa_b,
            "N_a": self.N_a,
            "N_b": self.N_b,
        }


def build_drift(params: OscillatorParams) -> Matrix:
    """Drift matrix of the linear Langevin equation for ``(q_a, p_a, q_b, p_b)``."""
    wa, wb, G = params.omega_a, params.omega_b, params.G
    ka, kb = params.kappa_a, params.kappa_b
    return np.array(
        [
            [-ka, wa, 0.0, 0.0],
            [-wa, -ka, G, 0.0],
            [0.0, 0.0, -kb, wb],
            [G, 0.0, -wb, -kb],
        ]
    )


def build_diffusion(params: OscillatorParams) -> Matrix:
    da = (1.0 + 2.0 * params.N_a) * params.kappa_a
    db = (1.0 + 2.0 * params.N_b) * params.kappa_b
    return np.diag([da, da, db, db])


def thermal_covariance(N_a: float, N_b: float) -> Matrix:
    """Product of two thermal states, the uncoupled equilibrium covariance."""
    return np.diag([N_a + 0.5, N_a + 0.5, N_b + 0.5, N_b + 0.5])


def equilibrium_covariance(params: OscillatorParams) -> Matrix:
    return thermal_covariance(params.N_a, params.N_b)


def max_real_part(A: Matrix) -> float:
    """Largest real part among the eigenvalues of ``A``."""
    eig = np.linalg.eigvals(np.asarray(A, dtype=float))
    return float(np.max(eig.real))


def is_stable(A: Matrix, margin: float = 0.0) -> bool:
    """
    Decide asymptotic stability of the drift matrix.

    Parameters
    ----------
    A:
        Real square drift matrix.
    margin:
        Required distance of the spectrum from the imaginary axis. ``0`` is
        the strict Hurwitz condition; sweeps use a small positive margin to
        reject states sitting on the stability edge.
    """
    return max_real_part(A) < -margin


def _symmetric_basis(n: int) -> tuple[Matrix, Matrix]:
    """Duplication (n^2 x m) and elimination (m x n^2) matrices, m = n(n+1)/2."""
    pairs = [(i, j) for j in range(n) for i in range(j, n)]
    dup = np.zeros((n * n, len(pairs)))
    elim = np.zeros((len(pairs), n * n))
    for k, (i, j) in enumerate(pairs):
        dup[i + n * j, k] = 1.0
        dup[j + n * i, k] = 1.0
        elim[k, i + n * j] = 1.0
    return dup, elim


_DUP4, _ELIM4 = _symmetric_basis(4)


def lyapunov_steady_state(A: Matrix, D: Matrix) -> Matrix:
    """
    Stationary covariance solving ``A s + s A^T = -D``.

    The equation is vectorised with the Kronecker sum and restricted to the
    10 independent entries of a symmetric 4x4 matrix, then solved directly.

    Raises
    ------
    StabilityError
        If ``A`` is not Hurwitz (no stationary state exists) or the reduced
        linear system is singular.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or D.shape != (n, n):
        raise ValueError("A and D must be square and of equal size")
    if not is_stable(A):
        raise StabilityError(f"no stationary state: max Re(eig A) = {max_real_part(A):.3e}")
    if n == 4:
        dup, elim = _DUP4, _ELIM4
    else:
        dup, elim = _symmetric_basis(n)
    eye = np.eye(n)
    # vec(A X + X A^T) = (I (x) A + A (x) I) vec(X), column-major vec
    ksum = np.kron(eye, A) + np.kron(A, eye)
    lhs = elim @ ksum @ dup
    rhs = -elim @ D.reshape(-1, order="F")
    try:
        x = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as exc:
        raise StabilityError("Lyapunov system is singular (marginal stability)") from exc
    sigma = (dup @ x).reshape(n, n, order="F")
    return 0.5 * (sigma + sigma.T)


def lyapunov_residual(A: Matrix, D: Matrix, sigma: Matrix) -> float:
    """Max-norm of ``A s + s A^T + D``."""
    return float(np.max(np.abs(A @ sigma + sigma @ A.T + D)))


def coupling_source(params: OscillatorParams) -> Matrix:
    """
    ``A s_th + s_th A^T + D`` for the uncoupled thermal covariance ``s_th``.

    Rotation and damping terms cancel exactly, leaving only the coupling
    entries, so the matrix is built analytically.
    """
    R = np.zeros((4, 4))
    R[1, 2] = R[2, 1] = params.G * (params.N_b + 0.5)
    R[0, 3] = R[3, 0] = params.G * (params.N_a + 0.5)
    return R


def steady_state_deviation(params: OscillatorParams) -> Matrix:
    """
    Stationary ``s - s_th``, solved directly so small deviations keep full
    relative precision (the sum ``s_th + deviation`` would round them away).
    """
    return lyapunov_steady_state(build_drift(params), coupling_source(params))


def steady_state(params: OscillatorParams) -> Matrix:
    return equilibrium_covariance(params) + steady_state_deviation(params)


def symplectic_eigenvalues(sigma: Matrix) -> NDArray[np.float64]:
    """Symplectic spectrum (ascending) of a 2n x 2n covariance matrix."""
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0] // 2
    omega = np.kron(np.eye(n), SYMPLECTIC_FORM[:2, :2])
    ev = np.abs(np.linalg.eigvals(1j * omega @ sigma))
    return np.sort(ev)[::2]


def check_physical(sigma: Matrix, tol: float = 1e-9) -> Matrix:
    """
    Validate a covariance matrix and return it as a float array.

    Raises ``UnphysicalStateError`` if it is not square of even size, not
    symmetric, not finite, or has a symplectic eigenvalue below ``1/2 - tol``.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise UnphysicalStateError(f"bad covariance shape {sigma.shape}")
    if not np.all(np.isfinite(sigma)):
        raise UnphysicalStateError("covariance has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(sigma))))
    if np.max(np.abs(sigma - sigma.T)) > 1e-12 * scale:
        raise UnphysicalStateError("covariance is not symmetric")
    if np.min(np.linalg.eigvalsh(sigma)) <= 0:
        raise UnphysicalStateError("covariance is not positive definite")
    nu = symplectic_eigenvalues(sigma)
    if nu[0] < 0.5 - tol:
        raise UnphysicalStateError(f"symplectic eigenvalue {nu[0]:.6g} < 1/2 violates uncertainty")
    return sigma


def covariance_derivative(sigma: Matrix, A: Matrix, D: Matrix) -> Matrix:
    return A @ sigma + sigma @ A.T + D


@dataclass
class Trajectory:
    """Covariance matrices sampled along a time evolution."""

    times: NDArray[np.float64]
    covariances: NDArray[np.float64]  # shape (len(times), n, n)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> Matrix:
        return self.covariances[-1]


def default_step(A: Matrix) -> float:
    # RK4 with |lambda| dt <= 0.02 keeps the global error well below 1e-8 here
    rho = float(np.max(np.abs(np.linalg.eigvals(A))))
    return 0.02 / max(1.0, rho)


def integrate_covariance(
    sigma0: Matrix,
    A: Matrix,
    D: Matrix,
    t_final: float,
    dt: float | None = None,
    record_every: int = 1,
) -> Trajectory:
    """
    Integrate ``dsigma/dt = A sigma + sigma A^T + D`` with fixed-step RK4.

    The state is symmetrised after every step. The last point is always at
    exactly ``t_final`` (the final step is shortened if needed).

    Raises
    ------
    UnphysicalStateError
        If ``sigma0`` is not a valid covariance matrix.
    IntegrationError
        If a step yields a non-finite matrix.
    """
    sigma = check_physical(sigma0).copy()
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    if dt is None:
        dt = default_step(A)
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")

    def f(s):
        return A @ s + s @ A.T + D

    n_steps = int(np.ceil(t_final / dt - 1e-12)) if t_final > 0 else 0
    times = [0.0]
    states = [sigma.copy()]
    t = 0.0
    for step in range(1, n_steps + 1):
        h = min(dt, t_final - t)
        # overflow is reported below as IntegrationError
        with np.errstate(over="ignore", invalid="ignore"):
            k1 = f(sigma)
            k2 = f(sigma + 0.5 * h * k1)
            k3 = f(sigma + 0.5 * h * k2)
            k4 = f(sigma + h * k3)
            sigma = sigma + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        sigma = 0.5 * (sigma + sigma.T)
        if not np.all(np.isfinite(sigma)):
            raise IntegrationError(f"non-finite covariance at step {step}")
        t = t_final if step == n_steps else step * dt
        if step % record_every == 0 or step == n_steps:
            times.append(t)
            states.append(sigma.copy())
    return Trajectory(np.array(times), np.array(states))
