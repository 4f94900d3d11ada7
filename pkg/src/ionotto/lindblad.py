"""Master-equation integration and steady-state solvers.

The dissipator convention is fixed once for the whole package: a channel
``(rate, L)`` contributes

    (rate / 2) * (2 L rho L^dag - L^dag L rho - rho L^dag L)

to ``d rho / dt = -i [H, rho] + dissipators`` with hbar = 1 and every
angular frequency in rad/us.  All engineered-bath builders express their
channel lists in this convention, which is pinned down by the two-level
rate-balance fixed point p_e = n / (1 + 2 n) exercised in the tests.

States are vectorized row-major, so vec(A rho B) = (A kron B^T) vec(rho).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .operators import SpaceLayout, hermiticity_defect, is_hermitian

__all__ = [
    "LindbladModel",
    "EvolutionReport",
    "EquilibrationReport",
    "DegenerateSteadyStateError",
    "EquilibrationError",
    "IntegrationError",
    "liouvillian_matrix",
    "expectation",
    "evolve",
    "steady_state",
    "equilibrate",
    "trace_norm",
]


class DegenerateSteadyStateError(RuntimeError):
    """The Liouvillian null space is not one dimensional."""


class EquilibrationError(RuntimeError):
    """The window test did not converge within the window budget."""


class IntegrationError(RuntimeError):
    """Non-finite entries appeared during integration (stiffness or
    parameter blow-up), or the step budget ran out."""


@dataclass(frozen=True)
class LindbladModel:
    """A Hamiltonian plus a list of (rate, collapse operator) channels.

    ``slow_rate`` is optional metadata: the slowest relaxation rate of the
    model, used to size equilibration windows.  Builders that know the
    engineered bath parameters fill it in.
    """

    hamiltonian: np.ndarray
    channels: tuple[tuple[float, np.ndarray], ...]
    layout: SpaceLayout | None = None
    slow_rate: float | None = None

    def __post_init__(self) -> None:
        h = np.asarray(self.hamiltonian, dtype=complex)
        defect = hermiticity_defect(h)
        if defect > 1e-10:
            raise ValueError(
                f"Hamiltonian is not Hermitian (max deviation {defect:.3e})"
            )
        chans = []
        for rate, op in self.channels:
            rate = float(rate)
            if not np.isfinite(rate) or rate < 0:
                raise ValueError(f"channel rate must be finite and >= 0, got {rate}")
            op = np.asarray(op, dtype=complex)
            if op.shape != h.shape:
                raise ValueError(
                    f"collapse operator shape {op.shape} does not match "
                    f"Hamiltonian shape {h.shape}"
                )
            chans.append((rate, op))
        if self.layout is not None and self.layout.dim != h.shape[0]:
            raise ValueError(
                f"layout dimension {self.layout.dim} does not match "
                f"Hamiltonian dimension {h.shape[0]}"
            )
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "channels", tuple(chans))

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class EvolutionReport:
    """Outcome of one integration run; the hygiene fields are measured."""

    final_state: np.ndarray
    steps_taken: int
    max_trace_drift: float
    min_eigenvalue: float


@dataclass(frozen=True)
class EquilibrationReport:
    """Outcome of window-based relaxation toward the bath steady state."""

    final_state: np.ndarray
    method: str
    windows: int
    window_duration: float
    last_change: float
    max_trace_drift: float
    min_eigenvalue: float
    rhs_residual: float
    steps_taken: int = 0


def liouvillian_matrix(model: LindbladModel, *, sparse: bool = False):
    """Matrix of the generator acting on row-major vectorized states."""
    d = model.dim
    h = model.hamiltonian
    if sparse:
        ident = sp.identity(d, format="csr", dtype=complex)
        hs = sp.csr_matrix(h)
        liou = -1j * (sp.kron(hs, ident) - sp.kron(ident, hs.T))
        for rate, op in model.channels:
            if rate == 0.0:
                continue
            ops = sp.csr_matrix(op)
            opdop = sp.csr_matrix(op.conj().T @ op)
            liou = liou + rate * sp.kron(ops, ops.conj())
            liou = liou - (rate / 2.0) * (
                sp.kron(opdop, ident) + sp.kron(ident, opdop.T)
            )
        return liou.tocsr()
    ident = np.eye(d, dtype=complex)
    liou = -1j * (np.kron(h, ident) - np.kron(ident, h.T))
    for rate, op in model.channels:
        if rate == 0.0:
            continue
        opdop = op.conj().T @ op
        liou += rate * np.kron(op, op.conj())
        liou -= (rate / 2.0) * (np.kron(opdop, ident) + np.kron(ident, opdop.T))
    return liou


def expectation(op: np.ndarray, rho: np.ndarray):
    """tr(op rho); returns a real scalar when ``op`` is Hermitian."""
    if op.shape != rho.shape or op.shape[0] != op.shape[1]:
        raise ValueError(f"shape mismatch: op {op.shape} vs state {rho.shape}")
    value = complex(np.einsum("ij,ji->", op, rho))
    if is_hermitian(op):
        if abs(value.imag) > 1e-9:
            raise ValueError(
                f"expectation of a Hermitian operator came out complex "
                f"(imag {value.imag:.3e})"
            )
        return value.real
    return value


def trace_norm(a: np.ndarray) -> float:
    """Trace norm (sum of singular values); uses eigvalsh when Hermitian."""
    if is_hermitian(a, tol=1e-8):
        return float(np.abs(np.linalg.eigvalsh(a)).sum())
    return float(np.linalg.svd(a, compute_uv=False).sum())


def _check_state(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"state shape {rho.shape} does not match model dim {dim}")
    defect = hermiticity_defect(rho)
    if defect > 1e-10:
        raise ValueError(f"initial state is not Hermitian (deviation {defect:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"initial state trace is {tr}, expected 1")
    min_eig = float(np.linalg.eigvalsh(rho).min())
    if min_eig < -1e-10:
        raise ValueError(f"initial state has negative eigenvalue {min_eig:.3e}")
    return rho


# Dormand-Prince 4(5) tableau with the first-same-as-last property.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_ERR = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)


def evolve(
    model: LindbladModel,
    rho0: np.ndarray,
    t: float,
    tol: float = 1e-9,
    *,
    atol: float | None = None,
    max_steps: int = 2_000_000,
) -> EvolutionReport:
    """Integrate the master equation to time ``t``.

    Adaptive embedded Runge-Kutta (Dormand-Prince 4/5) on the vectorized
    density matrix with per-step local error below ``tol`` (relative) and
    ``atol`` (absolute, default ``tol * 1e-3``).  After every accepted
    step the state is re-symmetrized, rho <- (rho + rho^dag)/2, which
    removes Hermiticity drift without affecting the accuracy order.
    """
    if not (0.0 < tol <= 1e-4):
        raise ValueError(f"tolerance must lie in (0, 1e-4], got {tol}")
    if t < 0:
        raise ValueError(f"evolution time must be >= 0, got {t}")
    if atol is None:
        atol = tol * 1e-3
    d = model.dim
    rho = _check_state(rho0, d)
    if t == 0.0:
        return EvolutionReport(
            final_state=rho.copy(),
            steps_taken=0,
            max_trace_drift=float(abs(np.trace(rho) - 1.0)),
            min_eigenvalue=float(np.linalg.eigvalsh(rho).min()),
        )

    # Dense generator is faster below ~a few hundred vectorized entries;
    # the joint ion models are large and very sparse.
    if d <= 24:
        liou = liouvillian_matrix(model)
        rhs = liou.dot
    else:
        liou_sp = liouvillian_matrix(model, sparse=True)
        rhs = liou_sp.dot

    y = rho.reshape(-1).copy()
    time_now = 0.0
    k = np.empty((7, y.size), dtype=complex)
    k[0] = rhs(y)
    if not np.all(np.isfinite(k[0])):
        raise IntegrationError("non-finite derivative at the initial state")

    # standard starting-step heuristic
    scale0 = atol + tol * np.abs(y)
    d0 = np.sqrt(np.mean(np.abs(y / scale0) ** 2))
    d1 = np.sqrt(np.mean(np.abs(k[0] / scale0) ** 2))
    h = min(t, 0.01 * d0 / d1 if d1 > 0 else t * 1e-3)

    steps = 0
    max_drift = 0.0
    diag_idx = np.arange(d) * (d + 1)
    while time_now < t:
        h = min(h, t - time_now)
        for stage in range(1, 7):
            yi = y + h * (k[:stage].T @ _DP_A[stage])
            k[stage] = rhs(yi)
        y5 = y + h * (k.T @ _DP_B5)
        err_vec = h * (k.T @ _DP_ERR)
        if not np.all(np.isfinite(y5)):
            raise IntegrationError(
                f"non-finite state entries at t = {time_now:.6g}"
            )
        scale = atol + tol * np.maximum(np.abs(y), np.abs(y5))
        err = np.sqrt(np.mean(np.abs(err_vec / scale) ** 2))
        if err <= 1.0:
            time_now += h
            mat = y5.reshape(d, d)
            mat = 0.5 * (mat + mat.conj().T)
            y = mat.reshape(-1)
            k[0] = rhs(y)  # re-evaluate: symmetrization invalidates FSAL
            steps += 1
            drift = abs(y[diag_idx].sum() - 1.0)
            if drift > max_drift:
                max_drift = float(drift)
        if steps >= max_steps:
            raise IntegrationError(
                f"step budget {max_steps} exhausted at t = {time_now:.6g}; "
                "for long stiff relaxations use equilibrate()"
            )
        factor = 0.9 * err ** -0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if h <= t * 1e-15:
            raise IntegrationError(
                f"step size underflow at t = {time_now:.6g} (stiff blow-up)"
            )

    final = y.reshape(d, d)
    return EvolutionReport(
        final_state=final,
        steps_taken=steps,
        max_trace_drift=max_drift,
        min_eigenvalue=float(np.linalg.eigvalsh(final).min()),
    )


def steady_state(model: LindbladModel) -> np.ndarray:
    """Stationary state as the null vector of the dense generator.

    Singular-value decomposition locates the null space; a null-space
    dimension other than one is reported, never silently resolved.  The
    returned state is Hermitian with unit trace.
    """
    if not model.channels or all(rate == 0.0 for rate, _ in model.channels):
        raise ValueError("steady_state needs at least one dissipative channel")
    liou = liouvillian_matrix(model)
    svals = np.linalg.svd(liou, compute_uv=False)
    smax = float(svals[0])
    null_tol = max(smax, 1e-300) * 1e-9
    null_count = int(np.count_nonzero(svals <= null_tol))
    if null_count != 1:
        raise DegenerateSteadyStateError(
            f"Liouvillian null space has dimension {null_count}, expected 1"
        )
    _, _, vh = np.linalg.svd(liou)
    rho = vh[-1].conj().reshape(model.dim, model.dim)
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho)
    if abs(tr) < 1e-12 * np.linalg.norm(rho):
        raise DegenerateSteadyStateError(
            "null vector is traceless; no normalizable steady state"
        )
    return (rho / tr).astype(complex)


def _slowest_window(model: LindbladModel, window: float | None) -> float:
    if window is not None:
        if window <= 0:
            raise ValueError(f"window duration must be > 0, got {window}")
        return float(window)
    if model.slow_rate is None or model.slow_rate <= 0:
        raise ValueError(
            "equilibrate needs an explicit window when the model carries "
            "no slow_rate metadata"
        )
    return 5.0 / model.slow_rate


def equilibrate(
    model: LindbladModel,
    rho0: np.ndarray,
    *,
    window: float | None = None,
    change_tol: float = 1e-8,
    max_windows: int | None = None,
    tol: float = 1e-9,
    method: str = "auto",
) -> EquilibrationReport:
    """Relax toward the stationary state in windows of fixed duration.

    The run stops once the trace-norm change across one window falls
    below ``change_tol``.  The default window is 5 / slow_rate, so the
    binding criterion is the window test rather than the horizon.

    Two window steppers are available.  ``rk`` integrates each window
    with :func:`evolve`.  ``implicit`` advances with backward-Euler
    macro-steps (one sparse LU factorization of I - dt L, then one
    triangular solve per window); the scheme is L-stable, damps the fast
    motional scales regardless of stiffness, and shares the exact fixed
    point L rho = 0 with the true dynamics, which is the quantity every
    caller extracts.  ``auto`` picks ``implicit`` for joint ion models
    (dim >= 32), where the rate separation makes explicit stepping take
    minutes, and ``rk`` otherwise.
    """
    dt = _slowest_window(model, window)
    rho = _check_state(rho0, model.dim)
    if method == "auto":
        method = "implicit" if model.dim >= 32 else "rk"
    if method not in ("rk", "implicit"):
        raise ValueError(f"unknown equilibration method {method!r}")

    if method == "rk":
        budget = 8 if max_windows is None else max_windows
        steps = 0
        max_drift = 0.0
        change = np.inf
        for w in range(budget):
            report = evolve(model, rho, dt, tol)
            steps += report.steps_taken
            max_drift = max(max_drift, report.max_trace_drift)
            change = trace_norm(report.final_state - rho)
            rho = report.final_state
            if change < change_tol:
                liou = liouvillian_matrix(model, sparse=model.dim > 24)
                residual = float(np.abs(liou.dot(rho.reshape(-1))).max())
                return EquilibrationReport(
                    final_state=rho,
                    method="rk",
                    windows=w + 1,
                    window_duration=dt,
                    last_change=change,
                    max_trace_drift=max_drift,
                    min_eigenvalue=float(np.linalg.eigvalsh(rho).min()),
                    rhs_residual=residual,
                    steps_taken=steps,
                )
        raise EquilibrationError(
            f"no equilibration after {budget} windows of {dt:.4g} "
            f"(last change {change:.3e}, tol {change_tol:.3e})"
        )

    budget = 60 if max_windows is None else max_windows
    liou = liouvillian_matrix(model, sparse=True)
    d2 = model.dim**2
    stepper = spla.splu((sp.identity(d2, format="csc", dtype=complex) - dt * liou).tocsc())
    y = rho.reshape(-1).copy()
    max_drift = 0.0
    change = np.inf
    for w in range(budget):
        y = stepper.solve(y)
        mat = y.reshape(model.dim, model.dim)
        mat = 0.5 * (mat + mat.conj().T)
        y = mat.reshape(-1)
        drift = abs(np.trace(mat) - 1.0)
        if drift > max_drift:
            max_drift = float(drift)
        change = trace_norm(mat - rho)
        rho = mat
        if change < change_tol:
            residual = float(np.abs(liou.dot(y)).max())
            return EquilibrationReport(
                final_state=rho,
                method="implicit",
                windows=w + 1,
                window_duration=dt,
                last_change=change,
                max_trace_drift=max_drift,
                min_eigenvalue=float(np.linalg.eigvalsh(rho).min()),
                rhs_residual=residual,
                steps_taken=w + 1,
            )
    raise EquilibrationError(
        f"no equilibration after {budget} implicit windows of {dt:.4g} "
        f"(last change {change:.3e}, tol {change_tol:.3e})"
    )
