"""Engineered effective heat reservoirs for the electronic two-level system.

A target bath (thermal, apparent-negative-temperature, or squeezed
thermal) is translated into the four sideband Rabi frequencies that
realize it: matching the adiabatically eliminated dissipators of the
laser-driven ion against the dissipators of the target bath fixes
lambda * Omega / sqrt(kappa) for each beam.  Both descriptions are built
here so the identity can be checked elementwise, and analytic stationary
states are provided as oracles.

All channel operators are expressed in the frame rotating at the
electronic frequency, where they are time independent; the stationary
populations are unaffected by that frame choice.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lindblad import LindbladModel
from .operators import SpaceLayout, destroy, sigma_minus, sigma_plus

__all__ = [
    "BathKind",
    "Statistics",
    "ReservoirSpec",
    "EffectiveTheta",
    "LaserSettings",
    "theta_from_occupation",
    "spec_theta",
    "match_rabi_frequencies",
    "effective_collapse_channels",
    "slow_relaxation_rate",
    "electronic_bath_model",
    "channels_from_settings",
    "full_interaction_hamiltonian",
    "full_joint_model",
    "gibbs_state",
    "squeezed_gibbs_state",
    "ADIABATIC_RATIO_FLOOR",
]

# Below this ratio of kappa to the strongest sideband coupling the
# adiabatic elimination degrades visibly.
ADIABATIC_RATIO_FLOOR = 50.0


class BathKind(str, Enum):
    THERMAL = "thermal"
    NEGATIVE_TEMPERATURE = "negative_temperature"
    SQUEEZED_THERMAL = "squeezed_thermal"


class Statistics(str, Enum):
    BOSE_EINSTEIN = "bose_einstein"
    FERMI_DIRAC = "fermi_dirac"


@dataclass(frozen=True)
class ReservoirSpec:
    """Target effective bath for the electronic two-level system.

    ``gamma`` is the effective electronic decay rate (rad/us) the lasers
    must synthesize, ``n_occupation`` the bath occupation under the given
    statistics, and ``squeezing`` the squeezing parameter r (meaningful
    only for squeezed thermal baths).
    """

    kind: BathKind
    gamma: float
    n_occupation: float
    statistics: Statistics
    squeezing: float = 0.0

    def __post_init__(self) -> None:
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be positive and finite, got {self.gamma}")
        n = self.n_occupation
        if self.kind is BathKind.THERMAL:
            if self.statistics is not Statistics.BOSE_EINSTEIN:
                raise ValueError("thermal bath requires Bose-Einstein statistics")
            if n < 0:
                raise ValueError(f"thermal occupation must be >= 0, got {n}")
            if self.squeezing != 0.0:
                raise ValueError("thermal bath must have zero squeezing")
        elif self.kind is BathKind.NEGATIVE_TEMPERATURE:
            if self.statistics is not Statistics.FERMI_DIRAC:
                raise ValueError(
                    "negative-temperature bath requires Fermi-Dirac statistics"
                )
            if not (0.5 < n < 1.0):
                raise ValueError(
                    "negative-temperature bath requires occupation in (1/2, 1) "
                    f"(inverted populations), got {n}"
                )
            if self.squeezing != 0.0:
                raise ValueError("negative-temperature bath must have zero squeezing")
        elif self.kind is BathKind.SQUEEZED_THERMAL:
            if self.statistics is not Statistics.BOSE_EINSTEIN:
                raise ValueError(
                    "squeezed thermal bath requires Bose-Einstein statistics"
                )
            if n <= 0:
                raise ValueError(f"squeezed-bath occupation must be > 0, got {n}")
            if self.squeezing <= 0:
                raise ValueError(
                    f"squeezed thermal bath requires squeezing > 0, got {self.squeezing}"
                )
        else:  # pragma: no cover - enum is exhaustive
            raise ValueError(f"unknown bath kind {self.kind}")

    @classmethod
    def thermal(cls, gamma: float, n_occupation: float) -> "ReservoirSpec":
        return cls(BathKind.THERMAL, gamma, n_occupation, Statistics.BOSE_EINSTEIN)

    @classmethod
    def negative_temperature(cls, gamma: float, n_occupation: float) -> "ReservoirSpec":
        return cls(
            BathKind.NEGATIVE_TEMPERATURE, gamma, n_occupation, Statistics.FERMI_DIRAC
        )

    @classmethod
    def squeezed_thermal(
        cls, gamma: float, n_occupation: float, squeezing: float
    ) -> "ReservoirSpec":
        return cls(
            BathKind.SQUEEZED_THERMAL,
            gamma,
            n_occupation,
            Statistics.BOSE_EINSTEIN,
            squeezing,
        )

    @property
    def mu(self) -> float:
        return math.cosh(self.squeezing)

    @property
    def nu(self) -> float:
        return math.sinh(self.squeezing)

    @property
    def zeta(self) -> float:
        """Contraction of <sigma_z> caused by squeezing: 1 / (mu^2 + nu^2)."""
        return 1.0 / (self.mu**2 + self.nu**2)


@dataclass(frozen=True)
class EffectiveTheta:
    """Dimensionless half inverse temperature, theta = beta hbar omega_e / 2."""

    theta: float

    @property
    def sign(self) -> str:
        return "negative" if self.theta < 0 else "positive"


def theta_from_occupation(n_occupation: float, statistics: Statistics) -> EffectiveTheta:
    """Invert the occupation law of the given statistics for theta.

    Bose-Einstein: n = 1 / (e^{2 theta} - 1), so theta > 0 for any n > 0.
    Fermi-Dirac:   n = 1 / (e^{2 theta} + 1), so theta < 0 once n > 1/2,
    which is the apparent-negative-temperature regime.
    """
    n = float(n_occupation)
    if statistics is Statistics.BOSE_EINSTEIN:
        if n <= 0:
            raise ValueError(f"Bose-Einstein occupation must be > 0, got {n}")
        return EffectiveTheta(0.5 * math.log1p(1.0 / n))
    if statistics is Statistics.FERMI_DIRAC:
        if not (0.0 < n < 1.0):
            raise ValueError(f"Fermi-Dirac occupation must lie in (0, 1), got {n}")
        if abs(n - 0.5) < 1e-12:
            warnings.warn(
                "Fermi-Dirac occupation 1/2 gives theta = 0 (infinite temperature)",
                RuntimeWarning,
                stacklevel=2,
            )
        return EffectiveTheta(0.5 * math.log(1.0 / n - 1.0))
    raise ValueError(f"unknown statistics {statistics}")


def spec_theta(spec: ReservoirSpec) -> EffectiveTheta:
    """Theta of the bath described by ``spec`` (pre-squeezing for squeezed)."""
    return theta_from_occupation(spec.n_occupation, spec.statistics)


@dataclass(frozen=True)
class LaserSettings:
    """Four sideband Rabi frequencies realizing one effective bath.

    Beams (alpha, 1) sit on the lower sideband and (alpha, 2) on the
    upper sideband of the electronic transition; together with the fixed
    initial phase -pi/2 these choices are already folded into the
    rotating-frame coupling operators, so they are recorded here only as
    metadata.  ``regime_ratio`` is kappa / (lambda * max Omega), the
    figure of merit of the adiabatic elimination.
    """

    rabi_x1: float
    rabi_x2: float
    rabi_y1: float
    rabi_y2: float
    regime_ratio: float
    phase: float = -math.pi / 2
    sideband_offsets: tuple[float, float] = (-1.0, +1.0)

    @property
    def max_rabi(self) -> float:
        return max(self.rabi_x1, self.rabi_x2, self.rabi_y1, self.rabi_y2)


def _occupation_weights(spec: ReservoirSpec) -> tuple[float, float]:
    """Downward and upward weights gamma(1 +/- n) and gamma n."""
    n = spec.n_occupation
    if spec.statistics is Statistics.FERMI_DIRAC:
        down = spec.gamma * (1.0 - n)
        if 1.0 - n < 0:
            raise ValueError(f"Fermi-Dirac occupation {n} >= 1 gives a negative rate")
    else:
        down = spec.gamma * (1.0 + n)
    return down, spec.gamma * n


def match_rabi_frequencies(
    spec: ReservoirSpec, lamb: float, kappa: float
) -> LaserSettings:
    """Rabi frequencies whose eliminated dynamics reproduce ``spec``.

    The matching fixes lambda * Omega / sqrt(kappa) per beam: the x pair
    carries the downward weight sqrt(gamma (1 +/- n)) (times mu, nu when
    squeezed) and the y pair the upward weight sqrt(gamma n).  Emits a
    RuntimeWarning when kappa / (lambda * max Omega) drops below
    ``ADIABATIC_RATIO_FLOOR``, where the motional modes are no longer
    pinned next to their ground state.
    """
    if lamb <= 0:
        raise ValueError(f"Lamb-Dicke parameter must be > 0, got {lamb}")
    if kappa <= 0:
        raise ValueError(f"motional decay rate must be > 0, got {kappa}")
    down, up = _occupation_weights(spec)
    root_k = math.sqrt(kappa)
    if spec.kind is BathKind.SQUEEZED_THERMAL:
        mu, nu = spec.mu, spec.nu
        x1 = math.sqrt(down) * mu * root_k / lamb
        x2 = math.sqrt(down) * nu * root_k / lamb
        y1 = math.sqrt(up) * nu * root_k / lamb
        y2 = math.sqrt(up) * mu * root_k / lamb
    else:
        x1 = math.sqrt(down) * root_k / lamb
        x2 = 0.0
        y1 = 0.0
        y2 = math.sqrt(up) * root_k / lamb
    max_rabi = max(x1, x2, y1, y2)
    ratio = math.inf if max_rabi == 0 else kappa / (lamb * max_rabi)
    if ratio < ADIABATIC_RATIO_FLOOR:
        warnings.warn(
            f"kappa / (lambda * max Omega) = {ratio:.1f} < "
            f"{ADIABATIC_RATIO_FLOOR:.0f}: adiabatic elimination quality degrades",
            RuntimeWarning,
            stacklevel=2,
        )
    return LaserSettings(x1, x2, y1, y2, regime_ratio=ratio)


def effective_collapse_channels(
    spec: ReservoirSpec,
) -> tuple[tuple[float, np.ndarray], ...]:
    """Rotating-frame collapse channels of the target bath.

    Thermal and negative-temperature baths decompose into a pure lowering
    channel with rate gamma (1 +/- n) and a pure raising channel with
    rate gamma n.  The squeezed bath mixes lowering and raising inside
    each operator, so the sqrt(rate) factors are folded into the operator
    norm and both channels carry unit rate.
    """
    down, up = _occupation_weights(spec)
    sm, sp_ = sigma_minus(), sigma_plus()
    if spec.kind is BathKind.SQUEEZED_THERMAL:
        mu, nu = spec.mu, spec.nu
        r1 = math.sqrt(down) * (mu * sm + nu * sp_)
        r2 = math.sqrt(up) * (nu * sm + mu * sp_)
        return ((1.0, r1), (1.0, r2))
    return ((down, sm), (up, sp_))


def slow_relaxation_rate(spec: ReservoirSpec) -> float:
    """Slowest relaxation rate of the effective bath dynamics.

    Populations flip at T_down + T_up and coherences decay at half that,
    so the coherence rate bounds every relaxation time.  Computed from
    the channel matrix elements rather than per-kind formulas.
    """
    t_down = 0.0
    t_up = 0.0
    for rate, op in effective_collapse_channels(spec):
        t_down += rate * abs(op[0, 1]) ** 2
        t_up += rate * abs(op[1, 0]) ** 2
    return 0.5 * (t_down + t_up)


def electronic_bath_model(spec: ReservoirSpec) -> LindbladModel:
    """Two-level model of the bare bath contact, in the rotating frame."""
    return LindbladModel(
        hamiltonian=np.zeros((2, 2), dtype=complex),
        channels=effective_collapse_channels(spec),
        layout=SpaceLayout((2,)),
        slow_rate=slow_relaxation_rate(spec),
    )


def _coupling_operators(
    settings: LaserSettings, lamb: float
) -> tuple[np.ndarray, np.ndarray]:
    """Rotating-frame couplings s_alpha = (lambda/2)(Omega_1 sm + Omega_2 sp)."""
    sm, sp_ = sigma_minus(), sigma_plus()
    s_x = (lamb / 2.0) * (settings.rabi_x1 * sm + settings.rabi_x2 * sp_)
    s_y = (lamb / 2.0) * (settings.rabi_y1 * sm + settings.rabi_y2 * sp_)
    return s_x, s_y


def channels_from_settings(
    settings: LaserSettings, lamb: float, kappa: float
) -> tuple[tuple[float, np.ndarray], ...]:
    """Eliminated dissipator channels produced by the laser drive.

    Adiabatic elimination of the damped motional modes leaves each
    coupling operator as a collapse channel with prefactor 2/kappa on its
    double-sided dissipator, i.e. rate 4/kappa in the package convention.
    When the settings come from :func:`match_rabi_frequencies` these
    channels generate the same Liouvillian as
    :func:`effective_collapse_channels`, elementwise.
    """
    s_x, s_y = _coupling_operators(settings, lamb)
    return ((4.0 / kappa, s_x), (4.0 / kappa, s_y))


def full_interaction_hamiltonian(
    settings: LaserSettings, lamb: float, n_max: int
) -> np.ndarray:
    """Joint electron-motion coupling in the interaction picture.

    H = sum_alpha (s_alpha a_alpha^dag + s_alpha^dag a_alpha) on the
    layout (2, n_max, n_max); the optical and motional carrier phases are
    absorbed by the frame, so the matrix is time independent and
    Hermitian by construction.
    """
    if n_max < 2:
        raise ValueError(f"Fock truncation must be at least 2, got {n_max}")
    layout = SpaceLayout((2, n_max, n_max))
    a = destroy(n_max)
    s_x, s_y = _coupling_operators(settings, lamb)
    ident = np.eye(n_max, dtype=complex)
    h = np.kron(np.kron(s_x, a.conj().T), ident)
    h += np.kron(np.kron(s_y, ident), a.conj().T)
    h += h.conj().T
    assert h.shape == (layout.dim, layout.dim)
    return h


def full_joint_model(
    spec: ReservoirSpec,
    lamb: float,
    kappa: float,
    n_max: int,
    settings: LaserSettings | None = None,
) -> LindbladModel:
    """Joint model: laser coupling plus motional decay on both modes."""
    if settings is None:
        settings = match_rabi_frequencies(spec, lamb, kappa)
    layout = SpaceLayout((2, n_max, n_max))
    a = destroy(n_max)
    return LindbladModel(
        hamiltonian=full_interaction_hamiltonian(settings, lamb, n_max),
        channels=((kappa, layout.embed(a, 1)), (kappa, layout.embed(a, 2))),
        layout=layout,
        slow_rate=slow_relaxation_rate(spec),
    )


def gibbs_state(theta: EffectiveTheta | float) -> np.ndarray:
    """Two-level Gibbs state diag(e^theta, e^-theta) / (2 cosh theta).

    Written with one-sided exponentials so arbitrarily large theta stays
    finite.
    """
    th = theta.theta if isinstance(theta, EffectiveTheta) else float(theta)
    weight = math.exp(-2.0 * abs(th))  # decaying exponential only
    major = 1.0 / (1.0 + weight)
    minor = weight / (1.0 + weight)
    if th >= 0:
        return np.diag([major, minor]).astype(complex)
    return np.diag([minor, major]).astype(complex)


def squeezed_gibbs_state(theta: EffectiveTheta | float, squeezing: float) -> np.ndarray:
    """Stationary state of the squeezed bath contact.

    Squeezing mixes the Gibbs populations with weights mu^2 and nu^2,
    which contracts <sigma_z> by zeta = 1 / (mu^2 + nu^2) while keeping
    the state diagonal.
    """
    if squeezing < 0:
        raise ValueError(f"squeezing must be >= 0, got {squeezing}")
    gibbs = gibbs_state(theta)
    mu2 = math.cosh(squeezing) ** 2
    nu2 = math.sinh(squeezing) ** 2
    p_g, p_e = gibbs[0, 0].real, gibbs[1, 1].real
    norm = mu2 + nu2
    return np.diag(
        [(mu2 * p_g + nu2 * p_e) / norm, (nu2 * p_g + mu2 * p_e) / norm]
    ).astype(complex)
