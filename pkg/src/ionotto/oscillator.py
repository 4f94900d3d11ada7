"""Harmonic-oscillator working substance driven through a V-type ion.

Here the roles are swapped relative to the two-level engine: three
electronic levels in a V configuration decay fast and are adiabatically
eliminated, leaving a single motional mode in contact with an engineered
bath.  The mode couplings are s_alpha = (lambda/2)(Omega_{alpha,1} a +
Omega_{alpha,2} a^dag) for alpha in {ge, gf}, and the eliminated dynamics
carries them as collapse channels with prefactor 2/gamma_alpha.

Negative-temperature baths are excluded for the oscillator: matching
them needs the upward weight to dominate, which makes the quadratic
generator gain dominated with no normalizable stationary state on the
infinite ladder.

Unitary strokes for the oscillator would change the trap frequency
itself; no verified thermodynamic bookkeeping is provided for them, only
the reservoir synthesis and its full-versus-effective validation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .lindblad import LindbladModel
from .operators import SpaceLayout, destroy, ketbra
from .reservoirs import ADIABATIC_RATIO_FLOOR, BathKind, ReservoirSpec

__all__ = [
    "VSystemConfig",
    "ModeLaserSettings",
    "match_rabi_for_mode",
    "mode_collapse_channels",
    "effective_mode_model",
    "full_v_model",
    "quadratic_mode_moments",
]


@dataclass(frozen=True)
class VSystemConfig:
    """Ion parameters for the V-type three-level scheme.

    The electronic transition frequencies are metadata (the interaction
    picture removes them); the decay rates gamma_ge and gamma_gf set the
    fast scale that gets eliminated.  Motional decay is taken negligible
    against the electronic rates and is not modeled.
    """

    omega_ge: float
    omega_gf: float
    omega_m: float
    lamb: float
    gamma_ge: float
    gamma_gf: float
    rabi: tuple[float, float, float, float]
    fock_dim: int = 20

    def __post_init__(self) -> None:
        for name in ("omega_ge", "omega_gf", "omega_m", "lamb", "gamma_ge", "gamma_gf"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        rabi = tuple(float(r) for r in self.rabi)
        if len(rabi) != 4 or any(r < 0 for r in rabi):
            raise ValueError(f"need four nonnegative Rabi frequencies, got {self.rabi}")
        object.__setattr__(self, "rabi", rabi)
        if self.fock_dim < 2:
            raise ValueError(f"fock_dim must be at least 2, got {self.fock_dim}")
        ratio = self.regime_ratio
        if ratio < ADIABATIC_RATIO_FLOOR:
            warnings.warn(
                f"gamma / (lambda * max Omega) = {ratio:.1f} < "
                f"{ADIABATIC_RATIO_FLOOR:.0f}: adiabatic elimination quality degrades",
                RuntimeWarning,
                stacklevel=2,
            )

    @property
    def regime_ratio(self) -> float:
        ge_max = max(self.rabi[0], self.rabi[1])
        gf_max = max(self.rabi[2], self.rabi[3])
        ratios = []
        if ge_max > 0:
            ratios.append(self.gamma_ge / (self.lamb * ge_max))
        if gf_max > 0:
            ratios.append(self.gamma_gf / (self.lamb * gf_max))
        return min(ratios) if ratios else math.inf


@dataclass(frozen=True)
class ModeLaserSettings:
    """Sideband Rabi frequencies targeting one effective mode bath.

    Records the matching inputs (lamb, the electronic decay rates) so the
    coupling operators can be rebuilt; ``target_rate`` is the synthesized
    effective decay rate of the mode and ``regime_ratio`` the smallest
    gamma_alpha / (lambda * max Omega).
    """

    rabi_ge1: float
    rabi_ge2: float
    rabi_gf1: float
    rabi_gf2: float
    lamb: float
    gamma_ge: float
    gamma_gf: float
    target_rate: float
    regime_ratio: float

    @property
    def rabi(self) -> tuple[float, float, float, float]:
        return (self.rabi_ge1, self.rabi_ge2, self.rabi_gf1, self.rabi_gf2)


def match_rabi_for_mode(
    spec: ReservoirSpec, lamb: float, gamma_ge: float, gamma_gf: float
) -> ModeLaserSettings:
    """Rabi frequencies whose eliminated mode dynamics reproduce ``spec``.

    The ge pair carries the downward weight sqrt(Gamma (1 + n)) and the
    gf pair the upward weight sqrt(Gamma n), with Gamma = spec.gamma the
    target effective mode decay rate; squeezing spreads each weight over
    both sidebands with factors mu and nu.
    """
    if spec.kind not in (BathKind.THERMAL, BathKind.SQUEEZED_THERMAL):
        raise ValueError(
            f"unsupported bath kind for the oscillator: {spec.kind.value} "
            "(a gain-dominated mode bath has no normalizable steady state)"
        )
    if lamb <= 0:
        raise ValueError(f"Lamb-Dicke parameter must be > 0, got {lamb}")
    if gamma_ge <= 0 or gamma_gf <= 0:
        raise ValueError("electronic decay rates must be > 0")
    big_gamma = spec.gamma
    n = spec.n_occupation
    down = math.sqrt(big_gamma * (1.0 + n))
    up = math.sqrt(big_gamma * n)
    if spec.kind is BathKind.SQUEEZED_THERMAL:
        mu, nu = spec.mu, spec.nu
        ge1 = down * mu * math.sqrt(gamma_ge) / lamb
        ge2 = down * nu * math.sqrt(gamma_ge) / lamb
        gf1 = up * nu * math.sqrt(gamma_gf) / lamb
        gf2 = up * mu * math.sqrt(gamma_gf) / lamb
    else:
        ge1 = down * math.sqrt(gamma_ge) / lamb
        ge2 = 0.0
        gf1 = 0.0
        gf2 = up * math.sqrt(gamma_gf) / lamb
    ratios = []
    if max(ge1, ge2) > 0:
        ratios.append(gamma_ge / (lamb * max(ge1, ge2)))
    if max(gf1, gf2) > 0:
        ratios.append(gamma_gf / (lamb * max(gf1, gf2)))
    ratio = min(ratios) if ratios else math.inf
    if ratio < ADIABATIC_RATIO_FLOOR:
        warnings.warn(
            f"gamma / (lambda * max Omega) = {ratio:.1f} < "
            f"{ADIABATIC_RATIO_FLOOR:.0f}: adiabatic elimination quality degrades",
            RuntimeWarning,
            stacklevel=2,
        )
    return ModeLaserSettings(
        rabi_ge1=ge1,
        rabi_ge2=ge2,
        rabi_gf1=gf1,
        rabi_gf2=gf2,
        lamb=lamb,
        gamma_ge=gamma_ge,
        gamma_gf=gamma_gf,
        target_rate=big_gamma,
        regime_ratio=ratio,
    )


def _mode_couplings(
    settings: ModeLaserSettings, lamb: float, fock_dim: int
) -> tuple[np.ndarray, np.ndarray]:
    a = destroy(fock_dim)
    adag = a.conj().T
    s_ge = (lamb / 2.0) * (settings.rabi_ge1 * a + settings.rabi_ge2 * adag)
    s_gf = (lamb / 2.0) * (settings.rabi_gf1 * a + settings.rabi_gf2 * adag)
    return s_ge, s_gf


def mode_collapse_channels(
    settings: ModeLaserSettings, fock_dim: int
) -> tuple[tuple[float, np.ndarray], ...]:
    """Eliminated mode channels: prefactor 2/gamma_alpha per dissipator."""
    s_ge, s_gf = _mode_couplings(settings, settings.lamb, fock_dim)
    return ((4.0 / settings.gamma_ge, s_ge), (4.0 / settings.gamma_gf, s_gf))


def effective_mode_model(
    spec: ReservoirSpec, settings: ModeLaserSettings, fock_dim: int
) -> LindbladModel:
    """Mode-only model of the engineered bath, in the rotating frame."""
    if spec.gamma != settings.target_rate:
        raise ValueError(
            "settings were matched for a different target rate: "
            f"{settings.target_rate} vs spec gamma {spec.gamma}"
        )
    return LindbladModel(
        hamiltonian=np.zeros((fock_dim, fock_dim), dtype=complex),
        channels=mode_collapse_channels(settings, fock_dim),
        layout=SpaceLayout((fock_dim,)),
        slow_rate=settings.target_rate / 2.0,
    )


def full_v_model(
    config: VSystemConfig, settings: ModeLaserSettings, fock_dim: int
) -> LindbladModel:
    """Joint three-level and mode model before elimination.

    H = sum_alpha (s_alpha sigma_alpha^dag + s_alpha^dag sigma_alpha) on
    the layout (3, fock_dim) with basis (g, e, f); dissipation is the two
    electronic decays.  Motional decay is negligible on these timescales
    and omitted.
    """
    layout = SpaceLayout((3, fock_dim))
    sigma_ge = ketbra(3, 0, 1)
    sigma_gf = ketbra(3, 0, 2)
    s_ge, s_gf = _mode_couplings(settings, config.lamb, fock_dim)
    h = np.kron(sigma_ge.conj().T, s_ge) + np.kron(sigma_gf.conj().T, s_gf)
    h += h.conj().T
    return LindbladModel(
        hamiltonian=h,
        channels=(
            (config.gamma_ge, layout.embed(sigma_ge, 0)),
            (config.gamma_gf, layout.embed(sigma_gf, 0)),
        ),
        layout=layout,
        slow_rate=settings.target_rate / 2.0,
    )


def quadratic_mode_moments(
    channels: tuple[tuple[float, np.ndarray], ...],
) -> tuple[float, complex]:
    """Stationary (<a^dag a>, <a^2>) of a quadratic mode generator.

    For channels L_i = alpha_i a + beta_i a^dag with weights w_i the two
    moments obey a closed linear flow with decay A - B and sources B and
    -C, where A = sum w |alpha|^2, B = sum w |beta|^2, C = sum w alpha
    beta.  Solving the 2x2 linear system gives the stationary values,
    independently of any master-equation integration.  A generator with
    B >= A is gain dominated and has no normalizable stationary state.
    """
    a_coef = 0.0
    b_coef = 0.0
    c_coef = 0.0 + 0.0j
    for weight, op in channels:
        dim = op.shape[0]
        a_mat = destroy(dim)
        alpha = complex(op[0, 1])  # coefficient of a (since a[0,1] = 1)
        beta = complex(op[1, 0])  # coefficient of a^dag
        defect = float(np.abs(op - alpha * a_mat - beta * a_mat.conj().T).max())
        scale = max(1.0, float(np.abs(op).max()))
        if defect > 1e-12 * scale:
            raise ValueError(
                f"collapse operator is not linear in (a, a^dag); residual {defect:.3e}"
            )
        a_coef += weight * abs(alpha) ** 2
        b_coef += weight * abs(beta) ** 2
        c_coef += weight * alpha * beta
    decay = a_coef - b_coef
    if decay <= 0:
        raise ValueError(
            f"gain-dominated quadratic generator (A - B = {decay:.3e}); "
            "no normalizable stationary state"
        )
    flow = np.diag([-decay, -decay]).astype(complex)
    source = np.array([b_coef, -c_coef], dtype=complex)
    moments = np.linalg.solve(flow, -source)
    return float(moments[0].real), complex(moments[1])
