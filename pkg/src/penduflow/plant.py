"""Full nonsmooth plant: equations of motion, effective potential, spectra.

The two pendulums obey

    dphi_j/dt = v_j
    dv_j/dt   = -Omega^2*phi_j - f_j

where f_j collects dry friction 2*Omega*zeta_j*sgn(v_j), coupling damping
2*Omega*alpha*(v_j - v_other), elastic coupling plus the cubic gravity
correction Omega^2*[beta*(phi_j - phi_other) - phi_j^3/6], and the magnetic
drive -(i_j/J)*dU/dphi_j.  Positive coil current repels the magnet.

The quadratic potential / eigenfrequency analysis drops the cubic term; it is
a linearized diagnostic of how the currents reshape the equilibrium.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernel
from .params import PhysicalParams, UnitlessParams

#: default saturation limit for coil currents (A)
DEFAULT_SAT_LIMIT = 1.0
#: velocity tolerance for entering the stuck state (rad/s)
DEFAULT_V_TOL = 1e-6
#: smoothing width of the tanh(v/eps) friction cross-check mode (rad/s)
DEFAULT_SGN_EPS = 1e-5
#: squared-eigenfrequency tolerance for boundary classification
DEFAULT_TOL_CLASS = 1e-12


@dataclass(frozen=True)
class MechState:
    """Full plant state: angles (rad), angular velocities (rad/s), stick flags."""

    phi1: float
    v1: float
    phi2: float
    v2: float
    stuck1: bool = False
    stuck2: bool = False

    def __post_init__(self):
        if self.stuck1 and self.v1 != 0.0:
            raise ValueError("stuck1 requires v1 == 0")
        if self.stuck2 and self.v2 != 0.0:
            raise ValueError("stuck2 requires v2 == 0")

    def as_array(self) -> np.ndarray:
        return np.array([self.phi1, self.v1, self.phi2, self.v2])


@dataclass(frozen=True)
class CurrentPair:
    """Coil currents (A); positive repels, negative attracts."""

    i1: float
    i2: float

    def __post_init__(self):
        if not (math.isfinite(self.i1) and math.isfinite(self.i2)):
            raise ValueError("currents must be finite")

    def saturated(self, limit: float = DEFAULT_SAT_LIMIT) -> "CurrentPair":
        return CurrentPair(
            min(max(self.i1, -limit), limit),
            min(max(self.i2, -limit), limit),
        )


class StabilityKind(enum.Enum):
    MINIMUM = "minimum"
    SADDLE = "saddle"
    MAXIMUM = "maximum"


@dataclass(frozen=True)
class EquilibriumClass:
    """Type of the origin equilibrium under frozen currents."""

    kind: StabilityKind
    omega1_sq: float
    omega2_sq: float
    boundary: bool = False


def magnetic_potential(phi: float, p: PhysicalParams) -> float:
    """Magnet-coil interaction energy per unit current, a*(1 - exp(-phi^2/b))."""
    return p.a * (1.0 - math.exp(-phi * phi / p.b))


def magnetic_torque(phi: float, p: PhysicalParams) -> float:
    """Torque per unit current, (2a/b)*exp(-phi^2/b)*phi (d/dphi of the potential)."""
    return _kernel.magnet_torque(phi, p.a, p.b)


def plant_rhs(
    s: MechState,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
    smooth_sgn: bool = False,
    sgn_eps: float = DEFAULT_SGN_EPS,
) -> tuple[float, float, float, float]:
    """State derivative (dphi1, dv1, dphi2, dv2) of the full plant.

    With smooth_sgn the discontinuous sgn(v) is replaced by tanh(v/sgn_eps)
    and stick flags are ignored (cross-check mode).
    """
    mode = _kernel.SGN_SMOOTH if smooth_sgn else _kernel.SGN_EXACT
    return _kernel.rhs_full(
        s.phi1, s.v1, s.phi2, s.v2,
        False if smooth_sgn else s.stuck1,
        False if smooth_sgn else s.stuck2,
        cur.i1, cur.i2,
        u.Omega, u.beta, u.zeta1, u.zeta2, u.alpha, p.a, p.b, p.J,
        mode, sgn_eps,
    )


def stick_slip_update(
    s: MechState,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
    v_tol: float = DEFAULT_V_TOL,
) -> MechState:
    """Apply the stick/release transition rule to a state after a step.

    Pendulum j sticks when |v_j| < v_tol and the non-friction torque per
    inertia stays within the static threshold 2*Omega*zeta_j; it releases when
    that torque exceeds the threshold.  Stuck velocities are pinned to zero.
    """
    v1, v2, stuck1, stuck2 = _kernel.stick_update(
        s.phi1, s.v1, s.phi2, s.v2, s.stuck1, s.stuck2, cur.i1, cur.i2,
        u.Omega, u.beta, u.zeta1, u.zeta2, u.alpha, p.a, p.b, p.J, v_tol,
    )
    return replace(s, v1=v1, v2=v2, stuck1=bool(stuck1), stuck2=bool(stuck2))


def quadratic_potential(
    phi1: float,
    phi2: float,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
) -> float:
    """Quadratic effective potential per unit inertia (gravity + coupling + magnets)."""
    om2 = u.Omega * u.Omega
    d = phi1 - phi2
    grav = 0.5 * om2 * (phi1 * phi1 + u.beta * d * d + phi2 * phi2)
    mag = (p.a / (p.b * p.J)) * (cur.i1 * phi1 * phi1 + cur.i2 * phi2 * phi2)
    return grav - mag


def eigenfrequencies(
    cur: CurrentPair, u: UnitlessParams, p: PhysicalParams
) -> tuple[float, float]:
    """Squared eigenfrequencies of the linearized plant under frozen currents.

    omega^2_{1,2} = (1+beta)*Omega^2 - (a/(bJ))*(i1+i2)
                    -/+ sqrt(beta^2*Omega^4 + (a/(bJ))^2*(i1-i2)^2)

    Either value may be negative (unstable direction).
    """
    om2 = u.Omega * u.Omega
    g = p.a / (p.b * p.J)
    mean = (1.0 + u.beta) * om2 - g * (cur.i1 + cur.i2)
    split = math.sqrt((u.beta * om2) ** 2 + (g * (cur.i1 - cur.i2)) ** 2)
    return mean - split, mean + split


def classify_equilibrium(
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
    tol_class: float = DEFAULT_TOL_CLASS,
) -> EquilibriumClass:
    """Classify the origin by the signs of the squared eigenfrequencies.

    Values within tol_class of zero count as the adjacent lower-stability
    side and set the boundary flag.
    """
    w1, w2 = eigenfrequencies(cur, u, p)
    n_pos = (w1 > tol_class) + (w2 > tol_class)
    if n_pos == 2:
        kind = StabilityKind.MINIMUM
    elif n_pos == 1:
        kind = StabilityKind.SADDLE
    else:
        kind = StabilityKind.MAXIMUM
    boundary = abs(w1) <= tol_class or abs(w2) <= tol_class
    return EquilibriumClass(kind=kind, omega1_sq=w1, omega2_sq=w2, boundary=boundary)


def stability_map(
    u: UnitlessParams,
    p: PhysicalParams,
    grid: int = 41,
    current_range: float = 0.3,
    tol_class: float = DEFAULT_TOL_CLASS,
) -> list[tuple[float, float, float, float, str]]:
    """Classify the equilibrium over a square current grid.

    Returns rows (i1, i2, omega1_sq, omega2_sq, class_name).
    """
    axis = np.linspace(-current_range, current_range, grid)
    rows = []
    for i1 in axis:
        for i2 in axis:
            c = classify_equilibrium(CurrentPair(i1, i2), u, p, tol_class)
            rows.append((float(i1), float(i2), c.omega1_sq, c.omega2_sq, c.kind.value))
    return rows
