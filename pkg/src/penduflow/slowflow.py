"""Averaged envelope dynamics of the coupled pendulums.

After averaging over the fast carrier oscillation, the state reduces to the
total excitation E, the energy partition P and the phase shift Delta.  This
module provides the averaged right-hand side, the separately integrable fast
carrier rate, frozen-E streamline fields with stationary-point detection, and
the second-order linear beat equations obtained by eliminating the phase near
the antiphase and inphase modes.  The modified Bessel functions I0 and I1
that the magnetic terms average into are implemented here as well.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .params import PhysicalParams, UnitlessParams
from .plant import CurrentPair

#: partition singularity guard: |P| = 1 - EPS_P flags localization
EPS_P = 1e-9
#: excitation floor below which the envelope variables are meaningless
EPS_E = 1e-10
#: series/asymptotic split point for the modified Bessel functions
BESSEL_SPLIT = 15.0

_SQ_FLOOR = math.sqrt(2.0 * EPS_P - EPS_P * EPS_P)


@dataclass(frozen=True)
class SlowState:
    """Averaged state: excitation E (rad²/s²), partition P, phase shift Delta (rad)."""

    E: float
    P: float
    Delta: float

    def __post_init__(self):
        if self.E < 0.0:
            raise ValueError("E must be nonnegative")
        if abs(self.P) > 1.0:
            raise ValueError("P must lie in [-1, 1]")


@dataclass(frozen=True)
class LambdaPair:
    """Normalized per-pendulum energies lambda_i = E(1±P)/Omega² (rad²)."""

    lambda1: float
    lambda2: float


def lambdas(s: SlowState, u: UnitlessParams) -> LambdaPair:
    om2 = u.Omega * u.Omega
    return LambdaPair(s.E * (1.0 + s.P) / om2, s.E * (1.0 - s.P) / om2)


def _i0e_series(z: float) -> float:
    # e^-z * sum (z/2)^{2k} / (k!)^2
    term = 1.0
    total = 1.0
    zq = 0.25 * z * z
    k = 1
    while True:
        term *= zq / (k * k)
        total += term
        if term < 1e-17 * total:
            break
        k += 1
    return total * math.exp(-z)

def _i1e_series(z: float) -> float:
    term = 0.5 * z
    total = term
    zq = 0.25 * z * z
    k = 1
    while True:
        term *= zq / (k * (k + 1))
        total += term
        if term < 1e-17 * total:
            break
        k += 1
    return total * math.exp(-z)

def _ine_asymptotic(n: int, z: float) -> float:
    # scaled large-argument expansion: e^-z I_n(z) ~ S / sqrt(2 pi z),
    # S = sum_k (-1)^k a_k / z^k with a_k = prod_j (4n^2 - (2j-1)^2)/(k 8)
    mu = 4.0 * n * n
    term = 1.0
    total = 1.0
    for k in range(1, 200):
        new_term = term * (-(mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * z))
        if abs(new_term) >= abs(term):
            break  # truncate at the smallest term of the divergent tail
        total += new_term
        term = new_term
        if abs(new_term) < 1e-17 * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * z)


def bessel_i_scaled(n: int, z: float) -> float:
    """Exponentially scaled modified Bessel function e^-z * I_n(z), n in {0, 1}."""
    if n not in (0, 1):
        raise ValueError("only orders 0 and 1 are supported")
    if z < 0.0:
        raise ValueError("argument must be nonnegative")
    if z <= BESSEL_SPLIT:
        return _i0e_series(z) if n == 0 else _i1e_series(z)
    return _ine_asymptotic(n, z)


def bessel_i(n: int, z: float) -> float:
    """Modified Bessel function of the first kind I_n(z), n in {0, 1}, z >= 0."""
    return bessel_i_scaled(n, z) * math.exp(z)


def magnet_average_gain(lmbda: float, b: float) -> float:
    """Averaged magnetic phase gain e^-z * [I0(z) - I1(z)] with z = lambda/(2b)."""
    z = lmbda / (2.0 * b)
    return bessel_i_scaled(0, z) - bessel_i_scaled(1, z)


def slow_rhs(
    s: SlowState,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
    friction_prefactor: str = "printed",
) -> tuple[float, float, float]:
    """Time derivatives (dE/dt, dP/dt, dDelta/dt) of the averaged system.

    dE/dt = -2*alpha*Omega*E*(1 - sqrt(1-P^2)*cos(Delta))
            - (4/pi)*Omega^2*(zeta1*sqrt(l1) + zeta2*sqrt(l2))
    dP/dt = Omega*sqrt(1-P^2)*(beta*sin(Delta) - 2*alpha*P*cos(Delta))
            - (4/pi)*(Omega^2/E^2)*(zeta1*l2*sqrt(l1) - zeta2*l1*sqrt(l2))
    dDelta/dt = E*P/(8*Omega)
                - Omega/sqrt(1-P^2)*(beta*P*cos(Delta) + 2*alpha*sin(Delta))
                + a/(b*J*Omega)*(i1*G(l1) - i2*G(l2))

    with l_i = E(1±P)/Omega^2 and G(l) = e^(-l/2b)[I0(l/2b) - I1(l/2b)].

    friction_prefactor selects the dP/dt dry-friction prefactor: "printed"
    uses Omega^2/E^2 as transcribed; "energy-consistent" uses Omega^4/E^2,
    which is what differentiating P = (e11-e22)/E against the dE/dt friction
    terms yields.  The default stays "printed"; the full-vs-averaged
    comparison harness is the diagnostic for the difference.

    Near |P| = 1 the sqrt(1-P^2) divisor is floored at its value for
    |P| = 1 - EPS_P; integration should stop or reflect there (localization).
    """
    om = u.Omega
    om2 = om * om
    e_tot = s.E
    p_val = s.P
    one_m_p2 = max(1.0 - p_val * p_val, 0.0)
    sq = math.sqrt(one_m_p2)
    sin_d = math.sin(s.Delta)
    cos_d = math.cos(s.Delta)
    l1 = max(e_tot * (1.0 + p_val), 0.0) / om2
    l2 = max(e_tot * (1.0 - p_val), 0.0) / om2
    sl1 = math.sqrt(l1)
    sl2 = math.sqrt(l2)

    de = (
        -2.0 * u.alpha * om * e_tot * (1.0 - sq * cos_d)
        - (4.0 / math.pi) * om2 * (u.zeta1 * sl1 + u.zeta2 * sl2)
    )

    dp = om * sq * (u.beta * sin_d - 2.0 * u.alpha * p_val * cos_d)
    if e_tot > EPS_E:
        if friction_prefactor == "printed":
            pref = om2 / (e_tot * e_tot)
        elif friction_prefactor == "energy-consistent":
            pref = om2 * om2 / (e_tot * e_tot)
        else:
            raise ValueError(f"unknown friction_prefactor: {friction_prefactor!r}")
        dp -= (4.0 / math.pi) * pref * (u.zeta1 * l2 * sl1 - u.zeta2 * l1 * sl2)

    gain = p.a / (p.b * p.J * om)
    ddelta = (
        e_tot * p_val / (8.0 * om)
        - (om / max(sq, _SQ_FLOOR)) * (u.beta * p_val * cos_d + 2.0 * u.alpha * sin_d)
        + gain * (cur.i1 * magnet_average_gain(l1, p.b) - cur.i2 * magnet_average_gain(l2, p.b))
    )
    return de, dp, ddelta


def fast_phase_rate(
    s: SlowState, cur: CurrentPair, u: UnitlessParams, p: PhysicalParams
) -> float:
    """Instantaneous carrier frequency d(delta)/dt (rad/s).

    rate = Omega*[1 + beta/2 - l1/16
                  - (1/2)*sqrt(l2/l1)*(beta*cos(Delta) - 2*alpha*sin(Delta))]
           - a/(b*J*Omega)*i1*G(l1)

    Returns NaN when l1 vanishes (pendulum 1 at rest: rate undefined).
    """
    lam = lambdas(s, u)
    if lam.lambda1 <= 0.0:
        return math.nan
    ratio = math.sqrt(lam.lambda2 / lam.lambda1)
    rate = u.Omega * (
        1.0
        + 0.5 * u.beta
        - lam.lambda1 / 16.0
        - 0.5 * ratio * (u.beta * math.cos(s.Delta) - 2.0 * u.alpha * math.sin(s.Delta))
    )
    rate -= (p.a / (p.b * p.J * u.Omega)) * cur.i1 * magnet_average_gain(lam.lambda1, p.b)
    return rate


def streamline_field(
    e_frozen: float,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
    n_delta: int = 41,
    n_p: int = 41,
    p_margin: float = 0.02,
    friction_prefactor: str = "printed",
) -> dict[str, np.ndarray]:
    """Sample (dDelta/dt, dP/dt) on a (Delta, P) grid with E held fixed.

    Returns a dict with 1-D axes `delta`, `p` and 2-D fields `ddelta`, `dp`
    indexed [i_delta, i_p].
    """
    d_axis = np.linspace(-math.pi, math.pi, n_delta)
    p_axis = np.linspace(-1.0 + p_margin, 1.0 - p_margin, n_p)
    dd = np.empty((n_delta, n_p))
    dp = np.empty((n_delta, n_p))
    for i, d in enumerate(d_axis):
        for j, pv in enumerate(p_axis):
            _, dpij, ddij = slow_rhs(
                SlowState(e_frozen, pv, d), cur, u, p, friction_prefactor
            )
            dd[i, j] = ddij
            dp[i, j] = dpij
    return {"delta": d_axis, "p": p_axis, "ddelta": dd, "dp": dp}


class PointKind(enum.Enum):
    STABLE_NODE = "stable node"
    STABLE_SPIRAL = "stable spiral"
    UNSTABLE_NODE = "unstable node"
    UNSTABLE_SPIRAL = "unstable spiral"
    SADDLE = "saddle"
    CENTER = "center"


@dataclass(frozen=True)
class StationaryPoint:
    """Stationary point of the frozen-E (Delta, P) field."""

    Delta: float
    P: float
    eig_real: tuple[float, float]
    eig_imag: tuple[float, float]
    kind: PointKind


def _frozen_field(delta: float, pv: float, e_frozen, cur, u, p, friction_prefactor):
    pv = min(max(pv, -1.0), 1.0)
    _, dp, dd = slow_rhs(SlowState(e_frozen, pv, delta), cur, u, p, friction_prefactor)
    return np.array([dd, dp])


def find_stationary_points(
    e_frozen: float,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
    n_seeds: int = 13,
    max_iter: int = 50,
    fd_step: float = 1e-6,
    tol: float = 1e-11,
    friction_prefactor: str = "printed",
) -> list[StationaryPoint]:
    """Locate and classify stationary points of the frozen-E field.

    Damped Newton iteration from a coarse seed grid; Jacobians by central
    finite differences.  Non-convergent seeds are discarded; duplicates are
    merged.  Points are reported with Delta wrapped to [-pi, pi].
    """
    def field(x):
        return _frozen_field(x[0], x[1], e_frozen, cur, u, p, friction_prefactor)

    def jacobian(x):
        jac = np.empty((2, 2))
        for k in range(2):
            ek = np.zeros(2)
            ek[k] = fd_step
            jac[:, k] = (field(x + ek) - field(x - ek)) / (2.0 * fd_step)
        return jac

    found: list[np.ndarray] = []
    d_seeds = np.linspace(-math.pi, math.pi, n_seeds)
    p_seeds = np.linspace(-0.9, 0.9, n_seeds)
    for d0 in d_seeds:
        for p0 in p_seeds:
            x = np.array([d0, p0])
            converged = False
            for _ in range(max_iter):
                f = field(x)
                norm = np.hypot(f[0], f[1])
                if norm < tol:
                    converged = True
                    break
                try:
                    step = np.linalg.solve(jacobian(x), -f)
                except np.linalg.LinAlgError:
                    break
                scale = 1.0
                for _ in range(25):
                    x_new = x + scale * step
                    if abs(x_new[1]) < 1.0 - EPS_P:
                        f_new = field(x_new)
                        if np.hypot(f_new[0], f_new[1]) < norm:
                            break
                    scale *= 0.5
                else:
                    break
                x = x + scale * step
            if not converged:
                continue
            # wrap Delta into [-pi, pi] and deduplicate
            x[0] = math.atan2(math.sin(x[0]), math.cos(x[0]))
            if x[0] == -math.pi:
                x[0] = math.pi
            dup = False
            for prev in found:
                dd = abs(math.atan2(math.sin(x[0] - prev[0]), math.cos(x[0] - prev[0])))
                if dd < 1e-6 and abs(x[1] - prev[1]) < 1e-6:
                    dup = True
                    break
            if not dup:
                found.append(x.copy())

    points = []
    for x in sorted(found, key=lambda v: (round(v[0], 8), round(v[1], 8))):
        eigs = np.linalg.eigvals(jacobian(x))
        re = np.real(eigs)
        im = np.imag(eigs)
        spiral = np.any(np.abs(im) > 1e-9)
        if re[0] * re[1] < 0.0:
            kind = PointKind.SADDLE
        elif np.all(np.abs(re) < 1e-9) and spiral:
            kind = PointKind.CENTER
        elif np.all(re < 0.0):
            kind = PointKind.STABLE_SPIRAL if spiral else PointKind.STABLE_NODE
        else:
            kind = PointKind.UNSTABLE_SPIRAL if spiral else PointKind.UNSTABLE_NODE
        points.append(
            StationaryPoint(
                Delta=float(x[0]),
                P=float(x[1]),
                eig_real=(float(re[0]), float(re[1])),
                eig_imag=(float(im[0]), float(im[1])),
                kind=kind,
            )
        )
    return points


class BeatMode(enum.Enum):
    ANTIPHASE = "antiphase"
    INPHASE = "inphase"


@dataclass(frozen=True)
class LinearBeatCoeffs:
    """Coefficients of P'' + damping*P' + stiffness*P = forcing."""

    damping: float
    stiffness: float
    forcing: float
    mode: BeatMode


def linearized_coeffs(
    mode: BeatMode,
    E: float,
    cur: CurrentPair,
    u: UnitlessParams,
    p: PhysicalParams,
) -> LinearBeatCoeffs:
    """Linear beat-equation coefficients near the antiphase or inphase mode.

    Both modes share the Bessel-weighted stiffness contribution of the summed
    currents with argument z = E/(2*b*Omega^2); the friction and current
    asymmetries enter the forcing with mode-dependent signs.  Eliminating the
    phase near Delta = pi gives a negative effective damping (beat growth);
    near Delta = 0 the damping is positive while the excitation is large.
    """
    if E <= 0.0:
        raise ValueError("E must be positive")
    om = u.Omega
    om2 = om * om
    z = E / (2.0 * p.b * om2)
    i0e = bessel_i_scaled(0, z)
    i1e = bessel_i_scaled(1, z)
    fric = (u.zeta1 + u.zeta2) / (math.pi * math.sqrt(E))
    stiff_cur = (
        p.a * u.beta / (p.J * p.b * p.b * om2)
        * ((p.b * om2 + E) * i1e - E * i0e)
        * (cur.i1 + cur.i2)
    )
    force_cur = p.a * u.beta / (p.J * p.b) * (i0e - i1e) * (cur.i1 - cur.i2)
    force_fric = 8.0 * u.alpha * om2 * (u.zeta1 - u.zeta2) / (math.pi * math.sqrt(E))
    if mode is BeatMode.ANTIPHASE:
        damping = -2.0 * om * (2.0 * u.alpha + fric)
        stiffness = (
            om2 * (u.beta * u.beta + 4.0 * u.alpha * (u.alpha + fric))
            + u.beta * E / 8.0
            + stiff_cur
        )
        forcing = force_fric - force_cur
    else:
        damping = 2.0 * om * (2.0 * u.alpha - fric)
        stiffness = (
            om2 * (u.beta * u.beta + 4.0 * u.alpha * (u.alpha - fric))
            - u.beta * E / 8.0
            + stiff_cur
        )
        forcing = -force_fric + force_cur
    return LinearBeatCoeffs(damping=damping, stiffness=stiffness, forcing=forcing, mode=mode)
