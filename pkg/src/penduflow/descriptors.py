"""Energy-exchange descriptive coordinates.

The bilinear energy matrix E_kj = (v_k*v_j + Omega^2*phi_k*phi_j)/2 condenses
the four-dimensional mechanical state into the total excitation E, the
partition P in [-1, 1], the coherency index Q = cos(Delta), and the phase
shift Delta between the pendulums.  The inverse map reconstructs a mechanical
state from (E, P, Delta) plus a fast carrier phase delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import UnitlessParams
from .plant import MechState

#: below this total excitation (rad^2/s^2) the descriptors are meaningless
EPS_E = 1e-10


@dataclass(frozen=True)
class EnergyMatrix:
    """Symmetric energy-like bilinear forms per unit inertia (e21 = e12)."""

    e11: float
    e22: float
    e12: float


@dataclass(frozen=True)
class Descriptors:
    """Energy-exchange coordinates of one mechanical state.

    defined is False when the total excitation falls below EPS_E; the other
    fields are NaN in that case.  clamp_excess records how far Q had to be
    clamped into [-1, 1] before taking the arc cosine.
    """

    E: float
    P: float
    Q: float
    Delta: float
    defined: bool = True
    clamp_excess: float = 0.0


def energy_matrix(s: MechState, u: UnitlessParams) -> EnergyMatrix:
    """Energy matrix elements E_kj = (v_k*v_j + Omega^2*phi_k*phi_j)/2."""
    om2 = u.Omega * u.Omega
    return EnergyMatrix(
        e11=0.5 * (s.v1 * s.v1 + om2 * s.phi1 * s.phi1),
        e22=0.5 * (s.v2 * s.v2 + om2 * s.phi2 * s.phi2),
        e12=0.5 * (s.v1 * s.v2 + om2 * s.phi1 * s.phi2),
    )


def descriptors_from_state(s: MechState, u: UnitlessParams) -> Descriptors:
    """Descriptive coordinates of a single state.

    Delta carries the sign of the skew pairing Omega*(v1*phi2 - v2*phi1), so
    cos(Delta) = Q and sin(Delta) matches the actual phase lead; it lies in
    (-pi, pi].  On trajectories use descriptor_series, which unwraps Delta.
    """
    m = energy_matrix(s, u)
    e_tot = m.e11 + m.e22
    if e_tot < EPS_E:
        return Descriptors(E=e_tot, P=math.nan, Q=math.nan, Delta=math.nan, defined=False)
    p_val = (m.e11 - m.e22) / e_tot
    cross = math.sqrt(m.e11 * m.e22)
    if cross < EPS_E:
        # one pendulum fully at rest: phase shift is undefined
        return Descriptors(E=e_tot, P=p_val, Q=math.nan, Delta=math.nan, defined=False)
    q_raw = m.e12 / cross
    q = min(max(q_raw, -1.0), 1.0)
    sin_d = u.Omega * (s.v1 * s.phi2 - s.v2 * s.phi1) / (2.0 * cross)
    delta = math.atan2(sin_d, q)
    return Descriptors(
        E=e_tot, P=p_val, Q=q, Delta=delta,
        defined=True, clamp_excess=abs(q_raw) - 1.0 if abs(q_raw) > 1.0 else 0.0,
    )


def state_from_slow(
    E: float, P: float, Delta: float, delta: float, u: UnitlessParams
) -> MechState:
    """Mechanical state of two near-harmonic pendulums with the given descriptors.

    phi1 = sqrt(E(1+P))/Omega * cos(delta),      v1 = -sqrt(E(1+P)) * sin(delta)
    phi2 = sqrt(E(1-P))/Omega * cos(delta+Delta), v2 = -sqrt(E(1-P)) * sin(delta+Delta)
    """
    if E < 0.0:
        raise ValueError("E must be nonnegative")
    if abs(P) > 1.0:
        raise ValueError("P must lie in [-1, 1]")
    a1 = math.sqrt(E * (1.0 + P))
    a2 = math.sqrt(E * (1.0 - P))
    return MechState(
        phi1=a1 * math.cos(delta) / u.Omega,
        v1=-a1 * math.sin(delta),
        phi2=a2 * math.cos(delta + Delta) / u.Omega,
        v2=-a2 * math.sin(delta + Delta),
    )


def descriptor_series(
    states: np.ndarray, u: UnitlessParams
) -> dict[str, np.ndarray]:
    """Descriptor time series for a (n, 4) array of [phi1, v1, phi2, v2] rows.

    Returns arrays E, P, Q, Delta_wrapped (in [0, 2pi)), Delta_unwrapped and a
    boolean mask `defined`.  Undefined samples carry NaN in P and Delta; Q is
    held at its previous value across degenerate samples (feedback guard) and
    is NaN until first defined.
    """
    phi1 = states[:, 0]
    v1 = states[:, 1]
    phi2 = states[:, 2]
    v2 = states[:, 3]
    om2 = u.Omega * u.Omega
    e11 = 0.5 * (v1 * v1 + om2 * phi1 * phi1)
    e22 = 0.5 * (v2 * v2 + om2 * phi2 * phi2)
    e12 = 0.5 * (v1 * v2 + om2 * phi1 * phi2)
    e_tot = e11 + e22
    cross_sq = e11 * e22

    defined = (e_tot >= EPS_E) & (cross_sq >= EPS_E * EPS_E)
    p_arr = np.full_like(e_tot, np.nan)
    np.divide(e11 - e22, e_tot, out=p_arr, where=e_tot >= EPS_E)

    q_arr = np.full_like(e_tot, np.nan)
    cross = np.sqrt(cross_sq, where=defined, out=np.full_like(e_tot, np.nan))
    np.divide(e12, cross, out=q_arr, where=defined)
    np.clip(q_arr, -1.0, 1.0, out=q_arr)
    # hold the last defined coherency across degenerate samples
    if not defined.all():
        idx = np.where(defined, np.arange(len(q_arr)), -1)
        np.maximum.accumulate(idx, out=idx)
        q_arr = np.where(idx >= 0, q_arr[np.maximum(idx, 0)], np.nan)

    sin_d = np.full_like(e_tot, np.nan)
    np.divide(u.Omega * (v1 * phi2 - v2 * phi1), 2.0 * cross, out=sin_d, where=defined)
    delta = np.arctan2(sin_d, q_arr)
    delta_wrapped = np.mod(delta, 2.0 * np.pi)

    delta_unwrapped = np.full_like(delta, np.nan)
    if defined.any():
        good = np.where(defined)[0]
        delta_unwrapped[good] = np.unwrap(delta[good])
    return {
        "E": e_tot,
        "P": p_arr,
        "Q": q_arr,
        "Delta_wrapped": delta_wrapped,
        "Delta_unwrapped": delta_unwrapped,
        "defined": defined,
    }


def moving_average(series: np.ndarray, window: int) -> np.ndarray:
    """Centered moving mean; the window shrinks near the edges."""
    if window < 1:
        raise ValueError("window must be >= 1")
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        return x.copy()
    left = (window - 1) // 2
    right = window // 2
    csum = np.concatenate(([0.0], np.cumsum(x)))
    idx = np.arange(x.size)
    lo = np.maximum(idx - left, 0)
    hi = np.minimum(idx + right + 1, x.size)
    return (csum[hi] - csum[lo]) / (hi - lo)
