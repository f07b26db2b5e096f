"""Plant parameter sets: dimensional constants, reduced parameters, presets.

Two magnet kits are supported; their identified constants are stored at full
printed precision.  Reduced (unitless) parameters are always derived from the
dimensional set, never stored, so there is a single source of truth.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, fields
from pathlib import Path


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional plant constants for one magnet kit.

    a    : magnetic potential amplitude per unit current (N·m·rad·A⁻¹)
    b    : magnetic potential width (rad²)
    c1,c2: Coulomb friction torques per pendulum (N·m)
    ce   : coupling-spring equivalent viscous damping (N·m·s·rad⁻¹)
    ke   : torsion spring stiffness (N·m·rad⁻¹)
    J    : moment of inertia (kg·m²)
    mgs  : gravitational restoring coefficient (N·m)
    """

    a: float
    b: float
    c1: float
    c2: float
    ce: float
    ke: float
    J: float
    mgs: float

    def __post_init__(self):
        for name in ("a", "b", "ke", "J", "mgs"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        for name in ("c1", "c2", "ce"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class UnitlessParams:
    """Reduced parameters of the normalized two-pendulum model.

    Omega : linearized natural frequency (rad·s⁻¹)
    beta  : relative coupling strength
    zeta1, zeta2 : dry-friction ratios
    alpha : coupling damping ratio
    """

    Omega: float
    beta: float
    zeta1: float
    zeta2: float
    alpha: float

    def __post_init__(self):
        if not self.Omega > 0.0:
            raise ValueError("Omega must be strictly positive")
        if self.beta < 0.0:
            raise ValueError("beta must be nonnegative")
        for name in ("zeta1", "zeta2", "alpha"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")


class MagnetKit(enum.Enum):
    """Preset selector for the two identified magnet pairs."""

    LARGE = "large"
    SMALL = "small"


_PRESETS = {
    MagnetKit.LARGE: PhysicalParams(
        a=8.036e-3,
        b=30.810e-3,
        c1=2.500e-4,
        c2=1.600e-4,
        ce=9.615e-6,
        ke=3.999e-3,
        J=6.787e-4,
        mgs=5.840e-2,
    ),
    MagnetKit.SMALL: PhysicalParams(
        a=3.635e-3,
        b=43.366e-3,
        c1=3.114e-4,
        c2=2.705e-4,
        ce=9.615e-6,
        ke=3.999e-3,
        J=5.675e-4,
        mgs=5.018e-2,
    ),
}


def preset(kit: MagnetKit | str) -> PhysicalParams:
    """Return the stored constants for a magnet kit, bit-exact."""
    if isinstance(kit, str):
        kit = MagnetKit(kit.lower())
    return _PRESETS[kit]


def derive_unitless(p: PhysicalParams) -> UnitlessParams:
    """Reduce dimensional constants to the normalized parameter set.

    Omega = sqrt(mgs/J), beta = ke/mgs, zeta_i = c_i/(2·J·Omega),
    alpha = ce/(2·J·Omega).
    """
    omega = math.sqrt(p.mgs / p.J)
    denom = 2.0 * p.J * omega
    return UnitlessParams(
        Omega=omega,
        beta=p.ke / p.mgs,
        zeta1=p.c1 / denom,
        zeta2=p.c2 / denom,
        alpha=p.ce / denom,
    )


def params_from_dict(data: dict) -> PhysicalParams:
    """Build PhysicalParams from a key-value mapping (SI units)."""
    names = {f.name for f in fields(PhysicalParams)}
    unknown = set(data) - names
    if unknown:
        raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
    missing = names - set(data)
    if missing:
        raise ValueError(f"missing parameter keys: {sorted(missing)}")
    return PhysicalParams(**{k: float(v) for k, v in data.items()})


def load_params(path: str | Path) -> PhysicalParams:
    """Load PhysicalParams from a JSON file with keys a, b, c1, c2, ce, ke, J, mgs."""
    with open(path, "r", encoding="utf-8") as fh:
        return params_from_dict(json.load(fh))
