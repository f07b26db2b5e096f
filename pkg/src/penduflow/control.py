"""Current-command generators.

Open-loop profiles ramp the currents along a sin² bump; the coherency
feedback laws set opposed currents proportional to Q = cos(Delta), optionally
scaled by an energy-dependent decay factor so the commands vanish as the
excitation dies out.  Positive current repels, negative attracts: in the
antiphase regime the repelled pendulum donates energy to the attracted one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .plant import CurrentPair


class Polarity(enum.Enum):
    SINGLE_COIL = "single"   # i2 = 0
    OPPOSED = "opposed"      # i2 = -i1


@dataclass(frozen=True)
class OpenLoopProfile:
    """sin² current bump: i1(t) = A + B*sin²(pi*t/tk).

    With hold_after_tk the profile stays at the offset A once t exceeds tk
    instead of repeating periodically.
    """

    A: float
    B: float
    tk: float
    polarity: Polarity = Polarity.OPPOSED
    hold_after_tk: bool = True

    def __post_init__(self):
        if not self.tk > 0.0:
            raise ValueError("tk must be positive")
        if not (math.isfinite(self.A) and math.isfinite(self.B)):
            raise ValueError("A and B must be finite")


@dataclass(frozen=True)
class FeedbackConfig:
    """Coherency feedback settings.

    i0 is the current amplitude; eta > 0 enables the 1 - exp(-eta*E) decay
    factor; q_guard is the energy product threshold below which the previous
    coherency value is held; avg_window > 1 smooths Q with a moving average
    of that many controller samples.
    """

    i0: float
    eta: float = 0.0
    q_guard: float = 1e-10
    avg_window: int = 0

    def __post_init__(self):
        if self.i0 < 0.0:
            raise ValueError("i0 must be nonnegative")
        if self.eta < 0.0:
            raise ValueError("eta must be nonnegative")


#: empirical decay factor making currents roll off below E ~ 5 rad²/s²
DEFAULT_ETA = 0.2


def open_loop(t: float, prof: OpenLoopProfile) -> CurrentPair:
    """Open-loop currents at time t (t >= 0)."""
    if prof.hold_after_tk and t > prof.tk:
        i1 = prof.A
    else:
        s = math.sin(math.pi * t / prof.tk)
        i1 = prof.A + prof.B * s * s
    i2 = -i1 if prof.polarity is Polarity.OPPOSED else 0.0
    return CurrentPair(i1, i2)


def feedback(Q: float, cfg: FeedbackConfig) -> CurrentPair:
    """Coherency feedback: i1 = -i0*Q, i2 = +i0*Q."""
    return CurrentPair(-cfg.i0 * Q, cfg.i0 * Q)


def feedback_decayed(Q: float, E: float, cfg: FeedbackConfig) -> CurrentPair:
    """Coherency feedback scaled by the energy decay factor 1 - exp(-eta*E).

    eta = 0 disables the decay (plain feedback).
    """
    if E < 0.0:
        raise ValueError("E must be nonnegative")
    gain = cfg.i0 * (1.0 - math.exp(-cfg.eta * E)) if cfg.eta > 0.0 else cfg.i0
    return CurrentPair(-gain * Q, gain * Q)
