"""Scenario integration: full plant, averaged envelope, and their comparison.

The full plant is integrated with a fixed-step classical RK4 (deterministic,
stick-slip handled at every step); the smooth averaged system uses an
adaptive embedded Runge-Kutta pair with a terminal localization event at
|P| = 1 - EPS_P.  A reflective boundary mode exists for long-horizon runs
that ride the localization boundary.  Named presets reproduce the benchmark
runs of the study: open-loop transfers, averaged-model validation cases, and
coherency-feedback steering from antiphase, rotating, and inphase releases.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_ivp

from . import _kernel
from .control import FeedbackConfig, OpenLoopProfile, Polarity, open_loop
from .descriptors import EPS_E, descriptor_series, descriptors_from_state, state_from_slow
from .params import MagnetKit, PhysicalParams, UnitlessParams, derive_unitless, preset
from .plant import CurrentPair, MechState
from .slowflow import EPS_P, BeatMode, SlowState, fast_phase_rate, linearized_coeffs, slow_rhs

#: excitation below which a reflect-mode slow run freezes (energy floor)
E_FLOOR_REFLECT = 1e-8
#: partition clamp inset used by the reflective boundary mode
P_CLAMP_REFLECT = 1e-4

FULL_CSV_COLUMNS = [
    "t", "phi1", "v1", "phi2", "v2", "i1", "i2",
    "E", "P", "Q", "Delta_unwrapped", "stuck1", "stuck2",
]
SLOW_CSV_COLUMNS = ["t", "E", "P", "Delta", "i1", "i2"]
DESCRIPTOR_CSV_COLUMNS = ["t", "E", "P", "Q", "Delta_wrapped", "Delta_unwrapped"]


@dataclass(frozen=True)
class ControllerSpec:
    """Controller selection: none, open_loop, feedback, or feedback_decayed."""

    kind: str = "none"
    profile: OpenLoopProfile | None = None
    config: FeedbackConfig | None = None

    def __post_init__(self):
        if self.kind not in ("none", "open_loop", "feedback", "feedback_decayed"):
            raise ValueError(f"unknown controller kind: {self.kind!r}")
        if self.kind == "open_loop" and self.profile is None:
            raise ValueError("open_loop controller requires a profile")
        if self.kind in ("feedback", "feedback_decayed") and self.config is None:
            raise ValueError(f"{self.kind} controller requires a config")

    def slow_currents(self, t: float, E: float, Q: float) -> tuple[float, float]:
        """Currents for the averaged model, where Q = cos(Delta) exactly."""
        if self.kind == "open_loop":
            cur = open_loop(t, self.profile)
            return cur.i1, cur.i2
        if self.kind == "feedback":
            return -self.config.i0 * Q, self.config.i0 * Q
        if self.kind == "feedback_decayed":
            gain = self.config.i0
            if self.config.eta > 0.0:
                gain *= 1.0 - math.exp(-self.config.eta * E)
            return -gain * Q, gain * Q
        return 0.0, 0.0

    def _kernel_encoding(self):
        if self.kind == "open_loop":
            prof = self.profile
            return (
                _kernel.CTRL_OPEN_LOOP, prof.A, prof.B, prof.tk,
                1 if prof.polarity is Polarity.OPPOSED else 0,
                1 if prof.hold_after_tk else 0,
                0.0, 0.0, 0, EPS_E,
            )
        if self.kind in ("feedback", "feedback_decayed"):
            cfg = self.config
            code = _kernel.CTRL_FEEDBACK if self.kind == "feedback" else _kernel.CTRL_FEEDBACK_DECAYED
            return (code, 0.0, 0.0, 1.0, 0, 0, cfg.i0, cfg.eta, int(cfg.avg_window), cfg.q_guard)
        return (_kernel.CTRL_NONE, 0.0, 0.0, 1.0, 0, 0, 0.0, 0.0, 0, EPS_E)


@dataclass(frozen=True)
class Scenario:
    """One simulation run: plant constants, initial state, controller, horizon."""

    params: PhysicalParams
    initial: MechState | SlowState
    controller: ControllerSpec = field(default_factory=ControllerSpec)
    t_end: float = 20.0
    output_dt: float = 1e-3
    label: str = ""
    h: float = 1e-4
    sat_limit: float = 1.0
    v_tol: float = 1e-6
    smooth_sgn: bool = False
    sgn_eps: float = 1e-5
    singularity: str = "stop"          # "stop" | "reflect"
    friction_prefactor: str = "printed"

    def __post_init__(self):
        if not self.t_end > 0.0:
            raise ValueError("t_end must be positive")
        if not self.output_dt > 0.0:
            raise ValueError("output_dt must be positive")
        if self.singularity not in ("stop", "reflect"):
            raise ValueError(f"unknown singularity mode: {self.singularity!r}")

    @property
    def unitless(self) -> UnitlessParams:
        return derive_unitless(self.params)

    def mech_initial(self) -> MechState:
        """Initial state for the full plant (slow initials map via delta = 0)."""
        if isinstance(self.initial, MechState):
            return self.initial
        s = self.initial
        return state_from_slow(s.E, s.P, s.Delta, 0.0, self.unitless)

    def slow_initial(self) -> SlowState:
        """Initial state for the averaged model (mech initials map via descriptors)."""
        if isinstance(self.initial, SlowState):
            return self.initial
        d = descriptors_from_state(self.initial, self.unitless)
        if not d.defined:
            raise ValueError("initial mechanical state has no defined descriptors")
        return SlowState(d.E, d.P, d.Delta)


@dataclass
class Trajectory:
    """Sampled run: states, applied currents, and descriptor time series."""

    kind: str                      # "full" | "slow"
    label: str
    times: np.ndarray
    states: np.ndarray             # (n, 4) [phi1, v1, phi2, v2] or (n, 3) [E, P, Delta]
    currents: np.ndarray           # (n, 2)
    descriptors: dict[str, np.ndarray]
    stuck: np.ndarray | None = None
    localized: bool = False
    localization_time: float | None = None
    energy_floor: bool = False
    aborted: bool = False
    n_saturated: int = 0
    delta_fast: np.ndarray | None = None

    @property
    def E(self) -> np.ndarray:
        return self.descriptors["E"]

    @property
    def P(self) -> np.ndarray:
        return self.descriptors["P"]

    @property
    def Q(self) -> np.ndarray:
        return self.descriptors["Q"]

    @property
    def Delta_unwrapped(self) -> np.ndarray:
        return self.descriptors["Delta_unwrapped"]


@dataclass(frozen=True)
class ComparisonReport:
    """RMS/max deviations between two runs' descriptor histories."""

    rms_P: float
    rms_Q: float
    max_abs_P_error: float
    localization_time_full: float | None
    localization_time_slow: float | None


def _sample_grid(t_end: float, output_dt: float) -> int:
    # number of output samples; tolerate tiny float noise in the division
    return int(math.floor(t_end / output_dt + 1e-9)) + 1


def integrate_full(sc: Scenario) -> Trajectory:
    """Integrate the full nonsmooth plant with fixed-step RK4.

    Currents are recomputed every internal step; stick-slip transitions are
    applied after each step.  A non-finite state aborts the run, keeping the
    samples recorded so far.
    """
    u = sc.unitless
    p = sc.params
    s0 = sc.mech_initial()

    ratio = sc.output_dt / sc.h
    out_every = int(round(ratio))
    if out_every < 1 or abs(ratio - out_every) > 1e-9:
        raise ValueError("output_dt must be an integer multiple of h")
    n_out = _sample_grid(sc.t_end, sc.output_dt) - 1
    n_steps = n_out * out_every

    (code, cA, cB, ctk, cpol, chold, ci0, ceta, avg_window, eps_q) = (
        sc.controller._kernel_encoding()
    )
    times, states, stuck, currents, n_sat, n_valid = _kernel.integrate_full_kernel(
        s0.as_array(), np.array([s0.stuck1, s0.stuck2], dtype=np.bool_),
        sc.h, n_steps, out_every,
        u.Omega, u.beta, u.zeta1, u.zeta2, u.alpha, p.a, p.b, p.J,
        code, cA, cB, ctk, cpol, chold, ci0, ceta, avg_window,
        sc.sat_limit, sc.v_tol,
        _kernel.SGN_SMOOTH if sc.smooth_sgn else _kernel.SGN_EXACT, sc.sgn_eps,
        eps_q,
    )
    aborted = n_valid < len(times)
    times = times[:n_valid]
    states = states[:n_valid]
    stuck = stuck[:n_valid]
    currents = currents[:n_valid]
    return Trajectory(
        kind="full",
        label=sc.label,
        times=times,
        states=states,
        currents=currents,
        descriptors=descriptor_series(states, u),
        stuck=stuck,
        aborted=aborted,
        n_saturated=int(n_sat),
    )


def integrate_slow(sc: Scenario, fast_phase: bool = False) -> Trajectory:
    """Integrate the averaged envelope system adaptively (rtol 1e-8, atol 1e-10).

    In "stop" mode the run terminates with a localization flag when
    |P| >= 1 - EPS_P, or with an energy-floor flag when E decays to nothing.
    In "reflect" mode the partition is clamped just inside the boundary and
    the run continues to t_end; the state freezes below the energy floor.
    With fast_phase the carrier phase is accumulated by quadrature afterwards.
    """
    u = sc.unitless
    p = sc.params
    s0 = sc.slow_initial()
    reflect = sc.singularity == "reflect"
    p_max = 1.0 - (P_CLAMP_REFLECT if reflect else EPS_P)
    p_eval_max = 1.0 - (P_CLAMP_REFLECT * 0.1 if reflect else EPS_P)

    def currents_at(t, e_val, delta):
        i1, i2 = sc.controller.slow_currents(t, max(e_val, 0.0), math.cos(delta))
        i1 = min(max(i1, -sc.sat_limit), sc.sat_limit)
        i2 = min(max(i2, -sc.sat_limit), sc.sat_limit)
        return i1, i2

    def rhs(t, y):
        e_val, p_val, delta = y
        if reflect and e_val < E_FLOOR_REFLECT:
            return (0.0, 0.0, 0.0)
        e_c = max(e_val, 0.0)
        p_c = min(max(p_val, -p_eval_max), p_eval_max)
        i1, i2 = currents_at(t, e_c, delta)
        de, dp, dd = slow_rhs(
            SlowState(e_c, p_c, delta), CurrentPair(i1, i2), u, p,
            sc.friction_prefactor,
        )
        if reflect:
            if p_val >= p_max and dp > 0.0:
                dp = 0.0
            elif p_val <= -p_max and dp < 0.0:
                dp = 0.0
        return (de, dp, dd)

    n_out = _sample_grid(sc.t_end, sc.output_dt)
    t_eval = np.arange(n_out) * sc.output_dt

    localized = False
    loc_time = None
    floor_hit = False
    if abs(s0.P) >= 1.0 - EPS_P:
        # boundary start: immediate localization, nothing to integrate
        times = np.array([0.0])
        y = np.array([[s0.E], [s0.P], [s0.Delta]])
        localized = True
        loc_time = 0.0
    else:
        events = []

        def ev_localization(t, y):
            return y[1] * y[1] - (1.0 - EPS_P) ** 2

        ev_localization.terminal = True
        ev_localization.direction = 1.0

        def ev_floor(t, y):
            return y[0] - EPS_E

        ev_floor.terminal = True
        ev_floor.direction = -1.0

        if not reflect:
            events = [ev_localization, ev_floor]
        sol = solve_ivp(
            rhs, (0.0, sc.t_end), [s0.E, s0.P, s0.Delta],
            method="RK45", rtol=1e-8, atol=1e-10,
            t_eval=t_eval, events=events if events else None,
            dense_output=False,
        )
        times = sol.t
        y = sol.y
        if not reflect and sol.status == 1:
            if len(sol.t_events[0]) > 0:
                localized = True
                loc_time = float(sol.t_events[0][0])
            elif len(sol.t_events[1]) > 0:
                floor_hit = True
                loc_time = None
        elif sol.status == -1:
            # step-size underflow: expected at the localization singularity
            localized = True
            loc_time = float(sol.t[-1]) if len(sol.t) else 0.0
        if times.size == 0:
            times = np.array([0.0])
            y = np.array([[s0.E], [s0.P], [s0.Delta]])

    states = np.column_stack([y[0], y[1], y[2]])
    if reflect and states[-1, 0] <= E_FLOOR_REFLECT * 1.01:
        floor_hit = True
    cur = np.empty((len(times), 2))
    for k, t in enumerate(times):
        cur[k] = currents_at(t, states[k, 0], states[k, 2])

    descriptors = {
        "E": states[:, 0],
        "P": states[:, 1],
        "Q": np.cos(states[:, 2]),
        "Delta_wrapped": np.mod(states[:, 2], 2.0 * math.pi),
        "Delta_unwrapped": states[:, 2],
        "defined": states[:, 0] >= EPS_E,
    }
    traj = Trajectory(
        kind="slow",
        label=sc.label,
        times=times,
        states=states,
        currents=cur,
        descriptors=descriptors,
        localized=localized,
        localization_time=loc_time,
        energy_floor=floor_hit,
    )
    if fast_phase:
        rates = np.empty(len(times))
        for k, t in enumerate(times):
            rates[k] = fast_phase_rate(
                SlowState(max(states[k, 0], 0.0),
                          min(max(states[k, 1], -1.0), 1.0),
                          states[k, 2]),
                CurrentPair(cur[k, 0], cur[k, 1]), u, p,
            )
        if len(times) > 1:
            traj.delta_fast = np.concatenate(
                ([0.0], cumulative_trapezoid(rates, times))
            )
        else:
            traj.delta_fast = np.zeros(1)
        traj.descriptors["fast_rate"] = rates
    return traj


def _first_crossing(times: np.ndarray, values: np.ndarray, threshold: float):
    mask = np.abs(values) >= threshold
    if not mask.any():
        return None
    return float(times[int(np.argmax(mask))])


def compare(full: Trajectory, slow: Trajectory, resample_dt: float | None = None) -> ComparisonReport:
    """Deviation metrics between two runs, resampled onto a common time grid.

    This is the standing dimensional-consistency diagnostic for the averaged
    model: systematic P/Q discrepancies against the full plant show up here.
    """
    t0 = max(full.times[0], slow.times[0])
    t1 = min(full.times[-1], slow.times[-1])
    if not t1 > t0:
        raise ValueError("trajectories have no temporal overlap")
    if resample_dt is None:
        resample_dt = max(
            float(np.median(np.diff(full.times))),
            float(np.median(np.diff(slow.times))),
        )
    n = int(math.floor((t1 - t0) / resample_dt + 1e-9)) + 1
    grid = t0 + np.arange(n) * resample_dt

    def resample(traj, key):
        vals = traj.descriptors[key]
        ok = np.isfinite(vals)
        return np.interp(grid, traj.times[ok], vals[ok])

    dp = resample(full, "P") - resample(slow, "P")
    dq = resample(full, "Q") - resample(slow, "Q")
    return ComparisonReport(
        rms_P=float(np.sqrt(np.mean(dp * dp))),
        rms_Q=float(np.sqrt(np.mean(dq * dq))),
        max_abs_P_error=float(np.max(np.abs(dp))),
        localization_time_full=_first_crossing(full.times, full.P, 0.9),
        localization_time_slow=_first_crossing(slow.times, slow.P, 0.9),
    )


def integrate_linear_beat(
    mode: BeatMode, slow: Trajectory, sc: Scenario
) -> np.ndarray:
    """Solve the linear beat equation along a slow run's E(t) and currents.

    P'' + d(t)*P' + k(t)*P = F(t) with coefficients re-evaluated from the
    run's excitation history and applied currents.  Initial dP/dt comes from
    the averaged system at the initial state.  Returns P(t) on the run's grid.
    """
    u = sc.unitless
    p = sc.params
    s0 = sc.slow_initial()
    t_grid = slow.times
    e_grid = np.maximum(slow.descriptors["E"], 1e-6)
    i1_grid = slow.currents[:, 0]
    i2_grid = slow.currents[:, 1]

    def coeffs(t):
        e_val = float(np.interp(t, t_grid, e_grid))
        cur = CurrentPair(
            float(np.interp(t, t_grid, i1_grid)),
            float(np.interp(t, t_grid, i2_grid)),
        )
        return linearized_coeffs(mode, e_val, cur, u, p)

    i10, i20 = sc.controller.slow_currents(0.0, s0.E, math.cos(s0.Delta))
    _, dp0, _ = slow_rhs(s0, CurrentPair(i10, i20), u, p, sc.friction_prefactor)

    def rhs(t, y):
        c = coeffs(t)
        return (y[1], c.forcing - c.damping * y[1] - c.stiffness * y[0])

    sol = solve_ivp(
        rhs, (t_grid[0], t_grid[-1]), [s0.P, dp0],
        method="RK45", rtol=1e-8, atol=1e-10, t_eval=t_grid,
    )
    return sol.y[0]


_PRESET_BUILDERS = {}


def _fig10_profile() -> OpenLoopProfile:
    return OpenLoopProfile(A=0.001, B=0.4, tk=11.236, polarity=Polarity.OPPOSED)


def _register_presets():
    large = preset(MagnetKit.LARGE)
    small = preset(MagnetKit.SMALL)
    _PRESET_BUILDERS.update(
        fig5=lambda: Scenario(
            params=large,
            initial=MechState(phi1=0.568, v1=0.0, phi2=-0.557, v2=-5.166e-3),
            controller=ControllerSpec(
                kind="open_loop",
                profile=OpenLoopProfile(A=0.001, B=0.055, tk=40.0, polarity=Polarity.OPPOSED),
            ),
            t_end=16.0,
            label="fig5",
        ),
        fig7=lambda: Scenario(
            params=large,
            initial=MechState(phi1=-0.545, v1=0.0, phi2=0.580, v2=0.0),
            controller=ControllerSpec(
                kind="open_loop",
                profile=OpenLoopProfile(A=0.001, B=0.08, tk=38.6, polarity=Polarity.SINGLE_COIL),
            ),
            t_end=40.0,
            label="fig7",
        ),
        fig8=lambda: Scenario(
            params=large,
            initial=MechState(phi1=-0.697, v1=0.0, phi2=0.404, v2=0.0),
            controller=ControllerSpec(
                kind="open_loop",
                profile=OpenLoopProfile(A=0.001, B=0.1, tk=10.31, polarity=Polarity.SINGLE_COIL),
            ),
            t_end=20.0,
            label="fig8",
        ),
        fig10=lambda: Scenario(
            params=small,
            initial=MechState(phi1=-0.660, v1=0.0, phi2=0.627, v2=0.0),
            controller=ControllerSpec(kind="open_loop", profile=_fig10_profile()),
            t_end=20.0,
            label="fig10",
        ),
        fig12_anti=lambda: Scenario(
            params=small,
            initial=SlowState(E=30.0, P=0.02, Delta=math.pi - 0.001),
            controller=ControllerSpec(kind="open_loop", profile=_fig10_profile()),
            t_end=20.0,
            label="fig12_anti",
        ),
        fig12_in=lambda: Scenario(
            params=small,
            initial=SlowState(E=30.0, P=0.02, Delta=-0.001),
            controller=ControllerSpec(kind="open_loop", profile=_fig10_profile()),
            t_end=20.0,
            label="fig12_in",
        ),
        fig13_anti=lambda: Scenario(
            params=small,
            initial=SlowState(E=30.0, P=0.02, Delta=math.pi - 0.001),
            controller=ControllerSpec(kind="feedback", config=FeedbackConfig(i0=0.35)),
            t_end=40.0,
            label="fig13_anti",
        ),
        fig13_rot=lambda: Scenario(
            params=small,
            initial=SlowState(E=30.0, P=0.02, Delta=math.pi / 2 - 0.001),
            controller=ControllerSpec(kind="feedback", config=FeedbackConfig(i0=0.5)),
            t_end=40.0,
            label="fig13_rot",
        ),
        fig13_in=lambda: Scenario(
            params=small,
            initial=SlowState(E=30.0, P=0.02, Delta=-0.001),
            controller=ControllerSpec(kind="feedback", config=FeedbackConfig(i0=0.35)),
            t_end=40.0,
            label="fig13_in",
        ),
    )


_register_presets()

PRESET_NAMES = tuple(sorted(_PRESET_BUILDERS))


def preset_scenario(name: str) -> Scenario:
    """Return a named benchmark scenario."""
    try:
        return _PRESET_BUILDERS[name]()
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None


def _fmt(x) -> str:
    return f"{x:.17g}"


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> None:
    """Write a run to CSV (full or slow schema, depending on the run kind)."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if traj.kind == "full":
            w.writerow(FULL_CSV_COLUMNS)
            d = traj.descriptors
            for k in range(len(traj.times)):
                w.writerow([
                    _fmt(traj.times[k]),
                    _fmt(traj.states[k, 0]), _fmt(traj.states[k, 1]),
                    _fmt(traj.states[k, 2]), _fmt(traj.states[k, 3]),
                    _fmt(traj.currents[k, 0]), _fmt(traj.currents[k, 1]),
                    _fmt(d["E"][k]), _fmt(d["P"][k]), _fmt(d["Q"][k]),
                    _fmt(d["Delta_unwrapped"][k]),
                    int(traj.stuck[k, 0]), int(traj.stuck[k, 1]),
                ])
        else:
            cols = list(SLOW_CSV_COLUMNS)
            if traj.delta_fast is not None:
                cols.append("delta_fast")
            w.writerow(cols)
            for k in range(len(traj.times)):
                row = [
                    _fmt(traj.times[k]),
                    _fmt(traj.states[k, 0]), _fmt(traj.states[k, 1]),
                    _fmt(traj.states[k, 2]),
                    _fmt(traj.currents[k, 0]), _fmt(traj.currents[k, 1]),
                ]
                if traj.delta_fast is not None:
                    row.append(_fmt(traj.delta_fast[k]))
                w.writerow(row)


def write_descriptor_csv(traj: Trajectory, path: str | Path) -> None:
    """Write the descriptor time series (t, E, P, Q, Delta wrapped/unwrapped)."""
    d = traj.descriptors
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(DESCRIPTOR_CSV_COLUMNS)
        for k in range(len(traj.times)):
            w.writerow([
                _fmt(traj.times[k]), _fmt(d["E"][k]), _fmt(d["P"][k]),
                _fmt(d["Q"][k]), _fmt(d["Delta_wrapped"][k]),
                _fmt(d["Delta_unwrapped"][k]),
            ])


def read_trajectory_csv(path: str | Path) -> Trajectory:
    """Read a trajectory CSV written by write_trajectory_csv."""
    with open(Path(path), "r", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    arr = np.array([[float(x) for x in row] for row in data])
    cols = {name: arr[:, k] for k, name in enumerate(header)}
    if header[: len(FULL_CSV_COLUMNS)] == FULL_CSV_COLUMNS:
        states = np.column_stack([cols["phi1"], cols["v1"], cols["phi2"], cols["v2"]])
        q = cols["Q"]
        descriptors = {
            "E": cols["E"], "P": cols["P"], "Q": q,
            "Delta_wrapped": np.mod(cols["Delta_unwrapped"], 2.0 * math.pi),
            "Delta_unwrapped": cols["Delta_unwrapped"],
            "defined": np.isfinite(cols["P"]),
        }
        return Trajectory(
            kind="full", label=Path(path).stem, times=cols["t"], states=states,
            currents=np.column_stack([cols["i1"], cols["i2"]]),
            descriptors=descriptors,
            stuck=np.column_stack([cols["stuck1"], cols["stuck2"]]).astype(bool),
        )
    if header[: len(SLOW_CSV_COLUMNS)] == SLOW_CSV_COLUMNS:
        states = np.column_stack([cols["E"], cols["P"], cols["Delta"]])
        descriptors = {
            "E": cols["E"], "P": cols["P"], "Q": np.cos(cols["Delta"]),
            "Delta_wrapped": np.mod(cols["Delta"], 2.0 * math.pi),
            "Delta_unwrapped": cols["Delta"],
            "defined": cols["E"] >= EPS_E,
        }
        return Trajectory(
            kind="slow", label=Path(path).stem, times=cols["t"], states=states,
            currents=np.column_stack([cols["i1"], cols["i2"]]),
            descriptors=descriptors,
            delta_fast=cols.get("delta_fast"),
        )
    raise ValueError(f"unrecognized trajectory CSV header in {path}")
