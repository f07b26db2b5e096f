"""Command-line front end.

Commands: simulate (full plant), slowflow (averaged model), compare,
streamlines, stability-map, presets.  CSV files are the primary artifacts;
SVG charts are derived and never alter CSV content.  The output directory
defaults to $PENDUFLOW_OUT, then the current directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import sim, svg
from .control import FeedbackConfig, OpenLoopProfile, Polarity
from .params import MagnetKit, params_from_dict, preset
from .plant import CurrentPair, MechState, stability_map
from .slowflow import SlowState, find_stationary_points, streamline_field


class CliError(Exception):
    pass


def _scenario_from_config(cfg: dict) -> sim.Scenario:
    cfg = dict(cfg)
    label = cfg.pop("label", "run")
    if "params" in cfg:
        params = params_from_dict(cfg.pop("params"))
        cfg.pop("kit", None)
    elif "kit" in cfg:
        params = preset(str(cfg.pop("kit")))
    else:
        raise CliError("config: missing key 'kit' or 'params'")

    init = cfg.pop("initial", None)
    if init is None:
        raise CliError("config: missing key 'initial'")
    try:
        if "phi1" in init:
            initial = MechState(
                phi1=float(init["phi1"]), v1=float(init.get("v1", 0.0)),
                phi2=float(init["phi2"]), v2=float(init.get("v2", 0.0)),
            )
        else:
            initial = SlowState(
                E=float(init["E"]), P=float(init["P"]), Delta=float(init["Delta"]),
            )
    except KeyError as exc:
        raise CliError(f"config: initial: missing key {exc}") from None

    ctrl_cfg = cfg.pop("controller", {"kind": "none"})
    kind = ctrl_cfg.get("kind", "none")
    try:
        if kind == "open_loop":
            controller = sim.ControllerSpec(
                kind=kind,
                profile=OpenLoopProfile(
                    A=float(ctrl_cfg["A"]), B=float(ctrl_cfg["B"]),
                    tk=float(ctrl_cfg["tk"]),
                    polarity=Polarity(ctrl_cfg.get("polarity", "opposed")),
                    hold_after_tk=bool(ctrl_cfg.get("hold_after_tk", True)),
                ),
            )
        elif kind in ("feedback", "feedback_decayed"):
            controller = sim.ControllerSpec(
                kind=kind,
                config=FeedbackConfig(
                    i0=float(ctrl_cfg["i0"]),
                    eta=float(ctrl_cfg.get("eta", 0.0)),
                    q_guard=float(ctrl_cfg.get("q_guard", 1e-10)),
                    avg_window=int(ctrl_cfg.get("avg_window", 0)),
                ),
            )
        elif kind == "none":
            controller = sim.ControllerSpec()
        else:
            raise CliError(f"config: controller.kind: unknown value {kind!r}")
    except KeyError as exc:
        raise CliError(f"config: controller: missing key {exc}") from None

    scalars = {}
    for key in ("t_end", "output_dt", "h", "sat_limit", "v_tol", "sgn_eps"):
        if key in cfg:
            scalars[key] = float(cfg.pop(key))
    for key in ("singularity", "friction_prefactor"):
        if key in cfg:
            scalars[key] = str(cfg.pop(key))
    if "smooth_sgn" in cfg:
        scalars["smooth_sgn"] = bool(cfg.pop(key))
    if cfg:
        raise CliError(f"config: unknown key {sorted(cfg)[0]!r}")
    try:
        return sim.Scenario(params=params, initial=initial, controller=controller,
                            label=label, **scalars)
    except ValueError as exc:
        raise CliError(f"config: {exc}") from None


def _scenario_to_config(sc: sim.Scenario) -> dict:
    cfg: dict = {"label": sc.label, "params": {
        "a": sc.params.a, "b": sc.params.b, "c1": sc.params.c1, "c2": sc.params.c2,
        "ce": sc.params.ce, "ke": sc.params.ke, "J": sc.params.J, "mgs": sc.params.mgs,
    }}
    if isinstance(sc.initial, MechState):
        cfg["initial"] = {"phi1": sc.initial.phi1, "v1": sc.initial.v1,
                          "phi2": sc.initial.phi2, "v2": sc.initial.v2}
    else:
        cfg["initial"] = {"E": sc.initial.E, "P": sc.initial.P, "Delta": sc.initial.Delta}
    ctrl: dict = {"kind": sc.controller.kind}
    if sc.controller.profile is not None:
        prof = sc.controller.profile
        ctrl.update(A=prof.A, B=prof.B, tk=prof.tk, polarity=prof.polarity.value,
                    hold_after_tk=prof.hold_after_tk)
    if sc.controller.config is not None:
        fb = sc.controller.config
        ctrl.update(i0=fb.i0, eta=fb.eta, q_guard=fb.q_guard, avg_window=fb.avg_window)
    cfg["controller"] = ctrl
    cfg.update(t_end=sc.t_end, output_dt=sc.output_dt, h=sc.h, sat_limit=sc.sat_limit,
               v_tol=sc.v_tol, smooth_sgn=sc.smooth_sgn, sgn_eps=sc.sgn_eps,
               singularity=sc.singularity, friction_prefactor=sc.friction_prefactor)
    return cfg


def _apply_overrides(cfg: dict, overrides: list[str]) -> dict:
    for item in overrides:
        if "=" not in item:
            raise CliError(f"override {item!r}: expected key=value")
        key, raw = item.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = cfg
        parts = key.split(".")
        for part in parts[:-1]:
            if not isinstance(node.get(part), dict):
                raise CliError(f"override {key!r}: unknown key {part!r}")
            node = node[part]
        leaf = parts[-1]
        if leaf not in node:
            raise CliError(f"override {key!r}: unknown key {leaf!r}")
        node[leaf] = value
    return cfg


def _load_scenario(args) -> sim.Scenario:
    if args.preset and args.config:
        raise CliError("give either --preset or --config, not both")
    if args.preset:
        cfg = _scenario_to_config(sim.preset_scenario(args.preset))
    elif args.config:
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"config: {exc}") from None
    else:
        raise CliError("missing --preset or --config")
    cfg = _apply_overrides(cfg, args.set or [])
    return _scenario_from_config(cfg)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("PENDUFLOW_OUT") or "."
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"out: cannot create directory {out!r}: {exc}") from None
    if not os.access(path, os.W_OK):
        raise CliError(f"out: directory {out!r} is not writable")
    return path


def _cmd_simulate(args) -> int:
    sc = _load_scenario(args)
    traj = sim.integrate_full(sc)
    out = _out_dir(args)
    csv_path = out / f"{sc.label}.csv"
    sim.write_trajectory_csv(traj, csv_path)
    print(f"wrote {csv_path} ({len(traj.times)} rows)")
    if traj.aborted:
        print("warning: run aborted on non-finite state", file=sys.stderr)
    if traj.n_saturated:
        print(f"warning: {traj.n_saturated} current samples saturated "
              f"at ±{sc.sat_limit} A", file=sys.stderr)
    if args.format == "csv+svg":
        t = traj.times
        svg.line_chart(out / f"{sc.label}_P.svg", [(t, traj.P, "P")],
                       title=f"{sc.label}: energy partition", xlabel="t (s)", ylabel="P")
        svg.line_chart(out / f"{sc.label}_Q.svg", [(t, traj.Q, "Q")],
                       title=f"{sc.label}: coherency index", xlabel="t (s)", ylabel="Q")
        svg.line_chart(out / f"{sc.label}_orbit.svg",
                       [(traj.states[:, 0], traj.states[:, 2], "")],
                       title=f"{sc.label}: configuration plane",
                       xlabel="phi1 (rad)", ylabel="phi2 (rad)")
        print(f"wrote {sc.label}_P.svg, {sc.label}_Q.svg, {sc.label}_orbit.svg in {out}")
    return 0


def _cmd_slowflow(args) -> int:
    sc = _load_scenario(args)
    traj = sim.integrate_slow(sc, fast_phase=args.fast_phase)
    out = _out_dir(args)
    csv_path = out / f"{sc.label}_slow.csv"
    sim.write_trajectory_csv(traj, csv_path)
    print(f"wrote {csv_path} ({len(traj.times)} rows)")
    if traj.localized:
        print(f"localization reached at t = {traj.localization_time}")
    if traj.energy_floor:
        print("energy floor reached")
    if args.format == "csv+svg":
        t = traj.times
        svg.line_chart(out / f"{sc.label}_slow_P.svg", [(t, traj.P, "P")],
                       title=f"{sc.label}: averaged partition", xlabel="t (s)", ylabel="P")
        svg.line_chart(out / f"{sc.label}_slow_Q.svg", [(t, traj.Q, "Q")],
                       title=f"{sc.label}: averaged coherency", xlabel="t (s)", ylabel="Q")
        print(f"wrote {sc.label}_slow_P.svg, {sc.label}_slow_Q.svg in {out}")
    return 0


def _cmd_compare(args) -> int:
    try:
        full = sim.read_trajectory_csv(args.full)
        slow = sim.read_trajectory_csv(args.slow)
    except (OSError, ValueError) as exc:
        raise CliError(f"compare: {exc}") from None
    report = sim.compare(full, slow)
    payload = {
        "rms_P": report.rms_P,
        "rms_Q": report.rms_Q,
        "max_abs_P_error": report.max_abs_P_error,
        "localization_time_full": report.localization_time_full,
        "localization_time_slow": report.localization_time_slow,
    }
    text = json.dumps(payload, indent=2)
    print(text)
    if args.out_file:
        Path(args.out_file).write_text(text + "\n", encoding="utf-8")
    return 0


def _cmd_streamlines(args) -> int:
    params = preset(args.kit)
    from .params import derive_unitless

    u = derive_unitless(params)
    cur = CurrentPair(args.i1, args.i2)
    field = streamline_field(args.energy, cur, u, params, n_delta=args.grid, n_p=args.grid)
    points = find_stationary_points(args.energy, cur, u, params)
    out = _out_dir(args)
    base = f"streamlines_{args.kit}_E{args.energy:g}"
    field_path = out / f"{base}.csv"
    with open(field_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["Delta", "P", "dDelta_dt", "dP_dt"])
        for i, d in enumerate(field["delta"]):
            for j, pv in enumerate(field["p"]):
                w.writerow([f"{d:.17g}", f"{pv:.17g}",
                            f"{field['ddelta'][i, j]:.17g}", f"{field['dp'][i, j]:.17g}"])
    points_path = out / f"{base}_points.csv"
    with open(points_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["Delta", "P", "kind", "eig_re1", "eig_im1", "eig_re2", "eig_im2"])
        for pt in points:
            w.writerow([f"{pt.Delta:.17g}", f"{pt.P:.17g}", pt.kind.value,
                        f"{pt.eig_real[0]:.17g}", f"{pt.eig_imag[0]:.17g}",
                        f"{pt.eig_real[1]:.17g}", f"{pt.eig_imag[1]:.17g}"])
    print(f"wrote {field_path} and {points_path} ({len(points)} stationary points)")
    if args.format == "csv+svg":
        svg.field_chart(
            out / f"{base}.svg", field["delta"], field["p"],
            field["ddelta"], field["dp"],
            points=[(pt.Delta, pt.P, pt.kind.value) for pt in points],
            title=f"envelope field, E = {args.energy:g}, i = ({args.i1:g}, {args.i2:g})",
        )
        print(f"wrote {base}.svg in {out}")
    return 0


def _cmd_stability_map(args) -> int:
    params = preset(args.kit)
    from .params import derive_unitless

    u = derive_unitless(params)
    rows = stability_map(u, params, grid=args.grid, current_range=args.range)
    out = _out_dir(args)
    path = out / f"stability_map_{args.kit}.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["i1", "i2", "omega1_sq", "omega2_sq", "class"])
        for i1, i2, w1, w2, cls in rows:
            w.writerow([f"{i1:.17g}", f"{i2:.17g}", f"{w1:.17g}", f"{w2:.17g}", cls])
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def _cmd_presets(args) -> int:
    for name in sim.PRESET_NAMES:
        sc = sim.preset_scenario(name)
        init = "slow" if not isinstance(sc.initial, MechState) else "mech"
        print(f"{name:12s} {sc.controller.kind:17s} {init:5s} t_end={sc.t_end:g}s")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="penduflow",
        description="Coupled magnetic pendulum simulation and energy-flow control",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_args(sp):
        sp.add_argument("--preset", help="named benchmark scenario (see `presets`)")
        sp.add_argument("--config", help="scenario JSON file")
        sp.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="dotted-key override, e.g. controller.i0=0.5")
        sp.add_argument("--out", help="output directory (default $PENDUFLOW_OUT or .)")
        sp.add_argument("--format", choices=("csv", "csv+svg"), default="csv")

    sp = sub.add_parser("simulate", help="integrate the full nonsmooth plant")
    add_run_args(sp)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("slowflow", help="integrate the averaged envelope model")
    add_run_args(sp)
    sp.add_argument("--fast-phase", action="store_true",
                    help="also accumulate the carrier phase by quadrature")
    sp.set_defaults(func=_cmd_slowflow)

    sp = sub.add_parser("compare", help="deviation metrics between two trajectory CSVs")
    sp.add_argument("--full", required=True, help="full-model trajectory CSV")
    sp.add_argument("--slow", required=True, help="averaged-model trajectory CSV")
    sp.add_argument("--out-file", help="optional JSON report path")
    sp.set_defaults(func=_cmd_compare)

    sp = sub.add_parser("streamlines", help="frozen-E envelope field and stationary points")
    sp.add_argument("--kit", choices=("large", "small"), default="large")
    sp.add_argument("--energy", type=float, default=20.0)
    sp.add_argument("--i1", type=float, default=0.0)
    sp.add_argument("--i2", type=float, default=0.0)
    sp.add_argument("--grid", type=int, default=41)
    sp.add_argument("--out", help="output directory")
    sp.add_argument("--format", choices=("csv", "csv+svg"), default="csv")
    sp.set_defaults(func=_cmd_streamlines)

    sp = sub.add_parser("stability-map", help="equilibrium classification over a current grid")
    sp.add_argument("--kit", choices=("large", "small"), default="large")
    sp.add_argument("--grid", type=int, default=41)
    sp.add_argument("--range", type=float, default=0.3)
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_stability_map)

    sp = sub.add_parser("presets", help="list named scenarios")
    sp.set_defaults(func=_cmd_presets)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
