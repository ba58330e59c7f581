"""Command line entry point.

    snapshot-qaoa <subcommand> [--config file] [--set key=value ...]
                  [--out dir] [--seed n]

Every subcommand prints a JSON summary on stdout; sweep subcommands also
write a CSV (documented headers below) plus a provenance sidecar into the
output directory. Worker-pool size for heatmap cells comes from the
SNAPSHOT_QAOA_WORKERS environment variable.

CSV headers:
  converge / heatmap records:
    rows,cols,J1,J2,Bx,p,T_used,energy_unrefined,energy_refined,
    ground_energy,gap,rel_err,non_monotone
  heatmap matrix: J2,Bx,min_p           (min_p = -1 when cap was hit)
  curve and grid-t trace: T,energy
  regress: p,t_star                     (fit lives in the sidecar)
  period-scaling: p,rho_over_pi,rho_float
  tqa-maxcut: T,energy,ratio
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import experiments, runio
from .eigensolver import ConvergenceError, ground_spectrum
from .hamiltonian import hamiltonian_from_spec, normalize
from .optimizer import grid_search_T, refine_bfgs, t_grid
from .schedule import RationalAngle, default_rho1, make_schedule, period
from .statevector import run_snapshot_qaoa, snapshot_energies

RECORD_HEADER = ["rows", "cols", "J1", "J2", "Bx", "p", "T_used",
                 "energy_unrefined", "energy_refined", "ground_energy",
                 "gap", "rel_err", "non_monotone"]


def _record_row(rec):
    row = dict(rec.instance)
    row.update({
        "p": rec.p,
        "T_used": rec.T_used,
        "energy_unrefined": rec.energy_unrefined,
        "energy_refined": rec.energy_refined,
        "ground_energy": rec.ground_energy,
        "gap": rec.gap,
        "rel_err": rec.rel_err,
        "non_monotone": rec.non_monotone,
    })
    return row


def _angles(cfg, key, fallback=None):
    raw = cfg[key] if cfg.values.get(key) is not None else fallback
    if raw is None:
        return None
    return RationalAngle(Fraction(raw))


def _cmd_gs(cfg, out):
    H = hamiltonian_from_spec(cfg["hamiltonian"])
    res = ground_spectrum(H, tol=cfg["tol"], max_iter=cfg["max_iter"],
                          seed=cfg["seed"])
    return {"ground_energy": res.ground_energy, "gap": res.gap,
            "iterations": res.iterations, "residual": res.residual}


def _cmd_run(cfg, out):
    H = hamiltonian_from_spec(cfg["hamiltonian"])
    psi, e = run_snapshot_qaoa(H, cfg["p"], cfg["T"])
    ground = ground_spectrum(H).ground_energy
    if cfg["amplitudes_path"]:
        # interleaved little-endian float64 real/imag pairs, index order
        with open(cfg["amplitudes_path"], "wb") as fh:
            fh.write(np.ascontiguousarray(psi, dtype="<c16").tobytes())
    return {"energy": e, "ground_energy": ground,
            "rel_err": experiments.rel_error(e, ground)}


def _cmd_period(cfg, out):
    rho0 = _angles(cfg, "rho0")
    rho1 = _angles(cfg, "rho1", fallback=None)
    if rho1 is None:
        rho1 = default_rho1(Fraction(cfg["J2"]))
    rho = period(cfg["p"], Fraction(cfg["c1_hat"]), rho0, rho1)
    if rho is None:
        return {"rho_over_pi": None, "rho_float": None,
                "reason": "period unavailable for non-rational c1_hat"}
    return {"rho_over_pi": str(rho), "rho_float": float(rho)}


def _cmd_grid_t(cfg, out):
    H = hamiltonian_from_spec(cfg["hamiltonian"])
    p = cfg["p"]
    t_hi = cfg["t_hi"] if cfg["t_hi"] is not None else float(p)
    res = grid_search_T(H, p, cfg["t_lo"], t_hi, cfg["dt_step"])
    if cfg["trace"]:
        grid = t_grid(cfg["t_lo"], t_hi, cfg["dt_step"])
        energies = snapshot_energies(H, p, grid)
        rows = ({"T": float(t), "energy": float(e)}
                for t, e in zip(grid, energies))
        runio.emit_records(rows, ["T", "energy"],
                           os.path.join(out, "grid-t.csv"),
                           os.path.join(out, "grid-t.sidecar.json"), cfg)
    return {"t_star_approx": res.t_star_approx, "energy": res.energy,
            "evaluated_points": res.evaluated_points}


def _cmd_refine(cfg, out):
    H = hamiltonian_from_spec(cfg["hamiltonian"])
    p = cfg["p"]
    T = cfg["T"]
    if T is None:
        T = grid_search_T(H, p, dt_step=cfg["dt_step"]).t_star_approx
    sched = make_schedule(p, T, normalize(H).c1_hat)
    res = refine_bfgs(H, p, sched, max_iter=cfg["max_iter"],
                      grad_tol=cfg["grad_tol"])
    return {"T": T, "energy": res.energy, "iterations": res.iterations,
            "grad_norm": res.grad_norm, "monotone": res.monotone_flag,
            "line_search_failed": res.line_search_failed,
            "betas": res.betas.tolist(), "gammas": res.gammas.tolist()}


def _cmd_converge(cfg, out):
    ham = cfg["hamiltonian"]
    H = hamiltonian_from_spec(ham)
    records = experiments.convergence_sweep(
        H, cfg["p_max"], refine=cfg["refine"], dt_step=cfg["dt_step"],
        instance=ham, epsilon=cfg["epsilon"])
    n = runio.emit_records((_record_row(r) for r in records), RECORD_HEADER,
                           os.path.join(out, "converge.csv"),
                           os.path.join(out, "converge.sidecar.json"), cfg)
    return {"records": n, "final_rel_err": records[-1].rel_err}


def _cmd_heatmap(cfg, out):
    p_cap = cfg["p_cap"]
    if p_cap is None:
        p_cap = 20 if cfg["refine"] else 250
    matrix, records = experiments.threshold_heatmap(
        cfg["J2_grid"], cfg["Bx_grid"], epsilon=cfg["epsilon"], p_cap=p_cap,
        refine=cfg["refine"], rows=cfg["rows"], cols=cfg["cols"],
        J1=cfg["J1"], dt_step=cfg["dt_step"], workers=cfg["workers"])
    cells = ({"J2": float(j2), "Bx": float(bx),
              "min_p": int(matrix[i, j])}
             for i, bx in enumerate(cfg["Bx_grid"])
             for j, j2 in enumerate(cfg["J2_grid"]))
    n = runio.emit_records(cells, ["J2", "Bx", "min_p"],
                           os.path.join(out, "heatmap.csv"),
                           os.path.join(out, "heatmap.sidecar.json"), cfg)
    runio.emit_records((_record_row(r) for r in records), RECORD_HEADER,
                       os.path.join(out, "heatmap_records.csv"),
                       os.path.join(out, "heatmap_records.sidecar.json"), cfg)
    return {"cells": n, "capped": int((matrix == -1).sum())}


def _cmd_curve(cfg, out):
    H = hamiltonian_from_spec(cfg["hamiltonian"])
    p = cfg["p"]
    t_hi = cfg["t_hi"] if cfg["t_hi"] is not None else float(p)
    pts = experiments.energy_vs_T_curve(H, p, cfg["t_lo"], t_hi,
                                        cfg["samples"])
    rows = ({"T": t, "energy": e} for t, e in pts)
    n = runio.emit_records(rows, ["T", "energy"],
                           os.path.join(out, "curve.csv"),
                           os.path.join(out, "curve.sidecar.json"), cfg)
    return {"records": n, "min_energy": min(e for _, e in pts)}


def _cmd_regress(cfg, out):
    H = hamiltonian_from_spec(cfg["hamiltonian"])
    fit = experiments.regression_T_vs_p(H, cfg["p_max"], cfg["dt_step"])
    rows = ({"p": int(p), "t_star": t} for p, t in fit.points)
    extra = {"slope": fit.slope, "intercept": fit.intercept,
             "pearson_r": None if fit.pearson_r != fit.pearson_r
             else fit.pearson_r}
    runio.emit_records(rows, ["p", "t_star"],
                       os.path.join(out, "regress.csv"),
                       os.path.join(out, "regress.sidecar.json"), cfg,
                       extra=extra)
    return {"slope": fit.slope, "intercept": fit.intercept,
            "pearson_r": extra["pearson_r"]}


def _cmd_period_scaling(cfg, out):
    rho0 = _angles(cfg, "rho0")
    rho1 = _angles(cfg, "rho1", fallback=None)
    if rho1 is None:
        rho1 = default_rho1(Fraction(cfg["J2"]))
    data = experiments.period_scaling(Fraction(cfg["c1_hat"]), rho0, rho1,
                                      cfg["p_max"])
    rows = ({"p": p, "rho_over_pi": str(rho), "rho_float": float(rho)}
            for p, rho in data)
    n = runio.emit_records(rows, ["p", "rho_over_pi", "rho_float"],
                           os.path.join(out, "period-scaling.csv"),
                           os.path.join(out, "period-scaling.sidecar.json"),
                           cfg)
    return {"records": n}


def _cmd_tqa_maxcut(cfg, out):
    p = cfg["p"]
    t_max = cfg["t_max"] if cfg["t_max"] is not None else float(p)
    pts = experiments.tqa_maxcut_replication(
        n=cfg["n"], degree=cfg["degree"], seed=cfg["seed"], p=p,
        t_samples=cfg["t_samples"], t_max=t_max)
    rows = ({"T": t, "energy": e, "ratio": r} for t, e, r in pts)
    n = runio.emit_records(rows, ["T", "energy", "ratio"],
                           os.path.join(out, "tqa-maxcut.csv"),
                           os.path.join(out, "tqa-maxcut.sidecar.json"), cfg)
    return {"records": n, "max_ratio": max(r for _, _, r in pts)}


_COMMANDS = {
    "gs": _cmd_gs,
    "run": _cmd_run,
    "period": _cmd_period,
    "grid-t": _cmd_grid_t,
    "refine": _cmd_refine,
    "converge": _cmd_converge,
    "heatmap": _cmd_heatmap,
    "curve": _cmd_curve,
    "regress": _cmd_regress,
    "period-scaling": _cmd_period_scaling,
    "tqa-maxcut": _cmd_tqa_maxcut,
}


def _parse_set(pairs):
    """key=value overrides; values parsed as JSON, dotted keys nest."""
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise runio.ConfigError(f"--set expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        try:
            val = json.loads(raw)
        except json.JSONDecodeError:
            val = raw
        target = out
        parts = key.split(".")
        for part in parts[:-1]:
            target = target.setdefault(part, {})
        target[parts[-1]] = val
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="snapshot-qaoa",
        description="Partial-anneal QAOA statevector simulator and "
                    "experiment harness")
    parser.add_argument("subcommand", choices=sorted(_COMMANDS))
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="inline config override (JSON-parsed value)")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, help="override the config seed")
    args = parser.parse_args(argv)

    try:
        overrides = _parse_set(args.set)
        if args.seed is not None:
            overrides["seed"] = args.seed
        cfg = runio.parse_config(args.subcommand, args.config, overrides)
    except runio.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return runio.EXIT_CONFIG

    os.makedirs(args.out, exist_ok=True)
    try:
        summary = _COMMANDS[args.subcommand](cfg, args.out)
    except (ConvergenceError, FloatingPointError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return runio.EXIT_NUMERIC
    except OSError as exc:
        print(f"io failure: {exc}", file=sys.stderr)
        return runio.EXIT_IO
    print(json.dumps(summary, sort_keys=True))
    return runio.EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
