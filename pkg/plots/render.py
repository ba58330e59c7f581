#!/usr/bin/env python3
"""Render figures from the simulator's CSV outputs.

    python3 plots/render.py --kind <figure-kind> --csv <paths...> --out <file>

Figure kinds and their expected CSV headers:
  convergence     rows,cols,J1,J2,Bx,p,T_used,energy_unrefined,
                  energy_refined,ground_energy,gap,rel_err,non_monotone
                  (the `converge` subcommand output); vertical cyan lines
                  mark non-monotone p values, a green line marks the
                  ground energy
  heatmap         J2,Bx,min_p; sentinel cells (min_p = -1, threshold never
                  reached) get their own color and legend entry
  energy-vs-t     T,energy; a vertical green line marks T = p when p is
                  known (from the CSV's sidecar or --p)
  regression      p,t_star; scatter plus a least-squares overlay that is
                  cross-checked against the sidecar's reported slope
  period-scaling  p,rho_over_pi,rho_float; log-scale period growth
  tqa-ratio       T,energy,ratio; approximation-ratio curve

This tool reads only CSV/JSON files; it never imports the simulation
package. Output is deterministic for identical inputs: no timestamps are
embedded (SVG dates are stripped) so repeated runs are byte-identical.
"""

import argparse
import csv
import json
import os
import sys

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "snapshot-qaoa-plots"  # stable SVG ids
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

SENTINEL = -1


class RenderError(Exception):
    pass


def read_csv(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise RenderError(f"{path}: {exc}") from exc
    if not rows:
        raise RenderError(f"{path}: no data rows")
    return rows


def column(rows, path, name, kind=float):
    if name not in rows[0]:
        raise RenderError(
            f"{path}: missing column {name!r} (have {sorted(rows[0])})")
    out = []
    for row in rows:
        raw = row[name]
        if kind is bool:
            out.append(raw == "true")
        elif raw == "":
            out.append(np.nan)
        else:
            out.append(kind(raw))
    return out if kind is bool else np.array(out, dtype=float)


def sidecar_for(path):
    base, _ = os.path.splitext(path)
    candidate = base + ".sidecar.json"
    if os.path.exists(candidate):
        with open(candidate) as fh:
            return json.load(fh)
    return None


def new_figure():
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=120)
    return fig, ax


def render_convergence(paths, args):
    fig, ax = new_figure()
    for path in paths:
        rows = read_csv(path)
        p = column(rows, path, "p")
        unrefined = column(rows, path, "energy_unrefined")
        refined = column(rows, path, "energy_refined")
        ground = column(rows, path, "ground_energy")
        flags = column(rows, path, "non_monotone", kind=bool)
        label = os.path.splitext(os.path.basename(path))[0]
        ax.plot(p, unrefined, marker="o", ms=3, lw=1, label=label)
        if not np.all(np.isnan(refined)):
            ax.plot(p, refined, marker="s", ms=3, lw=1,
                    label=f"{label} (refined)")
        for pk, flag in zip(p, flags):
            if flag:
                ax.axvline(pk, color="cyan", lw=1, zorder=0)
        ax.axhline(ground[0], color="green", lw=1, ls="--")
    ax.set_xlabel("p")
    ax.set_ylabel("energy")
    ax.legend(fontsize=8)
    return fig


def render_heatmap(paths, args):
    path = paths[0]
    rows = read_csv(path)
    j2 = column(rows, path, "J2")
    bx = column(rows, path, "Bx")
    min_p = column(rows, path, "min_p")
    j2_axis = np.unique(j2)
    bx_axis = np.unique(bx)
    grid = np.full((bx_axis.size, j2_axis.size), np.nan)
    for a, b, m in zip(j2, bx, min_p):
        grid[np.searchsorted(bx_axis, b), np.searchsorted(j2_axis, a)] = m
    masked = np.ma.masked_equal(grid, SENTINEL)
    fig, ax = new_figure()
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("lightgray")
    im = ax.imshow(masked, origin="lower", aspect="auto", cmap=cmap,
                   extent=(j2_axis[0], j2_axis[-1], bx_axis[0], bx_axis[-1]))
    fig.colorbar(im, ax=ax, label="min p to threshold")
    if np.any(grid == SENTINEL):
        import matplotlib.patches as mpatches
        ax.legend(handles=[mpatches.Patch(color="lightgray",
                                          label="not reached")],
                  fontsize=8, loc="upper right")
    ax.set_xlabel("J2")
    ax.set_ylabel("Bx")
    return fig


def render_energy_vs_t(paths, args):
    fig, ax = new_figure()
    p_marker = args.p
    for path in paths:
        rows = read_csv(path)
        T = column(rows, path, "T")
        energy = column(rows, path, "energy")
        ax.plot(T, energy, lw=1,
                label=os.path.splitext(os.path.basename(path))[0])
        if p_marker is None:
            sidecar = sidecar_for(path)
            if sidecar and "p" in sidecar.get("config", {}):
                p_marker = sidecar["config"]["p"]
    if p_marker is not None:
        ax.axvline(float(p_marker), color="green", lw=1, label="T = p")
    ax.set_xlabel("T")
    ax.set_ylabel("energy")
    ax.legend(fontsize=8)
    return fig


def render_regression(paths, args):
    path = paths[0]
    rows = read_csv(path)
    p = column(rows, path, "p")
    t_star = column(rows, path, "t_star")
    pc = p - p.mean()
    slope = float(pc @ (t_star - t_star.mean())) / float(pc @ pc)
    intercept = float(t_star.mean() - slope * p.mean())
    sidecar = sidecar_for(path)
    if sidecar is not None and sidecar.get("slope") is not None:
        reported = float(sidecar["slope"])
        if abs(reported - slope) > 1e-9:
            raise RenderError(
                f"{path}: sidecar slope {reported} disagrees with the "
                f"recomputed fit {slope} (schema drift?)")
    fig, ax = new_figure()
    ax.scatter(p, t_star, s=14, label="T* per p")
    xs = np.array([p.min(), p.max()])
    ax.plot(xs, slope * xs + intercept, color="tab:red", lw=1,
            label=f"fit: slope {slope:.4f}")
    ax.set_xlabel("p")
    ax.set_ylabel("T*")
    ax.legend(fontsize=8)
    return fig


def render_period_scaling(paths, args):
    fig, ax = new_figure()
    for path in paths:
        rows = read_csv(path)
        p = column(rows, path, "p")
        rho = column(rows, path, "rho_float")
        ax.semilogy(p, rho, marker="o", ms=3, lw=1,
                    label=os.path.splitext(os.path.basename(path))[0])
    ax.set_xlabel("p")
    ax.set_ylabel("period rho")
    ax.legend(fontsize=8)
    return fig


def render_tqa_ratio(paths, args):
    fig, ax = new_figure()
    for path in paths:
        rows = read_csv(path)
        T = column(rows, path, "T")
        ratio = column(rows, path, "ratio")
        ax.plot(T, ratio, lw=1,
                label=os.path.splitext(os.path.basename(path))[0])
    ax.set_xlabel("T")
    ax.set_ylabel("approximation ratio")
    ax.set_ylim(top=1.05)
    ax.legend(fontsize=8)
    return fig


KINDS = {
    "convergence": render_convergence,
    "heatmap": render_heatmap,
    "energy-vs-t": render_energy_vs_t,
    "regression": render_regression,
    "period-scaling": render_period_scaling,
    "tqa-ratio": render_tqa_ratio,
}


def save(fig, out):
    ext = os.path.splitext(out)[1].lower()
    if ext not in (".png", ".svg"):
        raise RenderError(f"unsupported output format {ext!r} "
                          "(use .png or .svg)")
    # strip the SVG date stamp so repeated runs are byte-identical
    fig.savefig(out, metadata={"Date": None} if ext == ".svg" else None)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render figures from simulator CSV outputs")
    parser.add_argument("--kind", required=True, choices=sorted(KINDS))
    parser.add_argument("--csv", required=True, nargs="+",
                        help="input CSV file(s)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--p", type=float, default=None,
                        help="override for the T = p marker position")
    args = parser.parse_args(argv)
    try:
        fig = KINDS[args.kind](args.csv, args)
        save(fig, args.out)
    except RenderError as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
