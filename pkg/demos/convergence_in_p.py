"""Convergence of the best Snapshot-QAOA energy as depth p grows.

Runs the per-p sweep (grid-searched T each time) on a small instance and
prints the relative error trajectory, flagging non-monotone steps.
"""

from snapshot_qaoa import j1j2_tfim
from snapshot_qaoa.experiments import convergence_sweep


def main():
    H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
    records = convergence_sweep(H, p_max=12, refine=True, epsilon=0.01)
    print("3x3 torus, J2=0.5, Bx=1, refined sweep (stops at 1%):\n")
    print(f"{'p':>3} {'T*':>7} {'refined E':>14} {'rel err':>10}  flags")
    for rec in records:
        flag = "non-monotone" if rec.non_monotone else ""
        print(f"{rec.p:3d} {rec.T_used:7.2f} {rec.best_energy:14.8f} "
              f"{rec.rel_err:10.2e}  {flag}")
    print(f"\n1% threshold reached at p = {records[-1].p}")


if __name__ == "__main__":
    main()
