"""Snapshot-QAOA schedules and the exact T-period of the energy.

Shows the linear ramp (beta_k + gamma_k = tau/p at every layer), the TQA
special case, and the exact rational period computed as an LCM of
per-unitary periods, verified by simulation.
"""

from fractions import Fraction

import numpy as np

from snapshot_qaoa import (RationalAngle, WeightedGraph, default_rho0,
                           make_schedule, mirror_point, period,
                           run_snapshot_qaoa, tfim)


def main():
    s = make_schedule(p=5, T=2.0, c1_hat=0.5)
    print("schedule p=5, T=2, c1_hat=1/2 (tau = 1):")
    for k, (b, g) in enumerate(zip(s.betas, s.gammas), start=1):
        print(f"  k={k}: beta={b:.4f} gamma={g:.4f} sum={b + g:.4f}")
    print(f"  every layer sums to tau/p = {s.dt:.4f}")

    tqa = make_schedule(p=5, T=2.0, c1_hat=1.0)
    print(f"\nTQA limit (c1_hat = 1): beta_p = {tqa.betas[-1]} exactly")

    # 2-qubit instance with Bx = 1: c1_hat = 1/2, integer weights
    H = tfim(WeightedGraph(2, ((0, 1, -1.0),)), 1.0)
    rho = period(1, Fraction(1, 2), default_rho0(), RationalAngle(2))
    rho_f = float(rho)
    print(f"\nperiod at p=1, c1_hat=1/2: rho = {rho} * pi = {rho_f:.4f}")
    for T in (0.4, 1.3, 3.3):
        _, e = run_snapshot_qaoa(H, 1, T)
        _, e_shift = run_snapshot_qaoa(H, 1, T + rho_f)
        _, e_mirror = run_snapshot_qaoa(H, 1, mirror_point(T, rho_f))
        print(f"  T={T:4.1f}: E={e:+.10f} E(T+rho)={e_shift:+.10f} "
              f"E(rho-T)={e_mirror:+.10f}")


if __name__ == "__main__":
    main()
