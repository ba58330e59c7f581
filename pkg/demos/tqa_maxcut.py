"""TQA special case on a Max-Cut instance.

With Bx = 0 the normalized coefficient is 1 and the snapshot schedule is
exactly the Trotterized-quantum-annealing ramp. The approximation ratio
<H>/E_H rises from 0 at T = 0 to a maximum inside [0, p].
"""

from snapshot_qaoa.experiments import tqa_maxcut_replication


def main():
    pts = tqa_maxcut_replication(n=12, degree=3, seed=7, p=5, t_samples=60)
    print("12-node 3-regular Max-Cut, p = 5 (H = sum ZZ):\n")
    best = max(pts, key=lambda q: q[2])
    for T, _, ratio in pts[::6]:
        bar = "#" * int(40 * max(ratio, 0.0))
        print(f"  T={T:5.2f} ratio={ratio:+.4f} {bar}")
    print(f"\nbest ratio {best[2]:.4f} at T = {best[0]:.2f}")


if __name__ == "__main__":
    main()
