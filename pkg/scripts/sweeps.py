"""101x101 (theta, phi) grids of every sweep observable for both families."""

import argparse
import time
from pathlib import Path

from lazywalk.cli import cmd_sweep
from lazywalk.records import to_csv
from lazywalk.sweep import OBSERVABLES, SweepConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=101)
    ap.add_argument("--steps", type=int, default=100, help="finite time for entropy_t")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for family in (1, 2):
        for obs in OBSERVABLES:
            start = time.perf_counter()
            cfg = SweepConfig(family=family, observable=obs, theta_steps=args.grid,
                              phi_steps=args.grid, t=args.steps)
            rec = cmd_sweep(cfg, args.workers)
            path = args.outdir / f"sweep_f{family}_{obs}.csv"
            path.write_text(to_csv(rec))
            vals = [r[2] for r in rec.rows if r[2] is not None]
            print(f"{path}: [{min(vals):.4f}, {max(vals):.4f}] in {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
