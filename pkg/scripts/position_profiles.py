"""Position distributions at t = 100 for a localizing and a non-localizing start."""

import argparse
from pathlib import Path

import numpy as np

from lazywalk.observables import position_distribution
from lazywalk.records import RunRecord, to_csv
from lazywalk.walk import GROVER, evolve, make_initial_state

STARTS = {
    "localizing": (1j / np.sqrt(2), 0, 1 / np.sqrt(2)),
    "flat": (1 / np.sqrt(6), -2 / np.sqrt(6), 1 / np.sqrt(6)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, chi in STARTS.items():
        s = evolve(make_initial_state(chi), GROVER, args.steps)
        sites, probs = position_distribution(s)
        rec = RunRecord({"start": name, "t": args.steps}, ["n", "probability"],
                        [[int(n), float(p)] for n, p in zip(sites, probs)])
        path = args.outdir / f"position_{name}_t{args.steps}.csv"
        path.write_text(to_csv(rec))
        print(f"{path}: P(0) = {probs[sites == 0][0]:.4f}")


if __name__ == "__main__":
    main()
