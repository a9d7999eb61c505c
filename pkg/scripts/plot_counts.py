"""
Plot count curves and histograms written by ``csplume run`` or ``csplume detect``.

Usage:
    python scripts/plot_counts.py WORKDIR [--out figure.png]

Needs the ``plot`` extra (matplotlib).
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("workdir", type=Path)
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    comparison = pd.read_csv(args.workdir / "comparison.csv")
    fig, (curves, hists) = plt.subplots(1, 2, figsize=(11, 4))
    curves.plot(comparison["frame"], comparison["count_raw"], label="raw")
    curves.plot(comparison["frame"], comparison["count_recon"], label="reconstructed")
    curves.set_xlabel("frame")
    curves.set_ylabel("pixels above threshold")
    curves.legend()

    for arm in ("raw", "recon"):
        path = args.workdir / f"histogram_{arm}.csv"
        if path.exists():
            table = pd.read_csv(path)
            hists.stairs(table["count"], [*table["bin_left"], table["bin_right"].iloc[-1]], label=arm)
    hists.set_yscale("log")
    hists.set_xlabel("statistic")
    hists.set_ylabel("pixels")
    hists.legend()

    fig.tight_layout()
    out = args.out or args.workdir / "counts.png"
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
