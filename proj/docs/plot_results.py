"""Render the plot data written by `specsep analyze`.

    python3 docs/plot_results.py out/analysis [out/K_kinetics.csv]

Writes spectra.png and kinetics.png into the analysis directory. The
optional second argument overlays kinetics regenerated by `fit-rates`.
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def read_dat(path):
    with open(path) as f:
        names = f.readline().lstrip("#").split()
    return names, np.loadtxt(path, comments="#", ndmin=2)


def read_kinetics_csv(path):
    with open(path) as f:
        rows = list(csv.reader(f))
    times = np.array([float(t) for t in rows[0][1:]])
    return times, {r[0]: np.array([float(v) for v in r[1:]]) for r in rows[1:]}


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")

    fig, ax = plt.subplots(figsize=(10, 5))
    for path in sorted((out / "plot").glob("spectrum_*.dat")):
        names, data = read_dat(path)
        ax.plot(data[:, 0], data[:, 1], label=names[1])
    ax.set_xlabel("frequency")
    ax.set_ylabel("intensity")
    ax.legend()
    fig.savefig(out / "spectra.png", dpi=120)

    names, data = read_dat(out / "plot" / "kinetics.dat")
    fig, ax = plt.subplots(figsize=(10, 5))
    for i, name in enumerate(names[1:], start=1):
        (line,) = ax.plot(data[:, 0], data[:, i], label=name)
        if len(sys.argv) > 2:
            times, fitted = read_kinetics_csv(sys.argv[2])
            if name in fitted:
                ax.plot(times, fitted[name], ":", color=line.get_color())
    ax.set_xlabel("time")
    ax.set_ylabel("relative concentration")
    ax.legend()
    fig.savefig(out / "kinetics.png", dpi=120)


if __name__ == "__main__":
    main()
