#!/usr/bin/env python3
"""Plot template for the CSV files the cohnet CLI emits.

Usage:
    cohnet between-vs-within --seed 1 --out results
    cohnet greedy-vs-optimal --seed 1 --out results
    python3 docs/plot_results.py results
"""

import pathlib
import sys

import matplotlib.pyplot as plt
import pandas as pd


def load(path: pathlib.Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def plot_between_vs_within(df: pd.DataFrame, out: pathlib.Path) -> None:
    fig, axes = plt.subplots(1, df["d_mode"].nunique(), figsize=(10, 4), squeeze=False)
    for ax, (mode, group) in zip(axes[0], df.groupby("d_mode")):
        ax.plot(group["k"], group["mean_h_s_between"], marker="o", label="between subgraphs")
        ax.plot(group["k"], group["mean_h_s_within"], marker="s", label="within subgraphs")
        ax.set_xlabel("edges added")
        ax.set_ylabel("mean coherence")
        ax.set_title(f"D = {mode}")
        ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    print(f"wrote {out}")


def plot_ratio(df: pd.DataFrame, out: pathlib.Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for mode, group in df.groupby("d_mode"):
        ax.plot(group["k"], group["mean_ratio"], marker="o", label=f"D = {mode}")
    ax.axhline(1.0, color="gray", linewidth=0.8)
    ax.set_xlabel("k")
    ax.set_ylabel("greedy / optimal coherence")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    print(f"wrote {out}")


def main() -> None:
    results = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "results")
    bw = results / "between_vs_within.csv"
    if bw.exists():
        plot_between_vs_within(load(bw), results / "between_vs_within.png")
    ratio = results / "greedy_vs_optimal.csv"
    if ratio.exists():
        plot_ratio(load(ratio), results / "greedy_vs_optimal.png")


if __name__ == "__main__":
    main()
