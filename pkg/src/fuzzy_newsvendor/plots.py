"""SVG figure rendering for the CLI report tables.

One figure per table, written next to the CSV it mirrors. Timestamps are
stripped from the SVG metadata so reruns stay comparable.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_SVG_METADATA = {"Date": None}


def _save(fig, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)
    return path


def _series(rows, key_idx, x_idx, y_idx):
    grouped = defaultdict(list)
    for row in rows:
        key = tuple(row[i] for i in key_idx)
        grouped[key].append((row[x_idx], row[y_idx]))
    return grouped


def density_figure(rows, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (weight, beta), points in sorted(_series(rows, (0, 1), 2, 3).items()):
        xs, ys = zip(*points)
        ax.plot(xs, ys, lw=0.8, label=f"{weight}, beta={beta:g}")
    ax.set_xlabel("demand")
    ax.set_ylabel("density")
    if len({row[0] for row in rows}) * len({row[1] for row in rows}) <= 12:
        ax.legend(fontsize=7)
    return _save(fig, path)


def moments_figure(rows, path: Path) -> Path:
    fig, (ax_mean, ax_var) = plt.subplots(1, 2, figsize=(9, 4))
    for (weight,), points in sorted(_series(rows, (0,), 1, 2).items()):
        xs, ys = zip(*points)
        ax_mean.plot(xs, ys, marker=".", label=weight)
    for (weight,), points in sorted(_series(rows, (0,), 1, 3).items()):
        xs, ys = zip(*points)
        ax_var.plot(xs, ys, marker=".", label=weight)
    ax_mean.set_xlabel("risk factor")
    ax_mean.set_ylabel("expected demand")
    ax_var.set_xlabel("risk factor")
    ax_var.set_ylabel("demand variance")
    ax_mean.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def optimize_figure(rows, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (weight, cost), points in sorted(_series(rows, (0, 1), 2, 6).items()):
        xs, ys = zip(*points)
        ax.plot(xs, ys, marker=".", label=f"{weight}/{cost} fuzzy")
    for (weight, cost), points in sorted(_series(rows, (0, 1), 2, 3).items()):
        xs, ys = zip(*points)
        ax.plot(xs, ys, ls="--", lw=0.8, label=f"{weight}/{cost} mean weight")
    ax.set_xlabel("risk factor")
    ax.set_ylabel("order quantity")
    ax.legend(fontsize=7)
    return _save(fig, path)


def profit_figure(rows, path: Path) -> Path:
    fig, (ax_exp, ax_var) = plt.subplots(1, 2, figsize=(9, 4))
    for (weight, cost), points in sorted(_series(rows, (0, 1), 2, 4).items()):
        xs, ys = zip(*points)
        ax_exp.plot(xs, ys, marker=".", label=f"{weight}/{cost}")
    for (weight, cost), points in sorted(_series(rows, (0, 1), 2, 5).items()):
        xs, ys = zip(*points)
        ax_var.plot(xs, ys, marker=".", label=f"{weight}/{cost}")
    ax_exp.set_xlabel("risk factor")
    ax_exp.set_ylabel("optimal expected profit")
    ax_var.set_xlabel("risk factor")
    ax_var.set_ylabel("profit variance at the optimum")
    ax_exp.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def compare_figure(rows, path: Path) -> Path:
    defined = [row for row in rows if row[8] == "ok"]
    fig, (ax_benefit, ax_var) = plt.subplots(1, 2, figsize=(10, 4))
    for (weight, cost, cand), points in sorted(_series(defined, (0, 1, 3), 2, 6).items()):
        xs, ys = zip(*points)
        ax_benefit.plot(xs, ys, marker=".", ms=3, label=f"{weight}/{cost}/{cand}")
    for (weight, cost, cand), points in sorted(_series(defined, (0, 1, 3), 2, 7).items()):
        xs, ys = zip(*points)
        ax_var.plot(xs, ys, marker=".", ms=3, label=f"{weight}/{cost}/{cand}")
    ax_benefit.set_xlabel("risk factor")
    ax_benefit.set_ylabel("benefit ratio")
    ax_var.set_xlabel("risk factor")
    ax_var.set_ylabel("profit variance change")
    ax_benefit.legend(fontsize=6)
    fig.tight_layout()
    return _save(fig, path)


def rating_sweep_figure(rows, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ok_rows = [row for row in rows if row[1] == "ok"]
    if ok_rows:
        xs = [row[0] for row in ok_rows]
        for idx, label in zip(range(3, 7), ("p1", "p2", "p3", "p4")):
            ax.plot(xs, [row[idx] for row in ok_rows], lw=1.0, label=label)
    ax.set_xlabel("mean rating")
    ax.set_ylabel("derived weight legs")
    ax.legend(fontsize=8)
    return _save(fig, path)


def weight_membership_figure(rows, path: Path) -> Path:
    (row,) = rows
    p1, p2, p3, p4 = row[11], row[12], row[13], row[14]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([0.0, p1, p2, p3, p4, 1.0], [0.0, 0.0, 1.0, 1.0, 0.0, 0.0], lw=1.5)
    ax.set_xlabel("review weight")
    ax.set_ylabel("membership")
    ax.set_ylim(-0.05, 1.1)
    return _save(fig, path)
