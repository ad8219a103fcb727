"""Render scatter, depth-scaling and depth-distribution figures from the
CSV reports of the ferrtree CLI."""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


class FigureError(ValueError):
    pass


def read_scatter_csv(path):
    """Random samples plus the tagged naive/sa/topphatt marker rows."""
    samples = []
    tagged = {}
    with open(path) as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ["sample_id", "avg_wp", "avg_wcp"]:
            raise FigureError(f"{path}: not a scatter CSV (header {header})")
        for row in reader:
            if len(row) != 3:
                raise FigureError(f"{path}: malformed row {row}")
            tag, wp, wcp = row
            if tag in ("naive", "sa", "topphatt"):
                tagged[tag] = (float(wp), float(wcp))
            else:
                samples.append((float(wp), float(wcp)))
    if not samples:
        raise FigureError(f"{path}: no scatter samples")
    missing = {"naive", "sa", "topphatt"} - set(tagged)
    if missing:
        raise FigureError(f"{path}: missing tagged rows {sorted(missing)}")
    return np.array(samples), tagged


def render_scatter(csv_path, out_path, title: str | None = None):
    """Average-weight scatter with the four marker classes.

    Grey points are the random enumerations; the naive enumeration is a red
    diamond, simulated annealing an orange circle and the tree-optimized
    result a green cross.
    """
    samples, tagged = read_scatter_csv(csv_path)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.scatter(samples[:, 0], samples[:, 1], s=8, c="0.7", alpha=0.6,
               label="random enumerations")
    ax.scatter(*tagged["naive"], marker="D", c="tab:red", s=60, label="naive")
    ax.scatter(*tagged["sa"], marker="o", c="tab:orange", s=60,
               label="simulated annealing")
    ax.scatter(*tagged["topphatt"], marker="X", c="tab:green", s=80,
               label="TOPP-HATT")
    ax.set_xlabel("average Pauli-weight")
    ax.set_ylabel("average coefficient-scaled Pauli-weight")
    if title:
        ax.set_title(title)
    legend = ax.legend(fontsize=8)
    classes = [t.get_text() for t in legend.get_texts()]
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"path": out_path, "n_samples": len(samples), "classes": classes}


def read_depth_csv(path):
    rows = []
    with open(path) as f:
        reader = csv.reader(f)
        header = next(reader, None)
        want = ["encoding", "variant", "t", "epsilon", "n", "mean_depth",
                "std_depth"]
        if header != want:
            raise FigureError(f"{path}: not a depth CSV (header {header})")
        for row in reader:
            if len(row) != 7:
                raise FigureError(f"{path}: malformed row {row}")
            rows.append({
                "encoding": row[0], "variant": row[1], "t": float(row[2]),
                "epsilon": float(row[3]), "n": int(row[4]),
                "mean_depth": float(row[5]), "std_depth": float(row[6]),
            })
    if not rows:
        raise FigureError(f"{path}: empty depth CSV")
    return rows


def render_depth_curve(csv_path, out_path, encoding: str | None = None):
    """Mean depth vs evolution duration with a second-order polynomial fit."""
    rows = read_depth_csv(csv_path)
    if encoding is not None:
        rows = [r for r in rows if r["encoding"] == encoding]
    if not rows:
        raise FigureError(f"no rows for encoding {encoding!r}")
    fig, ax = plt.subplots(figsize=(5, 4))
    fits = {}
    for variant, color in (("naive", "tab:blue"), ("topphatt", "tab:orange")):
        sel = sorted((r for r in rows if r["variant"] == variant),
                     key=lambda r: r["t"])
        if not sel:
            continue
        ts = np.array([r["t"] for r in sel])
        means = np.array([r["mean_depth"] for r in sel])
        stds = np.array([r["std_depth"] for r in sel])
        ax.errorbar(ts, means, yerr=stds, fmt="o", ms=4, color=color,
                    label=variant)
        if len(sel) >= 3:
            coef = np.polynomial.polynomial.polyfit(ts, means, 2)
            grid = np.linspace(ts.min(), ts.max(), 200)
            ax.plot(grid, np.polynomial.polynomial.polyval(grid, coef),
                    "--", color=color, lw=1)
            fits[variant] = coef
    ax.set_yscale("log")
    ax.set_xlabel("evolution duration")
    ax.set_ylabel("mean circuit depth")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return fits


def render_depth_distribution(csv_path, out_path):
    """Per-encoding mean depth with one-standard-deviation error bars."""
    rows = read_depth_csv(csv_path)
    encodings = sorted({r["encoding"] for r in rows})
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = np.arange(len(encodings))
    for offset, (variant, color) in enumerate(
            (("naive", "tab:blue"), ("topphatt", "tab:orange"))):
        means, stds = [], []
        for enc in encodings:
            sel = [r for r in rows
                   if r["encoding"] == enc and r["variant"] == variant]
            means.append(sel[0]["mean_depth"] if sel else np.nan)
            stds.append(sel[0]["std_depth"] if sel else 0.0)
        ax.errorbar(xs + 0.12 * (offset - 0.5), means, yerr=stds, fmt="o",
                    color=color, label=variant, capsize=3)
    ax.set_xticks(xs)
    ax.set_xticklabels(encodings, rotation=30, ha="right")
    ax.set_ylabel("untranspiled circuit depth")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
