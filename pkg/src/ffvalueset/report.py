"""Figures and delimited files written next to CLI reports."""

from __future__ import annotations

import csv
import os
from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# no timestamps or version strings, so reruns give identical files
_META = {"Software": None}


def _savefig(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return path


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


REPORT_HEADER = ["map", "field", "subfield", "n", "deg", "deg_l", "missed", "bound_num", "bound_den",
                 "applicable", "satisfied"]


def report_row(label, r):
    j = r.to_json()
    return [label] + [j[k] for k in REPORT_HEADER[1:]]


def plot_slack(sweep, path):
    """Bar chart of missed - bound over all applicable (map, subfield) pairs."""
    items = sorted(sweep.slack.items())
    fig, ax = plt.subplots(figsize=(6, 3.5))
    if items:
        labels = [str(k) for k, _ in items]
        ax.bar(range(len(items)), [v for _, v in items], color="#4477aa")
        ax.set_xticks(range(len(items)))
        ax.set_xticklabels(labels)
    else:
        ax.text(0.5, 0.5, "no applicable maps", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("slack (missed - bound)")
    ax.set_ylabel("count")
    ax.set_title(f"GF({sweep.field}), n={sweep.n}: {sweep.maps} maps, {len(sweep.violations)} violations")
    return _savefig(fig, path)


def plot_bounds(reports, path, title=""):
    """Missed count against the lower bound for each subfield."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = range(len(reports))
    missed = [r.missed_count for r in reports]
    bounds = [0 if r.bound is None else r.bound.numerator / r.bound.denominator for r in reports]
    ax.bar([x - 0.2 for x in xs], missed, width=0.4, label="missed", color="#4477aa")
    ax.bar([x + 0.2 for x in xs], bounds, width=0.4, label="bound", color="#ee6677")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"q={r.q}" for r in reports])
    ax.set_ylabel("points")
    ax.legend()
    if title:
        ax.set_title(title)
    return _savefig(fig, path)


def plot_fibers(img, path, title=""):
    """Histogram of fiber sizes, zero-size fibers being the missed points."""
    hist = Counter(int(c) for c in img.counts)
    sizes = sorted(hist)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar([str(s) for s in sizes], [hist[s] for s in sizes], color="#228833")
    ax.set_xlabel("fiber size")
    ax.set_ylabel("codomain points")
    if title:
        ax.set_title(title)
    return _savefig(fig, path)


def ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return path
