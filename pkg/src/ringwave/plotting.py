"""Matplotlib renderers for the CLI report paths.

Each function takes plain arrays already computed by the CLI and writes one
figure file next to the delimited output.  The Agg backend is forced so the
renderers work headless.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_SOFTWARE_TAG = {"Software": "ringwave"}


def _save(fig, path: str) -> None:
    if str(path).lower().endswith(".png"):
        fig.savefig(path, dpi=150, metadata=_SOFTWARE_TAG)
    else:
        fig.savefig(path, dpi=150)
    plt.close(fig)


def save_profile_figure(path: str, blocks, title: str) -> None:
    """Site-occupancy snapshots: one curve per requested time."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for t, offsets, probs in blocks:
        ax.plot(offsets, probs, lw=1.2, label=f"t = {t:g}")
    ax.set_xlabel("site offset j")
    ax.set_ylabel("occupancy P_j")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)


def save_fidelity_figure(path: str, curves, title: str, analytic_label: str | None = None) -> None:
    """Fidelity vs time, one curve per receiver, optional analytic overlay."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for d, times, values, overlay in curves:
        (line,) = ax.plot(times, values, lw=1.2, label=f"d = {d}")
        if overlay is not None:
            ax.plot(times, overlay, ls="--", lw=1.0, color=line.get_color(), alpha=0.7)
    if analytic_label:
        ax.plot([], [], ls="--", color="gray", label=analytic_label)
    ax.set_xlabel("time t (units of 1/w)")
    ax.set_ylabel("fidelity F_d(t)")
    ax.set_ylim(bottom=0.0)
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)


def save_maxcurve_figure(path: str, curves, title: str) -> None:
    """Peak fidelity vs distance, one curve per hopping phase."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for theta, distances, peaks in curves:
        ax.plot(distances, peaks, marker="o", ms=3.5, lw=1.2, label=f"theta = {theta:.4g}")
    ax.set_xlabel("receiver distance d (sites)")
    ax.set_ylabel("peak fidelity F*")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)
