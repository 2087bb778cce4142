"""Render the CLI's CSV reports as matplotlib figures."""

from __future__ import annotations

from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _positive(xs: Sequence[float], ys: Sequence[float]) -> tuple[list[float], list[float]]:
    pairs = [(x, y) for x, y in zip(xs, ys) if y > 0.0]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def save_trace_figure(rows: Sequence[tuple], path: str, title: str) -> None:
    """Two-panel figure of a purification run: 1-F (log scale) and the
    survival probability versus the step number."""
    steps = [r[0] for r in rows]
    deviation = [r[2] for r in rows]
    survival = [r[4] for r in rows]
    fig, (ax_dev, ax_surv) = plt.subplots(2, 1, sharex=True, figsize=(6.0, 6.5))
    xs, ys = _positive(steps, deviation)
    if ys:
        ax_dev.semilogy(xs, ys, "o-", color="tab:blue")
    ax_dev.set_ylabel(r"$1-F$")
    ax_dev.set_title(title)
    ax_surv.plot(steps, survival, "s-", color="tab:red")
    ax_surv.set_xlabel("purification step $n$")
    ax_surv.set_ylabel(r"survival $P(n)$")
    ax_surv.set_ylim(0.0, 1.05)
    for ax in (ax_dev, ax_surv):
        ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sweep_figure(rows: Sequence[tuple], path: str, title: str) -> None:
    """Final deviation 1-F versus noise strength."""
    thetas = [r[0] for r in rows]
    deviation = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    xs, ys = _positive(thetas, deviation)
    if ys:
        ax.semilogy(xs, ys, "o-", color="tab:blue")
    ax.set_xlabel(r"noise strength $\theta$")
    ax.set_ylabel(r"$1-F$")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_threshold_figure(rows: Sequence[tuple], path: str, title: str) -> None:
    """Horizontal bars of the tolerable noise strength per channel."""
    names = [r[0] for r in rows]
    thetas = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    positions = range(len(names))
    ax.barh(positions, thetas, color="tab:blue")
    ax.set_yticks(list(positions), names)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel(r"threshold noise strength $\theta$")
    ax.set_title(title)
    ax.grid(True, axis="x", which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
