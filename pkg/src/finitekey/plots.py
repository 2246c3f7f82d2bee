"""Figure rendering for the CLI report paths.

Each report command writes its delimited output first; these helpers render
a PNG next to it from the same rows.  Rendering is best-effort presentation,
never a data path: the CSV remains the authoritative artifact.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def _finish(ax, title: str, out_path: str) -> None:
    ax.set_xscale("log")
    ax.set_xlabel("block size N")
    ax.set_ylabel("secret key fraction r")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    if ax.get_legend_handles_labels()[1]:
        ax.legend()
    fig = ax.figure
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def render_bound_comparison(
    n_values: list[int],
    columns: dict[str, list[float]],
    out_path: str,
    title: str,
) -> None:
    """Rate-vs-N curves for several bounds (or drift scenarios) on one axis."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, rates in columns.items():
        points = [(n, r) for n, r in zip(n_values, rates) if r > 0.0]
        if points:
            ax.plot(*zip(*points), marker=".", label=label)
        else:
            ax.plot([], [], marker=".", label=f"{label} (no positive rate)")
    _finish(ax, title, out_path)


def render_sweep(
    n_values: list[int], rates: list[float], out_path: str, title: str
) -> None:
    """Single rate-vs-N curve for a sweep or an optimal-block-size report."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    positive = [(n, r) for n, r in zip(n_values, rates) if r > 0.0]
    if positive:
        ax.plot(*zip(*positive), marker=".", color="tab:blue")
    _finish(ax, title, out_path)
