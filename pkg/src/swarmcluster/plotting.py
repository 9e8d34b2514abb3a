"""Convergence-curve rendering.

Figures are written as SVG with a pinned hash salt and no embedded
timestamp, so the output bytes depend only on the plotted data.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_SVG_SALT = "swarmcluster"


def convergence_plot(curves, out_path, title: str | None = None, ylabel: str = "best SICD"):
    """Render labeled best-so-far curves to an image file.

    ``curves`` is a sequence of (label, values) pairs.  The format follows
    the output suffix; ``.svg`` output is byte-deterministic for fixed
    input.
    """
    if not curves:
        raise ValueError("nothing to plot")
    out_path = Path(out_path)
    plt.rcParams["svg.hashsalt"] = _SVG_SALT
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, values in curves:
        ax.plot(range(1, len(values) + 1), values, label=str(label), linewidth=1.4)
    ax.set_xlabel("iteration")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, metadata={"Date": None} if out_path.suffix == ".svg" else None)
    plt.close(fig)
    return out_path
