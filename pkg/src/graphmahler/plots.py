"""Optional figure rendering for CLI reports.

Figures are a convenience layered on top of the delimited output; the CSV
stays the deliverable of record.  Uses the Agg backend so rendering works
headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .lehmer import SearchHit
from .quotients import GrowthSeries


def render_growth_plot(series: GrowthSeries, target_log_mahler: float | None,
                       path: str, title: str = "complexity growth") -> None:
    """Normalized rate (1/index) log kappa per lattice, with the log Mahler
    measure of the Laplacian polynomial as a horizontal reference line."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    indices = [e.index for e in series.entries]
    rates = [e.normalized_rate for e in series.entries]
    ax.plot(indices, rates, "o-", color="tab:blue", markersize=3,
            label=r"$\frac{1}{[\mathbb{Z}^d:\Lambda]}\log\kappa$")
    if target_log_mahler is not None:
        ax.axhline(target_log_mahler, color="tab:red", linestyle="--",
                   label=r"$\log M(D_G)$")
    ax.set_xlabel("lattice index")
    ax.set_ylabel("normalized growth rate")
    ax.set_title(title)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_search_plot(hits: list[SearchHit], path: str,
                       title: str = "small Mahler measures") -> None:
    """Ranked scatter of Mahler measures found by the exhaustive search."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    measures = [h.mahler.value for h in hits]
    ax.plot(range(1, len(measures) + 1), measures, ".", color="tab:blue")
    ax.axhline(1.17628, color="tab:red", linestyle="--", label="Lehmer's value")
    ax.set_xlabel("rank")
    ax.set_ylabel("Mahler measure")
    ax.set_title(title)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
