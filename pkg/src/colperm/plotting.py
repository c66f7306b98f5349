"""Figures for sampling and distribution reports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _figure(width: float = 6.0, height: float | None = None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    ax.tick_params(labelsize=9)
    return fig, ax


def plot_standardized_histogram(summary, path) -> None:
    """Histogram of standardized sample values against the standard normal density."""
    mu = float(eval_fraction(summary.mu))
    sd = math.sqrt(float(eval_fraction(summary.sigma_sq)))
    values, counts = np.array(summary.histogram()).T
    z = (values - mu) / sd
    fig, ax = _figure()
    # each integer value occupies a bar of width 1/sd in standardized units
    ax.bar(z, counts / (summary.N / sd), width=1.0 / sd, color="0.7", edgecolor="0.4", lw=0.3,
           label=f"{summary.stat}, N={summary.N}")
    grid = np.linspace(min(z.min(), -4), max(z.max(), 4), 400)
    ax.plot(grid, np.exp(-grid**2 / 2) / math.sqrt(2 * math.pi), "k-", lw=1.2, label="N(0,1)")
    ax.set_xlabel("standardized value", fontsize=10)
    ax.set_ylabel("density", fontsize=10)
    ax.set_title(f"class {summary.cycle_type}, n={summary.n}, r={summary.r}; "
                 f"KS={summary.ks_distance:.4f}", fontsize=9)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_distribution(coeffs, path, title: str = "") -> None:
    """Bar chart of an exact distribution given by polynomial coefficients."""
    c = np.array([int(a) for a in coeffs], dtype=float)
    fig, ax = _figure()
    ax.bar(np.arange(c.size), c / c.sum(), color="0.5", width=0.9)
    ax.set_xlabel("value", fontsize=10)
    ax.set_ylabel("probability", fontsize=10)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def eval_fraction(text: str) -> float:
    num, _, den = text.partition("/")
    return int(num) / int(den or 1)
