"""Figure rendering for the CLI report paths.

Figures are written next to the delimited output with a .png suffix; all
rendering goes through the Agg backend so the CLI works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_SAVEFIG_KW = {"dpi": 150, "metadata": {"Software": "polygonmoduli"}}


def render_sample_figure(actions: np.ndarray, labels, path):
    """Scatter (dim >= 2) or histogram (dim 1) of sampled action values."""
    actions = np.asarray(actions, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 4))
    if actions.shape[1] >= 2:
        ax.scatter(actions[:, 0], actions[:, 1], s=4, alpha=0.4, linewidths=0)
        ax.set_xlabel(f"diagonal length {labels[0]}")
        ax.set_ylabel(f"diagonal length {labels[1]}")
        ax.set_title("sampled action values")
    else:
        ax.hist(actions[:, 0], bins=40, color="tab:blue", alpha=0.8)
        ax.set_xlabel(f"diagonal length {labels[0]}")
        ax.set_ylabel("count")
        ax.set_title("sampled action values")
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KW)
    plt.close(fig)


def render_verify_figure(sweep_rows, commutation_rows, path):
    """Log-log defect sweeps from the verification run.

    sweep_rows: (t, defect) for the Goldman/bending comparison (may be empty);
    commutation_rows: (s, defect) for the flow-commutation check.
    """
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))

    ax = axes[0]
    if commutation_rows:
        s = np.array([r[0] for r in commutation_rows])
        d = np.array([r[1] for r in commutation_rows])
        ax.loglog(s, d, "o", ms=3, alpha=0.5)
        ref = d[np.argmax(s)] * (s / s.max()) ** 3
        ax.loglog(s, ref, "k--", lw=1, label="slope 3")
        ax.legend()
    ax.set_xlabel("step s")
    ax.set_ylabel("commutator defect")
    ax.set_title("flow commutation")

    ax = axes[1]
    if sweep_rows:
        t = np.array([r[0] for r in sweep_rows])
        d = np.array([r[1] for r in sweep_rows])
        ax.loglog(t, np.maximum(d, 1e-300), "o", ms=3, alpha=0.5)
        ref = np.median(d[t == t.max()]) * (t / t.max())
        ax.loglog(t, ref, "k--", lw=1, label="slope 1")
        ax.legend()
    ax.set_xlabel("scale t")
    ax.set_ylabel("identification defect")
    ax.set_title("Goldman vs bending")

    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KW)
    plt.close(fig)
