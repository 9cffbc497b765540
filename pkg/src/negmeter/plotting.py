"""Figure rendering for CLI reports.

Figures are written straight to files next to the delimited output; nothing
here opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .interferometer import CONFIG_IDS, OUTCOME_KEYS


def plot_sweep(rows, path) -> str:
    """Negativity and witness determinant versus the sweep parameter.

    Expects the row dicts produced for the sweep CSV; sampled columns may be
    empty strings in exact-only runs.
    """
    p = np.array([float(r["p"]) for r in rows])
    n_exact = np.array([float(r["negativity_exact"]) for r in rows])
    det_exact = np.array([float(r["det_pt_exact"]) for r in rows])
    sampled = rows and rows[0]["negativity_sampled"] != ""

    fig, (ax_n, ax_d) = plt.subplots(2, 1, sharex=True, figsize=(6, 6.5))
    ax_n.plot(p, n_exact, "k-", label="exact")
    ax_d.plot(p, det_exact, "k-", label="exact")
    if sampled:
        n_s = np.array([float(r["negativity_sampled"]) for r in rows])
        n_e = np.array([float(r["negativity_err"]) for r in rows])
        d_s = np.array([float(r["det_pt_sampled"]) for r in rows])
        d_e = np.array([float(r["det_pt_err"]) for r in rows])
        ax_n.errorbar(p, n_s, yerr=n_e, fmt="o", ms=3, capsize=2,
                      color="tab:blue", label="sampled")
        ax_d.errorbar(p, d_s, yerr=d_e, fmt="o", ms=3, capsize=2,
                      color="tab:blue", label="sampled")
    ax_d.axhline(0.0, color="tab:red", lw=0.8, ls="--")
    ax_n.set_ylabel("negativity")
    ax_d.set_ylabel(r"$\det\rho^\Gamma$")
    ax_d.set_xlabel("state parameter p")
    ax_n.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def plot_counts(report: dict, path) -> str:
    """Per-configuration bar charts of the 16 coincidence outcomes."""
    records = {rec["config"]: rec for rec in report["records"]}
    fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=True)
    for ax, cid in zip(axes.ravel(), CONFIG_IDS):
        rec = records[cid]
        counts = [rec["counts"][key] for key in OUTCOME_KEYS]
        ax.bar(range(16), counts, color="tab:blue")
        ax.set_yscale("symlog")
        ax.set_title(f"configuration {cid}  (Z = {rec['Z']})", fontsize=10)
        ax.set_xticks(range(16))
        ax.set_xticklabels(OUTCOME_KEYS, rotation=90, fontsize=7)
    for ax in axes[:, 0]:
        ax.set_ylabel("events")
    n = report["negativity"]["value"]
    err = report["negativity"]["std_error"]
    fig.suptitle(f"sampled negativity = {n:.4f} ± {err:.4f}", fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
