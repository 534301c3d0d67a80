"""Figure rendering for threshold sweeps.

Uses the non-interactive Agg backend so plots work in headless runs;
every function writes a PNG file and returns its path.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["plot_curves", "plot_track"]


def plot_curves(records, path, title=None):
    """Render Betti and spectral-gap curves from CurveRecord rows."""
    ts = [r.threshold for r in records]
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax0.step(ts, [r.betti0 for r in records], where="post", marker="o", label="betti 0")
    ax0.step(ts, [r.betti1 for r in records], where="post", marker="s", label="betti 1")
    ax0.set_ylabel("Betti number")
    ax0.legend()
    ax0.grid(True, alpha=0.3)

    for key, mark in (("gap0", "o"), ("gap1", "s")):
        pts = [(r.threshold, getattr(r, key)) for r in records if getattr(r, key) is not None]
        if pts:
            ax1.plot([t for t, _ in pts], [g for _, g in pts], marker=mark, label=key.replace("gap", "gap "))
    ax1.set_xlabel("threshold")
    ax1.set_ylabel("spectral gap")
    if ax1.has_data():
        ax1.legend()
    ax1.grid(True, alpha=0.3)

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_track(track, path, title=None):
    """Render the harmonic dimension across a filtration with birth/death marks."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step(track.thresholds, track.dims, where="post", marker="o",
            label="harmonic dimension (degree %d)" % track.dimension)
    for t, rows in track.births:
        ax.axvline(t, color="tab:green", alpha=0.35, linestyle="--")
        ax.annotate("+%d" % rows.shape[0], (t, max(track.dims + [1]) * 0.95),
                    color="tab:green", ha="center", fontsize=9)
    for t, count, _ in track.deaths:
        ax.axvline(t, color="tab:red", alpha=0.35, linestyle=":")
        ax.annotate("-%d" % count, (t, max(track.dims + [1]) * 0.85),
                    color="tab:red", ha="center", fontsize=9)
    ax.set_xlabel("threshold")
    ax.set_ylabel("dimension")
    ax.grid(True, alpha=0.3)
    ax.legend()
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
