"""Render sweep CSV rows to an image file next to the CSV output."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sweep import Axis  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "figure.figsize": (5.5, 4.0),
}

XLABELS = {
    Axis.USERS: "Number of users K",
    Axis.POWER_DB: "SNR [dB]",
    Axis.ANTENNAS: "Number of BS antennas M",
}


def plot_rows(rows, path, axis=Axis.USERS, title=""):
    """Monte-Carlo curves as markers with 95% error bars, closed forms as lines."""
    series = {}
    for r in rows:
        series.setdefault(r.curve, []).append(r)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for name, pts in series.items():
            x = [p.axis for p in pts]
            y = [p.rate for p in pts]
            if pts[0].stderr is not None:
                ax.errorbar(x, y, yerr=[1.96 * (p.stderr or 0.0) for p in pts],
                            fmt="o", ms=3, capsize=2, label=f"{name} (simulation)")
            else:
                ax.plot(x, y, "-", lw=1.2, label=name)
        ax.set_xlabel(XLABELS[axis])
        ax.set_ylabel("Sum rate [bits/s/Hz]")
        if title:
            ax.set_title(title)
        ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
