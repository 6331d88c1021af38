"""Shared figure helper; matplotlib is optional and imported on demand."""

from __future__ import annotations

import numpy as np


def save_uv_plot(path, curves, title=""):
    """Save (label, u, v) curves on the unrolled (u, v) strip.

    Parameters
    ----------
    path : str or Path
        Output image file.
    curves : iterable of (str, array_like, array_like)
        Labelled azimuth and height samples.
    """
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise SystemExit("plotting needs matplotlib: pip install 'artifact[plot]'") from exc

    fig, ax = plt.subplots(figsize=(6, 4))
    for label, u, v in curves:
        ax.plot(np.asarray(u), np.asarray(v), label=label)
    ax.set_xlabel("u")
    ax.set_ylabel("v")
    ax.set_title(title)
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
