"""Figures for the lumberjack report, written as PNG files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": (4.5, 4.0),
    "savefig.dpi": 120,
}


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def word_space(vectors, path, title="clustered co-occurrence space",
               axes=("bank", "wood", "fashion")):
    """Arrows from the origin for each named 3-d vector, normalised to unit length."""
    with plt.rc_context(STYLE):
        fig = plt.figure()
        ax = fig.add_subplot(projection="3d")
        colours = plt.rcParams["axes.prop_cycle"].by_key()["color"]
        for k, (name, v) in enumerate(vectors.items()):
            v = np.asarray(v, dtype=float)
            u = v / np.linalg.norm(v)
            c = colours[k % len(colours)]
            ax.quiver(0, 0, 0, *u, color=c, arrow_length_ratio=0.08)
            ax.text(*(u * 1.05), name, color=c)
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_zlim(0, 1)
        ax.set_xlabel(axes[0])
        ax.set_ylabel(axes[1])
        ax.set_zlabel(axes[2])
        ax.set_title(title)
        return _save(fig, path)


def truth_plane(points, path, title="sentence meanings"):
    """Sentence vectors in the 2-d truth space (x: true, y: false)."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for k, (name, v) in enumerate(points.items()):
            v = np.asarray(v, dtype=float).ravel()
            ax.annotate("", xy=v, xytext=(0, 0),
                        arrowprops=dict(arrowstyle="->", color="C%d" % (k % 10)))
            ax.plot(*v, "o", color="C%d" % (k % 10), label="{} ({:.2f}, {:.2f})".format(name, *v))
        ax.set_xlim(-0.05, 1.1)
        ax.set_ylim(-0.05, 1.1)
        ax.set_aspect("equal")
        ax.set_xlabel("true")
        ax.set_ylabel("false")
        ax.legend(loc="center right")
        ax.set_title(title)
        return _save(fig, path)
