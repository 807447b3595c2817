"""Figures written next to the text reports.

Uses the object-oriented matplotlib API with the Agg canvas so nothing here
touches global pyplot state or needs a display.
"""

import matplotlib
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

STYLE = {
    "font.size": 10,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.5,
}


def _figure(width=5.0, height=None):
    if height is None:
        height = width * (np.sqrt(5) - 1) / 2
    fig = Figure(figsize=(width, height))
    FigureCanvasAgg(fig)
    return fig


def save_figure(fig, path, dpi=150):
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)


def fidelity_figure(rows, path, target="swap"):
    """Process fidelity against mismatch phase."""
    eta = np.array([r[0] for r in rows])
    fid = np.array([r[1] for r in rows])
    fig = _figure()
    with _rc():
        ax = fig.add_subplot(111)
        ax.plot(eta, fid, marker="o", color="C0")
        ax.set_xlabel(r"mismatch phase $\eta$ (rad)")
        ax.set_ylabel("process fidelity")
        ax.set_ylim(-0.02, 1.02)
        ax.set_title(f"{target} gate")
        ax.grid(alpha=0.3)
        save_figure(fig, path)
    return fig


def matrix_figure(matrix, path, labels=None, title=None):
    """Magnitudes of a logical gate matrix, phase written in each cell."""
    m = np.asarray(matrix)
    d = m.shape[0]
    fig = _figure(4.0, 3.6)
    with _rc():
        ax = fig.add_subplot(111)
        im = ax.imshow(np.abs(m), vmin=0, vmax=1, cmap="Greys")
        for (i, j), z in np.ndenumerate(m):
            if abs(z) > 1e-9:
                ax.text(j, i, f"{np.angle(z) / np.pi:+.2f}π", ha="center", va="center",
                        color="w" if abs(z) > 0.5 else "k", fontsize=7)
        if labels is not None:
            ax.set_xticks(range(d), labels)
            ax.set_yticks(range(d), labels)
        ax.set_xlabel("input")
        ax.set_ylabel("output")
        if title:
            ax.set_title(title)
        fig.colorbar(im, ax=ax, label="|amplitude|")
        save_figure(fig, path)
    return fig


def network_figure(net, path):
    """Qubit wires with one vertical link per adjacent SWAP, layer by layer."""
    fig = _figure(1.2 + 0.6 * max(net.depth, 1), 0.8 + 0.45 * net.n)
    with _rc():
        ax = fig.add_subplot(111)
        for q in range(net.n):
            ax.plot([0, net.depth + 1], [q, q], color="0.6", lw=1, zorder=0)
        for x, layer in enumerate(net.layers, start=1):
            for i in layer:
                ax.plot([x, x], [i, i + 1], color="C3", marker="x", ms=7)
        ax.set_yticks(range(net.n), [f"q{q}" for q in range(net.n)])
        ax.set_xticks(range(1, net.depth + 1))
        ax.set_xlabel("layer")
        ax.invert_yaxis()
        ax.set_title(f"{net.swap_count} swaps, depth {net.depth}")
        save_figure(fig, path)
    return fig


def _rc():
    return matplotlib.rc_context(STYLE)
