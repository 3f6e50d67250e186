"""Matplotlib renderings saved next to the delimited outputs."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from . import measures  # noqa: E402
from .sweep import CLASS_COLORS, _grid_layout  # noqa: E402

_CLASS_ORDER = (measures.UNDETECTED_CLASS, measures.BISEPARABLE_CLASS,
                measures.W_CLASS, measures.GHZ_CLASS)
_CLASS_SHORT = {measures.UNDETECTED_CLASS: "none",
                measures.BISEPARABLE_CLASS: "B",
                measures.W_CLASS: "W",
                measures.GHZ_CLASS: "GHZ"}

_CURVE_STYLES = (
    dict(color="tab:blue", linestyle="-", label="cut 1|23"),
    dict(color="tab:red", linestyle=(0, (8, 3)), label="cut 2|13"),
    dict(color="tab:green", linestyle="--", label="cut 3|12"),
)


def class_map_figure(rows, path: str) -> None:
    """Detected-class map over the (f, phi) grid, phi increasing upward."""
    fs, phis, index = _grid_layout(rows)
    img = np.zeros((len(phis), len(fs)), dtype=int)
    for j, phi in enumerate(phis):
        for i, f in enumerate(fs):
            img[j, i] = _CLASS_ORDER.index(index[(f, phi)].class_label)
    cmap = ListedColormap([np.array(CLASS_COLORS[c]) / 255 for c in _CLASS_ORDER])
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    extent = (fs[0], fs[-1], phis[0], phis[-1])
    im = ax.imshow(img, origin="lower", aspect="auto", extent=extent,
                   cmap=cmap, vmin=-0.5, vmax=3.5, interpolation="nearest")
    cbar = fig.colorbar(im, ax=ax, ticks=range(4))
    cbar.ax.set_yticklabels([_CLASS_SHORT[c] for c in _CLASS_ORDER])
    ax.set_xlabel("f")
    ax.set_ylabel(r"$\varphi$")
    ax.set_title("detected entanglement classes")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def curve_figure(rows, path: str) -> None:
    """2N(f) for the three bipartitions at fixed phi."""
    fs = np.array([r.f for r in rows])
    twon = np.array([[2 * r.neg1, 2 * r.neg2, 2 * r.neg3] for r in rows])
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    for k, style in enumerate(_CURVE_STYLES):
        ax.plot(fs, twon[:, k], **style)
    ax.set_xlabel("f")
    ax.set_ylabel(r"$2\mathcal{N}$")
    phi = rows[0].phi if rows else 0.0
    ax.set_title(rf"negativities at $\varphi$ = {phi:.6g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def bath_path_figure(bp, path: str) -> None:
    """f(t) and phi(t) for a bath specification."""
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    ax.plot(bp.times, bp.f, color="tab:blue", label="f(t)")
    ax.plot(bp.times, bp.phi, color="tab:orange", label=r"$\varphi(t)$")
    ax.set_xlabel("t")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
