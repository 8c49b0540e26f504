"""Share-size figures.  Uses the Agg backend so it runs headless."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .prefixcode import PrefixCode  # noqa: E402
from .sizes import bits_per_symbol, share_size  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def plot_sizes(
    path: str | Path,
    codecs: Sequence[PrefixCode],
    k_values: Sequence[int],
    t_values: Sequence[int],
    ell: int,
    bits: bool = False,
) -> Path:
    """Step plot of share size against t, one panel per k, one line per codec."""
    path = Path(path)
    ts = sorted(set(t_values))
    ks = sorted(set(k_values))
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, len(ks), figsize=(3.2 * len(ks), 2.6), squeeze=False)
        for ax, k in zip(axes[0], ks):
            for codec in sorted(codecs, key=lambda c: (c.name, c.p)):
                scale = bits_per_symbol(codec.p) if bits else 1
                ys = [share_size(codec, t, k, ell) * scale for t in ts]
                ax.step(ts, ys, where="post", label=f"{codec.name} (p={codec.p})")
            if ts and ts[-1] > 64 * ts[0]:
                ax.set_xscale("log", base=2)
            ax.set_title(f"k = {k}, l = {ell}")
            ax.set_xlabel("participant t")
            ax.set_ylabel("share size (bits)" if bits else "share size (symbols)")
            ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
