"""Optional matplotlib rendering of bound sweeps (dim_bound against r)."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path


def plot_sweep(rows, path, title: str | None = None) -> Path:
    """Draw one curve per (gamma, zeta) pair and save to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.ticker import MaxNLocator

    curves = defaultdict(list)
    for row in rows:
        if row.status != "optimal":
            continue
        p = row.params
        curves[(p.n, p.gamma, p.zeta)].append((p.r, row.dim_bound))

    fig, ax = plt.subplots(figsize=(6, 4))
    markers = "osd^v<>"
    for idx, ((n, g, z), pts) in enumerate(sorted(curves.items())):
        pts.sort()
        ax.plot([r for r, _ in pts], [k for _, k in pts], marker=markers[idx % len(markers)],
                label=f"N={n}, Γ={g}, ζ={z}")
    ax.set_xlabel("locality r")
    ax.set_ylabel("dimension bound")
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.grid(True, alpha=0.3)
    if curves:
        ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
