"""Graph layouts with UMAP-style optimization over hop distances."""

from ._core import (
    Graph,
    effective_resistance,
    fit_ab,
    knn,
    layout,
    metrics,
    read_graph,
    render_svg,
    sparsify,
    spectral_init,
    synth_graph,
    write_layout_csv,
)

ALGORITHMS = ("gumap", "ss", "sl", "sssl")

__all__ = [
    "ALGORITHMS",
    "Graph",
    "effective_resistance",
    "fit_ab",
    "knn",
    "layout",
    "metrics",
    "read_graph",
    "render_svg",
    "sparsify",
    "spectral_init",
    "synth_graph",
    "write_layout_csv",
]
