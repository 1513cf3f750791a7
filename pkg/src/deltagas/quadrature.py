"""Composite Gauss-Legendre panel rules used throughout the package."""

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=64)
def reference_rule(n: int):
    """Gauss-Legendre nodes and weights on (-1, 1), symmetrized exactly.

    The eigenvalue-based nodes from leggauss are symmetric only to
    rounding; folding them makes node sets built from mirrored panels
    symmetric bit for bit, which downstream symmetry checks rely on.
    """
    if n < 1:
        raise ValueError("need at least one node per panel")
    g, w = leggauss(n)
    g = 0.5 * (g - g[::-1])
    w = 0.5 * (w + w[::-1])
    g.setflags(write=False)
    w.setflags(write=False)
    return g, w


def panel_rule(breakpoints, nodes_per_panel: int):
    """Composite Gauss-Legendre rule over consecutive panels.

    Parameters
    ----------
    breakpoints : array_like
        Strictly increasing panel edges.
    nodes_per_panel : int
        Number of Gauss-Legendre nodes on each panel.

    Returns
    -------
    nodes, weights : ndarray
        Flattened rule; nodes lie strictly inside their panels.
    """
    b = np.asarray(breakpoints, dtype=float)
    if b.ndim != 1 or b.size < 2 or np.any(np.diff(b) <= 0):
        raise ValueError("breakpoints must be strictly increasing")
    g, w = reference_rule(int(nodes_per_panel))
    mid = 0.5 * (b[:-1] + b[1:])
    half = 0.5 * (b[1:] - b[:-1])
    nodes = (mid[:, None] + half[:, None] * g[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def geometric_breakpoints(upper: float, levels: int):
    """Edges 0, upper/2^levels, ..., upper/2, upper, graded toward zero."""
    if upper <= 0 or levels < 1:
        raise ValueError("upper must be positive and levels >= 1")
    edges = upper * 2.0 ** np.arange(-levels, 1.0)
    return np.concatenate(([0.0], edges))
