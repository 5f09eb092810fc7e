"""Exact big-integer size formulas for the full (unpruned) configuration graphs."""

from __future__ import annotations


def config_labels(r: int, dmax: int = 4) -> int:
    return dmax * dmax * r * r + 1


def config_graph_size(r: int, dmax: int = 4) -> int:
    """Configurations with every slot filled: L * 3^r * (r^2 * L * 3)^(dmax*r)."""
    L = config_labels(r, dmax)
    return L * 3**r * (r * r * L * 3) ** (dmax * r)


def config_graph_size_with_nulls(r: int, dmax: int = 4) -> int:
    """Same count when each slot may also hold the null marker."""
    L = config_labels(r, dmax)
    return L * 3**r * (r * r * L * 3 + 1) ** (dmax * r)


def config_graph_bound(r: int) -> int:
    return r ** (50 * r)


def vc_graph_size(r: int) -> int:
    """Left side L*3^r plus right side L^2*3^(2r), with L = 5r."""
    L = 5 * r
    return L * 3**r + L * L * 3 ** (2 * r)


def vc_graph_bound(r: int) -> int:
    return 300**r


def hom_side_bound(h: int, t: int) -> int:
    return (h + 1) * (t + 11)
