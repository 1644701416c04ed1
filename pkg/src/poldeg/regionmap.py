"""Rasterize the (n3, n8) positivity triangle and tabulate degree measures.

One grid scan feeds both figure reproductions: the minimal-overlap surface
and the isocontour maps of the individual measures share the expensive part,
so every measure is stored per cell.  Cells within ``EDGE_TOL`` of a
positivity inequality count as inside (boundary states are physical).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import optimizer, polarization
from .errors import BadResolution
from .tolerances import EDGE_TOL

__all__ = ["MEASURES", "TriangleGrid", "build_grid", "evaluate_point",
           "evaluate_grid", "check_sixfold_symmetry"]

SQRT3 = np.sqrt(3.0)

MEASURES = ("min_overlap", "p_hs", "p_pp", "p_u", "p_pu", "p_length", "p_purity")

N3_SPAN = (-2.0 / SQRT3, 2.0 / SQRT3)
N8_SPAN = (-1.0, 0.5)


@dataclass
class TriangleGrid:
    """Raster of the positivity triangle.

    Cell (i, j) sits at ``(n8[i], n3[j])``; iteration and emission order is
    row-major with n8 as the slow axis.  Value arrays hold NaN outside the
    triangle.
    """

    resolution: int
    n3: np.ndarray
    n8: np.ndarray
    inside: np.ndarray
    values: dict[str, np.ndarray] = field(default_factory=dict)

    def cells(self):
        """Yield (n3, n8, inside, {measure: value}) in emission order."""
        for i in range(self.resolution):
            for j in range(self.resolution):
                vals = {k: float(v[i, j]) for k, v in self.values.items()}
                yield float(self.n3[j]), float(self.n8[i]), bool(self.inside[i, j]), vals


def build_grid(resolution: int) -> TriangleGrid:
    """Uniform grid over n3 in [-2/sqrt3, 2/sqrt3], n8 in [-1, 1/2]."""
    if not isinstance(resolution, (int, np.integer)) or resolution < 2:
        raise BadResolution(f"resolution must be an integer >= 2, got {resolution!r}")
    n3 = np.linspace(*N3_SPAN, resolution)
    n8 = np.linspace(*N8_SPAN, resolution)
    g3, g8 = np.meshgrid(n3, n8)  # index [i, j] -> (n8[i], n3[j])
    lo = np.maximum(-(1.0 + g8) / SQRT3, -(2.0 - g8) / SQRT3)
    hi = np.minimum((1.0 + g8) / SQRT3, (2.0 - g8) / SQRT3)
    inside = (
        (g8 >= N8_SPAN[0] - EDGE_TOL)
        & (g8 <= N8_SPAN[1] + EDGE_TOL)
        & (g3 >= lo - EDGE_TOL)
        & (g3 <= hi + EDGE_TOL)
    )
    return TriangleGrid(resolution=int(resolution), n3=n3, n8=n8, inside=inside)


def evaluate_point(n3: float, n8: float, measures=MEASURES) -> dict[str, float]:
    """All requested measures for the diagonal state at (n3, n8).

    Goes through the full matrix machinery (state construction, analytic
    minimization, eigenvalue split) rather than shortcut formulas, so grid
    values exercise the same code paths as single-state reports.
    """
    vec = np.zeros(8)
    vec[2] = n3
    vec[7] = n8
    rho = polarization.from_stokes(vec)
    out: dict[str, float] = {}
    wanted = set(measures)
    if {"min_overlap", "p_hs"} & wanted:
        res = optimizer.degree_hs_analytic(rho)
        if "min_overlap" in wanted:
            out["min_overlap"] = res.min_overlap
        if "p_hs" in wanted:
            out["p_hs"] = res.degree
    if {"p_pp", "p_u", "p_pu"} & wanted:
        p_pp, p_u, p_pu = polarization.degree_sheppard(rho)
        out.update({k: v for k, v in
                    (("p_pp", p_pp), ("p_u", p_u), ("p_pu", p_pu)) if k in wanted})
    if "p_length" in wanted:
        out["p_length"] = polarization.degree_length(rho)
    if "p_purity" in wanted:
        out["p_purity"] = polarization.degree_purity(rho)
    return out


def evaluate_grid(grid: TriangleGrid, measures=MEASURES) -> TriangleGrid:
    """Fill the requested per-cell values for every inside cell."""
    measures = tuple(measures)
    for name in measures:
        if name not in MEASURES:
            raise ValueError(f"unknown measure {name!r}")
        grid.values[name] = np.full((grid.resolution, grid.resolution), np.nan)
    for i in range(grid.resolution):
        for j in range(grid.resolution):
            if not grid.inside[i, j]:
                continue
            vals = evaluate_point(float(grid.n3[j]), float(grid.n8[i]), measures)
            for name in measures:
                grid.values[name][i, j] = vals[name]
    return grid


def check_sixfold_symmetry(grid: TriangleGrid) -> float:
    """Maximum p_hs discrepancy across the six eigenvalue-permutation images.

    Each inside cell maps to six (n3, n8) points (one per permutation of its
    diagonal entries); the degree is re-evaluated analytically at each image
    from its own coordinates, never by grid lookup.
    """
    if "p_hs" not in grid.values:
        raise ValueError("evaluate the grid with p_hs before checking symmetry")
    g3, g8 = np.meshgrid(grid.n3, grid.n8)
    mask = grid.inside
    n3 = g3[mask]
    n8 = g8[mask]
    ref = grid.values["p_hs"][mask]

    d = np.stack(optimizer.diag_from_n3n8(n3, n8), axis=-1)
    worst = 0.0
    for perm in permutations(range(3)):
        dp = d[:, perm]
        img3 = SQRT3 * (dp[:, 0] - dp[:, 1]) / 2.0
        img8 = (dp[:, 0] + dp[:, 1]) / 2.0 - dp[:, 2]
        di = np.stack(optimizer.diag_from_n3n8(img3, img8), axis=-1)
        p_img = di.max(axis=-1) - di.min(axis=-1)
        worst = max(worst, float(np.max(np.abs(p_img - ref))))
    return worst
