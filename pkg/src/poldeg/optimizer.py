"""Distance-based degree of polarization over the group orbit.

The squared degree is the supremum of the squared Hilbert-Schmidt distance
between a state and its conjugated copies, which reduces to

    degree^2 = Tr(rho^2) - inf_g Tr(rho rho_g).

Two routes compute the infimum:

* analytic: both matrices share a spectrum, so the overlap at a stationary
  point is a permutation pairing of eigenvalues; the minimum is the reversal
  pairing ``l1*l3 + l2*l2 + l3*l1``, giving ``degree = l1 - l3`` (and the
  antipodal result ``(1 - |n|^2)/2`` in dim 2).
* oracle: brute-force sampling of group elements followed by cyclic
  coordinate descent over the Euler angles with a golden-section line search
  per coordinate.  The oracle is used to validate the analytic route, never
  the other way around.

For diagonal 3x3 states the minimizing conjugation is a permutation selected
by X = n8/n3: three zones with beta triples (pi,pi,pi) / (0,pi,0) / (0,0,pi),
reproduced in the (n3, n8) plane by a rotation-then-reflection map.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import groups, matcore, polarization
from .errors import DimMismatch, OutsideTriangle
from .tolerances import EDGE_TOL

__all__ = [
    "MinimizationResult",
    "TraceObjectiveResult",
    "Zone",
    "ZoneClassification",
    "hs_distance_sq",
    "degree_hs_analytic",
    "degree_hs_oracle",
    "degree_trace_distance",
    "trace_distance_oracle",
    "classify_zone",
    "overlap_transform",
    "inside_triangle",
    "diag_from_n3n8",
    "n3n8_from_diag",
]

SQRT3 = np.sqrt(3.0)
X_SPLIT = 1.0 / SQRT3
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_ITERS = 40
_SCAN_POINTS = 25   # coarse grid per line search; golden section works one cell
_STARTS = 4         # diverse refinement starts (escapes chart coordinate traps)
_STAGE1_SWEEPS = 5  # short tournament sweeps before committing to one start
_START_SEPARATION = 0.6  # max-norm angle distance between chosen starts


@dataclass(frozen=True)
class MinimizationResult:
    """Outcome of minimizing the overlap Tr(rho rho_g) over the group."""

    min_overlap: float
    argmin: groups.GroupElement
    degree: float
    method: str  # "analytic" or "oracle"
    refinement_steps: int


@dataclass(frozen=True)
class TraceObjectiveResult:
    """Outcome of maximizing the trace distance (1/2) Tr|rho - rho_g|."""

    value: float
    argmax: groups.GroupElement
    refinement_steps: int


class Zone(Enum):
    ZONE1 = "zone1"
    ZONE2 = "zone2"
    ZONE3 = "zone3"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ZoneClassification:
    x: float
    zone: Zone
    theta: float
    beta_angles: tuple[float, float, float]


def hs_distance_sq(a: polarization.CoherenceMatrix,
                   b: polarization.CoherenceMatrix) -> float:
    """Squared Hilbert-Schmidt distance ``(1/2) Tr[(a - b)^2]``."""
    if a.dim != b.dim:
        raise DimMismatch(f"dims {a.dim} and {b.dim} do not match")
    diff = a.matrix - b.matrix
    return max(0.0, float(0.5 * matcore.trace_product(diff, diff).real))


def _reversal_element(es: matcore.EigenSystem) -> groups.GroupElement:
    """Group element conjugating the eigenbasis into reversed eigenvalue order."""
    d = es.dim
    perm = np.zeros((d, d), dtype=complex)
    for k in range(d):
        perm[d - 1 - k, k] = 1.0
    # flip one column to land in the unit-determinant component
    if d == 2:
        perm[:, 0] *= -1.0
    else:
        perm[:, 1] *= -1.0
    u = es.vectors @ perm @ es.vectors.conj().T
    return groups.GroupElement(dim=d, u=u)


def degree_hs_analytic(rho: polarization.CoherenceMatrix) -> MinimizationResult:
    """Closed-form overlap minimum via the reversal pairing of eigenvalues."""
    es = matcore.eig_hermitian(rho.matrix)
    vals = es.values
    degree = float(vals[0] - vals[-1])
    if degree <= 0.0:
        # invariant state: the objective is constant, identity is canonical
        return MinimizationResult(
            min_overlap=float(np.sum(vals * vals)),
            argmin=groups.identity(rho.dim),
            degree=0.0,
            method="analytic",
            refinement_steps=0,
        )
    min_overlap = float(np.sum(vals * vals[::-1]))
    return MinimizationResult(
        min_overlap=min_overlap,
        argmin=_reversal_element(es),
        degree=degree,
        method="analytic",
        refinement_steps=0,
    )


def _overlap_batch(rho_m: np.ndarray, us: np.ndarray) -> np.ndarray:
    rotated = us @ rho_m @ np.conj(np.swapaxes(us, -1, -2))
    return np.einsum("ij,bji->b", rho_m, rotated).real


def _overlap_single(rho_m: np.ndarray, u: np.ndarray) -> float:
    rotated = u @ rho_m @ u.conj().T
    return float(np.einsum("ij,ji->", rho_m, rotated).real)


def _trace_dist_batch(rho_m: np.ndarray, us: np.ndarray) -> np.ndarray:
    diff = rho_m - us @ rho_m @ np.conj(np.swapaxes(us, -1, -2))
    return 0.5 * np.sum(np.abs(matcore.eigvals_hermitian(diff)), axis=-1)


def _trace_dist_single(rho_m: np.ndarray, u: np.ndarray) -> float:
    diff = rho_m - u @ rho_m @ u.conj().T
    return float(0.5 * np.sum(np.abs(matcore.eigvals_hermitian(diff))))


def _golden_min(fun, lo, hi, current_x, current_f):
    """Golden-section scan of [lo, hi]; returns the best point ever evaluated.

    Never returns anything worse than (current_x, current_f), which makes the
    surrounding coordinate descent monotone.
    """
    best_x, best_f = current_x, current_f
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = fun(c)
    fd = fun(d)
    if fc < best_f:
        best_x, best_f = c, fc
    if fd < best_f:
        best_x, best_f = d, fd
    for _ in range(_GOLDEN_ITERS):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
            if fd < best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def _coordinate_descent(objective, objective_batch, angles, ranges, sweeps):
    """Cyclic coordinate descent, one line search per angle.

    Each line search first scans the full canonical range on a fixed grid
    (the slice of the objective is trigonometric and can carry several
    valleys, so a plain golden section over the whole range may settle in
    the wrong one), then runs a golden section within one grid cell around
    the best scan point.  Both stages keep the best value ever seen, so a
    sweep never worsens the objective.
    """
    x = np.array(angles, dtype=float)
    fx = objective(x)
    for _ in range(sweeps):
        for k in range(x.size):
            ts = np.linspace(0.0, ranges[k], _SCAN_POINTS)
            trials = np.tile(x, (ts.size, 1))
            trials[:, k] = ts
            vals = objective_batch(trials)
            j = int(np.argmin(vals))
            if vals[j] < fx:
                center, f_center = float(ts[j]), float(vals[j])
            else:
                center, f_center = float(x[k]), fx
            h = float(ranges[k]) / (ts.size - 1)

            def along(t, k=k):
                trial = x.copy()
                trial[k] = t
                return objective(trial)

            xk, fk = _golden_min(along, max(0.0, center - h),
                                 min(float(ranges[k]), center + h),
                                 center, f_center)
            if fk < fx:
                x[k] = xk
                fx = fk
    return x, fx


def _diverse_starts(angles, values, count):
    """Indices of the best samples, kept pairwise separated in angle space.

    A single start can land in a coordinate trap of the Euler chart (a point
    where no one-angle move descends, typically near a chart singularity);
    separated starts make it overwhelmingly unlikely that all of them do.
    Deterministic: sorted by value, ties and distances resolved by index.
    """
    order = np.argsort(values, kind="stable")
    chosen = [int(order[0])]
    for idx in order[1:]:
        if len(chosen) >= count:
            break
        if all(np.max(np.abs(angles[idx] - angles[c])) >= _START_SEPARATION
               for c in chosen):
            chosen.append(int(idx))
    for idx in order[1:]:
        if len(chosen) >= count:
            break
        if int(idx) not in chosen:
            chosen.append(int(idx))
    return chosen


def _group_search(rho_m, dim, samples, seed, refine_steps, batch_fun, single_fun):
    """Best-of-samples plus multi-start coordinate descent of ``single_fun``.

    The best few well-separated samples each get a short refinement; the
    winner is refined for the remaining sweeps.  The returned value is never
    above the best raw sample.
    """
    angles = groups.sample_euler_angles(dim, samples, seed)
    values = batch_fun(rho_m, groups.matrices_from_angles(dim, angles))
    best = int(np.argmin(values))  # ties broken by lowest sample index
    raw_best = (angles[best], float(values[best]))

    ranges = groups.angle_ranges(dim)

    def objective(w):
        return single_fun(rho_m, groups.su3_matrix(w) if dim == 3
                          else groups.su2_batch(w[None, :])[0])

    def objective_batch(ws):
        return batch_fun(rho_m, groups.matrices_from_angles(dim, ws))

    stage1 = min(refine_steps, _STAGE1_SWEEPS)
    candidates = [
        _coordinate_descent(objective, objective_batch, angles[i], ranges, stage1)
        for i in _diverse_starts(angles, values, _STARTS)
    ]
    best_angles, best_val = min(candidates, key=lambda c: c[1])
    if refine_steps > stage1:
        best_angles, best_val = _coordinate_descent(
            objective, objective_batch, best_angles, ranges, refine_steps - stage1)
    if raw_best[1] < best_val:
        best_angles, best_val = raw_best
    u = groups.su3_matrix(best_angles) if dim == 3 else groups.su2_batch(best_angles[None, :])[0]
    return best_val, groups.GroupElement(dim=dim, u=u)


def degree_hs_oracle(rho: polarization.CoherenceMatrix, samples: int, seed: int,
                     refine_steps: int) -> MinimizationResult:
    """Brute-force overlap minimization used to cross-check the analytic route.

    Evaluates the overlap on ``samples`` pseudo-random group elements, keeps
    the best, then refines it by ``refine_steps`` sweeps of coordinate
    descent.  For a fixed seed, increasing ``samples`` or ``refine_steps``
    never increases the result.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    min_overlap, argmin = _group_search(
        rho.matrix, rho.dim, samples, seed, refine_steps,
        _overlap_batch, _overlap_single,
    )
    degree = float(np.sqrt(max(polarization.purity(rho) - min_overlap, 0.0)))
    return MinimizationResult(
        min_overlap=min_overlap,
        argmin=argmin,
        degree=degree,
        method="oracle",
        refinement_steps=refine_steps,
    )


def degree_trace_distance(rho: polarization.CoherenceMatrix) -> float:
    """``(1/2) Tr|rho - rho_g|`` at the analytic overlap minimizer.

    Numerically this equals the distance-based degree; whether any group
    element beats it in 3D is checked (not assumed) via
    ``trace_distance_oracle``.
    """
    g = degree_hs_analytic(rho).argmin
    diff = rho.matrix - g.u @ rho.matrix @ g.u.conj().T
    return 0.5 * matcore.trace_norm(diff)


def trace_distance_oracle(rho: polarization.CoherenceMatrix, samples: int, seed: int,
                          refine_steps: int) -> TraceObjectiveResult:
    """Maximize the trace distance over sampled group elements plus refinement."""
    if samples < 1:
        raise ValueError("samples must be at least 1")

    def neg_batch(m, us):
        return -_trace_dist_batch(m, us)

    def neg_single(m, u):
        return -_trace_dist_single(m, u)

    value, arg = _group_search(rho.matrix, rho.dim, samples, seed, refine_steps,
                               neg_batch, neg_single)
    return TraceObjectiveResult(value=-value, argmax=arg, refinement_steps=refine_steps)


def inside_triangle(n3: float, n8: float, tol: float = EDGE_TOL) -> bool:
    """Positivity region of diagonal states in the (n3, n8) plane."""
    if not (-1.0 - tol <= n8 <= 0.5 + tol):
        return False
    lo = max(-(1.0 + n8) / SQRT3, -(2.0 - n8) / SQRT3)
    hi = min((1.0 + n8) / SQRT3, (2.0 - n8) / SQRT3)
    return lo - tol <= n3 <= hi + tol


def diag_from_n3n8(n3: float, n8: float) -> tuple[float, float, float]:
    """Diagonal entries of the state with Stokes components (n3, n8)."""
    return (
        (1.0 + SQRT3 * n3 + n8) / 3.0,
        (1.0 - SQRT3 * n3 + n8) / 3.0,
        (1.0 - 2.0 * n8) / 3.0,
    )


def n3n8_from_diag(d1: float, d2: float, d3: float) -> tuple[float, float]:
    """Inverse of ``diag_from_n3n8`` for unit-trace diagonals."""
    return SQRT3 * (d1 - d2) / 2.0, (d1 + d2) / 2.0 - d3


def classify_zone(n3: float, n8: float) -> ZoneClassification:
    """Which beta triple minimizes the overlap for the diagonal state (n3, n8).

    The split is by X = n8/n3: X > 1/sqrt(3) swaps the outer diagonal entries
    (theta = 2pi/3), |X| < 1/sqrt(3) swaps the first two (theta = 0), and
    X < -1/sqrt(3) swaps the last two (theta = -2pi/3).  n3 = 0 is the
    two-identical-eigenvalues case; the outer swap minimizes there as well.
    Points exactly on X = +-1/sqrt(3) are assigned to the outer zones (both
    minimizers coincide on the split lines).
    """
    if not inside_triangle(n3, n8):
        raise OutsideTriangle(f"({n3!r}, {n8!r}) violates the positivity bounds")
    if n3 == 0.0:
        return ZoneClassification(
            x=np.inf, zone=Zone.DEGENERATE,
            theta=2.0 * np.pi / 3.0, beta_angles=(np.pi, np.pi, np.pi),
        )
    x = n8 / n3
    if x >= X_SPLIT:
        return ZoneClassification(x=x, zone=Zone.ZONE1,
                                  theta=2.0 * np.pi / 3.0,
                                  beta_angles=(np.pi, np.pi, np.pi))
    if x <= -X_SPLIT:
        return ZoneClassification(x=x, zone=Zone.ZONE3,
                                  theta=-2.0 * np.pi / 3.0,
                                  beta_angles=(0.0, 0.0, np.pi))
    return ZoneClassification(x=x, zone=Zone.ZONE2, theta=0.0,
                              beta_angles=(0.0, np.pi, 0.0))


def overlap_transform(n3: float, n8: float, theta: float) -> tuple[float, float]:
    """Image of (n3, n8) under rotation by theta composed with diag(-1, 1).

    With theta from ``classify_zone`` this is the Stokes-plane image of the
    minimizing conjugation; for theta = 2pi/3 it reduces to the matrix
    (1/2) [[1, -sqrt(3)], [-sqrt(3), -1]] of the two-identical-eigenvalues
    case.
    """
    c = np.cos(theta)
    s = np.sin(theta)
    # [[c, -s], [s, c]] @ [[-1, 0], [0, 1]]
    return (-c * n3 - s * n8, -s * n3 + c * n8)
