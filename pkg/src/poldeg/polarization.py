"""Coherence matrices, Stokes maps, and the closed-form degree measures.

A coherence (polarization) matrix is Hermitian, positive semidefinite, and
normalized to unit trace.  Its Stokes vector holds the expansion coefficients
on the generator basis:

    dim 2:  rho = (1 + n . s) / 2,          n_r = Tr(rho s_r)
    dim 3:  rho = (1 + sqrt(3) n . L) / 3,  n_r = (sqrt(3)/2) Tr(rho L_r)

The sqrt(3) factor makes ``|n| = 1`` exactly for pure states in both
dimensions, so every length-based degree lives on [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore, su
from .errors import (
    DimMismatch,
    InternalConsistencyError,
    NonPositiveTrace,
    NotPositiveSemidefinite,
    UnsupportedDim,
)
from .tolerances import DEGEN_GAP, DEGREE_SLACK, PSD_CLAMP

__all__ = [
    "CoherenceMatrix",
    "DegreeReport",
    "Decomposition2D",
    "make_coherence",
    "to_stokes",
    "from_stokes",
    "purity",
    "decompose_2d",
    "degree_length",
    "degree_purity",
    "degree_eigen",
    "degree_sheppard",
    "build_degree_report",
    "random_coherence",
]

SQRT3 = np.sqrt(3.0)

_BASIS = {2: su.build_basis(2), 3: su.build_basis(3)}


@dataclass(frozen=True)
class CoherenceMatrix:
    """Unit-trace Hermitian PSD matrix describing a state of polarization."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True)
class DegreeReport:
    """All closed-form degree measures for one state."""

    dim: int
    p_hs: float
    p_length: float
    p_purity: float
    p_pp: float | None
    p_u: float | None
    p_pu: float | None
    eigenvalues: tuple[float, ...]
    method: str  # "analytic" or "oracle"


@dataclass(frozen=True)
class Decomposition2D:
    """Split of a 2D state into unpolarized and fully polarized parts.

    ``pol_part`` is None when the state is fully unpolarized (the polarized
    direction is undefined there).
    """

    weight_unpol: float
    weight_pol: float
    pol_part: CoherenceMatrix | None


def _clamp_unit(x: float, name: str) -> float:
    if x < -DEGREE_SLACK or x > 1.0 + DEGREE_SLACK:
        raise InternalConsistencyError(f"{name} = {x!r} is outside [0, 1] beyond round-off")
    return min(max(x, 0.0), 1.0)


def make_coherence(raw) -> CoherenceMatrix:
    """Validate and normalize a raw matrix into a CoherenceMatrix.

    The input is hermitized and divided by its trace.  Eigenvalues in
    ``[-PSD_CLAMP, 0)`` are clamped to zero (round-off rescue); anything more
    negative raises ``NotPositiveSemidefinite``.
    """
    raw = np.asarray(raw, dtype=complex)
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {raw.shape}")
    if raw.shape[0] not in (2, 3):
        raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {raw.shape[0]}")

    h = matcore.hermitize(raw)
    tr = float(np.trace(h).real)
    if tr <= 0.0:
        raise NonPositiveTrace(f"trace {tr!r} must be positive")
    h = h / tr

    es = matcore.eig_hermitian(h)
    smallest = float(es.values[-1])
    if smallest < -PSD_CLAMP:
        raise NotPositiveSemidefinite(
            f"smallest eigenvalue {smallest:.3e} is below -{PSD_CLAMP:.1e}"
        )
    if smallest < 0.0:
        clamped = np.clip(es.values, 0.0, None)
        h = (es.vectors * clamped) @ es.vectors.conj().T
        h = matcore.hermitize(h / float(np.trace(h).real))

    h = np.ascontiguousarray(h)
    h.setflags(write=False)
    return CoherenceMatrix(matrix=h)


def to_stokes(rho: CoherenceMatrix) -> np.ndarray:
    """Stokes vector of a state: length 3 for dim 2, length 8 for dim 3."""
    gens = _BASIS[rho.dim].generators
    n = np.einsum("ij,rji->r", rho.matrix, gens).real
    if rho.dim == 3:
        n = n * (SQRT3 / 2.0)
    return n


def from_stokes(n) -> CoherenceMatrix:
    """Coherence matrix with the given Stokes vector.

    Raises ``NotPositiveSemidefinite`` when the vector does not correspond to
    a physical state (e.g. an 8-vector of unit length that is not on the
    pure-state manifold).
    """
    n = np.asarray(n, dtype=float)
    if n.shape == (3,):
        mat = 0.5 * (np.eye(2) + np.einsum("r,rij->ij", n, _BASIS[2].generators))
    elif n.shape == (8,):
        mat = (np.eye(3) + SQRT3 * np.einsum("r,rij->ij", n, _BASIS[3].generators)) / 3.0
    else:
        raise UnsupportedDim(f"expected a 3- or 8-vector, got shape {n.shape}")
    return make_coherence(mat)


def purity(rho: CoherenceMatrix) -> float:
    """``Tr(rho^2)``; equals ``(1 + |n|^2)/2`` (dim 2) or ``(1 + 2|n|^2)/3`` (dim 3)."""
    return float(matcore.trace_product(rho.matrix, rho.matrix).real)


def degree_length(rho: CoherenceMatrix) -> float:
    """Length of the Stokes vector."""
    return _clamp_unit(float(np.linalg.norm(to_stokes(rho))), "degree_length")


def degree_purity(rho: CoherenceMatrix) -> float:
    """Purity-based degree: ``sqrt(2 Tr rho^2 - 1)`` or ``sqrt((3 Tr rho^2 - 1)/2)``."""
    p = purity(rho)
    if rho.dim == 2:
        val = np.sqrt(max(2.0 * p - 1.0, 0.0))
    else:
        val = np.sqrt(max((3.0 * p - 1.0) / 2.0, 0.0))
    return _clamp_unit(float(val), "degree_purity")


def degree_eigen(rho: CoherenceMatrix) -> float:
    """Eigenvalue-spread degree: largest minus smallest eigenvalue."""
    vals = matcore.eigvals_hermitian(rho.matrix)
    return _clamp_unit(float(vals[0] - vals[-1]), "degree_eigen")


def degree_sheppard(rho: CoherenceMatrix) -> tuple[float, float, float]:
    """Three-part split (pure, unpolarized, planar-unpolarized) for dim 3.

    Returns ``(l1 - l2, 3 l3, 2 (l2 - l3))`` for eigenvalues sorted in
    decreasing order; the parts sum to one.
    """
    if rho.dim != 3:
        raise DimMismatch("the three-part split is defined for dim 3 only")
    l1, l2, l3 = matcore.eigvals_hermitian(rho.matrix)
    return (
        _clamp_unit(float(l1 - l2), "p_pp"),
        _clamp_unit(float(3.0 * l3), "p_u"),
        _clamp_unit(float(2.0 * (l2 - l3)), "p_pu"),
    )


def decompose_2d(rho: CoherenceMatrix) -> Decomposition2D:
    """Split a 2D state as ``(1 - P) * 1/2 + P * rho_pol`` with rho_pol pure."""
    if rho.dim != 2:
        raise DimMismatch("only 2D states split into unpolarized plus polarized parts")
    p = degree_eigen(rho)
    if p < DEGEN_GAP:
        return Decomposition2D(weight_unpol=1.0, weight_pol=0.0, pol_part=None)
    pol = (rho.matrix - (1.0 - p) * 0.5 * np.eye(2)) / p
    return Decomposition2D(weight_unpol=1.0 - p, weight_pol=p, pol_part=make_coherence(pol))


def build_degree_report(rho: CoherenceMatrix, method: str = "analytic",
                        p_hs: float | None = None) -> DegreeReport:
    """Collect every closed-form measure for one state.

    ``p_hs`` defaults to the eigenvalue-spread value, which is the analytic
    distance-based degree in both dimensions; pass an oracle value to record
    a numerically minimized one instead.
    """
    vals = matcore.eigvals_hermitian(rho.matrix)
    if p_hs is None:
        p_hs = _clamp_unit(float(vals[0] - vals[-1]), "p_hs")
    if rho.dim == 3:
        p_pp, p_u, p_pu = degree_sheppard(rho)
    else:
        p_pp = p_u = p_pu = None
    return DegreeReport(
        dim=rho.dim,
        p_hs=p_hs,
        p_length=degree_length(rho),
        p_purity=degree_purity(rho),
        p_pp=p_pp,
        p_u=p_u,
        p_pu=p_pu,
        eigenvalues=tuple(float(v) for v in vals),
        method=method,
    )


def random_coherence(dim: int, rng) -> CoherenceMatrix:
    """Random full-support state: ``G G^†`` (complex Gaussian G) trace-normalized."""
    if dim not in (2, 3):
        raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {dim}")
    rng = np.random.default_rng(rng)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return make_coherence(g @ g.conj().T)
