"""Closed-form linear algebra for 2x2 and 3x3 complex Hermitian matrices.

Everything in this package works with matrices of fixed size 2 or 3, so the
eigenproblem is solved in closed form instead of delegating to a
general-purpose routine:

* 2x2: quadratic formula on the characteristic polynomial.
* 3x3: trigonometric solution of the shifted/scaled characteristic cubic.
  Write ``H = q I + p M`` with ``Tr M = 0`` and ``Tr M^2 = 6`` (so
  ``p^2 = Tr (H - qI)^2 / 6``); the eigenvalues of ``M`` are
  ``2 cos(phi + 2 pi k / 3)`` with ``cos(3 phi) = det(M) / 2``.  Since
  ``phi`` lands in ``[0, pi/3]``, the three roots come out already sorted
  in decreasing order.

Eigenvectors are recovered from bilinear cross products of the rows of
``H - lambda I`` (the nullspace direction), refined by one Rayleigh-quotient
pass per eigenvalue, re-orthonormalized, and phase-fixed so the first
significant component of each vector is real positive.  Near-degenerate
eigenvalues (gap below ``DEGEN_GAP``) fall back to a Gram-Schmidt completion
of the well-separated eigenvectors, which keeps the output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NotHermitian, UnsupportedDim
from .tolerances import DEGEN_GAP, HERM_TOL

__all__ = [
    "EigenSystem",
    "hermitize",
    "eigvals_hermitian",
    "eig_hermitian",
    "trace_product",
    "trace_norm",
]

_PHASE_FLOOR = 1e-9  # component magnitude considered "nonzero" for phase fixing
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted in decreasing order with orthonormal column vectors."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(values) V^†``."""
        v = self.vectors
        return (v * self.values) @ v.conj().T


def hermitize(m) -> np.ndarray:
    """Hermitian part ``(m + m^†) / 2`` of a square matrix (or batch)."""
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))


def _herm_deviation(m) -> float:
    return float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2)))))


def _require_hermitian(m, tol: float = HERM_TOL) -> None:
    dev = _herm_deviation(m)
    if dev > tol:
        raise NotHermitian(
            f"matrix deviates from Hermiticity by {dev:.3e} (tolerance {tol:.1e})"
        )


def _abs2(z):
    return (z * np.conj(z)).real


def _eigvals2(m):
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    b = m[..., 0, 1]
    mean = 0.5 * (a + d)
    r = np.sqrt(0.25 * (a - d) ** 2 + _abs2(b))
    return np.stack([mean + r, mean - r], axis=-1)


def _sorted_diag(m):
    diag = np.real(np.diagonal(m, axis1=-2, axis2=-1))
    return -np.sort(-diag, axis=-1)


def _eigvals3(m):
    a00 = m[..., 0, 0].real
    a11 = m[..., 1, 1].real
    a22 = m[..., 2, 2].real
    a01 = m[..., 0, 1]
    a02 = m[..., 0, 2]
    a12 = m[..., 1, 2]

    q = (a00 + a11 + a22) / 3.0
    b00 = a00 - q
    b11 = a11 - q
    b22 = a22 - q

    p2 = b00 ** 2 + b11 ** 2 + b22 ** 2 + 2.0 * (_abs2(a01) + _abs2(a02) + _abs2(a12))
    p = np.sqrt(p2 / 6.0)

    # det(H - qI), real for Hermitian input
    det = (
        b00 * (b11 * b22 - _abs2(a12))
        - b22 * _abs2(a01)
        - b11 * _abs2(a02)
        + 2.0 * (a01 * a12 * np.conj(a02)).real
    )

    with np.errstate(divide="ignore", invalid="ignore"):
        r = det / (2.0 * p ** 3)
    r = np.clip(np.where(np.isfinite(r), r, 1.0), -1.0, 1.0)
    phi = np.arccos(r) / 3.0  # phi in [0, pi/3]

    two_p = 2.0 * p
    lam1 = q + two_p * np.cos(phi)
    lam3 = q + two_p * np.cos(phi + 2.0 * np.pi / 3.0)
    lam2 = 3.0 * q - lam1 - lam3
    lam = np.stack([lam1, lam2, lam3], axis=-1)

    # exactly diagonal input: the trig form loses ~sqrt(eps) precision at
    # repeated roots, while sorting the diagonal is exact
    diagonal = (a01 == 0) & (a02 == 0) & (a12 == 0)
    if np.any(diagonal):
        lam = np.where(diagonal[..., None], _sorted_diag(m), lam)
    return lam


def eigvals_hermitian(m) -> np.ndarray:
    """Eigenvalues of Hermitian 2x2/3x3 matrices, sorted in decreasing order.

    Accepts a single matrix or a batch with shape ``(..., d, d)``; only the
    Hermitian part of the input is used.  No Hermiticity check is performed
    here (callers of the public ``eig_hermitian`` / ``trace_norm`` get one).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimMismatch(f"expected square matrices, got shape {m.shape}")
    d = m.shape[-1]
    if d == 2:
        return _eigvals2(hermitize(m))
    if d == 3:
        return _eigvals3(hermitize(m))
    raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {d}")


def _nullvec(mm, scale):
    """Unit vector v with ``mm @ v = 0`` via row cross products, or None.

    Returns None when the best cross product is at the round-off noise floor
    of the row entries, which happens only when a second singular value of
    ``mm`` is itself at round-off scale.
    """
    r0, r1, r2 = mm[0], mm[1], mm[2]
    best = None
    best_n2 = 0.0
    for u, v in ((r0, r1), (r0, r2), (r1, r2)):
        c = np.cross(u, v)
        n2 = float(_abs2(c).sum())
        if n2 > best_n2:
            best_n2 = n2
            best = c
    noise = 8.0 * _EPS * scale * float(np.max(np.abs(mm)))
    if best is None or best_n2 <= noise * noise:
        return None
    return best / np.sqrt(best_n2)


def _complement2(v):
    """Two orthonormal vectors spanning the orthogonal complement of unit v."""
    k = int(np.argmin(np.abs(v)))
    e = np.zeros(3, dtype=complex)
    e[k] = 1.0
    u1 = e - v * np.vdot(v, e)
    u1 = u1 / np.linalg.norm(u1)
    u2 = np.cross(np.conj(v), np.conj(u1))
    return u1, u2 / np.linalg.norm(u2)


def _eigvecs2(h, vals):
    gap = vals[0] - vals[1]
    if gap < DEGEN_GAP:
        return np.eye(2, dtype=complex)
    a = h[0, 0].real
    d = h[1, 1].real
    b = h[0, 1]
    cand1 = np.array([b, vals[0] - a], dtype=complex)
    cand2 = np.array([vals[0] - d, np.conj(b)], dtype=complex)
    vplus = cand1 if np.linalg.norm(cand1) >= np.linalg.norm(cand2) else cand2
    vplus = vplus / np.linalg.norm(vplus)
    vminus = np.array([-np.conj(vplus[1]), np.conj(vplus[0])])
    return np.column_stack([vplus, vminus])


def _eig3(h, vals, scale):
    """Values and vectors for 3x3 via deflation around the most isolated root.

    The trig eigenvalues resolve a close pair only to ~sqrt(eps), so the pair
    is re-solved exactly on the 2x2 complement of the isolated eigenvector:
    its quadratic formula has no cancellation and the in-plane direction
    error is compensated by the small in-plane spread.  A gap below
    ``DEGEN_GAP`` (or an untrusted cross product, possible only when the
    whole spectrum is clustered near round-off scale) falls back to a
    Gram-Schmidt completion, whose reconstruction error is bounded by the
    spread itself.
    """
    if vals[0] - vals[2] < DEGEN_GAP:
        return vals, np.eye(3, dtype=complex)
    # the middle eigenvalue is never the best separated one
    iso = 0 if vals[0] - vals[1] >= vals[1] - vals[2] else 2
    v = _nullvec(h - vals[iso] * np.eye(3), scale)
    if v is None:
        return vals, np.eye(3, dtype=complex)
    u1, u2 = _complement2(v)
    basis = np.column_stack([u1, u2])
    a2 = hermitize(basis.conj().T @ h @ basis)
    pair_vals = _eigvals2(a2)
    pair_vecs = basis @ _eigvecs2(a2, pair_vals)
    if iso == 0:
        out_vals = np.array([vals[0], pair_vals[0], pair_vals[1]])
        out_vecs = np.column_stack([v, pair_vecs[:, 0], pair_vecs[:, 1]])
    else:
        out_vals = np.array([pair_vals[0], pair_vals[1], vals[2]])
        out_vecs = np.column_stack([pair_vecs[:, 0], pair_vecs[:, 1], v])
    return out_vals, out_vecs


def _orthonormalize(v):
    """Modified Gram-Schmidt over columns, left to right."""
    v = v.copy()
    d = v.shape[1]
    for j in range(d):
        for i in range(j):
            v[:, j] -= v[:, i] * np.vdot(v[:, i], v[:, j])
        n = np.linalg.norm(v[:, j])
        if n < 1e-8:
            # deterministic completion from the standard basis
            for k in range(d):
                cand = np.zeros(d, dtype=complex)
                cand[k] = 1.0
                for i in range(j):
                    cand -= v[:, i] * np.vdot(v[:, i], cand)
                n = np.linalg.norm(cand)
                if n > 1e-8:
                    v[:, j] = cand
                    break
        v[:, j] /= n
    return v


def _fix_phases(v):
    for j in range(v.shape[1]):
        col = v[:, j]
        idx = np.nonzero(np.abs(col) > _PHASE_FLOOR)[0]
        k = idx[0] if idx.size else int(np.argmax(np.abs(col)))
        pivot = col[k]
        if abs(pivot) > 0:
            v[:, j] = col * (np.conj(pivot) / abs(pivot))
    return v


def eig_hermitian(m) -> EigenSystem:
    """Eigendecomposition of a single Hermitian 2x2 or 3x3 matrix.

    Raises ``NotHermitian`` when the input deviates from its conjugate
    transpose by more than ``HERM_TOL`` in any entry.  The returned
    eigenvalues are real and sorted in decreasing order; the eigenvector
    columns are orthonormal and phase-fixed.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"expected one square matrix, got shape {m.shape}")
    d = m.shape[0]
    if d not in (2, 3):
        raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {d}")
    _require_hermitian(m)

    h = hermitize(m)
    scale = max(1.0, float(np.max(np.abs(h))))
    vals = eigvals_hermitian(h)
    if d == 2:
        vecs = _eigvecs2(h, vals)
    else:
        vals, vecs = _eig3(h, vals, scale)

    # one Rayleigh-quotient refinement pass per eigenvalue
    refined = np.array([np.real(np.vdot(vecs[:, k], h @ vecs[:, k])) for k in range(d)])
    order = np.argsort(-refined, kind="stable")
    refined = refined[order]
    vecs = vecs[:, order]

    vecs = _fix_phases(_orthonormalize(vecs))
    return EigenSystem(values=refined, vectors=vecs)


def trace_product(a, b) -> complex:
    """``Tr(a b)`` for two equal-size square matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"incompatible shapes {a.shape} and {b.shape}")
    return complex(np.einsum("ij,ji->", a, b))


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    _require_hermitian(m)
    return float(np.sum(np.abs(eigvals_hermitian(m))))
