"""Monte-Carlo field ensembles with a prescribed coherence matrix.

The field model is a zero-mean circular complex Gaussian process, the
standard model for partially polarized light; it is fully determined by the
second moments, which is exactly what a coherence matrix prescribes.  Each
realization is ``E = B z`` with ``z`` a vector of independent standard
complex Gaussians and ``B = conj(sqrt(rho))``: under the second-moment
convention ``rho_kl = <E_k^* E_l>`` the conjugated factor is the one whose
ensemble reproduces ``rho`` itself (a plain ``sqrt(rho)`` factor would
reproduce the transpose).

Randomness is counter-based (Philox) with fixed draw consumption per shot
(inverse-CDF normals), so shot ``i`` is reproducible on its own and
generation can be partitioned deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from . import groups, matcore, polarization
from .errors import DimMismatch

__all__ = ["FieldEnsemble", "sample_ensemble", "estimate_coherence", "estimate_overlap"]


@dataclass(frozen=True)
class FieldEnsemble:
    """Stochastic field realizations drawn against a prescribed state."""

    dim: int
    shots: int
    seed: int
    samples: np.ndarray  # (shots, dim) complex field amplitudes


def _standard_complex_normals(shots: int, dim: int, seed: int) -> np.ndarray:
    """(shots, dim) unit-variance circular complex Gaussians.

    Shot ``i`` owns a fixed, block-aligned slice of the Philox stream (real
    parts first, then imaginary parts), so individual shots are reproducible
    in isolation.
    """
    stride = -4 * (-2 * dim // 4)  # pad to Philox block boundary
    gen = np.random.Generator(np.random.Philox(key=seed))
    u = gen.random((shots, stride))[:, : 2 * dim]
    u = np.clip(u, 2.0 ** -54, 1.0 - 2.0 ** -54)  # keep ndtri finite
    g = ndtri(u)
    return (g[:, :dim] + 1j * g[:, dim:]) / np.sqrt(2.0)


def sample_ensemble(rho: polarization.CoherenceMatrix, shots: int, seed: int) -> FieldEnsemble:
    """Draw ``shots`` field realizations whose second moments match ``rho``."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    es = matcore.eig_hermitian(rho.matrix)
    root = (es.vectors * np.sqrt(np.clip(es.values, 0.0, None))) @ es.vectors.conj().T
    factor = np.conj(root)
    z = _standard_complex_normals(shots, rho.dim, seed)
    samples = z @ factor.T  # row i is factor @ z_i
    samples.setflags(write=False)
    return FieldEnsemble(dim=rho.dim, shots=shots, seed=seed, samples=samples)


def estimate_coherence(e: FieldEnsemble) -> polarization.CoherenceMatrix:
    """Sample second-moment matrix ``<E_k^* E_l>``, trace-normalized.

    Fewer shots than the dimension give a valid but rank-deficient estimate
    (a single shot estimates a pure state); callers wanting full-rank
    estimates should provide at least ``dim`` shots.
    """
    raw = e.samples.conj().T @ e.samples / e.shots
    return polarization.make_coherence(raw)


def estimate_overlap(e: FieldEnsemble, g: groups.GroupElement) -> float:
    """``Tr(rho_hat rho_hat_g)`` - the statistical stand-in for interferometric visibility."""
    if e.dim != g.dim:
        raise DimMismatch(f"ensemble dim {e.dim} does not match group dim {g.dim}")
    rho_hat = estimate_coherence(e)
    rho_g = groups.conjugate(rho_hat, g)
    return float(matcore.trace_product(rho_hat.matrix, rho_g.matrix).real)
