"""SU(2) and SU(3) group elements from Euler-type angles.

The SU(2) matrix convention is

    R(a, b, g) = [[exp(-i(a+g)/2) cos(b/2),  -exp(-i(a-g)/2) sin(b/2)],
                  [exp(+i(a-g)/2) sin(b/2),  +exp(+i(a+g)/2) cos(b/2)]]

and SU(3) elements factor into embedded SU(2) blocks,

    R(W) = T23(a1, b1, -a1) T12(a2, b2, -a2) T23(a3, b3, -a3) Phi(g1, g2),
    Phi(g1, g2) = diag(exp(-2i g1), exp(i(g1 - g2/2)), exp(i(g1 + g2/2))),

with W = (a1, b1, a2, b2, a3, b3, g1, g2).  T12 acts on components (1, 2)
and T23 on components (2, 3).

Canonical angle ranges are a covering chart, not a bijection: beta angles are
folded into [0, pi] (triangle-wave reflection of the 2 pi period), the SU(2)
alpha into [0, 4 pi), everything else into [0, 2 pi).  Only the image set
matters for minimization, so redundancy is harmless.

Sampling is counter-based (Philox): sample ``i`` of a given seed is
reproducible on its own by advancing the counter, so generation can be
partitioned across workers without changing the sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polarization
from .errors import DimMismatch, UnsupportedDim
from .tolerances import UNITARY_TOL

__all__ = [
    "EulerSU2",
    "EulerSU3",
    "GroupElement",
    "su2_from_euler",
    "su3_from_euler",
    "conjugate",
    "adjoint_on_stokes",
    "sample_group",
    "sample_euler_angles",
    "euler_angles_at",
    "angle_ranges",
]

TWO_PI = 2.0 * np.pi

_SU2_RANGES = np.array([2.0 * TWO_PI, np.pi, TWO_PI])
_SU3_RANGES = np.array([TWO_PI, np.pi, TWO_PI, np.pi, TWO_PI, np.pi, TWO_PI, TWO_PI])


def angle_ranges(dim: int) -> np.ndarray:
    """Upper bounds of the canonical angle ranges (lower bounds are 0)."""
    if dim == 2:
        return _SU2_RANGES.copy()
    if dim == 3:
        return _SU3_RANGES.copy()
    raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {dim}")


def _fold_beta(beta: float) -> float:
    b = beta % TWO_PI
    return TWO_PI - b if b > np.pi else b


@dataclass(frozen=True)
class EulerSU2:
    """SU(2) Euler angles, reduced to alpha in [0, 4pi), beta in [0, pi], gamma in [0, 2pi).

    The reduction is faithful: it uses the exact identities
    ``R(a, b + 2pi, g) = R(a + 2pi, b, g)``,
    ``R(a, 2pi - b, g) = R(a + pi, b, g + pi)`` and
    ``R(a, b, g + 2pi k) = R(a + 2pi k, b, g)``,
    so the canonical angles produce the same matrix as the raw input.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        a, b, g = float(self.alpha), float(self.beta), float(self.gamma)
        k, b = divmod(b, TWO_PI)
        a += TWO_PI * k
        if b > np.pi:
            b = TWO_PI - b
            a += np.pi
            g += np.pi
        k, g = divmod(g, TWO_PI)
        a += TWO_PI * k
        object.__setattr__(self, "alpha", a % (2.0 * TWO_PI))
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma])


@dataclass(frozen=True)
class EulerSU3:
    """Octuple of SU(3) Euler-like angles; betas reduced to [0, pi], others to [0, 2pi).

    Alpha reductions are faithful (each T block depends on its alpha only
    through ``exp(+-i alpha)``), as is the gamma2 wrap (compensated by a pi
    shift of gamma1).  Folding an out-of-range beta changes the individual
    matrix: the chart is a covering of the group, and only its image matters.
    """

    alpha1: float
    beta1: float
    alpha2: float
    beta2: float
    alpha3: float
    beta3: float
    gamma1: float
    gamma2: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3"):
            object.__setattr__(self, name, float(getattr(self, name)) % TWO_PI)
        for name in ("beta1", "beta2", "beta3"):
            object.__setattr__(self, name, _fold_beta(float(getattr(self, name))))
        k, g2 = divmod(float(self.gamma2), TWO_PI)
        object.__setattr__(self, "gamma2", g2)
        object.__setattr__(self, "gamma1", (float(self.gamma1) + np.pi * k) % TWO_PI)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.beta1, self.alpha2, self.beta2,
                         self.alpha3, self.beta3, self.gamma1, self.gamma2])

    @classmethod
    def from_array(cls, w) -> "EulerSU3":
        return cls(*(float(x) for x in w))


@dataclass(frozen=True)
class GroupElement:
    """Unitary matrix with unit determinant."""

    dim: int
    u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if u.shape != (self.dim, self.dim):
            raise DimMismatch(f"matrix shape {u.shape} does not match dim {self.dim}")
        dev = np.max(np.abs(u.conj().T @ u - np.eye(self.dim)))
        det = complex(np.linalg.det(u))
        if dev > UNITARY_TOL or abs(det - 1.0) > UNITARY_TOL:
            raise ValueError(
                f"not a special unitary matrix: unitarity residue {dev:.2e}, det {det!r}"
            )
        u = np.ascontiguousarray(u)
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    def inverse(self) -> "GroupElement":
        return GroupElement(dim=self.dim, u=self.u.conj().T)


def identity(dim: int) -> GroupElement:
    return GroupElement(dim=dim, u=np.eye(dim, dtype=complex))


def _su2_cells(alpha, beta, gamma):
    """The four entries of the SU(2) matrix; broadcasts over array angles."""
    half = 0.5 * np.asarray(beta, float)
    c = np.cos(half)
    s = np.sin(half)
    ps = 0.5 * (np.asarray(alpha, float) + np.asarray(gamma, float))
    pd = 0.5 * (np.asarray(alpha, float) - np.asarray(gamma, float))
    return (
        np.exp(-1j * ps) * c,
        -np.exp(-1j * pd) * s,
        np.exp(1j * pd) * s,
        np.exp(1j * ps) * c,
    )


def su2_batch(angles: np.ndarray) -> np.ndarray:
    """Stack of SU(2) matrices from an (n, 3) array of (alpha, beta, gamma)."""
    angles = np.atleast_2d(np.asarray(angles, float))
    e00, e01, e10, e11 = _su2_cells(angles[:, 0], angles[:, 1], angles[:, 2])
    out = np.empty((angles.shape[0], 2, 2), dtype=complex)
    out[:, 0, 0] = e00
    out[:, 0, 1] = e01
    out[:, 1, 0] = e10
    out[:, 1, 1] = e11
    return out


def _t12(alpha, beta, gamma) -> np.ndarray:
    e00, e01, e10, e11 = _su2_cells(alpha, beta, gamma)
    m = np.eye(3, dtype=complex)
    m[0, 0] = e00
    m[0, 1] = e01
    m[1, 0] = e10
    m[1, 1] = e11
    return m


def _t23(alpha, beta, gamma) -> np.ndarray:
    e00, e01, e10, e11 = _su2_cells(alpha, beta, gamma)
    m = np.eye(3, dtype=complex)
    m[1, 1] = e00
    m[1, 2] = e01
    m[2, 1] = e10
    m[2, 2] = e11
    return m


def _phi(g1, g2) -> np.ndarray:
    return np.diag(np.exp(1j * np.array([-2.0 * g1, g1 - 0.5 * g2, g1 + 0.5 * g2])))


def su3_matrix(w) -> np.ndarray:
    """SU(3) matrix from an 8-array of angles (no wrapper, used in hot loops)."""
    a1, b1, a2, b2, a3, b3, g1, g2 = (float(x) for x in w)
    return _t23(a1, b1, -a1) @ _t12(a2, b2, -a2) @ _t23(a3, b3, -a3) @ _phi(g1, g2)


def su3_batch(angles: np.ndarray) -> np.ndarray:
    """Stack of SU(3) matrices from an (n, 8) array of angles."""
    angles = np.atleast_2d(np.asarray(angles, float))
    n = angles.shape[0]

    def embed(e00, e01, e10, e11, which):
        m = np.zeros((n, 3, 3), dtype=complex)
        if which == 23:
            m[:, 0, 0] = 1.0
            m[:, 1, 1] = e00
            m[:, 1, 2] = e01
            m[:, 2, 1] = e10
            m[:, 2, 2] = e11
        else:
            m[:, 2, 2] = 1.0
            m[:, 0, 0] = e00
            m[:, 0, 1] = e01
            m[:, 1, 0] = e10
            m[:, 1, 1] = e11
        return m

    t1 = embed(*_su2_cells(angles[:, 0], angles[:, 1], -angles[:, 0]), 23)
    t2 = embed(*_su2_cells(angles[:, 2], angles[:, 3], -angles[:, 2]), 12)
    t3 = embed(*_su2_cells(angles[:, 4], angles[:, 5], -angles[:, 4]), 23)
    g1 = angles[:, 6]
    g2 = angles[:, 7]
    phases = np.exp(1j * np.stack([-2.0 * g1, g1 - 0.5 * g2, g1 + 0.5 * g2], axis=-1))
    return (t1 @ t2 @ t3) * phases[:, None, :]


def matrices_from_angles(dim: int, angles: np.ndarray) -> np.ndarray:
    """Batched group matrices for either dimension."""
    if dim == 2:
        return su2_batch(angles)
    if dim == 3:
        return su3_batch(angles)
    raise UnsupportedDim(f"only dimensions 2 and 3 are supported, got {dim}")


def su2_from_euler(e: EulerSU2) -> GroupElement:
    """The explicit SU(2) matrix for the given Euler angles."""
    return GroupElement(dim=2, u=su2_batch(e.as_array()[None, :])[0])


def su3_from_euler(e: EulerSU3) -> GroupElement:
    """The SU(3) product T23 T12 T23 Phi for the given angle octuple."""
    return GroupElement(dim=3, u=su3_matrix(e.as_array()))


def conjugate(rho: polarization.CoherenceMatrix, g: GroupElement) -> polarization.CoherenceMatrix:
    """``R rho R^†``; the spectrum is preserved."""
    if rho.dim != g.dim:
        raise DimMismatch(f"state dim {rho.dim} does not match group dim {g.dim}")
    return polarization.make_coherence(g.u @ rho.matrix @ g.u.conj().T)


def adjoint_on_stokes(n, g: GroupElement) -> np.ndarray:
    """Action induced on Stokes vectors by conjugation; preserves |n|."""
    return polarization.to_stokes(conjugate(polarization.from_stokes(n), g))


def _stride(n_angles: int) -> int:
    # Philox advances in blocks of four 64-bit draws; pad each sample's
    # consumption to a block boundary so per-index jumps are exact
    return -4 * (-n_angles // 4)


def sample_euler_angles(dim: int, count: int, seed: int) -> np.ndarray:
    """(count, k) angles drawn uniformly in the canonical ranges.

    Row ``i`` depends only on (seed, i): it equals ``euler_angles_at(dim, i,
    seed)``, so prefixes are stable (more samples never change earlier ones)
    and generation can be partitioned across workers.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    ranges = angle_ranges(dim)
    gen = np.random.Generator(np.random.Philox(key=seed))
    draws = gen.random((count, _stride(ranges.size)))
    return draws[:, : ranges.size] * ranges


def euler_angles_at(dim: int, index: int, seed: int) -> np.ndarray:
    """Angles of sample ``index`` alone, via a counter jump."""
    ranges = angle_ranges(dim)
    stride = _stride(ranges.size)
    bg = np.random.Philox(key=seed)
    bg.advance(index * stride // 4)
    gen = np.random.Generator(bg)
    return gen.random(stride)[: ranges.size] * ranges


def sample_group(dim: int, count: int, seed: int) -> list[GroupElement]:
    """Deterministic pseudo-random group elements (uniform in Euler angles).

    Uniform angles are *not* Haar measure; the minimization oracle relies on
    coverage plus refinement, not on measure uniformity.
    """
    angles = sample_euler_angles(dim, count, seed)
    mats = matrices_from_angles(dim, angles)
    return [GroupElement(dim=dim, u=mats[i]) for i in range(count)]
