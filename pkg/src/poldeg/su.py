"""Generator bases of su(2) and su(3) and their structure tensors.

Conventions (frozen; see the README format reference):

* dim 2: Pauli matrices ``s1 = [[0,1],[1,0]]``, ``s2 = [[0,-i],[i,0]]``,
  ``s3 = diag(1,-1)``.
* dim 3: the eight standard Gell-Mann matrices ``L1 .. L8`` with
  ``L8 = diag(1,1,-2)/sqrt(3)``.

Both sets are Hermitian, traceless, and normalized to ``Tr(L_r L_s) = 2 d_rs``.

The structure constants are not transcribed from a published table; they are
derived from the trace formulas

    f_rst = Tr([L_r, L_s] L_t) / (4i),      d_rst = Tr({L_r, L_s} L_t) / 4,

which doubles as a self-test of the basis and avoids transcription mistakes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, UnsupportedDim

__all__ = [
    "GeneratorBasis",
    "StructureTensors",
    "build_basis",
    "compute_structure_tensors",
    "wedge",
    "star",
]

SQRT3 = np.sqrt(3.0)


def _pauli() -> np.ndarray:
    s = np.zeros((3, 2, 2), dtype=complex)
    s[0] = [[0, 1], [1, 0]]
    s[1] = [[0, -1j], [1j, 0]]
    s[2] = [[1, 0], [0, -1]]
    return s


def _gell_mann() -> np.ndarray:
    g = np.zeros((8, 3, 3), dtype=complex)
    g[0, 0, 1] = g[0, 1, 0] = 1
    g[1, 0, 1] = -1j
    g[1, 1, 0] = 1j
    g[2, 0, 0] = 1
    g[2, 1, 1] = -1
    g[3, 0, 2] = g[3, 2, 0] = 1
    g[4, 0, 2] = -1j
    g[4, 2, 0] = 1j
    g[5, 1, 2] = g[5, 2, 1] = 1
    g[6, 1, 2] = -1j
    g[6, 2, 1] = 1j
    g[7][np.diag_indices(3)] = np.array([1, 1, -2]) / SQRT3
    return g


@dataclass(frozen=True)
class GeneratorBasis:
    """Hermitian traceless generators: 3 Pauli (dim 2) or 8 Gell-Mann (dim 3)."""

    dim: int
    generators: np.ndarray  # (count, dim, dim)

    @property
    def count(self) -> int:
        return self.generators.shape[0]


@dataclass(frozen=True)
class StructureTensors:
    """Antisymmetric f and totally symmetric d tensors of su(3)."""

    f: np.ndarray  # (8, 8, 8)
    d: np.ndarray  # (8, 8, 8)


def build_basis(dim: int) -> GeneratorBasis:
    """Return the generator basis for dimension 2 or 3."""
    if dim == 2:
        gens = _pauli()
    elif dim == 3:
        gens = _gell_mann()
    else:
        raise UnsupportedDim(f"no generator basis for dimension {dim}")
    gens.setflags(write=False)
    return GeneratorBasis(dim=dim, generators=gens)


def compute_structure_tensors(basis: GeneratorBasis) -> StructureTensors:
    """Derive f and d from the commutator/anticommutator trace formulas."""
    if basis.dim != 3:
        raise UnsupportedDim("structure tensors are defined for the dim-3 basis")
    lam = basis.generators
    prod = np.einsum("rik,skj->rsij", lam, lam)
    comm = prod - np.swapaxes(prod.conj(), -1, -2)  # [L_r, L_s] is anti-Hermitian
    anti = prod + np.swapaxes(prod.conj(), -1, -2)

    f = np.einsum("rsij,tji->rst", comm, lam) / 4j
    d = np.einsum("rsij,tji->rst", anti, lam) / 4.0
    residue = max(float(np.max(np.abs(f.imag))), float(np.max(np.abs(d.imag))))
    if residue > 1e-12:
        raise InternalConsistencyError(
            f"structure constants carry imaginary residue {residue:.3e}"
        )
    f = np.ascontiguousarray(f.real)
    d = np.ascontiguousarray(d.real)
    f.setflags(write=False)
    d.setflags(write=False)
    return StructureTensors(f=f, d=d)


def wedge(a, b, t: StructureTensors) -> np.ndarray:
    """Antisymmetric product ``(a ^ b)_r = f_rst a_s b_t`` on 8-vectors."""
    return np.einsum("rst,s,t->r", t.f, np.asarray(a, float), np.asarray(b, float))


def star(a, b, t: StructureTensors) -> np.ndarray:
    """Symmetric product ``(a * b)_r = sqrt(3) d_rst a_s b_t`` on 8-vectors."""
    return SQRT3 * np.einsum("rst,s,t->r", t.d, np.asarray(a, float), np.asarray(b, float))
