"""Named pure states of the three-qubit register.

All vectors use the big-endian basis convention of :mod:`triqubath.linalg`.
"""
from __future__ import annotations

import numpy as np

from .errors import ValidationError

NORM_TOL = 1e-12


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket |bits>, e.g. basis_state("011")."""
    if not bits or any(c not in "01" for c in bits):
        raise ValidationError(f"invalid bit string {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def equal_superposition(indices, dim: int = 8) -> np.ndarray:
    """Normalized equal-weight superposition of the given basis indices."""
    v = np.zeros(dim, dtype=complex)
    v[list(indices)] = 1.0
    return v / np.sqrt(len(indices))


def ghz_state() -> np.ndarray:
    """(|000> + |111>)/sqrt(2)."""
    return equal_superposition([0, 7])


def ghz_minus_state() -> np.ndarray:
    """(|000> - |111>)/sqrt(2)."""
    v = np.zeros(8, dtype=complex)
    v[0], v[7] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    return v


def w_state() -> np.ndarray:
    """(|001> + |010> + |100>)/sqrt(3)."""
    return equal_superposition([1, 2, 4])


def wbar_state() -> np.ndarray:
    """(|110> + |101> + |011>)/sqrt(3), the spin-flipped W state."""
    return equal_superposition([6, 5, 3])


def plus_ket() -> np.ndarray:
    """Single-qubit (|0> + |1>)/sqrt(2)."""
    return np.array([1, 1], dtype=complex) / np.sqrt(2)


def psi_plus_ket() -> np.ndarray:
    """Two-qubit (|01> + |10>)/sqrt(2)."""
    return equal_superposition([1, 2], dim=4)


def product_ket(factors) -> np.ndarray:
    """Tensor product of per-qubit (alpha, beta) amplitude pairs."""
    psi = np.array([1.0 + 0j])
    for alpha, beta in factors:
        psi = np.kron(psi, np.array([alpha, beta], dtype=complex))
    return psi


def pure_projector(psi: np.ndarray) -> np.ndarray:
    """Rank-1 density matrix |psi><psi| of a normalized ket."""
    psi = np.asarray(psi, dtype=complex)
    n = np.linalg.norm(psi)
    if abs(n - 1) > NORM_TOL:
        raise ValidationError(f"state norm {n} deviates from 1")
    return np.outer(psi, psi.conj())
