"""Dense complex linear algebra for one, two and three qubits.

Operators are plain complex numpy arrays of dimension 2, 4 or 8. Qubit
ordering is big-endian throughout: qubit 1 is the most significant bit of
the computational basis index, so |jkl> lives at index 4j + 2k + l.
"""
from __future__ import annotations

import numpy as np

from .errors import ValidationError

# Allowed operator dimensions (1, 2 or 3 qubits).
DIMS = (2, 4, 8)

# The three one-vs-two bipartitions of a three-qubit system.
CUTS = ("1|23", "2|13", "3|12")

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10

# Axis permutations realizing the partial transpose of one qubit on an
# 8x8 operator reshaped to (2,2,2, 2,2,2).
_PT_AXES_8 = {
    "1|23": (3, 1, 2, 0, 4, 5),
    "2|13": (0, 4, 2, 3, 1, 5),
    "3|12": (0, 1, 5, 3, 4, 2),
}
_PT_AXES_4 = {
    "1|2": (2, 1, 0, 3),
    "2|1": (0, 3, 2, 1),
}


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] not in DIMS:
        raise ValidationError(f"dimension {m.shape[0]} not in {DIMS}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValidationError("matrix contains non-finite entries")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def symmetrize(m: np.ndarray) -> np.ndarray:
    """(m + m^dag)/2, removing round-off Hermiticity drift."""
    return (m + dagger(m)) / 2


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor on the most significant bits."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[0] * b.shape[0] > 8:
        raise ValidationError(
            f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds 8")
    return np.kron(a, b)


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def assert_density_matrix(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    """Validate Hermiticity, unit trace and positive semidefiniteness."""
    rho = _as_matrix(rho)
    if not is_hermitian(rho):
        raise ValidationError(f"{name} is not Hermitian within {HERMITICITY_TOL}")
    tr = np.trace(rho)
    if abs(tr - 1) > TRACE_TOL:
        raise ValidationError(f"{name} has trace {tr}, expected 1")
    w = np.linalg.eigvalsh(symmetrize(rho))
    if w[0] < PSD_TOL:
        raise ValidationError(f"{name} has negative eigenvalue {w[0]:.3e}")
    return rho


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    """Reduced density matrix of the kept qubits of an 8x8 state.

    ``keep`` names the qubits to retain, e.g. "1", "23", "13".
    """
    rho = _as_matrix(rho)
    if rho.shape[0] != 8:
        raise ValidationError("partial_trace expects an 8x8 matrix")
    keep = "".join(sorted(keep))
    if keep not in ("1", "2", "3", "12", "13", "23"):
        raise ValidationError(f"invalid keep specification {keep!r}")
    a = rho.reshape(2, 2, 2, 2, 2, 2)
    strings = {
        "1": "iabjab->ij",
        "2": "aibajb->ij",
        "3": "abiabj->ij",
        "12": "ijakla->ijkl",
        "13": "iajkal->ijkl",
        "23": "aijakl->ijkl",
    }
    out = np.einsum(strings[keep], a)
    d = 2 ** len(keep)
    return out.reshape(d, d)


def partial_transpose(rho: np.ndarray, cut: str) -> np.ndarray:
    """Transpose the single-party indices of the given bipartition.

    8x8 operators take cuts "1|23", "2|13", "3|12"; 4x4 operators take
    "1|2" or "2|1". The result is Hermitian with the same trace.
    """
    rho = _as_matrix(rho)
    if rho.shape[0] == 8:
        if cut not in _PT_AXES_8:
            raise ValidationError(f"invalid cut {cut!r} for an 8x8 matrix")
        return rho.reshape((2,) * 6).transpose(_PT_AXES_8[cut]).reshape(8, 8)
    if rho.shape[0] == 4:
        if cut not in _PT_AXES_4:
            raise ValidationError(f"invalid cut {cut!r} for a 4x4 matrix")
        return rho.reshape((2,) * 4).transpose(_PT_AXES_4[cut]).reshape(4, 4)
    raise ValidationError("partial_transpose expects a 4x4 or 8x8 matrix")


def herm_eig(m: np.ndarray, tol: float = 1e-10):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, orthonormal eigenvector columns) with
    V diag(w) V^dag reconstructing the input. Non-Hermitian input is
    rejected.
    """
    m = _as_matrix(m)
    if not is_hermitian(m, tol):
        raise ValidationError(f"herm_eig requires a Hermitian matrix (tol {tol})")
    w, v = np.linalg.eigh(symmetrize(m))
    return w, v


def trace_norm(m: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    w, _ = herm_eig(m)
    return float(np.sum(np.abs(w)))
