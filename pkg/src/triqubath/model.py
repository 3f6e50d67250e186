"""Exact dephasing dynamics of three qubits coupled to a common bath.

The coupling agent is diagonal in the computational basis,

    S = sigma_z(1) + lambda2 sigma_z(2) + lambda3 sigma_z(3),

with 1 >= lambda2 >= lambda3 >= 0. Its eigenvalues on |jkl> are

    s_jkl = (-1)^j + (-1)^k lambda2 + (-1)^l lambda3.

The reduced state evolves entrywise in this pointer basis,

    <s|rho|s'> -> exp(-(s - s')^2 f + i (s^2 - s'^2) phi) <s|rho0|s'>,

so a bath enters only through the two nonnegative coordinates (f, phi).
Diagonal entries never move; the f -> infinity limit projects onto the
eigenspaces of S.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg, states
from .errors import ValidationError

# Tolerance for coupling degeneracy decisions (lambda2 + lambda3 = 1 etc.).
DEGENERACY_TOL = 1e-9

# Labels of the asymptotic-state special cases.
SUM_ONE = "SUM_ONE"
SYMMETRIC_ONE = "SYMMETRIC_ONE"
SYMMETRIC_HALF = "SYMMETRIC_HALF"
SYMMETRIC_OTHER = "SYMMETRIC_OTHER"
THIRD_DECOUPLED = "THIRD_DECOUPLED"
ALL_DECOUPLED = "ALL_DECOUPLED"
GENERIC = "GENERIC"


def parse_coupling_value(value) -> tuple[float, Fraction | None]:
    """Parse a coupling constant from a float or a string.

    Strings may be decimal ("0.5") or rational ("2/3"); rational input is
    kept exactly so degenerate cases can be selected without round-off.
    """
    if isinstance(value, str):
        try:
            frac = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse coupling value {value!r}") from exc
        return float(frac), frac
    value = float(value)
    if not np.isfinite(value):
        raise ValidationError("coupling value must be finite")
    return value, None


@dataclass(frozen=True)
class CouplingParams:
    """Coupling constants (lambda2, lambda3) of the second and third qubit.

    The first qubit's coupling is fixed to 1 by rescaling. Exact rational
    values, when known, ride along for exact asymptotic-state reports.
    """

    lambda2: float
    lambda3: float
    lambda2_exact: Fraction | None = None
    lambda3_exact: Fraction | None = None

    def __post_init__(self):
        if not (1 + DEGENERACY_TOL >= self.lambda2 >= self.lambda3 >= -DEGENERACY_TOL):
            raise ValidationError(
                f"require 1 >= lambda2 >= lambda3 >= 0, got "
                f"({self.lambda2}, {self.lambda3})")

    @classmethod
    def parse(cls, lambda2, lambda3) -> "CouplingParams":
        l2, f2 = parse_coupling_value(lambda2)
        l3, f3 = parse_coupling_value(lambda3)
        return cls(l2, l3, f2, f3)


@dataclass(frozen=True)
class DephasingPoint:
    """A point (f, phi) in the nonnegative quadrant."""

    f: float
    phi: float

    def __post_init__(self):
        if not (np.isfinite(self.f) and np.isfinite(self.phi)):
            raise ValidationError("f and phi must be finite")
        if self.f < 0 or self.phi < 0:
            raise ValidationError(f"f and phi must be >= 0, got ({self.f}, {self.phi})")


@dataclass(frozen=True)
class ProductState:
    """Normalized per-qubit amplitudes ((a1,b1),(a2,b2),(a3,b3))."""

    factors: tuple

    def __post_init__(self):
        if len(self.factors) != 3:
            raise ValidationError("a product state needs exactly 3 factors")
        for alpha, beta in self.factors:
            n = abs(alpha) ** 2 + abs(beta) ** 2
            if abs(n - 1) > 1e-12:
                raise ValidationError(f"factor norm^2 {n} deviates from 1")

    def ket(self) -> np.ndarray:
        return states.product_ket(self.factors)

    def has_pole_factor(self, tol: float = 1e-12) -> bool:
        """True when some factor is |0> or |1> up to phase."""
        return any(min(abs(a), abs(b)) <= tol for a, b in self.factors)


def plus_product_state() -> ProductState:
    a = 1 / np.sqrt(2)
    return ProductState(((a, a), (a, a), (a, a)))


def coupling_spectrum(c: CouplingParams) -> np.ndarray:
    """The eight eigenvalues s_jkl of S, ordered by basis index jkl."""
    signs = np.array([1.0, -1.0])
    j, k, l = np.meshgrid(signs, signs, signs, indexing="ij")
    return (j + c.lambda2 * k + c.lambda3 * l).reshape(8)


def _coupling_spectrum_exact(c: CouplingParams) -> list | None:
    if c.lambda2_exact is None or c.lambda3_exact is None:
        return None
    out = []
    for idx in range(8):
        j, k, l = (idx >> 2) & 1, (idx >> 1) & 1, idx & 1
        out.append(Fraction((-1) ** j)
                   + c.lambda2_exact * (-1) ** k
                   + c.lambda3_exact * (-1) ** l)
    return out


def dephasing_factors(c: CouplingParams, f, phi) -> np.ndarray:
    """Entrywise evolution factors exp(-(s-s')^2 f + i(s^2-s'^2) phi).

    ``f`` and ``phi`` may be scalars or broadcastable arrays; the result
    gains the broadcast shape as leading axes of an (..., 8, 8) array.
    """
    s = coupling_spectrum(c)
    ds = np.subtract.outer(s, s)
    ds2 = np.subtract.outer(s ** 2, s ** 2)
    f = np.asarray(f, dtype=float)[..., None, None]
    phi = np.asarray(phi, dtype=float)[..., None, None]
    return np.exp(-ds ** 2 * f + 1j * ds2 * phi)


def evolve(rho0: np.ndarray, c: CouplingParams, point) -> np.ndarray:
    """Evolved reduced density matrix at the dephasing point (f, phi).

    The output is validated; a violated density-matrix invariant would
    indicate an implementation bug and raises immediately.
    """
    f, phi = _point_coords(point)
    rho0 = linalg.assert_density_matrix(rho0, "rho0")
    if rho0.shape[0] != 8:
        raise ValidationError("evolve expects the 8x8 tripartite state")
    rho = rho0 * dephasing_factors(c, f, phi)
    rho = linalg.symmetrize(rho)
    return linalg.assert_density_matrix(rho, "evolved state")


def _point_coords(point) -> tuple[float, float]:
    if isinstance(point, DephasingPoint):
        return point.f, point.phi
    f, phi = point
    DephasingPoint(float(f), float(phi))
    return float(f), float(phi)


def initial_product_state(ps: ProductState) -> np.ndarray:
    """Rank-1 projector onto the product ket of ``ps``."""
    return states.pure_projector(ps.ket())


def diagonal_gl_transform(ps: ProductState, rho_plus: np.ndarray) -> np.ndarray:
    """Map the evolved all-|+> state to the evolution of ``ps``.

    With F_j = sqrt(2) diag(alpha_j, beta_j) the returned state is
    F rho F^dag / tr(F rho F^dag), which equals evolving
    initial_product_state(ps) at the same coupling and dephasing point:
    the entrywise evolution commutes with every diagonal transformation.
    """
    if ps.has_pole_factor():
        raise ValidationError(
            "a |0> or |1> factor makes the transform non-invertible; "
            "the evolution reduces to the two-qubit case")
    rho_plus = linalg.assert_density_matrix(rho_plus, "rho_plus")
    diag = states.product_ket([(np.sqrt(2) * a, np.sqrt(2) * b)
                               for a, b in ps.factors])
    rho = rho_plus * np.outer(diag, diag.conj())
    rho = rho / np.trace(rho).real
    return linalg.assert_density_matrix(linalg.symmetrize(rho), "transformed state")


def _cluster(values, tol: float):
    """Group indices of ``values`` into clusters with gaps <= tol."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    groups = [[order[0]]]
    for idx in order[1:]:
        if values[idx] - values[groups[-1][-1]] <= tol:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    return groups


def eigenspace_projectors(c: CouplingParams, tol: float = DEGENERACY_TOL):
    """Projectors onto the eigenspaces of S, grouped by degeneracy."""
    exact = _coupling_spectrum_exact(c)
    if exact is not None:
        groups = _cluster(exact, Fraction(0))
    else:
        groups = _cluster(list(coupling_spectrum(c)), tol)
    projectors = []
    for g in groups:
        p = np.zeros((8, 8), dtype=complex)
        p[g, g] = 1.0
        projectors.append(p)
    return projectors


def asymptotic_state(c: CouplingParams, rho0: np.ndarray) -> np.ndarray:
    """The exact f -> infinity state, sum_r P_r rho0 P_r."""
    rho0 = linalg.assert_density_matrix(rho0, "rho0")
    out = np.zeros_like(rho0)
    for p in eigenspace_projectors(c):
        out += p @ rho0 @ p
    return linalg.assert_density_matrix(linalg.symmetrize(out), "asymptotic state")


def detect_special_case(c: CouplingParams, tol: float = DEGENERACY_TOL) -> str:
    """Classify the coupling into one of the asymptotic-state cases."""
    l2, l3 = c.lambda2, c.lambda3
    if l2 <= tol and l3 <= tol:
        return ALL_DECOUPLED
    if l3 <= tol:
        return THIRD_DECOUPLED
    if abs(l2 - l3) <= tol:
        if abs(l2 - 1) <= tol:
            return SYMMETRIC_ONE
        if abs(l2 - 0.5) <= tol:
            return SYMMETRIC_HALF
        return SYMMETRIC_OTHER
    if abs(l2 + l3 - 1) <= tol:
        return SUM_ONE
    return GENERIC
