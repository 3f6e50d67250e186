"""Bath models mapping time to the dephasing coordinates (f, phi).

For a set of harmonic modes with couplings g_j, frequencies omega_j and
thermal occupations nbar_j = 1/(exp(beta omega_j) - 1), the decoherence
exponent and induced phase are the mode sums (hbar = 1)

    f(t)   = sum_j g_j^2 (1 + 2 nbar_j) / (2 m omega_j^3) (1 - cos omega_j t)
    phi(t) = sum_j g_j^2 (1 + 2 nbar_j) / (2 m omega_j^2) [t - sin(omega_j t)/omega_j]

Both vanish at t = 0 and are nonnegative afterwards; phi grows linearly at
late times while the fate of f depends on the ultraviolet content of the
bath.

The continuum variant uses an ohmic spectral density with exponential
cutoff, J(omega) = eta omega exp(-omega/omega_c), defined so that a dense
discretization with g_j^2 = 2 m omega_j J(omega_j) d omega reproduces the
integrals.

The (1 + 2 nbar) factor in phi(t) is kept by default ("paper" mode) even
though the phase derives from the temperature-independent imaginary part
of the bath correlation function; set phi_thermal_factor="physical" to
drop it.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import NumericalError, ValidationError

DISCRETE = "discrete"
OHMIC = "ohmic"

QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-8
QUAD_LIMIT = 500


@dataclass(frozen=True)
class BathMode:
    """One harmonic mode: coupling g, frequency omega > 0, mass m > 0."""

    g: float
    omega: float
    m: float = 1.0

    def __post_init__(self):
        if not (self.omega > 0 and self.m > 0 and np.isfinite(self.g)):
            raise ValidationError(f"invalid bath mode {self}")


@dataclass(frozen=True)
class BathSpec:
    """Discrete mode list or ohmic continuum, plus inverse temperature.

    ``beta`` may be math.inf for zero temperature; it is handled
    symbolically (nbar = 0), never as a large float.
    """

    kind: str
    modes: tuple = ()
    eta: float = 0.0
    omega_c: float = 0.0
    beta: float = math.inf
    phi_thermal_factor: str = "paper"

    def __post_init__(self):
        if self.kind not in (DISCRETE, OHMIC):
            raise ValidationError(f"unknown bath kind {self.kind!r}")
        if not (self.beta > 0):
            raise ValidationError("beta must be positive (or inf)")
        if self.kind == OHMIC and not (self.omega_c > 0):
            raise ValidationError("ohmic bath needs omega_c > 0")
        if self.kind == DISCRETE and not self.modes:
            raise ValidationError("discrete bath needs at least one mode")
        if self.phi_thermal_factor not in ("paper", "physical"):
            raise ValidationError(
                f"phi_thermal_factor must be 'paper' or 'physical', "
                f"got {self.phi_thermal_factor!r}")


@dataclass(frozen=True)
class BathPath:
    """Sampled trajectory (t, f(t), phi(t))."""

    times: np.ndarray
    f: np.ndarray
    phi: np.ndarray


def nbar(beta: float, omega: float):
    """Thermal occupation 1/(exp(beta omega) - 1); zero at beta = inf."""
    if not beta > 0:
        raise ValidationError("beta must be positive (or inf)")
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("omega must be positive")
    if math.isinf(beta):
        return np.zeros_like(omega) if omega.ndim else 0.0
    x = beta * omega
    with np.errstate(over="ignore"):
        out = np.where(x > 700, 0.0, 1.0 / np.expm1(np.minimum(x, 700)))
    return out if omega.ndim else float(out)


def _thermal_weight(beta: float, omega, thermal: bool):
    if not thermal or math.isinf(beta):
        return np.ones_like(np.asarray(omega, dtype=float))
    return 1.0 + 2.0 * nbar(beta, omega)


def _discrete_sums(spec: BathSpec, t: float) -> tuple[float, float]:
    g = np.array([m.g for m in spec.modes])
    w = np.array([m.omega for m in spec.modes])
    mass = np.array([m.m for m in spec.modes])
    th = _thermal_weight(spec.beta, w, True)
    th_phi = _thermal_weight(spec.beta, w, spec.phi_thermal_factor == "paper")
    # 1 - cos x = 2 sin^2(x/2) keeps the summand exactly nonnegative.
    fval = np.sum(g ** 2 * th / (2 * mass * w ** 3) * 2 * np.sin(w * t / 2) ** 2)
    pval = np.sum(g ** 2 * th_phi / (2 * mass * w ** 2) * (t - np.sin(w * t) / w))
    return float(fval), float(pval)


def _quad(integrand, spec: BathSpec) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            integrand, 0.0, np.inf,
            epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT,
            points=None)
    if err > max(QUAD_EPSABS * 100, abs(val) * QUAD_EPSREL * 100):
        raise NumericalError(
            f"bath quadrature did not converge: value {val:.6e}, "
            f"error estimate {err:.2e}")
    return val


def _ohmic_f_integrand(spec: BathSpec, t: float):
    def integrand(w):
        th = _thermal_weight(spec.beta, w, True)
        return spec.eta * math.exp(-w / spec.omega_c) * th \
            * 2 * math.sin(w * t / 2) ** 2 / w
    return integrand


def _ohmic_phi_integrand(spec: BathSpec, t: float):
    thermal = spec.phi_thermal_factor == "paper"

    def integrand(w):
        th = _thermal_weight(spec.beta, w, thermal)
        return spec.eta * math.exp(-w / spec.omega_c) * th \
            * (t - math.sin(w * t) / w)
    return integrand


def f_of_t(spec: BathSpec, t: float) -> float:
    """Decoherence exponent f(t) >= 0 with f(0) = 0."""
    if t < 0:
        raise ValidationError("t must be >= 0")
    if t == 0:
        return 0.0
    if spec.kind == DISCRETE:
        return _discrete_sums(spec, t)[0]
    return _quad(_ohmic_f_integrand(spec, t), spec)


def phi_of_t(spec: BathSpec, t: float) -> float:
    """Induced phase phi(t) >= 0 with phi(0) = 0, asymptotically linear."""
    if t < 0:
        raise ValidationError("t must be >= 0")
    if t == 0:
        return 0.0
    if spec.kind == DISCRETE:
        return _discrete_sums(spec, t)[1]
    return _quad(_ohmic_phi_integrand(spec, t), spec)


def path(spec: BathSpec, times) -> BathPath:
    """Evaluate (f, phi) along an ascending list of times."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValidationError("times must be a nonempty 1-d sequence")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValidationError("times must be ascending and nonnegative")
    fs = np.array([f_of_t(spec, t) for t in times])
    ps = np.array([phi_of_t(spec, t) for t in times])
    return BathPath(times, fs, ps)


def ohmic_discretization(spec: BathSpec, n_modes: int,
                         omega_max: float | None = None) -> BathSpec:
    """Midpoint discretization of the ohmic density into a discrete bath.

    Mode weights g_j^2 = 2 m omega_j J(omega_j) d_omega make the discrete
    sums converge to the continuum integrals.
    """
    if spec.kind != OHMIC:
        raise ValidationError("ohmic_discretization needs an ohmic spec")
    if omega_max is None:
        omega_max = 60.0 * spec.omega_c
    dw = omega_max / n_modes
    ws = (np.arange(n_modes) + 0.5) * dw
    j = spec.eta * ws * np.exp(-ws / spec.omega_c)
    gs = np.sqrt(2.0 * ws * j * dw)
    modes = tuple(BathMode(g=float(g), omega=float(w)) for g, w in zip(gs, ws))
    return BathSpec(kind=DISCRETE, modes=modes, beta=spec.beta,
                    phi_thermal_factor=spec.phi_thermal_factor)
