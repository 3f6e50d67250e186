"""Deterministic multi-start optimization over products of single-qubit
unitaries.

Each unitary is parametrized by three z-y-z Euler angles per qubit (nine
angles total). The search is a derivative-free simplex descent on the
negated objective, run from the identity plus a configurable number of
pseudo-random starts. Starts are seeded by a counter-based generator keyed
on (seed, grid_index), so results never depend on evaluation order or on
how work is distributed over threads.

All simplexes of a batch evolve independently; evaluating them together is
purely an efficiency measure and is bitwise-equivalent to running them one
by one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .states import ghz_state

_GHZ = ghz_state()
N_ANGLES = 9
UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class LocalUnitary:
    """Nine Euler angles, three per qubit, z-y-z convention, radians."""

    angles: tuple

    def __post_init__(self):
        if len(self.angles) != N_ANGLES:
            raise ValidationError(f"need {N_ANGLES} angles, got {len(self.angles)}")
        if not all(np.isfinite(a) for a in self.angles):
            raise ValidationError("angles must be finite")

    def factors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        a = self.angles
        return (su2_from_angles(a[0:3]), su2_from_angles(a[3:6]),
                su2_from_angles(a[6:9]))

    def matrix(self) -> np.ndarray:
        u1, u2, u3 = self.factors()
        return np.kron(np.kron(u1, u2), u3)


def identity_unitary() -> LocalUnitary:
    return LocalUnitary((0.0,) * N_ANGLES)


@dataclass(frozen=True)
class OptimizerConfig:
    """Multi-start search budget. ``starts`` random starts are added on
    top of the always-present identity start."""

    starts: int = 32
    max_iterations: int = 2000
    tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1 or self.max_iterations < 1 or not self.tolerance > 0:
            raise ValidationError(f"invalid optimizer config {self}")


@dataclass(frozen=True)
class OptimizeResult:
    unitary: LocalUnitary
    value: float
    converged: bool
    evaluations: int


def su2_from_angles(a) -> np.ndarray:
    """U = Rz(a1) Ry(a2) Rz(a3)."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3,):
        raise ValidationError("su2_from_angles takes exactly 3 angles")
    return _su2_batch(a[None])[0]


def _su2_batch(angles: np.ndarray) -> np.ndarray:
    """(B,3) Euler angles -> (B,2,2) unitaries."""
    a, b, c = angles[:, 0], angles[:, 1], angles[:, 2]
    cb, sb = np.cos(b / 2), np.sin(b / 2)
    e_sum = np.exp(-0.5j * (a + c))
    e_dif = np.exp(-0.5j * (a - c))
    u = np.empty((angles.shape[0], 2, 2), dtype=complex)
    u[:, 0, 0] = e_sum * cb
    u[:, 0, 1] = -e_dif * sb
    u[:, 1, 0] = e_dif.conj() * sb
    u[:, 1, 1] = e_sum.conj() * cb
    return u


def _full_unitary_batch(angles9: np.ndarray) -> np.ndarray:
    """(B,9) angles -> (B,8,8) product unitaries."""
    n = angles9.shape[0]
    u = _su2_batch(angles9.reshape(n * 3, 3)).reshape(n, 3, 2, 2)
    u1, u2, u3 = u[:, 0], u[:, 1], u[:, 2]
    u12 = (u1[:, :, None, :, None] * u2[:, None, :, None, :]).reshape(n, 4, 4)
    return (u12[:, :, None, :, None] * u3[:, None, :, None, :]).reshape(n, 8, 8)


def apply_local_unitary(rho: np.ndarray, u: LocalUnitary) -> np.ndarray:
    """(U1 x U2 x U3) rho (U1 x U2 x U3)^dag; the spectrum is unchanged."""
    m = u.matrix()
    if np.max(np.abs(m @ m.conj().T - np.eye(8))) > 1e-10:
        raise ValidationError("reconstructed local unitary is not unitary")
    return m @ np.asarray(rho, dtype=complex) @ m.conj().T


# --- objectives -------------------------------------------------------------
# Batched objectives take (angles (M,9), rhos (M,8,8)) and return (M,)
# real values to be maximized.

def ghz_fidelity_objective(angles9: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    """<GHZ| U rho U^dag |GHZ> for each batch row."""
    u = _full_unitary_batch(angles9)
    v = (u[:, 0, :] + u[:, 7, :]).conj() / np.sqrt(2)  # U^dag |GHZ>
    t = np.matmul(rhos, v[:, :, None])[:, :, 0]
    return np.real(np.sum(v.conj() * t, axis=1))


def gme_surplus_objective(angles9: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    """Signed GHZ-coherence surplus of the rotated state.

    |sigma_07| - sum_k sqrt(sigma_kk sigma_(7-k)(7-k)) over the six middle
    basis states; twice its positive part is the genuine-multipartite
    concurrence bound.
    """
    u = _full_unitary_batch(angles9)
    ur = np.matmul(u, rhos)  # sigma = (U rho) U^dag, assembled entrywise
    diag = np.clip(np.real(np.sum(ur * u.conj(), axis=2)), 0, None)
    s07 = np.sum(ur[:, 0, :] * u[:, 7, :].conj(), axis=1)
    pairs = np.sqrt(diag[:, 1:7] * diag[:, 6:0:-1]).sum(axis=1)
    return np.abs(s07) - pairs


OBJECTIVES = {
    "ghz_fidelity": ghz_fidelity_objective,
    "cgme": gme_surplus_objective,
}

_NM_STEP = np.pi / 8


def _nelder_mead_batch(fun, rows, x0, tol, maxiter):
    """Minimize ``fun`` independently for every simplex of the batch.

    fun(x (M,9), rows (M,)) -> (M,); ``rows`` lets the objective find the
    state belonging to each simplex. Returns (xbest, fbest, nev, converged).

    Per iteration the reflected, expanded and both contracted candidates
    are evaluated together; the classic acceptance rules then pick among
    them, so trajectories match a one-candidate-at-a-time implementation
    while the batch needs a single objective call.
    """
    nb, n = x0.shape
    m = n + 1
    budget = maxiter * m
    ids = np.arange(nb)
    xs = np.repeat(x0[:, None, :], m, axis=1)
    for i in range(n):
        xs[:, i + 1, i] += _NM_STEP
    fs = fun(xs.reshape(nb * m, n), np.repeat(rows, m)).reshape(nb, m)
    nev = np.full(nb, m)
    xsum = xs.sum(axis=1)
    ring = np.full((nb, m + 1), np.inf)
    active = np.ones(nb, dtype=bool)
    converged = np.zeros(nb, dtype=bool)

    for it in range(1, maxiter + 1):
        if not active.any():
            break
        wi = np.argmax(fs, axis=1)
        f_worst = fs[ids, wi]
        masked = fs.copy()
        masked[ids, wi] = -np.inf
        f_second = masked.max(axis=1)
        f_best = fs.min(axis=1)
        x_worst = xs[ids, wi]
        centroid = (xsum - x_worst) / n
        step = centroid - x_worst

        cand = np.stack([centroid + step,        # reflect
                         centroid + 2.0 * step,  # expand
                         centroid + 0.5 * step,  # outside contraction
                         centroid - 0.5 * step], # inside contraction
                        axis=1)
        fcand = np.full((nb, 4), np.inf)
        act = np.flatnonzero(active)
        fcand[act] = fun(cand[act].reshape(len(act) * 4, n),
                         np.repeat(rows[act], 4)).reshape(len(act), 4)
        nev[act] += 4
        fr, fe, fo, fi = fcand.T

        use_expand = active & (fr < f_best) & (fe < fr)
        use_reflect = active & (fr < f_second) & ~use_expand
        worse = active & ~(fr < f_second)
        outside = worse & (fr < f_worst)
        inside = worse & ~outside
        use_out = outside & (fo <= fr)
        use_in = inside & (fi < f_worst)
        shrink = (outside & ~use_out) | (inside & ~use_in)

        new_x = np.where(use_expand[:, None], cand[:, 1],
                         np.where(use_out[:, None], cand[:, 2],
                                  np.where(use_in[:, None], cand[:, 3],
                                           cand[:, 0])))
        new_f = np.where(use_expand, fe,
                         np.where(use_out, fo, np.where(use_in, fi, fr)))
        replace = use_expand | use_reflect | use_out | use_in
        rep = np.flatnonzero(replace)
        xsum[rep] += new_x[rep] - xs[rep, wi[rep]]
        xs[rep, wi[rep]] = new_x[rep]
        fs[rep, wi[rep]] = new_f[rep]

        shr = np.flatnonzero(shrink)
        if len(shr):
            bi = np.argmin(fs[shr], axis=1)
            x_best = xs[shr, bi][:, None, :]
            xs[shr] = x_best + 0.5 * (xs[shr] - x_best)
            fs[shr] = fun(xs[shr].reshape(len(shr) * m, n),
                          np.repeat(rows[shr], m)).reshape(len(shr), m)
            nev[shr] += m
            xsum[shr] = xs[shr].sum(axis=1)

        best = fs.min(axis=1)
        slot = it % (m + 1)
        previous = ring[:, slot].copy()
        ring[:, slot] = best
        if it > m:
            done = active & ((previous - best) < tol)
            converged |= done
            active &= ~done
        active &= nev + 4 + m <= budget

    ib = np.argmin(fs, axis=1)
    return xs[ids, ib], fs[ids, ib], nev, converged


def _starts_for(cfg: OptimizerConfig, grid_index: int) -> np.ndarray:
    """Identity start plus cfg.starts counter-seeded random starts."""
    rng = np.random.Generator(np.random.Philox(key=[cfg.seed, grid_index]))
    randoms = rng.uniform(0.0, 2.0 * np.pi, (cfg.starts, N_ANGLES))
    return np.vstack([np.zeros((1, N_ANGLES)), randoms])


def optimize_bound_batch(rhos: np.ndarray, objective, cfg: OptimizerConfig,
                         grid_indices) -> tuple:
    """Optimize one objective for a stack of states.

    Returns (angles (R,9), values (R,), converged (R,)). The per-state
    result is independent of the batch composition.
    """
    fun = OBJECTIVES[objective] if isinstance(objective, str) else objective
    rhos = np.asarray(rhos, dtype=complex)
    nstate = rhos.shape[0]
    per = cfg.starts + 1
    x0 = np.concatenate([_starts_for(cfg, int(g)) for g in grid_indices])
    rows = np.repeat(np.arange(nstate), per)

    def neg(x, rr):
        return -fun(x, rhos[rr])

    xb, fb, _nev, conv = _nelder_mead_batch(
        neg, rows, x0, cfg.tolerance, cfg.max_iterations)
    vals = -fb
    angles_out = np.empty((nstate, N_ANGLES))
    values_out = np.empty(nstate)
    conv_out = np.empty(nstate, dtype=bool)
    for i in range(nstate):
        sl = slice(i * per, (i + 1) * per)
        # ties resolve to the lowest start index (identity first)
        k = int(np.argmax(vals[sl]))
        angles_out[i] = xb[sl][k]
        values_out[i] = vals[sl][k]
        conv_out[i] = bool(conv[sl].all())
    # never worse than the plain identity evaluation
    ident = fun(np.zeros((nstate, N_ANGLES)), rhos)
    swap = ident > values_out
    values_out[swap] = ident[swap]
    angles_out[swap] = 0.0
    return angles_out, values_out, conv_out


def optimize_bound(rho: np.ndarray, objective, cfg: OptimizerConfig,
                   grid_index: int = 0) -> OptimizeResult:
    """Best local unitary and objective value for a single state."""
    fun = OBJECTIVES[objective] if isinstance(objective, str) else objective
    rho = np.asarray(rho, dtype=complex)
    x0 = _starts_for(cfg, grid_index)
    rows = np.zeros(x0.shape[0], dtype=int)
    rhos = rho[None]

    def neg(x, rr):
        return -fun(x, rhos[rr])

    xb, fb, nev, conv = _nelder_mead_batch(
        neg, rows, x0, cfg.tolerance, cfg.max_iterations)
    vals = -fb
    k = int(np.argmax(vals))
    angles, value = xb[k], float(vals[k])
    ident = float(fun(np.zeros((1, N_ANGLES)), rhos)[0])
    if ident > value:
        angles, value = np.zeros(N_ANGLES), ident
    return OptimizeResult(
        unitary=LocalUnitary(tuple(angles)),
        value=value,
        converged=bool(conv.all()),
        evaluations=int(nev.sum()),
    )
