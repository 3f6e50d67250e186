"""Grid sweeps, curves, asymptotic reports and their file outputs.

Rows are produced in row-major order (phi outer, f inner) and every
numeric output is bit-identical across runs and across any thread-pool
width: grid points are chunked deterministically, optimizer seeds are
keyed by global grid index, and results land in a preallocated table.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg, measures, model
from .bath import BathPath, BathSpec, path as bath_path
from .config import SweepConfig
from .errors import ConfigError, ValidationError
from .linalg import CUTS

CHUNK = 256
THREADS_ENV = "TRIQUBATH_THREADS"

CLASS_COLORS = {
    measures.GHZ_CLASS: (255, 0, 0),
    measures.W_CLASS: (255, 220, 0),
    measures.BISEPARABLE_CLASS: (140, 200, 255),
    measures.UNDETECTED_CLASS: (255, 255, 255),
}

CSV_HEADER = ("f,phi,neg1,neg2,neg3,two_neg1,two_neg2,two_neg3,"
              "tau3_lb,cgme_lb,ghz_fid,class")


@dataclass(frozen=True)
class SweepResultRow:
    f: float
    phi: float
    neg1: float
    neg2: float
    neg3: float
    tau3_lb: float
    cgme_lb: float
    ghz_fidelity_opt: float
    class_label: str


@dataclass(frozen=True)
class AsymptoticReport:
    case_label: str
    matrix: np.ndarray
    matrix_exact: list | None
    negativity: tuple


def _pool_width(cfg: SweepConfig) -> int:
    env = os.environ.get(THREADS_ENV)
    if env is not None:
        try:
            width = int(env)
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV} must be an integer") from exc
        if width < 1:
            raise ConfigError(f"{THREADS_ENV} must be >= 1")
        return width
    return cfg.threads


def _classify_chunk(cfg: SweepConfig, fs, phis, indices):
    rhos = cfg.rho0[None] * model.dephasing_factors(cfg.coupling, fs, phis)
    rhos = (rhos + rhos.conj().transpose(0, 2, 1)) / 2
    reports = measures.classify_batch(rhos, cfg.optimizer, cfg.threshold,
                                      indices)
    return [SweepResultRow(
        f=float(f), phi=float(p),
        neg1=r.negativity[0], neg2=r.negativity[1], neg3=r.negativity[2],
        tau3_lb=r.tau3_lb, cgme_lb=r.cgme_lb,
        ghz_fidelity_opt=r.ghz_fidelity_opt, class_label=r.class_label)
        for f, p, r in zip(fs, phis, reports)]


def _run_grid(cfg: SweepConfig, f_grid, phi_grid) -> list[SweepResultRow]:
    if cfg.coupling is None:
        raise ConfigError("missing 'coupling'")
    linalg.assert_density_matrix(cfg.rho0, "initial state")
    f_flat = np.tile(f_grid, len(phi_grid))
    phi_flat = np.repeat(phi_grid, len(f_grid))
    total = len(f_flat)
    chunks = [(start, min(start + CHUNK, total))
              for start in range(0, total, CHUNK)]
    rows: list = [None] * total

    def work(bounds):
        start, stop = bounds
        idx = np.arange(start, stop)
        return start, _classify_chunk(cfg, f_flat[start:stop],
                                      phi_flat[start:stop], idx)

    width = _pool_width(cfg)
    if width == 1:
        results = map(work, chunks)
    else:
        with ThreadPoolExecutor(max_workers=width) as pool:
            results = list(pool.map(work, chunks))
    for start, chunk_rows in results:
        rows[start:start + len(chunk_rows)] = chunk_rows
    return rows


def run_sweep(cfg: SweepConfig) -> list[SweepResultRow]:
    """One classified row per (f, phi) grid point, phi outer, f inner."""
    if cfg.f_grid is None or cfg.phi_grid is None:
        raise ConfigError("sweep requires grid.f and grid.phi")
    return _run_grid(cfg, cfg.f_grid, cfg.phi_grid)


def run_curve(cfg: SweepConfig) -> list[SweepResultRow]:
    """Rows over the f grid at one fixed phi."""
    if cfg.f_grid is None:
        raise ConfigError("curve requires grid.f")
    if cfg.phi_value is None:
        raise ConfigError("curve requires 'phi_value' (or --phi)")
    return _run_grid(cfg, cfg.f_grid, np.array([cfg.phi_value]))


def run_point(cfg: SweepConfig) -> SweepResultRow:
    """Single-point inspection."""
    if cfg.f_value is None or cfg.phi_value is None:
        raise ConfigError("point requires 'f_value' and 'phi_value'")
    return _run_grid(cfg, np.array([cfg.f_value]),
                     np.array([cfg.phi_value]))[0]


def run_asymptotic(coupling: model.CouplingParams) -> AsymptoticReport:
    """Detected degeneracy case, f -> infinity state and its negativities.

    Entries are exact rationals whenever the couplings were given as
    rationals: every entry of the all-|+> asymptotic state is 1/8 inside
    an eigenspace block and 0 outside.
    """
    rho0 = model.initial_product_state(model.plus_product_state())
    rho_inf = model.asymptotic_state(coupling, rho0)
    exact = None
    if coupling.lambda2_exact is not None and coupling.lambda3_exact is not None:
        exact = [["0"] * 8 for _ in range(8)]
        for p in model.eigenspace_projectors(coupling):
            members = [i for i in range(8) if p[i, i] != 0]
            for i in members:
                for j in members:
                    exact[i][j] = str(Fraction(1, 8))
    negs = tuple(measures.negativity(rho_inf, cut) for cut in CUTS)
    return AsymptoticReport(
        case_label=model.detect_special_case(coupling),
        matrix=rho_inf, matrix_exact=exact, negativity=negs)


def run_bath_path(spec: BathSpec, times) -> BathPath:
    return bath_path(spec, times)


# --- file emission ----------------------------------------------------------

def format_float(x: float) -> str:
    """Shortest representation that round-trips to the same float."""
    return repr(float(x))


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            format_float(r.f), format_float(r.phi),
            format_float(r.neg1), format_float(r.neg2), format_float(r.neg3),
            format_float(2 * r.neg1), format_float(2 * r.neg2),
            format_float(2 * r.neg3),
            format_float(r.tau3_lb), format_float(r.cgme_lb),
            format_float(r.ghz_fidelity_opt), r.class_label]))
    return "\n".join(lines) + "\n"


def write_csv(rows, path: str) -> None:
    text = rows_to_csv(rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_csv(path: str) -> list[SweepResultRow]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValidationError(f"{path} does not carry the expected header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 12:
            raise ValidationError(f"malformed CSV row: {line!r}")
        vals = [float(p) for p in parts[:11]]
        rows.append(SweepResultRow(
            f=vals[0], phi=vals[1], neg1=vals[2], neg2=vals[3], neg3=vals[4],
            tau3_lb=vals[8], cgme_lb=vals[9], ghz_fidelity_opt=vals[10],
            class_label=parts[11]))
    return rows


def bath_path_to_csv(bp: BathPath) -> str:
    lines = ["t,f,phi"]
    for t, f, p in zip(bp.times, bp.f, bp.phi):
        lines.append(",".join([format_float(t), format_float(f),
                               format_float(p)]))
    return "\n".join(lines) + "\n"


def _grid_layout(rows):
    fs = sorted({r.f for r in rows})
    phis = sorted({r.phi for r in rows})
    if len(rows) != len(fs) * len(phis):
        raise ValidationError("ragged grid: rows do not fill an f x phi rectangle")
    index = {}
    for r in rows:
        key = (r.f, r.phi)
        if key in index:
            raise ValidationError(f"duplicate grid point {key}")
        index[key] = r
    return fs, phis, index


def emit_map(rows, path: str, channel: str = "class") -> None:
    """Render a complete rectangular grid as a binary P6 pixmap.

    One pixel per grid point, phi increasing upward. The "class" channel
    paints detected classes red / yellow / light blue / white; any numeric
    row field renders as a grayscale ramp instead.
    """
    fs, phis, index = _grid_layout(rows)
    width, height = len(fs), len(phis)
    data = bytearray()
    if channel == "class":
        def pixel(r):
            return CLASS_COLORS[r.class_label]
    else:
        if not hasattr(rows[0], channel):
            raise ValidationError(f"unknown map channel {channel!r}")
        top = max(getattr(r, channel) for r in rows) or 1.0

        def pixel(r):
            g = int(round(255 * (1 - getattr(r, channel) / top)))
            return (g, g, g)
    for phi in reversed(phis):
        for f in fs:
            data.extend(pixel(index[(f, phi)]))
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + bytes(data))
