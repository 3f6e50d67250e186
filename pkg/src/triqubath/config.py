"""JSON configuration parsing for the command-line front end."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bath import DISCRETE, OHMIC, BathMode, BathSpec
from .errors import ConfigError, ValidationError
from .luopt import OptimizerConfig
from .measures import DETECTION_THRESHOLD
from .model import CouplingParams, ProductState, plus_product_state
from .states import pure_projector


@dataclass
class SweepConfig:
    """Everything a sweep, curve, point or bath-path run needs."""

    coupling: CouplingParams | None = None
    rho0: np.ndarray | None = None
    f_grid: np.ndarray | None = None
    phi_grid: np.ndarray | None = None
    phi_value: float | None = None
    f_value: float | None = None
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    bath: BathSpec | None = None
    times: np.ndarray | None = None
    threshold: float = DETECTION_THRESHOLD
    threads: int = 1
    out_path: str | None = None


def _require(mapping, key, path, kind=None):
    if key not in mapping:
        raise ConfigError(f"missing required field '{path}{key}'")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise ConfigError(f"field '{path}{key}' has wrong type "
                          f"{type(value).__name__}")
    return value


def _number(mapping, key, path, default=None, minimum=None):
    if key not in mapping:
        if default is None:
            raise ConfigError(f"missing required field '{path}{key}'")
        return default
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{path}{key}' must be a number")
    if minimum is not None and value < minimum:
        raise ConfigError(f"field '{path}{key}' must be >= {minimum}")
    return float(value)


def _parse_coupling(block) -> CouplingParams:
    if not isinstance(block, dict):
        raise ConfigError("'coupling' must be an object")
    l2 = _require(block, "lambda2", "coupling.")
    l3 = _require(block, "lambda3", "coupling.")
    try:
        return CouplingParams.parse(l2, l3)
    except ValidationError as exc:
        raise ConfigError(f"coupling: {exc}") from exc


def _parse_complex_pair(value, path):
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float))
                   for v in value)):
        raise ConfigError(f"field '{path}' must be [re, im]")
    return complex(value[0], value[1])


def _parse_initial_state(block) -> np.ndarray:
    if block is None:
        block = {"kind": "plus"}
    if not isinstance(block, dict):
        raise ConfigError("'initial_state' must be an object")
    kind = block.get("kind", "plus")
    if kind == "plus":
        return pure_projector(plus_product_state().ket())
    if kind == "product":
        factors = _require(block, "factors", "initial_state.", list)
        if len(factors) != 3:
            raise ConfigError("initial_state.factors needs exactly 3 entries")
        pairs = []
        for qi, fac in enumerate(factors):
            if not isinstance(fac, list) or len(fac) != 2:
                raise ConfigError(
                    f"initial_state.factors[{qi}] must be [[re,im],[re,im]]")
            a = _parse_complex_pair(fac[0], f"initial_state.factors[{qi}][0]")
            b = _parse_complex_pair(fac[1], f"initial_state.factors[{qi}][1]")
            pairs.append((a, b))
        try:
            ps = ProductState(tuple(pairs))
            return pure_projector(ps.ket())
        except ValidationError as exc:
            raise ConfigError(f"initial_state: {exc}") from exc
    if kind == "matrix":
        entries = _require(block, "entries", "initial_state.", list)
        if len(entries) != 8 or any(not isinstance(r, list) or len(r) != 8
                                    for r in entries):
            raise ConfigError("initial_state.entries must be 8x8 of [re, im]")
        rho = np.array([[_parse_complex_pair(e, "initial_state.entries")
                         for e in row] for row in entries])
        return rho
    raise ConfigError(f"unknown initial_state.kind {kind!r}")


def _parse_axis(block, name) -> np.ndarray:
    if not isinstance(block, dict):
        raise ConfigError(f"'grid.{name}' must be an object")
    lo = _number(block, "min", f"grid.{name}.", minimum=0.0)
    hi = _number(block, "max", f"grid.{name}.")
    count = block.get("count")
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise ConfigError(f"field 'grid.{name}.count' must be an integer >= 1")
    if hi < lo:
        raise ConfigError(f"grid.{name}: max must be >= min")
    if count == 1:
        return np.array([lo])
    return np.linspace(lo, hi, count)


def _parse_optimizer(block) -> OptimizerConfig:
    if block is None:
        return OptimizerConfig()
    if not isinstance(block, dict):
        raise ConfigError("'optimizer' must be an object")
    starts = block.get("starts", 32)
    maxiter = block.get("max_iterations", 2000)
    seed = block.get("seed", 0)
    for key, val in (("starts", starts), ("max_iterations", maxiter),
                     ("seed", seed)):
        if isinstance(val, bool) or not isinstance(val, int):
            raise ConfigError(f"field 'optimizer.{key}' must be an integer")
    tol = _number(block, "tolerance", "optimizer.", default=1e-10)
    try:
        return OptimizerConfig(starts=starts, max_iterations=maxiter,
                               tolerance=tol, seed=seed)
    except ValidationError as exc:
        raise ConfigError(f"optimizer: {exc}") from exc


def _parse_beta(value):
    if value in ("inf", "infinity", None):
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("field 'bath.beta' must be a number or \"inf\"")
    return float(value)


def _parse_bath(block) -> BathSpec:
    if not isinstance(block, dict):
        raise ConfigError("'bath' must be an object")
    kind = _require(block, "kind", "bath.")
    beta = _parse_beta(block.get("beta", "inf"))
    thermal = block.get("phi_thermal_factor", "paper")
    try:
        if kind == DISCRETE:
            modes_block = _require(block, "modes", "bath.", list)
            modes = []
            for i, mb in enumerate(modes_block):
                if not isinstance(mb, dict):
                    raise ConfigError(f"bath.modes[{i}] must be an object")
                modes.append(BathMode(
                    g=_number(mb, "g", f"bath.modes[{i}]."),
                    omega=_number(mb, "omega", f"bath.modes[{i}]."),
                    m=_number(mb, "m", f"bath.modes[{i}].", default=1.0)))
            return BathSpec(kind=DISCRETE, modes=tuple(modes), beta=beta,
                            phi_thermal_factor=thermal)
        if kind == OHMIC:
            return BathSpec(
                kind=OHMIC,
                eta=_number(block, "eta", "bath."),
                omega_c=_number(block, "omega_c", "bath."),
                beta=beta,
                phi_thermal_factor=thermal)
    except ValidationError as exc:
        raise ConfigError(f"bath: {exc}") from exc
    raise ConfigError(f"unknown bath.kind {kind!r}")


def _parse_times(block) -> np.ndarray:
    if isinstance(block, list):
        if not block or any(isinstance(t, bool) or not isinstance(t, (int, float))
                            for t in block):
            raise ConfigError("'times' list must hold numbers")
        times = np.array(block, dtype=float)
    elif isinstance(block, dict):
        times = _parse_axis(block, "times")
    else:
        raise ConfigError("'times' must be a list or a {min,max,count} object")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ConfigError("'times' must be ascending and nonnegative")
    return times


def parse_config(doc: dict) -> SweepConfig:
    """Build a SweepConfig from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError("top-level config must be a JSON object")
    cfg = SweepConfig()
    if "coupling" in doc:
        cfg.coupling = _parse_coupling(doc["coupling"])
    cfg.rho0 = _parse_initial_state(doc.get("initial_state"))
    grid = doc.get("grid")
    if grid is not None:
        if not isinstance(grid, dict):
            raise ConfigError("'grid' must be an object")
        if "f" in grid:
            cfg.f_grid = _parse_axis(grid["f"], "f")
        if "phi" in grid:
            cfg.phi_grid = _parse_axis(grid["phi"], "phi")
    if "phi_value" in doc:
        cfg.phi_value = _number(doc, "phi_value", "", minimum=0.0)
    if "f_value" in doc:
        cfg.f_value = _number(doc, "f_value", "", minimum=0.0)
    cfg.optimizer = _parse_optimizer(doc.get("optimizer"))
    if "bath" in doc:
        cfg.bath = _parse_bath(doc["bath"])
    if "times" in doc:
        cfg.times = _parse_times(doc["times"])
    thresholds = doc.get("thresholds", {})
    if not isinstance(thresholds, dict):
        raise ConfigError("'thresholds' must be an object")
    cfg.threshold = _number(thresholds, "detect", "thresholds.",
                            default=DETECTION_THRESHOLD, minimum=0.0)
    threads = doc.get("threads", 1)
    if isinstance(threads, bool) or not isinstance(threads, int) or threads < 1:
        raise ConfigError("'threads' must be an integer >= 1")
    cfg.threads = threads
    output = doc.get("output", {})
    if output and not isinstance(output, dict):
        raise ConfigError("'output' must be an object")
    if isinstance(output, dict) and "path" in output:
        if not isinstance(output["path"], str):
            raise ConfigError("'output.path' must be a string")
        cfg.out_path = output["path"]
    return cfg


def load_config(path: str) -> SweepConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"invalid JSON in {path} at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}") from exc
    return parse_config(doc)
