"""triqubath: three dephasing qubits in a common thermal bath.

Exact reduced-state evolution in the (f, phi) plane, bath spectral models
mapping time onto that plane, and entanglement classification through
negativities plus certified lower bounds on the three-tangle and the GME
concurrence.
"""
from .bath import BathMode, BathPath, BathSpec, f_of_t, nbar, path, phi_of_t
from .errors import ConfigError, NumericalError, TriqubathError, ValidationError
from .linalg import (CUTS, herm_eig, partial_trace, partial_transpose, tensor,
                     trace_norm)
from .luopt import (LocalUnitary, OptimizerConfig, OptimizeResult,
                    apply_local_unitary, optimize_bound, su2_from_angles)
from .measures import (EntanglementReport, cgme_lower_bound, cgme_pure,
                       classify, ghz_fidelity, ghz_twirl, negativity,
                       tau3_f0_closed_form, tau3_lower_bound, tau3_pure)
from .model import (CouplingParams, DephasingPoint, ProductState,
                    asymptotic_state, coupling_spectrum, detect_special_case,
                    diagonal_gl_transform, evolve, initial_product_state,
                    plus_product_state)
from .sweep import (AsymptoticReport, SweepResultRow, emit_map, run_asymptotic,
                    run_bath_path, run_curve, run_point, run_sweep, write_csv)

__version__ = "0.1.0"

__all__ = [
    "BathMode", "BathPath", "BathSpec", "f_of_t", "nbar", "path", "phi_of_t",
    "ConfigError", "NumericalError", "TriqubathError", "ValidationError",
    "CUTS", "herm_eig", "partial_trace", "partial_transpose", "tensor",
    "trace_norm",
    "LocalUnitary", "OptimizerConfig", "OptimizeResult",
    "apply_local_unitary", "optimize_bound", "su2_from_angles",
    "EntanglementReport", "cgme_lower_bound", "cgme_pure", "classify",
    "ghz_fidelity", "ghz_twirl", "negativity", "tau3_f0_closed_form",
    "tau3_lower_bound", "tau3_pure",
    "CouplingParams", "DephasingPoint", "ProductState", "asymptotic_state",
    "coupling_spectrum", "detect_special_case", "diagonal_gl_transform",
    "evolve", "initial_product_state", "plus_product_state",
    "AsymptoticReport", "SweepResultRow", "emit_map", "run_asymptotic",
    "run_bath_path", "run_curve", "run_point", "run_sweep", "write_csv",
    "__version__",
]
