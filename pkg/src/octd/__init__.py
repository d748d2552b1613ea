"""octd: open coupled-top dynamics engine.

Two collective spins exchanging excitations through a lossy cavity mode:
mean-field flow and fixed-point analysis, transient-chaos diagnostics,
quantum-trajectory unravelling with an exact master-equation oracle, and
scripted experiment recipes behind the `octd` command-line entry point.
"""

__version__ = "1.0.0"

from .classical import ClassicalState, Trajectory, integrate
from .fixed_points import FixedPoint, StabilityReport, fixed_point_catalog, phase_diagram, stability
from .model import LindbladSpec, ModelParams, build_hamiltonian, build_lindblad
from .operators import HilbertDims, boson_ladder, embed, spin_matrices
from .quantum import EnsembleResult, TrajectoryConfig, evolve_trajectory, lindblad_exact, run_ensemble
from .states import PureState, photon_coherent, product_state, spin_coherent

__all__ = [
    "__version__",
    "ClassicalState",
    "Trajectory",
    "integrate",
    "FixedPoint",
    "StabilityReport",
    "fixed_point_catalog",
    "phase_diagram",
    "stability",
    "LindbladSpec",
    "ModelParams",
    "build_hamiltonian",
    "build_lindblad",
    "HilbertDims",
    "boson_ladder",
    "embed",
    "spin_matrices",
    "EnsembleResult",
    "TrajectoryConfig",
    "evolve_trajectory",
    "lindblad_exact",
    "run_ensemble",
    "PureState",
    "photon_coherent",
    "product_state",
    "spin_coherent",
]
