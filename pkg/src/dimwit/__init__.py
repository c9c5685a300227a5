"""Device-independent dimension witnesses for prepare-and-measure experiments."""

__version__ = "0.1.0"

from .classical import ClassicalStrategy, classical_bound, classical_expectations
from .certify import DimensionCertificate, certify, load_counts
from .quantum_opt import QuantumStrategy, SeesawConfig, SeesawResult, optimize, quantum_value
from .settings import ExperimentSpec, HwpAngles, angles_for, experiment, hwp_state
from .simulate import CountRecord, RunConfig, WitnessEstimate, estimate, run_experiment, simulate_counts
from .witness import BoundTable, Witness, algebraic_max, catalog, evaluate

__all__ = [
    "BoundTable", "ClassicalStrategy", "CountRecord", "DimensionCertificate", "ExperimentSpec",
    "HwpAngles", "QuantumStrategy", "RunConfig", "SeesawConfig", "SeesawResult", "Witness",
    "WitnessEstimate", "algebraic_max", "angles_for", "catalog", "certify", "classical_bound",
    "classical_expectations", "estimate", "evaluate", "experiment", "hwp_state", "load_counts",
    "optimize", "quantum_value", "run_experiment", "simulate_counts",
]
