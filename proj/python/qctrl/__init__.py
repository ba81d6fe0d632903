"""Controllability analysis of finite-level Hamiltonian quantum systems."""

import json
import sys

from ._qctrl import (
    RANDOM_ALGORITHM,
    DimensionError,
    Error,
    HamiltonianSystem,
    InconsistencyError,
    ParseError,
    Tolerances,
    ValidationError,
    __version__,
    build_chain,
    build_lambda,
    commutant_dimension,
    dark_states,
    is_pure,
    kinematically_equivalent,
    lie_closure,
    lie_dimension,
    parse_system,
    purity,
    random_system,
    run_cli,
    serialize_system,
)
from ._qctrl import analyze_json as _analyze_json


def analyze(system, tol=None):
    """Full controllability report as a dict (the CLI's JSON report)."""
    return json.loads(_analyze_json(system, tol))


def main():
    sys.exit(run_cli(sys.argv[1:]))


__all__ = [
    "RANDOM_ALGORITHM",
    "DimensionError",
    "Error",
    "HamiltonianSystem",
    "InconsistencyError",
    "ParseError",
    "Tolerances",
    "ValidationError",
    "__version__",
    "analyze",
    "build_chain",
    "build_lambda",
    "commutant_dimension",
    "dark_states",
    "is_pure",
    "kinematically_equivalent",
    "lie_closure",
    "lie_dimension",
    "main",
    "parse_system",
    "purity",
    "random_system",
    "run_cli",
    "serialize_system",
]
