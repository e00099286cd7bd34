"""Algebra of the Dirac-Coulomb spinor invariants, with a numerical radial oracle."""

from . import cli, clifford, frame, ledger, oracle
from .ledger import PhysicalConstants, QuantumNumbers, ScalarInvariants

__version__ = "0.1.0"

__all__ = ["cli", "clifford", "frame", "ledger", "oracle", "PhysicalConstants", "QuantumNumbers", "ScalarInvariants"]
