"""Exception hierarchy shared by the ledger, frame and oracle modules."""


class InvalidQuantumNumbers(ValueError):
    """A quantum-number combination outside the bound-state catalog."""


class SupercriticalError(ValueError):
    """Z*alpha >= kappa: gamma would be imaginary."""


class InconsistentInvariantError(ValueError):
    """Scalar inputs that cannot belong to a single state (e.g. a^2 < 0)."""


class CollapsedStateError(ValueError):
    """Operation needs distinct A/I eigenstates but g2 vanishes, or vice versa."""


class NonUnitaryError(ValueError):
    pass


class SolverError(RuntimeError):
    """Base class for radial-solver failures."""


class BracketError(SolverError):
    """No sign change of the matching determinant inside the energy window."""


class NoBoundStateError(BracketError):
    """The requested (kappa_d, n_r) level does not exist."""


class NodeCountError(SolverError):
    pass


class ConvergenceError(SolverError):
    """Bisection hit its iteration cap or the grid cannot host the state."""
