"""Exception hierarchy.

Every error carries a ``check`` tag of the form ``<module>.<check>`` which the
command-line front end prints verbatim, and an exit ``code``.
"""


class SemiclassicalError(Exception):
    code = 2

    def __init__(self, check, message=""):
        self.check = check
        super().__init__(f"{check}: {message}" if message else check)


class ConfigError(SemiclassicalError, ValueError):
    """Invalid input or configuration (exit code 1)."""

    code = 1


class NumericalError(SemiclassicalError, RuntimeError):
    """Numerical precondition failed at run time (exit code 2)."""

    code = 2


class CoverageError(NumericalError):
    """Phase-space grid does not contain the distribution."""


class LeakageError(NumericalError):
    """Eigenstates or shifted densities reach the edge of the box."""


class ConvergenceError(NumericalError):
    """A spectral tail or extrapolation sequence did not converge."""
