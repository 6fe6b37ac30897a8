"""Exception hierarchy shared by all motivedim modules.

Exit-code mapping used by the CLI lives in ``cli.py``; keep the classes
here dependency-free so every module can raise them.
"""


class MotivedimError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateLattice(MotivedimError):
    """The two periods are R-linearly dependent (tau is real)."""


class PoleAtLatticePoint(MotivedimError):
    """Evaluation was requested at (or too close to) a lattice point."""


class ChartSingularity(MotivedimError):
    """exp_G coordinates requested where wp(p) = wp(q); evaluation refused."""


class PrecisionTooLow(MotivedimError):
    """A numeric verdict could not be separated at the working precision."""


class BudgetExceeded(MotivedimError):
    """Brute-force enumeration would exceed the configured budget."""


class InternalInconsistency(MotivedimError):
    """Two routes to the same quantity disagreed; indicates a numeric
    contradiction that must not be silently ignored."""


class ValidationError(MotivedimError):
    """Structurally valid input that fails semantic validation (for
    example a declared relation whose residual is not small)."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ParseError(MotivedimError):
    """Malformed input document."""
