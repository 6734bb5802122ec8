"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI reports for it.
"""


class SantaloError(Exception):
    exit_code = 1


class InvalidInputError(SantaloError, ValueError):
    """Malformed or infeasible input (rank deficiency, b outside cone(A), ...)."""

    exit_code = 2


class WallError(InvalidInputError):
    """b lies on a wall of the chamber complex; the cell is not full-dimensional.

    ``normal`` is a primitive integer normal of a wall hyperplane through b.
    """

    def __init__(self, message, normal=None):
        super().__init__(message)
        self.normal = normal


class NumericalError(SantaloError, ArithmeticError):
    """Line search failure, step underflow, or an inconsistent solution count."""

    exit_code = 3


class NonSimpleError(SantaloError):
    """The fiber polytope is not simple, so the vertex adjoint formula does not apply."""

    exit_code = 4
