"""Exception types shared by every module."""


class DomainError(ValueError):
    """An input lies outside the region where an operation is defined.

    ``offending_input`` carries the value (or mapping of values) that
    triggered the error so callers such as the CLI can report it.
    """

    code = "domain_error"

    def __init__(self, message, offending_input=None):
        super().__init__(message)
        self.offending_input = offending_input


class PoleError(DomainError):
    """Gamma-type function evaluated at one of its poles."""

    code = "pole"

    def __init__(self, pole):
        super().__init__(f"pole of the gamma function at {pole}", pole)
        self.pole = pole


class NonFiniteError(ArithmeticError):
    """A computation overflowed or produced NaN."""

    code = "non_finite"
