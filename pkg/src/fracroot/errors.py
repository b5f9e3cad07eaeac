"""Exception hierarchy for fracroot."""


class FracrootError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(FracrootError, ValueError):
    """Gamma function evaluated at (or too close to) a nonpositive integer."""


class DomainError(FracrootError, ValueError):
    """Argument outside the domain of a function, e.g. ``0 ** -0.5``."""


class NumericError(FracrootError, ArithmeticError):
    """A non-finite value appeared during an iteration."""


class InsufficientDataError(FracrootError, ValueError):
    """Not enough trace points to fit a convergence order."""


class BracketViolationError(FracrootError):
    """Some residual components do not change sign across a box.

    The offending (1-based) component indices are kept in ``components`` and
    the partially filled certificate in ``bracket``.
    """

    def __init__(self, components, bracket=None):
        self.components = list(components)
        self.bracket = bracket
        super().__init__(
            "sign-change condition violated for components "
            + ", ".join(str(k) for k in self.components)
        )
