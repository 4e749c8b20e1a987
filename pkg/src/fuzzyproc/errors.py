"""Exception types shared across the package."""


class FuzzyProcError(Exception):
    """Base class for package errors."""


class DomainError(FuzzyProcError, ValueError):
    """An input lies outside the universe of its variable."""


class EmptyOutputError(FuzzyProcError):
    """No rule fired, so there is nothing to aggregate or defuzzify."""


class ConfigurationError(FuzzyProcError, ValueError):
    """A model definition references something that does not exist."""


class SingularSystemError(FuzzyProcError):
    """A crisp linear system has no unique solution."""


class InfeasibleError(FuzzyProcError):
    """A linear program or box constraint set has no feasible point."""


class UnboundedError(FuzzyProcError):
    """A linear program has an unbounded objective."""


class ScenarioError(FuzzyProcError):
    """A scenario file failed to parse or validate.

    ``where`` is a human-readable location (line number or a key path).
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
