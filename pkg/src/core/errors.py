"""Exception hierarchy for the RIS channel simulator."""

from typing import Optional


class SimulationError(Exception):
    """Base class for every error the simulator reports to the user."""

    exit_code = 1


class ConfigError(SimulationError):
    """Invalid scenario file, sweep specification or output destination."""

    exit_code = 2

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        """
        Initialize configuration error.

        Args:
            message: Human readable description
            key: Dotted scenario key the error refers to
            line: 1-based line in the scenario file, when known
        """
        super().__init__(message)
        self.key = key
        self.line = line


class DomainError(SimulationError, ValueError):
    """Numeric input outside the domain of a model operation."""

    exit_code = 3
