"""Base publisher interface."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional


@dataclass
class ResultTable:
    """Named table of simulation results, one row per grid point."""

    name: str
    columns: list[str]
    rows: list[tuple[Any, ...]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        """Append a row."""
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} values, "
                f"table '{self.name}' has {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    def __len__(self) -> int:
        return len(self.rows)


class PublishResult:
    """Result of publishing operation."""

    def __init__(
        self,
        success: bool,
        path: Optional[Path] = None,
        rows: int = 0,
        error: Optional[str] = None,
    ):
        self.success = success
        self.path = path
        self.rows = rows
        self.error = error

    def __repr__(self) -> str:
        if self.success:
            return f"PublishResult(success=True, path={self.path}, rows={self.rows})"
        return f"PublishResult(success=False, error={self.error})"


class BasePublisher(ABC):
    """Base class for all result publishers."""

    @abstractmethod
    def publish(self, table: ResultTable, dry_run: bool = False) -> PublishResult:
        """
        Publish a result table.

        Args:
            table: Table to publish
            dry_run: If True, render without writing

        Returns:
            PublishResult object
        """
        pass

    @abstractmethod
    def check_destination(self) -> bool:
        """
        Check that the destination accepts output.

        Returns:
            True if writable
        """
        pass
