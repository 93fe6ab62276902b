"""CSV result publisher."""

import csv
import io
import os
from pathlib import Path
from typing import Any

import numpy as np

from src.core.logger import get_logger
from src.publishers.base import BasePublisher, PublishResult, ResultTable

logger = get_logger(__name__)


def format_value(value: Any) -> str:
    """Render one CSV field; floats keep 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render(table: ResultTable) -> str:
    """Render a table as CSV text with a header row and \\n line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


class CsvPublisher(BasePublisher):
    """Writes result tables as `<name>.csv` files into a directory."""

    def __init__(self, out_dir: Path):
        """
        Initialize CSV publisher.

        Args:
            out_dir: Output directory, created on first publish
        """
        self.out_dir = Path(out_dir).expanduser()

    def path_for(self, table: ResultTable) -> Path:
        return self.out_dir / f"{table.name}.csv"

    def check_destination(self) -> bool:
        """Check the output directory exists (or can be created) and is writable."""
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logger.error("Cannot create output directory", path=str(self.out_dir), error=str(e))
            return False
        return os.access(self.out_dir, os.W_OK)

    def publish(self, table: ResultTable, dry_run: bool = False) -> PublishResult:
        """
        Write a table to CSV.

        Args:
            table: Table to write
            dry_run: If True, render only

        Returns:
            PublishResult object
        """
        path = self.path_for(table)
        text = render(table)

        if dry_run:
            logger.info("Dry run, CSV not written", path=str(path), rows=len(table))
            return PublishResult(success=True, path=path, rows=len(table))

        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8", newline="")
        except OSError as e:
            logger.error("Failed to write CSV", path=str(path), error=str(e))
            return PublishResult(success=False, error=f"cannot write {path}: {e}")

        logger.info("CSV written", path=str(path), rows=len(table))
        return PublishResult(success=True, path=path, rows=len(table))
