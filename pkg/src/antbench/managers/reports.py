"""
Report file management for antbench.

Every output file is written atomically (temporary file, then rename) so an
interrupted run never leaves a half-written CSV behind.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Sequence

import pandas as pd
import yaml
from rich.console import Console

logger = logging.getLogger(__name__)
console = Console()

FAILURES_FILE = "failures.yaml"
SUMMARY_FILE = "summary.csv"


def safe_name(text: str) -> str:
    """File-name friendly rendering of a dataset or algorithm label."""
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in text)


class ReportManager:
    """
    Writes run tables, summaries, stability curves, statistics tables and
    the failure manifest under one output directory.
    """

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)

    def ensure_directory(self) -> None:
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            console.print(f"❌ Failed to create output directory: {self.output_dir}\n💥 Error: {e}", style="red")
            raise

    def _atomic_write(self, path: Path, content: str) -> Path:
        """
        Write text to `path` through a temporary sibling file.

        Raises:
            IOError: If the file cannot be written; the temporary file is removed
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        temp_file = path.with_name(path.name + ".tmp")
        try:
            with open(temp_file, "w", encoding="utf-8", newline="") as f:
                f.write(content)
            temp_file.replace(path)
            logger.debug(f"Wrote {path}")
            return path
        except (IOError, OSError) as e:
            console.print(
                f"❌ Failed to write {path}: {e}\n"
                "💡 Check available disk space and file permissions.",
                style="red"
            )
            logger.error(f"IO error writing {path}: {e}")
            if temp_file.exists():
                temp_file.unlink()
            raise IOError(f"Failed to write {path}: {e}") from e

    def write_frame(self, frame: pd.DataFrame, relative: str, index: bool = False) -> Path:
        return self._atomic_write(self.output_dir / relative, frame.to_csv(index=index, lineterminator="\r\n"))

    def write_text(self, text: str, relative: str) -> Path:
        return self._atomic_write(self.output_dir / relative, text)

    def runs_path(self, dataset: str, algorithm: str) -> str:
        return f"runs/{safe_name(dataset)}__{safe_name(algorithm)}.csv"

    def write_runs(self, frame: pd.DataFrame, dataset: str, algorithm: str) -> Path:
        return self.write_frame(frame, self.runs_path(dataset, algorithm))

    def write_summary(self, frame: pd.DataFrame) -> Path:
        return self.write_frame(frame, SUMMARY_FILE)

    def write_stability(self, text: str, dataset: str, algorithm: str) -> Path:
        return self.write_text(text, f"stability/{safe_name(dataset)}__{safe_name(algorithm)}.dat")

    def write_failures(self, failures: Sequence[Dict[str, Any]], header: Dict[str, Any]) -> Path:
        """Failure manifest: run header plus one entry per failed experiment."""
        document = dict(header)
        document["failures"] = list(failures)
        return self.write_text(yaml.safe_dump(document, sort_keys=False), FAILURES_FILE)

    def clear_failures(self) -> None:
        stale = self.output_dir / FAILURES_FILE
        if stale.exists():
            stale.unlink()
