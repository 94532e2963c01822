"""
Dataset loading for antbench.

Two on-disk layouts are supported:

- CSV with a header line plus a YAML sidecar schema `<stem>.schema.yaml`
  declaring every column as `continuous` or `nominal:<a,b,c>` and naming the
  class column.
- ARFF files, whose `@attribute` header carries the schema inline; the last
  attribute is the class unless the caller names another one.

Missing values are rejected, and so are categories outside the declared
domain. Every parse error names the offending line and column.
"""

import logging
import math
import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import yaml
from scipy.io import arff

from ..config import get_data_directory
from ..models import CONTINUOUS, NOMINAL, AttributeSpec, DatasetTable, InstanceRow, Value

logger = logging.getLogger(__name__)

MISSING_MARKERS = ("", "?")
SCHEMA_SUFFIXES = (".schema.yaml", ".schema.yml")


class DatasetParseError(ValueError):
    """A dataset file could not be parsed; names the line and column."""

    def __init__(self, path: Union[str, Path], message: str, line: Optional[int] = None,
                 column: Optional[str] = None):
        self.path = Path(path)
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column '{column}'")
        location = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{self.path}{location}: {message}")


class SchemaNotFoundError(FileNotFoundError):
    """The sidecar schema of a CSV dataset is missing."""


def resolve_dataset_path(name_or_path: Union[str, Path]) -> Path:
    """
    Resolve a dataset argument to an existing file.

    Existing paths are returned as-is; otherwise the name is looked up as
    `<name>.csv` then `<name>.arff` in the ANTBENCH_DATA_DIR directory.

    Raises:
        FileNotFoundError: Naming the path (and data directory) that was tried
    """
    path = Path(name_or_path).expanduser()
    if path.exists():
        return path
    data_dir = get_data_directory()
    if data_dir is not None:
        for suffix in ("", ".csv", ".arff"):
            candidate = data_dir / f"{name_or_path}{suffix}"
            if candidate.is_file():
                return candidate
        raise FileNotFoundError(f"Dataset not found: {path} (also looked in {data_dir})")
    raise FileNotFoundError(f"Dataset not found: {path}")


def schema_path_for(csv_path: Path) -> Path:
    """Sidecar schema location for a CSV file (the .yaml spelling by default)."""
    stem = csv_path.with_suffix("")
    for suffix in SCHEMA_SUFFIXES:
        candidate = stem.with_name(stem.name + suffix)
        if candidate.exists():
            return candidate
    return stem.with_name(stem.name + SCHEMA_SUFFIXES[0])


def parse_declaration(name: str, declaration: Union[str, Sequence[str]]) -> AttributeSpec:
    """
    Build an AttributeSpec from a sidecar declaration.

    Accepted forms: `continuous`, `nominal:a,b,c`, or a YAML list of labels.
    """
    if isinstance(declaration, (list, tuple)):
        return AttributeSpec(name, NOMINAL, tuple(str(v) for v in declaration))
    text = str(declaration).strip()
    if text == CONTINUOUS:
        return AttributeSpec(name, CONTINUOUS)
    if text.startswith(f"{NOMINAL}:"):
        labels = tuple(label.strip() for label in text[len(NOMINAL) + 1:].split(","))
        return AttributeSpec(name, NOMINAL, labels)
    raise ValueError(f"Attribute '{name}': expected 'continuous' or 'nominal:<labels>', got '{text}'")


def load_schema(schema_path: Path) -> Tuple[Optional[str], Dict[str, AttributeSpec], str]:
    """
    Read a sidecar schema file.

    Returns:
        (dataset name or None, attribute specs by name, class attribute name)

    Raises:
        SchemaNotFoundError: If the file does not exist
        ValueError: If the file is malformed
    """
    if not schema_path.exists():
        raise SchemaNotFoundError(f"Schema sidecar not found: {schema_path}")
    with open(schema_path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict) or not isinstance(data.get("attributes"), dict):
        raise ValueError(f"{schema_path}: expected an 'attributes' mapping")
    class_name = data.get("class")
    if not class_name:
        raise ValueError(f"{schema_path}: the 'class' key naming the class attribute is required")
    specs = {
        str(name): parse_declaration(str(name), declaration)
        for name, declaration in data["attributes"].items()
    }
    if class_name not in specs:
        raise ValueError(f"{schema_path}: class attribute '{class_name}' is not declared")
    if not specs[class_name].is_nominal:
        raise ValueError(f"{schema_path}: class attribute '{class_name}' must be nominal")
    return data.get("name"), specs, str(class_name)


def load_dataset(path: Union[str, Path], format_hint: Optional[str] = None,
                 class_attribute: Optional[str] = None) -> DatasetTable:
    """
    Load a classification dataset.

    Args:
        path: CSV or ARFF file
        format_hint: 'csv' or 'arff'; inferred from the suffix when omitted
        class_attribute: Class column for ARFF files (default: last attribute)

    Returns:
        DatasetTable satisfying every table invariant

    Raises:
        DatasetParseError: Malformed row, unknown category, missing or non-numeric value
        SchemaNotFoundError: CSV without its sidecar schema
    """
    path = Path(path)
    fmt = (format_hint or path.suffix.lstrip(".")).lower()
    if fmt == "arff":
        table = _load_arff(path, class_attribute)
    elif fmt in ("csv", "txt", ""):
        table = _load_csv(path)
    else:
        raise ValueError(f"Unsupported dataset format '{fmt}' for {path}")
    logger.info(
        f"Loaded '{table.name}': {len(table)} rows, {table.nominal_count} nominal, "
        f"{table.continuous_count} continuous, {len(table.class_domain)} classes"
    )
    return table


def _parse_cell(path: Path, spec: AttributeSpec, raw: str, line: int) -> Value:
    text = raw.strip()
    if text in MISSING_MARKERS:
        raise DatasetParseError(path, "missing value", line, spec.name)
    if spec.is_nominal:
        if text not in spec.domain:
            raise DatasetParseError(path, f"unknown category '{text}'", line, spec.name)
        return text
    try:
        value = float(text)
    except ValueError:
        raise DatasetParseError(path, f"non-numeric value '{text}'", line, spec.name) from None
    if not math.isfinite(value):
        raise DatasetParseError(path, f"non-finite value '{text}'", line, spec.name)
    return value


def _load_csv(path: Path) -> DatasetTable:
    name, specs, class_name = load_schema(schema_path_for(path))
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise DatasetParseError(path, "empty file", 1) from None
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        line = int(match.group(1)) if match else None
        raise DatasetParseError(path, f"malformed row: {e}", line) from None

    header = [str(c).strip() for c in frame.columns]
    missing = [n for n in specs if n not in header]
    extra = [c for c in header if c not in specs]
    if missing or extra:
        detail = []
        if missing:
            detail.append(f"declared but absent: {', '.join(missing)}")
        if extra:
            detail.append(f"undeclared columns: {', '.join(extra)}")
        raise DatasetParseError(path, f"header does not match schema ({'; '.join(detail)})", 1)
    if frame.empty:
        raise DatasetParseError(path, "no data rows", 2)

    predictors = [c for c in header if c != class_name]
    schema = tuple(specs[c] for c in predictors)
    rows: List[InstanceRow] = []
    # pandas fills short rows with NaN even with keep_default_na=False
    for offset, record in enumerate(frame.itertuples(index=False, name=None)):
        line = offset + 2
        cells = dict(zip(header, record))
        for column, raw in cells.items():
            if not isinstance(raw, str):
                raise DatasetParseError(path, "missing value (row has too few fields)", line, column)
        values = tuple(_parse_cell(path, specs[c], cells[c], line) for c in predictors)
        label = _parse_cell(path, specs[class_name], cells[class_name], line)
        rows.append(InstanceRow(values=values, class_label=str(label)))

    return DatasetTable(
        name=name or path.stem,
        schema=schema,
        class_attribute=specs[class_name],
        rows=tuple(rows),
    )


def _arff_data_lines(path: Path) -> List[int]:
    """1-based line numbers of the instance lines after @data."""
    lines: List[int] = []
    in_data = False
    with open(path, "r", encoding="utf-8") as f:
        for number, text in enumerate(f, start=1):
            stripped = text.strip()
            if not in_data:
                in_data = stripped.lower().startswith("@data")
                continue
            if stripped and not stripped.startswith("%"):
                lines.append(number)
    return lines


def _load_arff(path: Path, class_attribute: Optional[str]) -> DatasetTable:
    if path.stat().st_size == 0:
        raise DatasetParseError(path, "empty file", 1)
    try:
        data, meta = arff.loadarff(str(path))
    except (arff.ArffError, NotImplementedError, ValueError) as e:
        raise DatasetParseError(path, f"malformed ARFF: {e}") from None

    names = list(meta.names())
    class_name = class_attribute or names[-1]
    if class_name not in names:
        raise DatasetParseError(path, f"class attribute '{class_name}' not declared")

    specs: Dict[str, AttributeSpec] = {}
    for attr_name in names:
        kind, domain = meta[attr_name]
        if kind == "nominal":
            specs[attr_name] = AttributeSpec(attr_name, NOMINAL, tuple(domain))
        elif kind == "numeric":
            specs[attr_name] = AttributeSpec(attr_name, CONTINUOUS)
        else:
            raise DatasetParseError(path, f"unsupported attribute type '{kind}'", column=attr_name)
    if not specs[class_name].is_nominal:
        raise DatasetParseError(path, "class attribute must be nominal", column=class_name)
    if len(data) == 0:
        raise DatasetParseError(path, "no data rows")

    line_numbers = _arff_data_lines(path)
    predictors = [n for n in names if n != class_name]
    rows: List[InstanceRow] = []
    for i, record in enumerate(data):
        line = line_numbers[i] if i < len(line_numbers) else None
        cells = {}
        for attr_name in names:
            raw = record[attr_name]
            spec = specs[attr_name]
            if spec.is_nominal:
                text = raw.decode("utf-8") if isinstance(raw, bytes) else str(raw)
                cells[attr_name] = _parse_cell(path, spec, text, line)
            else:
                if np.isnan(raw):
                    raise DatasetParseError(path, "missing value", line, attr_name)
                cells[attr_name] = float(raw)
        rows.append(InstanceRow(
            values=tuple(cells[n] for n in predictors),
            class_label=cells[class_name],
        ))

    return DatasetTable(
        name=str(meta.name) or path.stem,
        schema=tuple(specs[n] for n in predictors),
        class_attribute=specs[class_name],
        rows=tuple(rows),
    )
