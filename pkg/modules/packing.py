"""
CSV Packing and Unpacking

Numeric tables are written as CSV with one leading '#'-prefixed JSON
metadata line. Floats use 17 significant digits so a re-read is
bit-identical. Complex cells are split into re_/im_ column pairs.
"""

import csv
import inspect
import json
import logging
import os

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _caller_location():
    """File name and line of the first caller outside this module."""
    frame = inspect.currentframe()
    try:
        caller = frame.f_back
        while caller and caller.f_code.co_filename == __file__:
            caller = caller.f_back
        if caller is None:
            return "?", 0
        return os.path.basename(caller.f_code.co_filename), caller.f_lineno
    finally:
        del frame


def _format_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    if isinstance(value, (int, str)):
        return str(value)
    if hasattr(value, "dtype"):
        return _format_cell(value.item())
    return str(value)


def _expand_header(columns, first_row):
    header = []
    for name, value in zip(columns, first_row):
        if isinstance(value, complex) or (hasattr(value, "dtype") and value.dtype.kind == "c"):
            header += [f"re_{name}", f"im_{name}"]
        else:
            header.append(name)
    return header


def _expand_row(row):
    cells = []
    for value in row:
        if hasattr(value, "dtype"):
            value = value.item()
        if isinstance(value, complex):
            cells += [_format_cell(value.real), _format_cell(value.imag)]
        else:
            cells.append(_format_cell(value))
    return cells


def pack_rows(path, metadata, columns, rows):
    """
    Write a table with its metadata line.

    Args:
        path (str): Output CSV path.
        metadata (dict): JSON-serializable run description.
        columns (list): Column names; complex columns expand to re_/im_.
        rows (list): Row sequences matching the columns.

    Returns:
        list: The expanded header that was written.
    """
    rows = list(rows)
    header = _expand_header(columns, rows[0]) if rows else list(columns)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write("#" + json.dumps(metadata, sort_keys=True, default=str) + "\n")
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(_expand_row(row))

    filename, line = _caller_location()
    logger.info("[write] [%s:%d] '%s %d rows'", filename, line, os.path.basename(path), len(rows))
    return header


def _parse_cell(text):
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def unpack_rows(path):
    """
    Read a table written by pack_rows.

    Args:
        path (str): CSV path.

    Returns:
        tuple: (metadata dict, header list, list of parsed rows).
    """
    with open(path, newline="", encoding="utf-8") as handle:
        first = handle.readline()
        if not first.startswith("#"):
            raise ValueError(f"{path}: missing '#' metadata line")
        metadata = json.loads(first[1:])
        reader = csv.reader(handle)
        header = next(reader, [])
        rows = [[_parse_cell(cell) for cell in row] for row in reader]

    filename, line = _caller_location()
    logger.info("[read] [%s:%d] '%s %d rows'", filename, line, os.path.basename(path), len(rows))
    return metadata, header, rows
