"""CSV serialization for schedules, outcome tables, and score vectors.

Formats (0-based indices, one row per unordered pair, lower index first):

* schedule:  ``i,j,n_ij``
* outcomes:  ``i,j,n_ij,a_ij``   (``a_ij`` = wins of ``i``)
* scores:    ``item,score``

Parse failures raise :class:`~btlrank.errors.CsvFormatError` with the
offending line number.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import CsvFormatError
from .model import ComparisonSchedule, OutcomeTable, ScoreVector

SCHEDULE_HEADER = ["i", "j", "n_ij"]
OUTCOMES_HEADER = ["i", "j", "n_ij", "a_ij"]
SCORES_HEADER = ["item", "score"]


def _read_rows(path: str | Path, header: list[str]) -> list[tuple[int, list[str]]]:
    rows: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        for lineno, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1:
                if [c.strip() for c in row] != header:
                    raise CsvFormatError(
                        f"{path}: line 1: expected header {','.join(header)!r}, "
                        f"got {','.join(row)!r}"
                    )
                continue
            if len(row) != len(header):
                raise CsvFormatError(
                    f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}"
                )
            rows.append((lineno, row))
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return rows


def _parse_int(path, lineno: int, name: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise CsvFormatError(
            f"{path}: line {lineno}: field {name!r} is not an integer: {text!r}"
        ) from None


def _parse_float(path, lineno: int, name: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise CsvFormatError(
            f"{path}: line {lineno}: field {name!r} is not a number: {text!r}"
        ) from None


def write_schedule_csv(schedule: ComparisonSchedule, path: str | Path) -> None:
    i_e, j_e, n_e = schedule.edge_arrays
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SCHEDULE_HEADER)
        for i, j, n_ij in zip(i_e, j_e, n_e):
            writer.writerow([int(i), int(j), int(n_ij)])


def read_schedule_csv(path: str | Path) -> ComparisonSchedule:
    """Load a schedule; items are 0..max(index) seen in the file."""
    counts: dict[tuple[int, int], int] = {}
    d = 0
    for lineno, row in _read_rows(path, SCHEDULE_HEADER):
        i = _parse_int(path, lineno, "i", row[0])
        j = _parse_int(path, lineno, "j", row[1])
        n_ij = _parse_int(path, lineno, "n_ij", row[2])
        if i == j:
            raise CsvFormatError(f"{path}: line {lineno}: self-pair ({i},{j})")
        key = (i, j) if i < j else (j, i)
        if key in counts:
            raise CsvFormatError(f"{path}: line {lineno}: duplicate pair {key}")
        if n_ij < 1:
            raise CsvFormatError(f"{path}: line {lineno}: n_ij must be >= 1")
        counts[key] = n_ij
        d = max(d, i + 1, j + 1)
    return ComparisonSchedule(d, counts)


def write_outcomes_csv(table: OutcomeTable, path: str | Path) -> None:
    i_e, j_e, n_e = table.schedule.edge_arrays
    a_e = table.wins_lower
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(OUTCOMES_HEADER)
        for i, j, n_ij, a_ij in zip(i_e, j_e, n_e, a_e):
            writer.writerow([int(i), int(j), int(n_ij), int(a_ij)])


def read_outcomes_csv(path: str | Path) -> OutcomeTable:
    """Load outcomes plus the implied schedule from one file."""
    counts: dict[tuple[int, int], int] = {}
    wins: dict[tuple[int, int], int] = {}
    d = 0
    for lineno, row in _read_rows(path, OUTCOMES_HEADER):
        i = _parse_int(path, lineno, "i", row[0])
        j = _parse_int(path, lineno, "j", row[1])
        n_ij = _parse_int(path, lineno, "n_ij", row[2])
        a_ij = _parse_int(path, lineno, "a_ij", row[3])
        if i == j:
            raise CsvFormatError(f"{path}: line {lineno}: self-pair ({i},{j})")
        if not (0 <= a_ij <= n_ij):
            raise CsvFormatError(
                f"{path}: line {lineno}: a_ij={a_ij} outside [0, n_ij={n_ij}]"
            )
        key = (i, j) if i < j else (j, i)
        if key in counts:
            raise CsvFormatError(f"{path}: line {lineno}: duplicate pair {key}")
        counts[key] = n_ij
        wins[(i, j)] = a_ij
        wins[(j, i)] = n_ij - a_ij
        d = max(d, i + 1, j + 1)
    return OutcomeTable(ComparisonSchedule(d, counts), wins)


def write_scores_csv(scores: ScoreVector, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SCORES_HEADER)
        for item, value in enumerate(scores.values):
            writer.writerow([item, repr(float(value))])


def read_scores_csv(path: str | Path) -> ScoreVector:
    entries: dict[int, float] = {}
    for lineno, row in _read_rows(path, SCORES_HEADER):
        item = _parse_int(path, lineno, "item", row[0])
        score = _parse_float(path, lineno, "score", row[1])
        if item in entries:
            raise CsvFormatError(f"{path}: line {lineno}: duplicate item {item}")
        entries[item] = score
    d = max(entries) + 1
    if set(entries) != set(range(d)):
        missing = sorted(set(range(d)) - set(entries))
        raise CsvFormatError(f"{path}: missing scores for items {missing}")
    return ScoreVector(np.array([entries[i] for i in range(d)]))
