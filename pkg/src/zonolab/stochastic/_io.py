import csv
from io import TextIOBase
from typing import Iterable

from ..functionals import dump_report
from .data import MCEstimate
from .data import ProbeRow

__all__ = ["write_estimates_csv", "write_probe_csv", "dump_estimates"]

PROBE_HEADER = ["n", "quantity", "value", "bound", "rate"]


def write_estimates_csv(file: TextIOBase, estimates: Iterable[MCEstimate]):
    """Writes one row per estimate after a header."""
    writer = csv.writer(file)
    estimates = list(estimates)

    if estimates:
        writer.writerow(estimates[0].csv_header())

    writer.writerows(estimate.csv_row() for estimate in estimates)


def write_probe_csv(file: TextIOBase, rows: Iterable[ProbeRow]):
    """Writes the long-format probe table: n, quantity, value, bound, rate."""
    writer = csv.writer(file)
    writer.writerow(PROBE_HEADER)

    for row in rows:
        writer.writerows(row.csv_rows())


def dump_estimates(file: TextIOBase, estimates: Iterable[MCEstimate]):
    """Writes the estimates as one deterministic JSON document."""
    dump_report(file, {"estimates": [estimate.to_json() for estimate in estimates]})
