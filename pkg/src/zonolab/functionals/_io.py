import csv
import json
from io import TextIOBase
from pathlib import Path

from .data import FunctionalsReport

__all__ = ["dump_report", "append_report_row"]


def dump_report(file: TextIOBase, payload: dict):
    """Writes a report document as deterministic JSON.

    Keys are sorted and no timestamps are added, so the same input always
    produces the same bytes.
    """
    json.dump(payload, file, indent=2, sort_keys=True)
    file.write("\n")


def append_report_row(path: Path, report: FunctionalsReport):
    """Appends the report to a CSV file, writing the header for a new file.

    Args:
        path:
            The CSV file; created when missing.
        report:
            The report to append.
    """
    is_new = not path.exists() or path.stat().st_size == 0

    with path.open("a", newline="") as file:
        writer = csv.writer(file)

        if is_new:
            writer.writerow(report.csv_header())

        writer.writerow(report.csv_row())
