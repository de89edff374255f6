import csv
from io import TextIOBase

from ..functionals import dump_report
from .data import SuiteResult

__all__ = ["write_suite_csv", "dump_suite_summary"]


def write_suite_csv(file: TextIOBase, result: SuiteResult):
    """Writes one row per verdict: trial, claim, lhs, rhs, slack and flags."""
    writer = csv.writer(file)
    writer.writerow(result.csv_header())
    writer.writerows(result.csv_rows())


def dump_suite_summary(file: TextIOBase, result: SuiteResult):
    """Writes the JSON summary of a suite run."""
    dump_report(file, result.to_json())
