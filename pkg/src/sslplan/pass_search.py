"""Passing-point search under its module name; the implementation lives in :mod:`sslplan.search`."""

from .search import (CSV_HEADER, CandidateGrid, PassCandidate, direction_table, feasible_candidates,
                     power_table, run_dpps, run_dpps_serial, warmup)

__all__ = ["CSV_HEADER", "CandidateGrid", "PassCandidate", "direction_table", "feasible_candidates",
           "power_table", "run_dpps", "run_dpps_serial", "warmup"]
