"""Log-majorization checks for operator means (Python front end)."""

import json

from ._core import (
    MajorlabError,
    compound,
    eigenvalues,
    fractional_power,
    kernel_ids,
    mean,
    singular_values,
    suite_ids,
    weighted_geometric,
)
from . import _core


def majorize(lhs, rhs, order="weak-log", tol=1e-8):
    return json.loads(_core.majorize_json(list(lhs), list(rhs), order, tol))


def run_suite(suite, **kwargs):
    return json.loads(_core.run_suite_json(suite, **kwargs))


def pauli_scan(alpha, beta, c, p_max=10.0, steps=400):
    return json.loads(_core.pauli_scan_json(alpha, beta, c, p_max, steps))


def search(target, budget=10000, seed=7, identity_only=False):
    return json.loads(_core.search_json(target, budget, seed, identity_only))


__all__ = [
    "MajorlabError",
    "compound",
    "eigenvalues",
    "fractional_power",
    "kernel_ids",
    "majorize",
    "mean",
    "pauli_scan",
    "run_suite",
    "search",
    "singular_values",
    "suite_ids",
    "weighted_geometric",
]
