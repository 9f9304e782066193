# SPDX-License-Identifier: Apache-2.0
"""Certified zeros of restricted-exponential polynomial systems.

Systems are given in the text format of the command line tool, for example
``"shape: 1 1\\nE(x1) - 2\\n"``. Results come back as the same JSON documents
the tool prints, decoded into dicts. Exact numbers are dyadic strings
``"m*2^e"``.
"""

import json

from . import _kkit
from ._kkit import Error, FormatError, ParseError, ReductionError, ShapeError

__all__ = [
    "CertificationError",
    "Error",
    "FormatError",
    "ParseError",
    "ReductionError",
    "ShapeError",
    "certify",
    "check",
    "disjuncts",
    "jacobian",
    "parse_formula",
    "reduce",
    "run",
    "solve",
    "solve_system",
]

parse_formula = _kkit.parse_formula
disjuncts = _kkit.disjuncts
jacobian = _kkit.jacobian
run = _kkit.run


class CertificationError(Error):
    """certify() found no certificate. reason and detail say why."""

    def __init__(self, reason, detail):
        super().__init__(f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail


def _box_text(box):
    return box if isinstance(box, str) else json.dumps(box)


def _cert_text(cert):
    return cert if isinstance(cert, str) else json.dumps(cert)


def certify(system, box, start_precision=64, max_precision=4096):
    """Certificate dict for the unique regular zero in box.

    box is JSON text or a list of [lo, hi] pairs (strings or numbers).
    """
    doc = json.loads(_kkit.certify(system, _box_text(box), start_precision, max_precision))
    if doc.get("status") == "failed":
        raise CertificationError(doc["reason"], doc["detail"])
    return doc


def check(cert):
    """True iff the certificate re-verifies."""
    return _kkit.check(_cert_text(cert))


def _config(radius=8, depth=48, precision=4096, workers=0, seed=1, max_boxes=200000):
    return _kkit.make_config(radius, depth, precision, workers, seed, max_boxes)


def solve(formula, **config):
    """Search a formula; returns the report dict (status SAT, REGION-UNSAT
    or UNKNOWN)."""
    return json.loads(_kkit.solve(formula, _config(**config)))


def solve_system(system, box=None, **config):
    """Enumerate certified zeros of a square system inside box (default:
    the search region for the configured radius)."""
    b = None if box is None else _box_text(box)
    return json.loads(_kkit.solve_system(system, b, _config(**config)))


def reduce(system, cert, relation):
    """Eliminate the exponential dependence "d;k1,...;g" at a certified zero."""
    return json.loads(_kkit.reduce(system, _cert_text(cert), relation))
