"""Exact multivariate cumulant polynomials.

Tables and series are exchanged as dicts mirroring the command-line JSON
documents. Numeric entries come back as ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _core

__all__ = [
    "CliError",
    "cumulant_polynomial",
    "cumulants_from_moments",
    "hermite",
    "moments_from_cumulants",
    "partitions",
    "run",
]


class CliError(RuntimeError):
    def __init__(self, code, diagnostic):
        super().__init__(diagnostic.get("message", ""))
        self.code = code
        self.kind = diagnostic.get("error")


def _index(i):
    if isinstance(i, int):
        return str(i)
    if isinstance(i, str):
        return i
    return ",".join(str(v) for v in i)


def _encode(value):
    if isinstance(value, (Fraction, int)):
        return str(Fraction(value))
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _decode(value):
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            return value
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v) for v in value]
    return value


def _table(table, kind):
    doc = dict(table)
    doc.setdefault("kind", kind)
    if "entries" in doc:
        doc["entries"] = {_index(k): _encode(v) for k, v in doc["entries"].items()}
    return json.dumps(doc)


def moments_from_cumulants(table):
    """Moment table for a cumulant table dict with keys d, order, entries."""
    return _decode(json.loads(_core.moments_from_cumulants(_table(table, "cumulant"))))


def cumulants_from_moments(table):
    return _decode(json.loads(_core.cumulants_from_moments(_table(table, "moment"))))


def partitions(index):
    return _decode(json.loads(_core.partitions(_index(index))))


def cumulant_polynomial(index, cumulants):
    return _decode(json.loads(_core.cumulant_polynomial(_index(index), _table(cumulants, "cumulant"))))


def hermite(index, covariance):
    return _decode(json.loads(_core.hermite(_index(index), json.dumps(_encode(covariance)))))


def run(*args, stdin=""):
    """Runs the command-line interface in process and returns its JSON result."""
    code, out, err = _core.run([str(a) for a in args], stdin)
    if code != 0:
        raise CliError(code, json.loads(err) if err.strip() else {})
    return json.loads(out) if out.strip() else None
