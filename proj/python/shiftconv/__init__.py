"""Python access to the shiftconv library.

High-precision values come back from the extension as decimal strings and are
turned into mpmath numbers here.
"""

import json

import mpmath

from . import _core
from ._core import Error, coefficients, cusp_count, curves

__all__ = [
    "Error",
    "closed_form",
    "coefficients",
    "curves",
    "cusp_count",
    "direct",
    "infinity_indicator",
    "lattice",
    "verify",
    "zhat",
]


def _number(text, digits):
    with mpmath.workdps(digits + 5):
        if not text.endswith("i"):
            return mpmath.mpf(text)
        # split "x+yi" at the sign that does not belong to an exponent
        k = max(i for i in range(1, len(text)) if text[i] in "+-" and text[i - 1] not in "eE")
        return mpmath.mpc(mpmath.mpf(text[:k]), mpmath.mpf(text[k:-1]))


def lattice(label, digits=64):
    return {k: _number(v, digits) for k, v in _core.lattice(label, digits).items()}


def zhat(label, n_max, digits=64):
    return {n: _number(v, digits) for n, v in _core.zhat(label, n_max, digits)}


def infinity_indicator(level, n_max):
    return {n: _number(v, 40) for n, v in _core.infinity_indicator(level, n_max)}


def direct(label, h_max, terms=100000, digits=64):
    rows = _core.direct(label, h_max, terms, digits)
    return {int(r["h"]): (_number(r["value"], digits), _number(r["err"], 6)) for r in rows}


def closed_form(label, h_max, terms=100000, digits=64):
    alpha, rows = _core.closed_form(label, h_max, terms, digits)
    return _number(alpha, digits), {int(r["h"]): _number(r["value"], digits) for r in rows}


def verify(label=None, digits=64, terms=100000, c_max=10000):
    return json.loads(_core.verify(label, digits, terms, c_max))
