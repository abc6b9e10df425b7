"""Scalar backends and the scalar text grammar.

Two realizations of the field the matrices live in:

* ``EXACT``   - ``fractions.Fraction``, vectors as numpy ``object`` arrays.
* ``COMPLEX`` - Python ``complex``, vectors as ``numpy.complex128`` arrays.

Text grammar: rationals as ``p/q`` or ``p`` (optional leading ``-``), complex
numbers as ``[re,im]`` in decimal floating notation.
"""

import cmath
import re
from fractions import Fraction

import numpy as np

from .errors import ParseError

_INTEGER = re.compile(r"-?\d+")
_DIGITS = re.compile(r"\d+")
_DECIMAL = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


def _parse_rational(text):
    m = _INTEGER.match(text)
    if not m:
        raise ParseError("expected an integer", 0, text)
    numerator = int(m.group())
    pos = m.end()
    denominator = 1
    if pos < len(text) and text[pos] == "/":
        m = _DIGITS.match(text, pos + 1)
        if not m:
            raise ParseError("expected denominator digits", pos + 1, text)
        denominator = int(m.group())
        if denominator == 0:
            raise ParseError("zero denominator", pos + 1, text)
        pos = m.end()
    if pos != len(text):
        raise ParseError("unexpected character", pos, text)
    return Fraction(numerator, denominator)


def _parse_pair(text):
    pos = 1
    values = []
    for closer in (",", "]"):
        m = _DECIMAL.match(text, pos)
        if not m:
            raise ParseError("expected a decimal number", pos, text)
        values.append(float(m.group()))
        pos = m.end()
        if pos >= len(text) or text[pos] != closer:
            raise ParseError(f"expected {closer!r}", pos, text)
        pos += 1
    if pos != len(text):
        raise ParseError("trailing characters", pos, text)
    return complex(values[0], values[1])


class ExactField:
    name = "exact"
    dtype = object
    default_eps = 0.0

    def __reduce__(self):
        # unpickle to the module singleton, backends are compared by identity
        return "EXACT"

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return Fraction(int(value))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"exact backend needs a rational, got {type(value).__name__}")

    def parse(self, text):
        text = text.strip()
        if text.startswith("["):
            raise ParseError("exact backend takes rational scalars only", 0, text)
        return _parse_rational(text)

    def format(self, value):
        return str(Fraction(value))

    def array(self, values):
        values = list(values)
        out = np.empty(len(values), dtype=object)
        out[:] = [self.coerce(v) for v in values]
        return out

    def vector(self, values):
        return self.array(values)

    def zeros(self, shape):
        return np.full(shape, Fraction(0), dtype=object)

    def identity(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def dot(self, a, b):
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    def is_zero(self, value, eps=0.0):
        return value == 0

    def is_one(self, value, eps=0.0):
        return value == 1

    def deviation(self, a, b):
        """Max absolute entrywise difference, exact."""
        diff = np.asarray(a, dtype=object) - np.asarray(b, dtype=object)
        return max((abs(Fraction(d)) for d in diff.ravel()), default=Fraction(0))

    def passes(self, deviation, tolerance):
        return deviation == 0


class ComplexField:
    name = "complex"
    dtype = np.complex128
    default_eps = 1e-10

    def __reduce__(self):
        return "COMPLEX"

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        return complex(value)

    def parse(self, text):
        text = text.strip()
        if text.startswith("["):
            return _parse_pair(text)
        return complex(_parse_rational(text))

    def format(self, value):
        value = complex(value)
        if not cmath.isfinite(value):
            raise ValueError(f"cannot write non-finite scalar {value!r}")
        return f"[{float(value.real)!r},{float(value.imag)!r}]"

    def array(self, values):
        return np.asarray([self.coerce(v) for v in values], dtype=np.complex128)

    def vector(self, values):
        if isinstance(values, np.ndarray) and values.dtype != object:
            return values.astype(np.complex128, copy=False)
        return self.array(values)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.complex128)

    def identity(self, n):
        return np.eye(n, dtype=np.complex128)

    def zero(self):
        return complex(0)

    def one(self):
        return complex(1)

    def dot(self, a, b):
        return complex(np.dot(a, b))

    def is_zero(self, value, eps=0.0):
        return abs(value) <= eps

    def is_one(self, value, eps=0.0):
        return abs(value - 1) <= eps

    def deviation(self, a, b):
        """Max absolute difference relative to max(1, max|b|)."""
        a = np.asarray(a, dtype=np.complex128)
        b = np.asarray(b, dtype=np.complex128)
        if a.size == 0:
            return 0.0
        scale = max(1.0, float(np.max(np.abs(b))))
        return float(np.max(np.abs(a - b))) / scale

    def passes(self, deviation, tolerance):
        return deviation <= tolerance


EXACT = ExactField()
COMPLEX = ComplexField()

_FIELDS = {EXACT.name: EXACT, COMPLEX.name: COMPLEX}


def get_field(backend):
    if not isinstance(backend, str):
        return backend
    try:
        return _FIELDS[backend]
    except KeyError:
        raise ValueError(f"unknown backend {backend!r} (expected exact or complex)") from None


def field_for(value):
    """Pick the backend a scalar naturally belongs to."""
    if isinstance(value, (Fraction, int, np.integer)) and not isinstance(value, bool):
        return EXACT
    if isinstance(value, (float, complex, np.floating, np.complexfloating)):
        return COMPLEX
    raise TypeError(f"no backend for scalar of type {type(value).__name__}")


def field_for_array(values):
    return EXACT if np.asarray(values).dtype == object else COMPLEX


def parse_scalar(text, backend):
    return get_field(backend).parse(text)


def format_scalar(value):
    return field_for(value).format(value)
