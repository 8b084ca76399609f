"""Exact extended-rational arithmetic.

Cost values are canonical rationals extended with two infinities. The two
conventions that matter everywhere downstream:

  * 0 * (+/-inf) = 0, so zero-weight tuples are inert no matter what the
    right-hand side says;
  * (+inf) + (-inf) is a hard error, never a silent absorbing value.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

__all__ = ["Q", "ExtRat", "PLUS_INF", "MINUS_INF", "ZERO", "ONE", "rat",
           "parse_value", "format_value", "exp_bounds", "ceil_q"]

_FIN, _POS, _NEG = 0, 1, -1


class ExtRat:
    """A canonical rational, +inf, or -inf."""

    __slots__ = ("kind", "q")

    def __init__(self, kind, q=None):
        self.kind = kind
        self.q = Q(q) if kind == _FIN else None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def finite(q):
        return ExtRat(_FIN, q)

    # -- predicates --------------------------------------------------------

    @property
    def is_finite(self):
        return self.kind == _FIN

    @property
    def is_plus_inf(self):
        return self.kind == _POS

    @property
    def is_minus_inf(self):
        return self.kind == _NEG

    def is_zero(self):
        return self.kind == _FIN and self.q == 0

    def sign(self):
        if self.kind != _FIN:
            return self.kind
        return 1 if self.q > 0 else (-1 if self.q < 0 else 0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = rat(other)
        if self.kind == _FIN and other.kind == _FIN:
            return ExtRat(_FIN, self.q + other.q)
        if self.kind == _FIN:
            return other
        if other.kind == _FIN:
            return self
        if self.kind != other.kind:
            raise ArithmeticError("indeterminate sum: +inf + -inf")
        return self

    __radd__ = __add__

    def __mul__(self, other):
        other = rat(other)
        if self.kind == _FIN and other.kind == _FIN:
            return ExtRat(_FIN, self.q * other.q)
        # at least one infinity; zero annihilates it
        if self.is_zero() or other.is_zero():
            return ZERO
        s = self.sign() * other.sign()
        return PLUS_INF if s > 0 else MINUS_INF

    __rmul__ = __mul__

    def __neg__(self):
        if self.kind == _FIN:
            return ExtRat(_FIN, -self.q)
        return MINUS_INF if self.kind == _POS else PLUS_INF

    def __sub__(self, other):
        return self + (-rat(other))

    # -- ordering ----------------------------------------------------------

    def _key(self, other):
        other = rat(other)
        if self.kind != other.kind:
            return (self.kind > other.kind) - (self.kind < other.kind)
        if self.kind != _FIN:
            return 0
        return (self.q > other.q) - (self.q < other.q)

    def __eq__(self, other):
        try:
            other = rat(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.kind == other.kind and self.q == other.q

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __lt__(self, other):
        return self._key(other) < 0

    def __le__(self, other):
        return self._key(other) <= 0

    def __gt__(self, other):
        return self._key(other) > 0

    def __ge__(self, other):
        return self._key(other) >= 0

    def __hash__(self):
        return hash((self.kind, self.q))

    # -- formatting --------------------------------------------------------

    def __str__(self):
        if self.kind == _POS:
            return "inf"
        if self.kind == _NEG:
            return "-inf"
        return str(self.q)

    def __repr__(self):
        return f"ExtRat({self})"


PLUS_INF = ExtRat(_POS)
MINUS_INF = ExtRat(_NEG)
ZERO = ExtRat.finite(0)
ONE = ExtRat.finite(1)

_VALUE_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def rat(x) -> ExtRat:
    """Coerce ints, rationals, and value strings to ExtRat."""
    if isinstance(x, ExtRat):
        return x
    if isinstance(x, str):
        return parse_value(x)
    return ExtRat(_FIN, x)


def parse_value(s: str) -> ExtRat:
    """Parse the wire format: "p", "p/q", "inf", "-inf"."""
    if not isinstance(s, str):
        raise ValueError(f"value must be a string, got {type(s).__name__}")
    if s == "inf":
        return PLUS_INF
    if s == "-inf":
        return MINUS_INF
    if not _VALUE_RE.match(s):
        raise ValueError(f"malformed rational value: {s!r}")
    return ExtRat(_FIN, Q(s))


def format_value(v: ExtRat) -> str:
    return str(rat(v))


def ceil_q(x) -> int:
    """Ceiling of a rational as a Python int."""
    x = Q(x)
    n, d = x.numerator, x.denominator
    return int(-((-n) // d))


def exp_bounds(x, tol=Q(1, 10**9)):
    """Rational (lo, hi) with lo <= e^x <= hi and hi - lo <= tol.

    Taylor series with an explicit geometric tail bound; negative arguments
    go through the reciprocal so both bounds stay sound.
    """
    x = Q(x)
    if x < 0:
        lo, hi = exp_bounds(-x, min(tol, Q(1, 10**6)))
        # 1/hi <= e^x <= 1/lo; widen tol handling by iterating if needed
        lo2, hi2 = Q(1) / hi, Q(1) / lo
        scale = 2
        while hi2 - lo2 > tol:
            lo, hi = exp_bounds(-x, tol / (scale * 4))
            lo2, hi2 = Q(1) / hi, Q(1) / lo
            scale *= 2
        return lo2, hi2
    term = Q(1)
    total = Q(1)
    i = 0
    while True:
        i += 1
        term = term * x / i
        total += term
        # tail <= next_term / (1 - x/(i+2)) once x < i+2
        if x < i + 2:
            nxt = term * x / (i + 1)
            bound = nxt / (1 - x / (i + 2))
            if bound <= tol:
                return total, total + bound
