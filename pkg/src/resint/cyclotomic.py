"""Exact arithmetic in Q(z), z a primitive cube root of unity.

Elements are stored on the basis {1, z} with z*z reduced eagerly to -1 - z,
so every value has a unique canonical form and equality is componentwise.
Coordinates are arbitrary-precision rationals: gmpy2.mpq when available,
fractions.Fraction otherwise (both keep values reduced with positive
denominator).
"""

from __future__ import annotations

import re as _re

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    from fractions import Fraction as Rational

__all__ = [
    "Rational",
    "rat",
    "parse_rational",
    "format_rational",
    "CycQ",
    "ZERO",
    "ONE",
    "ZETA",
    "ZETA2",
    "KAPPA",
    "eval_divisor",
]

_R0 = Rational(0)
_R1 = Rational(1)


def rat(num: int | str | Rational = 0, den: int = 1) -> Rational:
    """Build a reduced rational; accepts ints, 'p/q' strings or rationals."""
    if den != 1:
        return Rational(num, den)
    if isinstance(num, str):
        return parse_rational(num)
    return Rational(num)


_RAT_RE = _re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Rational:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"invalid rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Rational(num, den)


def format_rational(q: Rational) -> str:
    """Render as 'p' or 'p/q'; both rational backends print this way."""
    return str(q)


class CycQ:
    """An element re + ze*z of Q(z) with exact rational coordinates.

    Values are immutable; all operations return new objects.  The product
    rule follows from z*z = -1 - z:

        (a1 + a2 z)(b1 + b2 z) = (a1 b1 - a2 b2) + (a1 b2 + a2 b1 - a2 b2) z
    """

    __slots__ = ("re", "ze")

    def __init__(self, re: int | Rational = 0, ze: int | Rational = 0):
        object.__setattr__(self, "re", re if isinstance(re, type(_R0)) else Rational(re))
        object.__setattr__(self, "ze", ze if isinstance(ze, type(_R0)) else Rational(ze))

    def __setattr__(self, name, value):
        raise AttributeError("CycQ values are immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "CycQ | None":
        if isinstance(other, CycQ):
            return other
        if isinstance(other, (int, type(_R0))):
            return CycQ(other)
        return None

    # -- ring / field operations --------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycQ(self.re + o.re, self.ze + o.ze)

    __radd__ = __add__

    def __neg__(self):
        return CycQ(-self.re, -self.ze)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycQ(self.re - o.re, self.ze - o.ze)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycQ(o.re - self.re, o.ze - self.ze)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, a2, b1, b2 = self.re, self.ze, o.re, o.ze
        t = a2 * b2
        return CycQ(a1 * b1 - t, a1 * b2 + a2 * b1 - t)

    __rmul__ = __mul__

    def inv(self) -> "CycQ":
        """Multiplicative inverse: (a1 - a2 - a2 z) / (a1^2 - a1 a2 + a2^2)."""
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(z)")
        a1, a2 = self.re, self.ze
        return CycQ((a1 - a2) / n, -a2 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int) -> "CycQ":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def norm(self) -> Rational:
        """Exact squared complex modulus: re^2 - re*ze + ze^2."""
        return self.re * self.re - self.re * self.ze + self.ze * self.ze

    # -- comparisons / hashing ----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.ze == o.ze

    def __hash__(self):
        return hash((self.re, self.ze))

    def __bool__(self):
        return bool(self.re) or bool(self.ze)

    def is_rational(self) -> bool:
        return not self.ze

    # -- text form -----------------------------------------------------------

    def __str__(self):
        if not self:
            return "0"
        parts = []
        if self.ze:
            ztext = f"{format_rational(self.ze)}*z"
        if self.re:
            parts.append(format_rational(self.re))
            if self.ze:
                if self.ze < 0:
                    parts.append(f"- {format_rational(-self.ze)}*z")
                else:
                    parts.append(f"+ {ztext}")
        elif self.ze:
            parts.append(ztext)
        return " ".join(parts)

    def __repr__(self):
        return f"CycQ({self.re!r}, {self.ze!r})"

    @staticmethod
    def parse(text: str) -> "CycQ":
        """Parse the text form: 'p/q', 'r/s*z', 'p/q + r/s*z', with optional
        whitespace; a bare 'z' is accepted for 1*z."""
        compact = text.replace(" ", "").replace("\t", "")
        if not compact:
            raise ValueError("empty Q(z) literal")
        chunks = _re.findall(r"[+-]?[^+-]+", compact)
        if not chunks or "".join(chunks) != compact:
            raise ValueError(f"invalid Q(z) literal: {text!r}")
        re_part = _R0
        ze_part = _R0
        seen_re = seen_ze = False
        for chunk in chunks:
            m = _re.match(r"^([+-]?)(\d+(?:/\d+)?)?(\*?z)?$", chunk)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"invalid Q(z) literal: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            value = parse_rational(m.group(2)) if m.group(2) else _R1
            if m.group(3):
                if seen_ze:
                    raise ValueError(f"repeated z part in Q(z) literal: {text!r}")
                ze_part = sign * value
                seen_ze = True
            else:
                if seen_re:
                    raise ValueError(f"repeated rational part in Q(z) literal: {text!r}")
                re_part = sign * value
                seen_re = True
        return CycQ(re_part, ze_part)


ZERO = CycQ(0, 0)
ONE = CycQ(1, 0)
ZETA = CycQ(0, 1)
ZETA2 = CycQ(-1, -1)

# Eigenvalues of the linear part: kappa = (1, z, z^2).
KAPPA = (ONE, ZETA, ZETA2)


def eval_divisor(k1: int, k2: int, k3: int) -> CycQ:
    """k1 + k2 z + k3 z^2 reduced to the {1, z} basis: (k1-k3) + (k2-k3) z.

    Zero is a legal return (exactly when k1 = k2 = k3); callers must test.
    """
    return CycQ(Rational(k1 - k3), Rational(k2 - k3))
