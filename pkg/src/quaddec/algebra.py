"""Exact rational scalars and dense univariate polynomials.

Every scalar in the package is a :class:`fractions.Fraction`; ``Rational`` is
an alias kept for readability in signatures.  :class:`Poly` stores
coefficients in ascending powers and is immutable.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

# degree of the zero polynomial
ZERO_DEGREE = float("-inf")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a Fraction.

    Floats are rejected: they would silently smuggle rounding into an
    exact computation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Fraction) -> str:
    """Canonical "num/den" form, "num" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _normalize(coeffs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    out = [to_rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Dense polynomial over the rationals, ascending coefficient order.

    The zero polynomial has an empty coefficient tuple and degree
    ``ZERO_DEGREE`` (minus infinity), so ``deg r < deg g`` comparisons work
    without special cases.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def constant(cls, c: RationalLike) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def linear(cls, root: RationalLike) -> "Poly":
        """The monic polynomial x - root."""
        return cls((-to_rational(root), 1))

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "Poly":
        return cls([0] * k + [c])

    # -- queries --------------------------------------------------------
    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + b[i] for i in range(len(b))] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "Poly":
        c = to_rational(c)
        if c == 0:
            return Poly()
        return Poly(c * x for x in self.coeffs)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a rational or a Poly."""
        if isinstance(x, Poly):
            return self.compose(x)
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """Return self(inner(x))."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divrem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division: self = q*divisor + r with deg r < deg divisor."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dcoeffs = divisor.coeffs
        dlen = len(dcoeffs)
        lead = dcoeffs[-1]
        if len(rem) < dlen:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dlen + 1)
        for k in range(len(rem) - dlen, -1, -1):
            c = rem[k + dlen - 1] / lead
            quot[k] = c
            if c:
                for j in range(dlen):
                    rem[k + j] -= c * dcoeffs[j]
        return Poly(quot), Poly(rem[: dlen - 1])

    def __divmod__(self, other: "Poly"):
        return self.divrem(other)

    def reflect(self) -> "Poly":
        """f(-x)."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroDivisionError("the zero polynomial has no monic form")
        return self.scale(1 / self.leading)

    # -- comparison / display --------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == _normalize((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    # -- serialization -----------------------------------------------------
    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[RationalLike]) -> "Poly":
        return cls(to_rational(c) for c in data)


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly((value,))
    return NotImplemented


# Free-function forms of the operations.

def add(f: Poly, g: Poly) -> Poly:
    return f + g


def sub(f: Poly, g: Poly) -> Poly:
    return f - g


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def scale(f: Poly, c: RationalLike) -> Poly:
    return f.scale(c)


def evaluate(f: Poly, x: RationalLike) -> Fraction:
    return f(to_rational(x))


def compose(f: Poly, g: Poly) -> Poly:
    return f.compose(g)


def divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    return f.divrem(g)


def reflect(f: Poly) -> Poly:
    return f.reflect()


X = Poly.x()
ONE = Poly.one()
ZERO = Poly.zero()
