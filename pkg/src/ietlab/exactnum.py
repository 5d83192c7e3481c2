"""Exact arithmetic in real quadratic fields Q(sqrt(d))."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Union

from .errors import MixedRadicand, ParseError

RationalLike = Union[int, Fraction]


def _square_free(n: int) -> tuple[int, int]:
    """Split n >= 0 as m * s**2 with m square-free; return (m, s)."""
    m, s, f = n, 1, 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            s *= f
        f += 1
    return m, s


def _fsign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadReal:
    """Number a + b*sqrt(d) with rational a, b and square-free d >= 0.

    Values are kept in a normal form (b == 0 forces d == 0, d is square-free
    and never 1), so equal values have identical field tuples and dataclass
    equality is value equality.  Construct through :func:`quad`.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError("radicand must be nonnegative")
        if self.b == 0 and self.d != 0:
            raise ValueError("rational values must carry d == 0")
        if self.b != 0:
            if self.d in (0, 1):
                raise ValueError("non-normalized radicand")
            m, s = _square_free(self.d)
            if s != 1:
                raise ValueError("radicand must be square-free")

    # -- queries ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- arithmetic ------------------------------------------------------

    def _common_d(self, other: "QuadReal") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise MixedRadicand(f"sqrt({self.d}) and sqrt({other.d}) cannot mix")

    def __add__(self, other: "QuadReal | RationalLike") -> "QuadReal":
        o = _as_quad(other)
        return quad(self.a + o.a, self.b + o.b, self._common_d(o))

    __radd__ = __add__

    def __sub__(self, other: "QuadReal | RationalLike") -> "QuadReal":
        o = _as_quad(other)
        return quad(self.a - o.a, self.b - o.b, self._common_d(o))

    def __rsub__(self, other: RationalLike) -> "QuadReal":
        return _as_quad(other) - self

    def __mul__(self, other: "QuadReal | RationalLike") -> "QuadReal":
        o = _as_quad(other)
        d = self._common_d(o)
        return quad(self.a * o.a + self.b * o.b * d,
                    self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other: "QuadReal | RationalLike") -> "QuadReal":
        o = _as_quad(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        d = self._common_d(o)
        norm = o.a * o.a - o.b * o.b * d
        return quad((self.a * o.a - self.b * o.b * d) / norm,
                    (self.b * o.a - self.a * o.b) / norm, d)

    def __rtruediv__(self, other: RationalLike) -> "QuadReal":
        return _as_quad(other) / self

    def __neg__(self) -> "QuadReal":
        return quad(-self.a, -self.b, self.d)

    def __abs__(self) -> "QuadReal":
        return -self if quad_sign(self) < 0 else self

    def __pow__(self, k: int) -> "QuadReal":
        if k < 0:
            return 1 / self ** (-k)
        out, base = quad(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- order -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadReal):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        # rational values hash like their Fraction so mixed equality is coherent
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: "QuadReal | RationalLike") -> bool:
        return quad_sign(self - other) < 0

    def __le__(self, other: "QuadReal | RationalLike") -> bool:
        return quad_sign(self - other) <= 0

    def __gt__(self, other: "QuadReal | RationalLike") -> bool:
        return quad_sign(self - other) > 0

    def __ge__(self, other: "QuadReal | RationalLike") -> bool:
        return quad_sign(self - other) >= 0

    # -- display ---------------------------------------------------------

    def __str__(self) -> str:
        return format_quad(self)

    def __float__(self) -> float:
        return float(quad_approx(self, 17))


def _as_quad(value: "QuadReal | RationalLike") -> QuadReal:
    if isinstance(value, QuadReal):
        return value
    if isinstance(value, (int, Fraction)):
        return quad(value)
    raise TypeError(f"cannot interpret {value!r} as a quadratic number")


def quad(a: RationalLike | Fraction = 0, b: RationalLike | Fraction = 0,
         d: int = 0) -> QuadReal:
    """Build a + b*sqrt(d) in normal form."""
    a, b = Fraction(a), Fraction(b)
    if d < 0:
        raise ValueError("radicand must be nonnegative")
    if b == 0 or d == 0:
        return QuadReal(a, Fraction(0), 0)
    m, s = _square_free(d)
    b *= s
    if m == 0:
        return QuadReal(a, Fraction(0), 0)
    if m == 1:
        return QuadReal(a + b, Fraction(0), 0)
    return QuadReal(a, b, m)


def radical(d: int) -> QuadReal:
    """The number sqrt(d)."""
    return quad(0, 1, d)


def quad_sign(x: QuadReal) -> int:
    """Exact sign of x, decided purely in rational arithmetic."""
    if x.b == 0:
        return _fsign(x.a)
    if x.a == 0:
        return _fsign(x.b)
    sa, sb = _fsign(x.a), _fsign(x.b)
    if sa == sb:
        return sa
    lhs, rhs = x.a * x.a, x.b * x.b * x.d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def quad_floor(x: QuadReal) -> int:
    """Largest integer n with n <= x."""
    if x.b == 0:
        return x.a.numerator // x.a.denominator
    den = lcm(x.a.denominator, x.b.denominator)
    p = x.a.numerator * (den // x.a.denominator)
    q = x.b.numerator * (den // x.b.denominator)
    r = isqrt(q * q * x.d)
    s = r if q >= 0 else -r - 1
    n = (p + s) // den
    while quad_sign(x - (n + 1)) >= 0:
        n += 1
    return n


def quad_approx(x: QuadReal, digits: int) -> str:
    """Correctly rounded decimal string with the given fractional digits.

    Exact ties round half to even.  Display-only; never feed the result back
    into exact logic.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scale = 10 ** digits
    n = quad_floor(x * scale)
    rem2 = (x * scale - n) * 2
    cmp_half = quad_sign(rem2 - 1)
    if cmp_half > 0 or (cmp_half == 0 and n % 2 != 0):
        n += 1
    sign = "-" if n < 0 else ""
    ip, fp = divmod(abs(n), scale)
    return f"{sign}{ip}.{fp:0{digits}d}"


def format_quad(x: QuadReal) -> str:
    """Canonical text form `p/q` or `p/q+r/sr` (r denotes sqrt(d))."""
    rat = f"{x.a.numerator}/{x.a.denominator}"
    if x.b == 0:
        return rat
    sign = "+" if x.b > 0 else "-"
    mag = abs(x.b)
    return f"{rat}{sign}{mag.numerator}/{mag.denominator}r"


_QUAD_RE = re.compile(
    r"""^\s*
        (?P<rat>[+-]?\d+(?:\s*/\s*\d+)?)?
        \s*
        (?:(?P<sign>[+-])?\s*(?P<coef>\d+(?:\s*/\s*\d+)?)\s*r)?
        \s*$""",
    re.VERBOSE,
)


def parse_quad(text: str, d: int = 0) -> QuadReal:
    """Parse the text form of a quadratic number; d comes from context."""
    m = _QUAD_RE.match(text)
    if not m or (m.group("rat") is None and m.group("coef") is None):
        raise ParseError(f"not a quadratic number: {text!r}")

    def _frac(tok: str) -> Fraction:
        tok = tok.replace(" ", "")
        if "/" in tok:
            num, den = tok.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(tok))

    a = _frac(m.group("rat")) if m.group("rat") else Fraction(0)
    b = Fraction(0)
    if m.group("coef"):
        if d == 0:
            raise ParseError(f"radical term in {text!r} but d is 0")
        b = _frac(m.group("coef"))
        if m.group("sign") == "-":
            b = -b
    return quad(a, b, d)
