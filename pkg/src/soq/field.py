"""Exact arithmetic over Q and F_p (p odd) and square classes.

Rationals are plain :class:`fractions.Fraction` values.  Residues mod p are
:class:`Residue` instances that support the same operator protocol, so the
linear algebra and form code is written once for both fields.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

from .errors import DegenerateInput, FactorizationLimit, InvalidPlace

DEFAULT_FACTOR_BOUND = 10**6

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


# ---------------------------------------------------------------------------
# integer helpers


MR_EXACT_LIMIT = 3317044064679887385961981   # the 13 bases below are a proof under this


def is_prime(n: int) -> bool:
    """Miller-Rabin on the first 13 primes; a proof for n < MR_EXACT_LIMIT."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Prime factorization of |n| by trial division up to `bound`.

    A cofactor left over after trial division is accepted only if it is
    provably prime or the square of a prime; anything else raises
    FactorizationLimit instead of guessing.
    """
    n = abs(n)
    if n == 0:
        raise DegenerateInput("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n == 1:
        return out
    if d * d > n or (n < MR_EXACT_LIMIT and is_prime(n)):
        out[n] = out.get(n, 0) + 1
        return out
    r = isqrt(n)
    if r * r == n and r < MR_EXACT_LIMIT and is_prime(r):
        out[r] = out.get(r, 0) + 2
        return out
    raise FactorizationLimit(f"cofactor {n} not resolved by trial division up to {bound}")


def squarefree_part(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """Squarefree integer in the same square class as nonzero n (sign kept)."""
    if n == 0:
        raise DegenerateInput("0 has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in factorize(n, bound).items():
        if e % 2:
            out *= q
    return sign * out


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion; p must be an odd prime."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidPlace(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """Least square root of a mod an odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# residues


class Residue:
    """An element of F_p, always reduced into [0, p-1]."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"division by zero in F_{self.p}")
            return Residue(pow(self.value, -k, self.p), self.p).__rtruediv__(1)
        return Residue(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.value == o

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class Field:
    """The base field: Q when ``p == 0``, otherwise F_p for an odd prime p."""

    p: int = 0
    factor_bound: int = dc_field(default=DEFAULT_FACTOR_BOUND, compare=False)

    def __post_init__(self):
        if self.p and (self.p == 2 or not is_prime(self.p)):
            raise InvalidPlace(f"F_{self.p}: characteristic must be an odd prime")

    @classmethod
    def from_label(cls, label: str, factor_bound: int = DEFAULT_FACTOR_BOUND) -> Field:
        """Parse ``"Q"`` or ``"F<p>"``."""
        label = label.strip()
        if label in ("Q", "QQ"):
            return cls(0, factor_bound)
        m = re.fullmatch(r"F_?(\d+)", label)
        if not m:
            raise ValueError(f"unknown field {label!r}; use Q or F<p>")
        return cls(int(m.group(1)), factor_bound)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, Residue):
                raise ValueError("residue used as a rational")
            if isinstance(x, str):
                return self.parse(x)
            return Fraction(x)
        if isinstance(x, str):
            x = _parse_rational(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise ValueError(f"F_{x.p} element used in F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DegenerateInput(f"{x} has no image in F_{self.p}")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Residue(int(x), self.p)

    def parse(self, s: str):
        """Parse a literal ``n`` or ``n/d`` into this field."""
        x = _parse_rational(s)
        return x if self.p == 0 else self(x)

    def format(self, x) -> str:
        return str(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        self._require_finite()
        return [Residue(i, self.p) for i in range(self.p)]

    @cached_property
    def nonresidue(self) -> int:
        """Least positive quadratic nonresidue mod p."""
        self._require_finite()
        n = 2
        while legendre_symbol(n, self.p) != -1:
            n += 1
        return n

    def square_classes(self) -> list[SquareClass]:
        self._require_finite()
        return [SquareClass(1, self), SquareClass(self.nonresidue, self)]

    def is_square(self, x) -> bool:
        """0 counts as a square."""
        x = self(x)
        if x == 0:
            return True
        if self.p:
            return legendre_symbol(x.value, self.p) == 1
        return self.sqrt(x) is not None

    def sqrt(self, x):
        """An exact square root of x in this field, or None."""
        x = self(x)
        if self.p:
            r = sqrt_mod(x.value, self.p)
            return None if r is None else Residue(r, self.p)
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def square_class(self, x) -> SquareClass:
        return reduce_square_class(x, self)

    def _require_finite(self):
        if self.p == 0:
            raise ValueError("operation only defined over F_p")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    x = Fraction(s)
    return x


def field_of(x) -> Field:
    """Best-effort recovery of the field an element lives in."""
    if isinstance(x, Residue):
        return Field(x.p)
    return QQ


# ---------------------------------------------------------------------------
# square classes


def _class_key(rep: int):
    return (abs(rep), rep < 0)


@dataclass(frozen=True)
class SquareClass:
    """Canonical representative of an element of k^x / k^x2.

    Over Q the representative is a squarefree integer with its sign, over
    F_p it is 1 or the least nonresidue.
    """

    rep: int
    field: Field = QQ

    def __mul__(self, other: SquareClass) -> SquareClass:
        if other.field != self.field:
            raise ValueError("square classes from different fields")
        return reduce_square_class(self.rep * other.rep, self.field)

    def __neg__(self) -> SquareClass:
        return reduce_square_class(-self.rep, self.field)

    def __lt__(self, other: SquareClass) -> bool:
        return _class_key(self.rep) < _class_key(other.rep)

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1

    @property
    def element(self):
        return self.field(self.rep)

    def __str__(self):
        return str(self.rep)


def reduce_square_class(x, k: Field = QQ) -> SquareClass:
    x = k(x)
    if x == 0:
        raise DegenerateInput("0 has no square class")
    if k.p:
        return SquareClass(1 if k.is_square(x) else k.nonresidue, k)
    return SquareClass(squarefree_part(x.numerator * x.denominator, k.factor_bound), k)


def is_square(x, k: Field = QQ) -> bool:
    return k.is_square(x)
