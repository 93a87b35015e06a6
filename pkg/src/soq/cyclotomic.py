"""alpha_n = (w + 1/w)/2 and beta_n = alpha_n^2 - 1 for a primitive n-th root w.

Over Q only n in {1, 2, 3, 4, 6} give a rational alpha_n.  Over F_p the
root may live in F_{p^2}; we never build that field explicitly and instead
compute in F_p[x]/(x^2 - 2 alpha x + 1), where x plays the role of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PIrregular
from .field import Field, SquareClass, factorize, reduce_square_class

_RATIONAL_ALPHA = {
    1: Fraction(1),
    2: Fraction(-1),
    3: Fraction(-1, 2),
    4: Fraction(0),
    6: Fraction(1, 2),
}


@dataclass(frozen=True)
class CyclotomicData:
    n: int
    field: Field
    alpha: object
    beta: object
    # class of (alpha + 1)/2; None for n = 2 where it vanishes
    half_alpha_plus_one_class: SquareClass | None


def _mul(u, v, alpha, k):
    # (u0 + u1 x)(v0 + v1 x) with x^2 = 2 alpha x - 1
    a = u[0] * v[0]
    b = u[0] * v[1] + u[1] * v[0]
    c = u[1] * v[1]
    return (a - c, b + 2 * alpha * c)


def _xpow(e, alpha, k):
    result = (k.one, k.zero)
    base = (k.zero, k.one)
    while e:
        if e & 1:
            result = _mul(result, base, alpha, k)
        base = _mul(base, base, alpha, k)
        e >>= 1
    return result


def root_order_is(alpha, n: int, k: Field) -> bool:
    """Whether a root of x^2 - 2 alpha x + 1 has multiplicative order exactly n."""
    one = (k.one, k.zero)
    if _xpow(n, alpha, k) != one:
        return False
    return all(_xpow(n // r, alpha, k) != one for r in factorize(n))


def valid_alphas(n: int, k: Field) -> list:
    """Every alpha in k coming from some primitive n-th root of unity."""
    if n < 1:
        raise ValueError("n must be positive")
    if k.p == 0:
        return [_RATIONAL_ALPHA[n]] if n in _RATIONAL_ALPHA else []
    if n % k.p == 0:
        raise PIrregular(f"n = {n} is divisible by the characteristic {k.p}")
    if n <= 2:
        return [k(_RATIONAL_ALPHA[n])]
    if (k.p - 1) % n and (k.p + 1) % n:
        return []
    return [a for a in k.elements() if a != 1 and a != -1 and root_order_is(a, n, k)]


def alpha_beta(n: int, k: Field) -> CyclotomicData | None:
    """alpha_n, beta_n over k, or None when alpha_n is not in k.

    Over F_p the least residue among the valid alphas is used, so every run
    works with the same beta_n.
    """
    alphas = valid_alphas(n, k)
    if not alphas:
        return None
    return _data(n, k, min(alphas))


def _data(n, k, alpha):
    alpha = k(alpha)
    beta = alpha * alpha - 1
    half = (alpha + 1) / 2
    cls = reduce_square_class(half, k) if half != 0 else None
    return CyclotomicData(n, k, alpha, beta, cls)


def all_choices(n: int, k: Field) -> list[CyclotomicData]:
    return [_data(n, k, a) for a in valid_alphas(n, k)]


def half_alpha_plus_one(nd: CyclotomicData) -> SquareClass:
    """Square class of (alpha_n + 1)/2."""
    if nd.n < 3:
        raise ValueError("only defined here for n >= 3")
    return nd.half_alpha_plus_one_class


def alpha_in_field(n: int, k: Field) -> bool:
    return bool(valid_alphas(n, k))
