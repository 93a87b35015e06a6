from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from soq.errors import DegenerateInput, FactorizationLimit, InvalidPlace
from soq.field import (
    GF,
    QQ,
    Field,
    factorize,
    is_prime,
    is_square,
    legendre_symbol,
    reduce_square_class,
    sqrt_mod,
    squarefree_part,
)

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]
nonzero_rationals = st.fractions(max_denominator=500).filter(lambda x: x != 0 and abs(x.numerator) < 10**6)


def _squares_mod(p):
    return {x * x % p for x in range(1, p)}


# ---------------------------------------------------------------------------
# primes and factoring


def test_is_prime_matches_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if sieve[n]]


def test_factorize_roundtrip():
    for n in range(2, 3000):
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p ** e
        assert prod == n


def test_factorization_limit_is_loud():
    n = 1000003 * 1000033   # both factors above the bound
    with pytest.raises(FactorizationLimit):
        factorize(n, bound=1000)


def test_large_prime_cofactor_accepted():
    assert factorize(2 * 1000003, bound=100) == {2: 1, 1000003: 1}


def test_squarefree_part():
    assert squarefree_part(18) == 2
    assert squarefree_part(-50) == -2
    assert squarefree_part(49) == 1


# ---------------------------------------------------------------------------
# Legendre symbol


def test_legendre_examples():
    for p in SMALL_PRIMES:
        assert legendre_symbol(1, p) == 1
        assert legendre_symbol(p, p) == 0
    assert legendre_symbol(2, 7) == 1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_legendre_matches_enumeration(p):
    sq = _squares_mod(p)
    for a in range(-2 * p, 2 * p):
        expected = 0 if a % p == 0 else (1 if a % p in sq else -1)
        assert legendre_symbol(a, p) == expected


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.sampled_from(SMALL_PRIMES))
def test_legendre_multiplicative(a, b, p):
    assert legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p)


@pytest.mark.parametrize("p", [2, 9, 1, -3, 15])
def test_legendre_rejects_bad_modulus(p):
    with pytest.raises(InvalidPlace):
        legendre_symbol(3, p)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_sqrt_mod(p):
    for a in range(p):
        r = sqrt_mod(a, p)
        if a == 0 or a in _squares_mod(p):
            assert r is not None and r * r % p == a
        else:
            assert r is None


# ---------------------------------------------------------------------------
# fields and square classes


def test_field_labels():
    assert Field.from_label("Q") == QQ
    assert Field.from_label("F7") == GF(7)
    for bad in ("F2", "F9", "R", "F", "F-3"):
        with pytest.raises(ValueError):
            Field.from_label(bad)


def test_parse_literals():
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert QQ.parse("12") == 12
    assert GF(7).parse("1/2") == GF(7)(4)
    for bad in ("1.5", "1e3", "", "3/", "--1", "1/-2"):
        with pytest.raises(ValueError):
            QQ.parse(bad)


def test_residues_reduced():
    k = GF(11)
    x = k(-1)
    assert x.value == 10
    assert k(3) / k(3) == 1
    assert k(2) ** -1 == k(6)


def test_reduce_square_class_examples():
    assert reduce_square_class(Fraction(18)).rep == 2
    assert reduce_square_class(Fraction(4, 9)).rep == 1
    assert reduce_square_class(Fraction(-12, 5)).rep == -15
    assert reduce_square_class(GF(7)(3), GF(7)).rep == 3
    assert reduce_square_class(GF(7)(5), GF(7)).rep == 3
    assert reduce_square_class(GF(7)(2), GF(7)).rep == 1
    with pytest.raises(DegenerateInput):
        reduce_square_class(Fraction(0))


def test_is_square_examples():
    assert is_square(Fraction(49, 4))
    assert not is_square(Fraction(5))
    assert is_square(GF(11)(4), GF(11))
    assert is_square(Fraction(0))


@given(nonzero_rationals)
def test_square_class_differs_by_a_square(x):
    c = reduce_square_class(x)
    assert is_square(x / c.rep)
    # canonical rep is a squarefree integer
    assert squarefree_part(c.rep) == c.rep


@given(nonzero_rationals)
def test_square_class_idempotent(x):
    c = reduce_square_class(x)
    assert reduce_square_class(Fraction(c.rep)) == c


@settings(max_examples=200)
@given(nonzero_rationals, nonzero_rationals)
def test_square_class_multiplicative(x, y):
    lhs = reduce_square_class(x * y)
    rhs = reduce_square_class(Fraction(reduce_square_class(x).rep * reduce_square_class(y).rep))
    assert lhs == rhs
    assert reduce_square_class(x) * reduce_square_class(y) == lhs


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_finite_field_has_two_classes_with_legendre_table(p):
    k = GF(p)
    classes = k.square_classes()
    assert len(classes) == 2
    one, n = classes
    assert one.rep == 1
    # the least nonresidue, by linear scan
    assert n.rep == min(a for a in range(2, p) if legendre_symbol(a, p) == -1)
    for a in range(1, p):
        for b in range(1, p):
            c = reduce_square_class(k(a * b), k)
            assert (c.rep == 1) == (legendre_symbol(a * b, p) == 1)
            assert reduce_square_class(k(a), k) * reduce_square_class(k(b), k) == c


def test_cofactor_beyond_proven_range_is_refused():
    m89 = 2 ** 89 - 1     # a Mersenne prime above the deterministic Miller-Rabin range
    assert is_prime(m89)
    with pytest.raises(FactorizationLimit):
        factorize(3 * m89, bound=10)
