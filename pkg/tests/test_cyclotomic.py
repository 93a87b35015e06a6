from fractions import Fraction

import pytest

from soq.cyclotomic import all_choices, alpha_beta, alpha_in_field, half_alpha_plus_one, valid_alphas
from soq.errors import PIrregular
from soq.field import GF, QQ
from soq.quadform import TernaryForm, represents

PRIMES = [3, 5, 7, 11, 13]


def _order(x, p):
    e, y = 1, x % p
    while y != 1:
        y = y * x % p
        e += 1
    return e


def _brute_alphas(n, p):
    """alpha = (w + 1/w)/2 over all w of exact order n in F_p or F_{p^2}.

    F_{p^2} elements are pairs (u, v) meaning u + v*sqrt(r) for a fixed nonresidue r.
    """
    r = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
    inv2 = pow(2, -1, p)

    def mul(x, y):
        return ((x[0] * y[0] + r * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def power(x, e):
        out = (1, 0)
        for _ in range(e):
            out = mul(out, x)
        return out

    alphas = set()
    for u in range(p):
        for v in range(p):
            w = (u, v)
            if w == (0, 0) or power(w, n) != (1, 0):
                continue
            if any(power(w, d) == (1, 0) for d in range(1, n)):
                continue
            winv = power(w, n - 1)
            s = ((w[0] + winv[0]) % p, (w[1] + winv[1]) % p)
            # w + 1/w lies in F_p only when w is in F_p or has norm 1
            if s[1] == 0:
                alphas.add(s[0] * inv2 % p)
    return sorted(alphas)


def test_rational_table():
    nd = alpha_beta(4, QQ)
    assert (nd.alpha, nd.beta) == (0, -1)
    nd = alpha_beta(3, QQ)
    assert (nd.alpha, nd.beta) == (Fraction(-1, 2), Fraction(-3, 4))
    assert alpha_beta(5, QQ) is None
    assert [n for n in range(1, 40) if alpha_in_field(n, QQ)] == [1, 2, 3, 4, 6]


def test_f11_order_five():
    # order-5 elements mod 11 are 3, 4, 5, 9
    assert sorted(x for x in range(1, 11) if _order(x, 11) == 5) == [3, 4, 5, 9]
    assert [int(a.value) for a in valid_alphas(5, GF(11))] == [7, 9]
    assert alpha_beta(5, GF(11)).alpha == 7


@pytest.mark.parametrize("p", PRIMES)
def test_alphas_match_brute_force(p):
    k = GF(p)
    for n in range(3, 2 * p + 3):
        if n % p == 0:
            with pytest.raises(PIrregular):
                valid_alphas(n, k)
            continue
        got = sorted(int(a.value) for a in valid_alphas(n, k))
        assert got == _brute_alphas(n, p), (n, p)
        assert bool(got) == ((p - 1) % n == 0 or (p + 1) % n == 0)


def test_half_alpha_plus_one_rational():
    assert half_alpha_plus_one(alpha_beta(3, QQ)).rep == 1
    assert half_alpha_plus_one(alpha_beta(4, QQ)).rep == 2
    assert half_alpha_plus_one(alpha_beta(6, QQ)).rep == 3
    with pytest.raises(ValueError):
        half_alpha_plus_one(alpha_beta(2, QQ))


def test_beta_invariants():
    for k in [QQ] + [GF(p) for p in PRIMES]:
        for n in range(3, 15):
            if k.p and n % k.p == 0:
                continue
            for nd in all_choices(n, k):
                assert nd.beta == nd.alpha * nd.alpha - 1
                assert nd.beta != 0


@pytest.mark.parametrize("p", PRIMES)
def test_odd_n_half_alpha_plus_one_is_square(p):
    k = GF(p)
    for n in range(3, 14, 2):
        if n % p == 0:
            continue
        for nd in all_choices(n, k):
            assert nd.half_alpha_plus_one_class.is_trivial


@pytest.mark.parametrize("p", PRIMES)
def test_beta_square_iff_root_in_field(p):
    k = GF(p)
    for n in range(3, p + 2):
        if n % p == 0:
            continue
        root_in_fp = (p - 1) % n == 0
        for nd in all_choices(n, k):
            assert k.is_square(nd.beta) == root_in_fp


@pytest.mark.parametrize("p", PRIMES)
def test_representability_independent_of_choice(p):
    k = GF(p)
    forms = [TernaryForm(d, k) for d in [(1, 1, 1), (1, 2, 3), (2, 3, 5), (1, 1, 2)] if all(x % p for x in d)]
    for n in range(3, p + 2):
        if n % p == 0:
            continue
        for q in forms:
            qn, _ = q.normalized()
            answers = {represents(qn, -nd.beta) for nd in all_choices(n, k)}
            assert len(answers) <= 1
