from fractions import Fraction

import pytest

from soq import linalg as la
from soq.errors import NotInGroup, OrderMismatch
from soq.field import GF, QQ
from soq.oracle import enumerate_group
from soq.quadform import TernaryForm
from soq.spectra import Kind, OrthoMatrix, analyze_element, char_poly, element_order, p_irregular_isotropy_check


def _brute_order(M, cap):
    I = la.identity(3, M.form.field)
    A = M.M
    for e in range(1, cap + 1):
        if A == I:
            return e
        A = la.matmul(A, M.M)
    return None


def test_membership_checked():
    q = TernaryForm((1, 1, 1))
    with pytest.raises(NotInGroup):
        OrthoMatrix(la.diag([1, 1, -1], QQ), q)       # det -1
    with pytest.raises(NotInGroup):
        OrthoMatrix(la.diag([2, 1, Fraction(1, 2)], QQ), q)


def test_identity_and_involution():
    q = TernaryForm((-2, -3, 6))
    r = analyze_element(OrthoMatrix(la.identity(3, QQ), q))
    assert r.kind == Kind.IDENTITY and r.order == 1
    r = analyze_element(OrthoMatrix(la.diag([1, -1, -1], QQ), q))
    assert r.kind == Kind.SPLIT and r.order == 2 and r.lam == -1 and r.witness is None


def test_rational_rotation_orders():
    q = TernaryForm((1, 1, 1))
    s4 = OrthoMatrix(((1, 0, 0), (0, 0, -1), (0, 1, 0)), q)
    r = analyze_element(s4)
    assert r.order == 4 and r.kind == Kind.QUADRATIC and r.trace_sum == 0
    c3 = OrthoMatrix(((0, 0, 1), (1, 0, 0), (0, 1, 0)), q)
    assert analyze_element(c3).order == 3


def test_infinite_order_split_element_has_witness():
    # a hyperbolic boost on <1, -1, 1>: eigenvalues 1, 2, 1/2
    q = TernaryForm((1, -1, 1))
    c, s = Fraction(5, 4), Fraction(3, 4)
    M = OrthoMatrix(((c, s, 0), (s, c, 0), (0, 0, 1)), q)
    r = analyze_element(M)
    assert r.kind == Kind.SPLIT and r.lam in (2, Fraction(1, 2))
    assert r.order is None
    assert q(r.witness) == 0 and any(x != 0 for x in r.witness)


def test_unipotent_over_q():
    # exp(N) = I + N + N^2/2 for a nilpotent N = Q^{-1} A, A antisymmetric
    q = TernaryForm((1, -1, 1))
    N = la.as_matrix([[0, 1, 1], [1, 0, 0], [-1, 0, 0]], QQ)
    N2 = la.matmul(N, N)
    assert la.is_zero(la.matmul(N2, N))
    I = la.identity(3, QQ)
    M = OrthoMatrix(tuple(tuple(I[i][j] + N[i][j] + N2[i][j] / 2 for j in range(3)) for i in range(3)), q)
    r = analyze_element(M)
    assert r.kind == Kind.UNIPOTENT and r.order is None
    assert q(r.witness) == 0


@pytest.mark.parametrize("p", [3, 5, 7])
def test_palindromic_char_poly_and_orders(p):
    q = TernaryForm((1, 1, 1), GF(p))
    for M in enumerate_group(q):
        c0, c1, c2, c3 = char_poly(M.M)
        # P(x) = -x^3 P(1/x) coefficientwise
        assert (c0, c1, c2, c3) == (-c3, -c2, -c1, -c0)
        r = analyze_element(M)
        assert r.order == _brute_order(M, 2 * (p + 1))
        if r.witness is not None:
            assert q(r.witness) == 0 and any(x != 0 for x in r.witness)
        if r.kind == Kind.UNIPOTENT:
            assert r.order == p


def test_order_five_unipotent_over_f5():
    q = TernaryForm((1, 1, 1), GF(5))
    M = next(g for g in enumerate_group(q) if element_order(g.M, 20) == 5)
    r = analyze_element(M)
    assert r.kind == Kind.UNIPOTENT
    v = p_irregular_isotropy_check(M)
    assert q(v) == 0 and any(x != 0 for x in v)


@pytest.mark.parametrize("p, d", [(3, (1, 1, 1)), (5, (1, 2, 3)), (7, (1, 2, 3)), (7, (3, 3, 5))])
def test_every_order_p_element_gives_a_witness(p, d):
    q = TernaryForm(d, GF(p))
    n = 0
    for M in enumerate_group(q):
        if element_order(M.M, p + 1) == p:
            v = p_irregular_isotropy_check(M)
            assert q(v) == 0 and any(x != 0 for x in v)
            n += 1
    assert n == p * p - 1   # unipotent elements of PGL2(F_p)


def test_isotropy_check_rejects_wrong_order():
    q = TernaryForm((1, 1, 1), GF(5))
    with pytest.raises(OrderMismatch):
        p_irregular_isotropy_check(OrthoMatrix(la.identity(3, GF(5)), q))
    with pytest.raises(OrderMismatch):
        p_irregular_isotropy_check(OrthoMatrix(la.diag([1, -1, -1], GF(5)), q))
    with pytest.raises(OrderMismatch):
        p_irregular_isotropy_check(OrthoMatrix(la.identity(3, QQ), TernaryForm((1, 1, 1))))
