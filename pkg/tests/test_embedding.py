from fractions import Fraction

import pytest

from soq import linalg as la
from soq.cyclotomic import alpha_beta
from soq.embedding import (
    A4,
    A5,
    KLEIN,
    S4,
    Cyclic,
    Dihedral,
    GroupSpec,
    check_relations,
    cube_generators,
    embeds,
    icosahedron_generators,
    standard_s,
    standard_t,
    synthesize_generators,
    tetrahedron_generators,
    verify_subgroup,
)
from soq.errors import ClosureCapExceeded, NotEmbeddable, PIrregular
from soq.field import GF, QQ
from soq.quadform import TernaryForm, isometric, represents
from soq.spectra import OrthoMatrix

RATIONAL_GROUPS = [Cyclic(n) for n in (1, 2, 3, 4, 6)] + [Dihedral(n) for n in (2, 3, 4, 6)] + [A4, S4, A5]

# disc-1 forms with small coefficients
DISC_ONE = [
    (1, 1, 1), (-1, -1, 1), (1, 2, 2), (-1, 2, -2), (1, 3, 3), (-1, -3, 3), (1, 5, 5),
    (-1, -5, 5), (2, 3, 6), (-2, -3, 6), (1, 6, 6), (-1, 6, -6), (2, 5, 10), (3, 5, 15),
    (-3, -5, 15), (1, 7, 7), (-1, -7, 7), (2, 7, 14), (3, 7, 21), (-2, -7, 14),
]


def test_group_spec_parsing():
    assert GroupSpec.parse("C4") == Cyclic(4)
    assert GroupSpec.parse("D8") == Dihedral(4)
    assert GroupSpec.parse("V4") == KLEIN == Dihedral(2)
    assert GroupSpec.parse("s4") == S4
    for bad in ("D7", "X", "C0", "D2"):
        with pytest.raises(ValueError):
            GroupSpec.parse(bad)
    assert Dihedral(6).order == 12 and A5.order == 60


def test_decision_examples():
    q0 = TernaryForm((1, 1, 1))
    h = TernaryForm((-1, -1, 1))
    for q in (q0, h, TernaryForm((2, 3, 5))):
        assert embeds(KLEIN, q)
    d = embeds(A5, q0)
    assert not d and any("sqrt(5)" in r for r in d.reasons)
    d = embeds(S4, h)
    assert not d and any("not isometric" in r for r in d.reasons)
    assert embeds(Cyclic(4), h)


@pytest.mark.parametrize("d", DISC_ONE)
def test_example_biconditionals(d):
    q = TernaryForm(d)
    assert q.disc().is_trivial
    assert bool(embeds(Cyclic(4), q)) == represents(q, 1)
    assert bool(embeds(Cyclic(3), q)) == represents(q, 3)


def test_monotonicity_and_scaling():
    for d in DISC_ONE:
        q = TernaryForm(d)
        for n in (3, 4, 6):
            assert bool(embeds(Dihedral(n), q)) == bool(embeds(Cyclic(n), q))
        assert bool(embeds(A4, q)) == bool(embeds(S4, q))
        assert not embeds(A5, q) or embeds(A4, q)
        for c in (2, -3, Fraction(5, 7)):
            for G in RATIONAL_GROUPS:
                assert bool(embeds(G, q)) == bool(embeds(G, q.scaled(c)))


def test_finite_field_monotonicity():
    for p in (7, 11, 13, 19, 29):
        k = GF(p)
        q = TernaryForm((1, 2, 3), k)
        # sqrt(5) lies in F_p exactly when p = +-1 mod 5
        assert bool(embeds(A5, q)) == (p % 5 in (1, 4))
        with pytest.raises(PIrregular):
            embeds(Cyclic(p), q)


# ---------------------------------------------------------------------------
# the explicit matrices


def test_standard_s_t_relations_over_q():
    for n in (3, 4, 6):
        nd = alpha_beta(n, QQ)
        s, t = standard_s(nd), standard_t(QQ)
        q = TernaryForm((-nd.beta, -1, nd.beta))
        OrthoMatrix(s, q), OrthoMatrix(t, q)
        I = la.identity(3, QQ)
        assert la.matpow(s, n) == I and la.matmul(t, t) == I
        st = la.matmul(s, t)
        assert la.matmul(st, st) == I
        assert all(la.matpow(s, j) != I for j in range(1, n))


def test_standard_s_t_relations_over_finite_fields():
    for p in (5, 7, 11, 13):
        k = GF(p)
        for n in range(3, p + 2):
            if n % p == 0 or alpha_beta(n, k) is None:
                continue
            nd = alpha_beta(n, k)
            rel = check_relations(Dihedral(n), [standard_s(nd), standard_t(k)])
            assert all(rel.values())


def test_polyhedral_generators():
    for raw, G in ((cube_generators(QQ), S4), (tetrahedron_generators(QQ), A4)):
        rep = verify_subgroup(raw, TernaryForm((1, 1, 1)))
        assert rep.order == G.order and rep.iso_type == G
    rep = verify_subgroup(cube_generators(QQ), TernaryForm((1, 1, 1)))
    assert rep.involutions == 9
    k = GF(11)
    rep = verify_subgroup(icosahedron_generators(k), TernaryForm((1, 1, 1), k))
    assert rep.order == 60 and rep.iso_type == A5 and rep.involutions == 15


def test_verify_subgroup_examples():
    q = TernaryForm((1, 1, 1))
    rep = verify_subgroup([la.identity(3, QQ)], q)
    assert rep.order == 1 and rep.iso_type == Cyclic(1)
    nd = alpha_beta(3, QQ)
    q3 = TernaryForm((-nd.beta, -1, nd.beta))
    rep = verify_subgroup([standard_s(nd), standard_t(QQ)], q3)
    assert rep.order == 6 and rep.iso_type == Dihedral(3)


def test_closure_cap():
    q = TernaryForm((1, -1, 1))
    boost = ((Fraction(5, 4), Fraction(3, 4), 0), (Fraction(3, 4), Fraction(5, 4), 0), (0, 0, 1))
    with pytest.raises(ClosureCapExceeded):
        verify_subgroup([boost], q)


# ---------------------------------------------------------------------------
# synthesis


def test_synth_c4_on_sum_of_squares():
    gs = synthesize_generators(Cyclic(4), TernaryForm((1, 1, 1)))
    assert gs.gens[0].M == la.as_matrix([[1, 0, 0], [0, 0, -1], [0, 1, 0]], QQ)


def test_synth_d6_on_normalized_form():
    q = TernaryForm((-3, -1, 3))
    gs = synthesize_generators(Dihedral(3), q)
    assert gs.order == 6 and all(gs.relations.values())


SYNTH_FIXTURES = [
    ((1, 1, 1), RATIONAL_GROUPS),
    ((-1, -1, 1), RATIONAL_GROUPS),
    ((2, 3, 6), RATIONAL_GROUPS),
    ((1, 2, 5), RATIONAL_GROUPS),
    ((-3, -1, 3), RATIONAL_GROUPS),
    ((1, 4, 9), RATIONAL_GROUPS),
]


@pytest.mark.parametrize("d, groups", SYNTH_FIXTURES)
def test_synthesis_certificates_over_q(d, groups):
    q = TernaryForm(d)
    for G in groups:
        if not embeds(G, q):
            with pytest.raises(NotEmbeddable):
                synthesize_generators(G, q)
            continue
        gs = synthesize_generators(G, q)
        rep = verify_subgroup(gs.gens, q)
        assert rep.order == G.order and rep.iso_type == G
        assert all(gs.relations.values())


def test_dihedral_on_two_non_isometric_forms():
    q1, q2 = TernaryForm((1, 1, 1)), TernaryForm((-1, -1, 1))
    assert not isometric(q1, q2)
    for q in (q1, q2):
        for n in (3, 4):
            gs = synthesize_generators(Dihedral(n), q)
            s, t = gs.gens
            assert (s ** n).is_identity() and (t @ t).is_identity() and ((s @ t) @ (s @ t)).is_identity()
            assert verify_subgroup(gs.gens, q).iso_type == Dihedral(n)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_synthesis_over_finite_fields(p):
    k = GF(p)
    for d in [(1, 1, 1), (1, 2, 3)]:
        if any(x % p == 0 for x in d):
            continue
        q = TernaryForm(d, k)
        groups = [Cyclic(n) for n in range(1, p + 2)] + [Dihedral(n) for n in range(2, p + 2)] + [A4, S4, A5]
        for G in groups:
            if G.order % p == 0:
                continue
            if G.kind in ("C", "D") and G.n % p == 0:
                continue
            if not embeds(G, q):
                continue
            gs = synthesize_generators(G, q)
            rep = verify_subgroup(gs.gens, q)
            assert rep.order == G.order and rep.iso_type == G, (G, p, d)


def test_rational_n_outside_table_rejected():
    for n in (5, 7, 8, 10, 12):
        d = embeds(Cyclic(n), TernaryForm((1, 1, 1)))
        assert not d and any("not in Q" in r for r in d.reasons)
