"""Conjugacy classes of finite subgroups of SO(q)(k).

The class of a subgroup is read off from square classes of q-values of
fixed axes, which are unchanged by conjugation inside SO(q)(k):

* order 2: the axis value itself, an element of D(q);
* Klein four: the three axis values, recorded as an S3-orbit of pairs in
  Q_{a,b} for q = <-a, -b, ab>;
* dihedral of order 2n: the axis value of a reflection, compared with the
  reference normal form <-beta_n, -gamma, beta_n gamma> and taken modulo
  the subgroup generated by (alpha_n + 1)/2.

All invariants are computed on the discriminant-1 rescaling of q.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .cyclotomic import alpha_beta
from .embedding import (
    KLEIN,
    CLOSURE_CAP,
    DihedralNormalForm,
    GeneratorSet,
    GroupSpec,
    _certify,
    _check_regular,
    closure,
    conjugate_by,
    dihedral_normal_form,
    embeds,
    identify,
    standard_s,
    standard_t,
)
from .errors import (
    NotDihedral,
    NotEmbeddable,
    NotInNormGroup,
    NotInvolution,
    NotKleinFour,
    NotRepresentable,
)
from .field import Field, SquareClass
from .quadform import (
    DEFAULT_BUDGET,
    BinaryForm,
    DiagonalForm,
    TernaryForm,
    explicit_isometry,
    find_representation_vector,
    orthogonal_completion,
    quaternion_isomorphic,
    represents,
)
from .spectra import OrthoMatrix


def _as_ortho(M, q) -> OrthoMatrix:
    return M if isinstance(M, OrthoMatrix) else OrthoMatrix(M, q)


def _subgroup_elements(S, q):
    if isinstance(S, GeneratorSet):
        S = S.gens
    gens = [_as_ortho(M, q) for M in S]
    I = OrthoMatrix(la.identity(3, q.field), q)
    return closure(gens, I, CLOSURE_CAP), I, gens


def _order(g, I):
    e, x = 1, g
    while x != I:
        x = x @ g
        e += 1
    return e


def fixed_axis(M, k: Field):
    """Spanning vector of the +1-eigenspace of a nontrivial rotation."""
    K = la.kernel(la.sub(M, la.identity(3, k)))
    if len(K) != 1:
        raise NotInvolution("fixed space is not a line")
    return K[0]


def _sort_key(g):
    return tuple(str(x) for row in g.M for x in row)


# ---------------------------------------------------------------------------
# Z/2


@dataclass(frozen=True)
class InvolutionClass:
    d: SquareClass
    axis: tuple = dc_field(compare=False)   # q(axis) lies in the class d


def involution_class(M, q: DiagonalForm) -> InvolutionClass:
    M = _as_ortho(M, q)
    I = la.identity(3, q.field)
    if M.M == I or la.matmul(M.M, M.M) != I:
        raise NotInvolution("expected an element of order 2")
    qn, _ = q.normalized()
    v = fixed_axis(M.M, q.field)
    return InvolutionClass(q.field.square_class(qn(v)), v)


def representative_involution(d, q: DiagonalForm, budget: int = DEFAULT_BUDGET) -> GeneratorSet:
    """An involution whose class is d, built as P^{-1} diag(1,-1,-1) P."""
    k = q.field
    d = d.element if isinstance(d, SquareClass) else k(d)
    qn, _ = q.normalized()
    if not represents(qn, d):
        raise NotRepresentable(f"{d} is not in D({qn})")
    v = find_representation_vector(qn, d, budget)
    # C^T Gram(qn) C = <d, x, y>, so P = C^{-1} satisfies qn = <d, x, y> o P
    C, _ = orthogonal_completion(qn, v)
    M = conjugate_by(la.inverse(C), la.diag([1, -1, -1], k))
    return _certify(GroupSpec("C", 2), [M], q)


# ---------------------------------------------------------------------------
# Klein four


def _ab(qn: DiagonalForm):
    return -qn.diag[0], -qn.diag[1]


def s_action(pair, a, b, k: Field):
    x, y = (c.element for c in pair)
    return k.square_class(-b * x * y), k.square_class(a * b * x)


def t_action(pair, a, b, k: Field):
    x, y = (c.element for c in pair)
    return pair[0], k.square_class(-a * x * y)


def in_Q_ab(pair, a, b, k: Field) -> bool:
    x, y = (c.element for c in pair)
    return quaternion_isomorphic((a * x, b * y), (a, b), k)


def s3_orbit(pair, a, b, k: Field) -> list:
    seen = {pair}
    todo = [pair]
    while todo:
        p = todo.pop()
        for f in (s_action, t_action):
            r = f(p, a, b, k)
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return sorted(seen)


@dataclass(frozen=True)
class KleinInvariant:
    pair: tuple            # least pair of the orbit
    orbit: tuple
    axis_triple: tuple


def klein_invariant(S, q: DiagonalForm) -> KleinInvariant:
    k = q.field
    elems, I, _ = _subgroup_elements(S, q)
    invs = sorted((g for g in elems if g != I), key=_sort_key)
    if len(elems) != 4 or any(g @ g != I for g in invs):
        raise NotKleinFour(f"subgroup of order {len(elems)} is not a Klein four-group")
    qn, _ = q.normalized()
    a, b = _ab(qn)
    d = [k.square_class(qn(fixed_axis(g.M, k))) for g in invs]
    pairs = {(k.square_class(-d[i].element / a), k.square_class(-d[j].element / b))
             for i in range(3) for j in range(3) if i != j}
    orbit = sorted(pairs)
    assert orbit == s3_orbit(orbit[0], a, b, k)
    return KleinInvariant(orbit[0], tuple(orbit), tuple(sorted(d)))


def klein_same_class(S1, S2, q: DiagonalForm) -> bool:
    return klein_invariant(S1, q).orbit == klein_invariant(S2, q).orbit


def klein_representative(pair, q: DiagonalForm, budget: int = DEFAULT_BUDGET) -> GeneratorSet:
    """P^{-1} D0 P for q' = <-ax, -by, abxy>, D0 the diagonal sign matrices."""
    k = q.field
    qn, _ = q.normalized()
    a, b = _ab(qn)
    pair = tuple(c if isinstance(c, SquareClass) else k.square_class(c) for c in pair)
    if not in_Q_ab(pair, a, b, k):
        raise NotRepresentable(f"{tuple(map(str, pair))} is not in Q_(a,b) for a = {a}, b = {b}")
    x, y = (c.element for c in pair)
    target = TernaryForm((-a * x, -b * y, a * b * x * y), k)
    P = explicit_isometry(qn, target, budget).P
    D0 = [la.diag([1, -1, -1], k), la.diag([-1, -1, 1], k)]
    return _certify(KLEIN, [conjugate_by(P, M) for M in D0], q)


def klein_classes(q: DiagonalForm) -> list[tuple]:
    """Q_{a,b}/S3 as a list of least orbit pairs (finite fields only)."""
    k = q.field
    qn, _ = q.normalized()
    a, b = _ab(qn)
    cls = k.square_classes()
    members = [(x, y) for x in cls for y in cls if in_Q_ab((x, y), a, b, k)]
    reps = set()
    for p in members:
        reps.add(s3_orbit(p, a, b, k)[0])
    return sorted(reps)


# ---------------------------------------------------------------------------
# dihedral


@dataclass(frozen=True)
class DihedralClassDescriptor:
    n: int
    beta: object
    norm_form: BinaryForm      # <1, -beta_n>
    c: SquareClass             # least element of the coset c*C
    C_generator: SquareClass   # class of (alpha_n + 1)/2
    coset: tuple


def norm_form(n: int, k: Field) -> BinaryForm:
    nd = alpha_beta(n, k)
    if nd is None:
        raise NotEmbeddable(f"alpha_{n} is not in {k}")
    return BinaryForm((1, -nd.beta), k)


def _descriptor(n, k, c: SquareClass) -> DihedralClassDescriptor:
    nd = alpha_beta(n, k)
    nf = BinaryForm((1, -nd.beta), k)
    if not represents(nf, c.element):
        raise NotInNormGroup(f"{c} is not represented by {nf}")
    g = nd.half_alpha_plus_one_class
    coset = tuple(sorted({c, c * g}))
    return DihedralClassDescriptor(n, nd.beta, nf, coset[0], g, coset)


def dihedral_representative(c, n: int, q: DiagonalForm, budget: int = DEFAULT_BUDGET):
    """A dihedral subgroup of order 2n with invariant c.

    Returns (descriptor, generators); the generators are P^{-1} s P and
    P^{-1} t P for P an isometry onto <-beta, -c gamma, c beta gamma>.
    """
    if n < 3:
        raise ValueError("dihedral classes are parametrized this way for n >= 3")
    k = q.field
    c = c if isinstance(c, SquareClass) else k.square_class(c)
    desc = _descriptor(n, k, c)
    ref = dihedral_normal_form(n, q, budget)
    qn, _ = q.normalized()
    beta, gamma = ref.beta, ref.gamma
    ce = c.element
    target = TernaryForm((-beta, -ce * gamma, ce * beta * gamma), k)
    P = explicit_isometry(qn, target, budget).P
    mats = [conjugate_by(P, standard_s(ref.data)), conjugate_by(P, standard_t(k))]
    gens = _certify(GroupSpec("D", n), mats, q)
    return desc, gens


def dihedral_class(S, n: int, q: DiagonalForm, budget: int = DEFAULT_BUDGET) -> DihedralClassDescriptor:
    """Invariant of a dihedral subgroup of order 2n (n >= 3)."""
    k = q.field
    elems, I, gens = _subgroup_elements(S, q)
    orders = {g: _order(g, I) for g in elems}
    abelian = all(x @ y == y @ x for x in gens for y in gens)
    if identify(len(elems), abelian, list(orders.values())) != GroupSpec("D", n):
        raise NotDihedral(f"subgroup of order {len(elems)} is not dihedral of order {2 * n}")
    ref: DihedralNormalForm = dihedral_normal_form(n, q, budget)
    r = min((g for g in elems if orders[g] == n), key=_sort_key)
    rotations = set()
    x = I
    for _ in range(n):
        rotations.add(x)
        x = x @ r
    if not any(g.trace() == 1 + 2 * ref.data.alpha for g in rotations):
        raise NotDihedral("rotation part is not conjugate to the standard rotation")
    reflections = sorted((g for g in elems if g not in rotations), key=_sort_key)
    qn, _ = q.normalized()
    w = qn(fixed_axis(reflections[0].M, k))
    # reference reflection t has axis value -gamma, the one for class c has -c gamma
    return _descriptor(n, k, k.square_class(-w * ref.gamma))


def dihedral_same_class(c1, c2, n: int, q: DiagonalForm) -> bool:
    k = q.field
    d1 = _descriptor(n, k, c1 if isinstance(c1, SquareClass) else k.square_class(c1))
    d2 = _descriptor(n, k, c2 if isinstance(c2, SquareClass) else k.square_class(c2))
    return d1.coset == d2.coset


def norm_group(n: int, k: Field) -> list[SquareClass]:
    """D(<1, -beta_n>) over a finite field, by exhaustion."""
    nf = norm_form(n, k)
    return [c for c in k.square_classes() if represents(nf, c.element)]


def dihedral_classes(n: int, k: Field) -> list[SquareClass]:
    """D(<1, -beta_n>)/C as least coset representatives (finite fields only)."""
    return sorted({_descriptor(n, k, c).c for c in norm_group(n, k)})


# ---------------------------------------------------------------------------
# summary


@dataclass
class ConjugacySummary:
    group: GroupSpec
    form: DiagonalForm
    mode: str                      # "count" or "decision-only"
    count: int | None
    classes: list
    parametrization: str
    reasons: list[str] = dc_field(default_factory=list)


def conjugacy_summary(G: GroupSpec, q: DiagonalForm) -> ConjugacySummary:
    k = q.field
    _check_regular(G, k)
    dec = embeds(G, q)
    qn, _ = q.normalized()
    if not dec:
        return ConjugacySummary(G, q, "count", 0, [], "not embeddable", dec.reasons)
    finite = bool(k.p)
    if G.kind == "C" and G.n == 2:
        desc = f"D({qn}): square classes represented by {qn}"
        if finite:
            cls = [c for c in k.square_classes() if represents(qn, c.element)]
            return ConjugacySummary(G, q, "count", len(cls), cls, desc, dec.reasons)
        return ConjugacySummary(G, q, "decision-only", None, [], desc, dec.reasons)
    if G == KLEIN:
        a, b = _ab(qn)
        desc = f"Q_(a,b)/S3 with a = {a}, b = {b}"
        if finite:
            cls = klein_classes(q)
            return ConjugacySummary(G, q, "count", len(cls), cls, desc, dec.reasons)
        return ConjugacySummary(G, q, "decision-only", None, [], desc, dec.reasons)
    if G.kind == "D":
        nd = alpha_beta(G.n, k)
        desc = (f"D(<1, {-nd.beta}>)/C with C generated by the class "
                f"{nd.half_alpha_plus_one_class} of (alpha_{G.n} + 1)/2")
        if finite:
            cls = dihedral_classes(G.n, k)
            return ConjugacySummary(G, q, "count", len(cls), cls, desc, dec.reasons)
        return ConjugacySummary(G, q, "decision-only", None, [], desc, dec.reasons)
    # cyclic of order >= 3 and the polyhedral groups: a single class
    return ConjugacySummary(G, q, "count", 1, [G.label], "single class", dec.reasons)
