"""Which finite groups sit inside SO(q)(k), with verified generators.

Every decision works on the discriminant-1 rescaling of q; the rescaling has
literally the same special orthogonal group, so generators built for it are
returned unchanged as elements of SO(q).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from math import lcm

from . import linalg as la
from .cyclotomic import CyclotomicData, alpha_beta
from .errors import ClosureCapExceeded, NotEmbeddable, PIrregular
from .field import Field
from .quadform import (
    DEFAULT_BUDGET,
    DiagonalForm,
    IsometryWitness,
    TernaryForm,
    explicit_isometry,
    find_representation_vector,
    isometric,
    orthogonal_completion,
    q0,
    represents,
)
from .spectra import OrthoMatrix

CLOSURE_CAP = 400


@dataclass(frozen=True, order=True)
class GroupSpec:
    """Abstract group: kind C (cyclic of order n), D (dihedral of order 2n),
    or one of A4, S4, A5.  D with n = 2 is the Klein four-group."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind == "C" and self.n < 1:
            raise ValueError("cyclic groups need n >= 1")
        if self.kind == "D" and self.n < 2:
            raise ValueError("dihedral groups need n >= 2")
        if self.kind not in ("C", "D", "A4", "S4", "A5"):
            raise ValueError(f"unknown group kind {self.kind!r}")

    @classmethod
    def parse(cls, label: str) -> GroupSpec:
        label = label.strip().upper()
        if label in ("A4", "S4", "A5"):
            return cls(label)
        if label in ("V4", "K4"):
            return cls("D", 2)
        m = re.fullmatch(r"([CD])(\d+)", label)
        if not m:
            raise ValueError(f"unknown group {label!r}; use C<n>, D<2n>, A4, S4 or A5")
        kind, num = m.group(1), int(m.group(2))
        if kind == "D":
            if num % 2 or num < 4:
                raise ValueError(f"D{num}: dihedral labels give the order 2n >= 4")
            return cls("D", num // 2)
        return cls("C", num)

    @property
    def order(self) -> int:
        return {"C": self.n, "D": 2 * self.n, "A4": 12, "S4": 24, "A5": 60}[self.kind]

    @property
    def label(self) -> str:
        if self.kind == "C":
            return f"C{self.n}"
        if self.kind == "D":
            return f"D{2 * self.n}"
        return self.kind

    def __str__(self):
        return self.label


def Cyclic(n: int) -> GroupSpec:
    return GroupSpec("C", n)


def Dihedral(n: int) -> GroupSpec:
    return GroupSpec("D", n)


A4 = GroupSpec("A4")
S4 = GroupSpec("S4")
A5 = GroupSpec("A5")
KLEIN = Dihedral(2)


@dataclass
class Decision:
    group: GroupSpec
    form: DiagonalForm
    embeds: bool
    reasons: list[str]

    def __bool__(self):
        return self.embeds


def _check_regular(G: GroupSpec, k: Field):
    if k.p and G.order % k.p == 0:
        raise PIrregular(
            f"|{G}| = {G.order} is divisible by p = {k.p}; such a subgroup forces q "
            "to be isotropic and is outside the p-regular classification")


def embeds(G: GroupSpec, q: DiagonalForm) -> Decision:
    k = q.field
    _check_regular(G, k)
    qn, c = q.normalized()
    reasons = []
    if c != 1:
        reasons.append(f"rescaled by {c} to {qn} (discriminant 1)")
    if G.kind == "C" and G.n <= 2 or G == KLEIN:
        reasons.append("diagonal sign matrices always give C1, C2 and the Klein four-group")
        return Decision(G, q, True, reasons)
    if G.kind in ("C", "D"):
        nd = alpha_beta(G.n, k)
        if nd is None:
            reasons.append(f"alpha_{G.n} is not in {k}")
            return Decision(G, q, False, reasons)
        reasons.append(f"alpha_{G.n} = {nd.alpha} lies in {k}")
        ok = represents(qn, -nd.beta)
        reasons.append(f"{qn} {'represents' if ok else 'does not represent'} -beta_{G.n} = {-nd.beta}")
        return Decision(G, q, ok, reasons)
    iso = isometric(qn, q0(k))
    reasons.append(f"{qn} {'is' if iso else 'is not'} isometric to <1, 1, 1>")
    if G.kind == "A5":
        root5 = k.sqrt(5) is not None
        reasons.append(f"sqrt(5) {'lies' if root5 else 'does not lie'} in {k}")
        return Decision(G, q, iso and root5, reasons)
    return Decision(G, q, iso, reasons)


# ---------------------------------------------------------------------------
# explicit matrices


def standard_s(nd: CyclotomicData):
    k = nd.field
    a, b = nd.alpha, nd.beta
    return la.as_matrix([[1, 0, 0], [0, a, b], [0, 1, a]], k)


def standard_t(k: Field):
    return la.diag([-1, 1, -1], k)


def cube_generators(k: Field):
    """Order-4 and order-3 rotations of the cube with vertices (+-1, +-1, +-1)."""
    a = la.as_matrix([[0, -1, 0], [1, 0, 0], [0, 0, 1]], k)
    b = la.as_matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]], k)
    return a, b


def tetrahedron_generators(k: Field):
    a, b = cube_generators(k)
    return la.matmul(a, a), b


def icosahedron_generators(k: Field):
    """A half-turn and a fifth-turn of the icosahedron with vertices
    (+-phi, +-1, 0), (0, +-phi, +-1), (+-1, 0, +-phi); needs sqrt(5) in k."""
    r5 = k.sqrt(5)
    if r5 is None:
        raise NotEmbeddable(f"sqrt(5) is not in {k}")
    phi = (1 + r5) / 2
    iphi = phi - 1
    h = k(1) / 2
    z = la.as_matrix([[h, -phi * h, iphi * h],
                      [phi * h, iphi * h, -h],
                      [iphi * h, h, phi * h]], k)
    x = la.diag([-1, -1, 1], k)
    return x, z


@dataclass(frozen=True)
class DihedralNormalForm:
    """q rewritten as <-beta, -gamma, beta*gamma>.

    `basis` has columns c1, c2, c3 with B^T Gram(q) B equal to that diagonal;
    `witness.P` is its inverse, so q = <-beta, -gamma, beta*gamma> o P.
    """

    data: CyclotomicData
    gamma: object
    basis: tuple
    witness: IsometryWitness

    @property
    def beta(self):
        return self.data.beta

    def to_form(self, M):
        """Conjugate a matrix from normal-form coordinates back to q."""
        return la.matmul(la.matmul(self.basis, M), self.witness.P)


def dihedral_normal_form(n: int, q: DiagonalForm, budget: int = DEFAULT_BUDGET) -> DihedralNormalForm:
    k = q.field
    qn, _ = q.normalized()
    nd = alpha_beta(n, k)
    if nd is None or not represents(qn, -nd.beta):
        raise NotEmbeddable(f"D{2 * n} does not embed in SO({q})")
    v = find_representation_vector(qn, -nd.beta, budget)
    C, vals = orthogonal_completion(qn, v)
    cols = la.columns(C)
    gamma = -vals[1]
    # prefer the canonical square-class representative for gamma
    g = k.square_class(gamma).element
    r = k.sqrt(g / gamma)
    cols[1] = tuple(r * x for x in cols[1])
    gamma = g
    # disc 1 forces vals[2] = beta*gamma times a square
    r3 = k.sqrt(nd.beta * gamma / vals[2])
    cols[2] = tuple(r3 * x for x in cols[2])
    B = la.from_columns(cols)
    target = TernaryForm((-nd.beta, -gamma, nd.beta * gamma), k)
    w = IsometryWitness(la.inverse(B), qn, target)
    assert w.verify()
    return DihedralNormalForm(nd, gamma, B, w)


def conjugate_by(P, M):
    """P^{-1} M P."""
    return la.matmul(la.matmul(la.inverse(P), M), P)


# ---------------------------------------------------------------------------
# certificates


# generator words (tuples of generator indices) and the exponent that kills them
_PRESENTATIONS = {
    "C": lambda n: [((0,), n)],
    "D": lambda n: [((0,), n), ((1,), 2), ((0, 1), 2)],
    "A4": lambda n: [((0,), 2), ((1,), 3), ((0, 1), 3)],
    "S4": lambda n: [((0,), 4), ((1,), 3), ((0, 1), 2)],
    "A5": lambda n: [((0,), 2), ((1,), 5), ((0, 1), 3)],
}
_GEN_NAMES = {"C": "s", "D": "st", "A4": "xy", "S4": "ab", "A5": "xz"}


@dataclass
class SubgroupReport:
    order: int
    iso_type: GroupSpec | None
    is_p_regular: bool
    involutions: int
    elements: list = dc_field(repr=False, default_factory=list)


@dataclass
class GeneratorSet:
    group: GroupSpec
    gens: list[OrthoMatrix]
    relations: dict[str, bool]
    order: int
    normal_form: DihedralNormalForm | None = None

    @property
    def form(self) -> DiagonalForm:
        return self.gens[0].form


def closure(gens, identity, cap: int = CLOSURE_CAP):
    """All products of `gens` (hashable, supporting @), breadth first."""
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(f"more than {cap} elements generated")
        frontier = nxt
    return seen


def identify(order: int, abelian: bool, element_orders: list[int]) -> GroupSpec | None:
    """Pick the candidate type from (order, abelian?, exponent, involutions)."""
    exponent = lcm(*element_orders) if element_orders else 1
    inv = sum(1 for o in element_orders if o == 2)
    biggest = max(element_orders, default=1)
    if abelian:
        if exponent == order:
            return Cyclic(order)
        if order == 4 and exponent == 2:
            return KLEIN
        return None
    if order == 12 and inv == 3 and biggest == 3:
        return A4
    if order == 24 and inv == 9 and biggest == 4:
        return S4
    if order == 60 and inv == 15 and biggest == 5:
        return A5
    if order % 2 == 0:
        n = order // 2
        if n >= 3 and biggest == n and inv == n + (1 if n % 2 == 0 else 0):
            return Dihedral(n)
    return None


def _orders(elements, identity):
    out = []
    for g in elements:
        e, x = 1, g
        while x != identity:
            x = x @ g
            e += 1
        out.append(e)
    return out


def verify_subgroup(gens, q: DiagonalForm, cap: int = CLOSURE_CAP) -> SubgroupReport:
    k = q.field
    gens = [g if isinstance(g, OrthoMatrix) else OrthoMatrix(g, q) for g in gens]
    I = OrthoMatrix(la.identity(3, k), q)
    elems = closure(gens, I, cap)
    abelian = all(a @ b == b @ a for a in gens for b in gens)
    orders = _orders(elems, I)
    iso = identify(len(elems), abelian, orders)
    regular = not k.p or len(elems) % k.p != 0
    return SubgroupReport(len(elems), iso, regular, orders.count(2), sorted(elems, key=_mkey))


def _mkey(g):
    return tuple(str(x) for row in g.M for x in row)


def check_relations(G: GroupSpec, mats) -> dict[str, bool]:
    k_one = mats[0][0][0] ** 0
    n = len(mats[0])
    I = tuple(tuple(k_one if i == j else k_one * 0 for j in range(n)) for i in range(n))
    names = _GEN_NAMES[G.kind]
    out = {}
    for word, e in _PRESENTATIONS[G.kind](G.n):
        W = I
        for i in word:
            W = la.matmul(W, mats[i])
        label = "".join(names[i] for i in word)
        label = f"({label})^{e}" if len(word) > 1 else f"{label}^{e}"
        out[label] = la.matpow(W, e) == I
    return out


def _certify(G: GroupSpec, mats, q: DiagonalForm, normal_form=None) -> GeneratorSet:
    gens = [OrthoMatrix(M, q) for M in mats]
    if G.kind == "C" and G.n <= 2 or G == KLEIN:
        rel = {}
        for i, g in enumerate(gens):
            rel[f"g{i}^{G.order if G.kind == 'C' else 2}"] = (g ** (G.order if G.kind == "C" else 2)).is_identity()
    else:
        rel = check_relations(G, [g.M for g in gens])
    rep = verify_subgroup(gens, q)
    if not all(rel.values()) or rep.order != G.order or rep.iso_type != G:
        raise RuntimeError(f"internal error: generators for {G} failed verification: {rel}, {rep}")
    return GeneratorSet(G, gens, rel, rep.order, normal_form)


def synthesize_generators(G: GroupSpec, q: DiagonalForm, budget: int = DEFAULT_BUDGET) -> GeneratorSet:
    """Generators of a copy of G inside SO(q)(k), checked before returning."""
    dec = embeds(G, q)
    if not dec:
        raise NotEmbeddable(f"{G} does not embed in SO({q}): " + "; ".join(dec.reasons))
    k = q.field
    qn, _ = q.normalized()
    if G.kind == "C" and G.n == 1:
        return _certify(G, [la.identity(3, k)], q)
    if G.kind == "C" and G.n == 2:
        return _certify(G, [la.diag([1, -1, -1], k)], q)
    if G == KLEIN:
        return _certify(G, [la.diag([1, -1, -1], k), la.diag([-1, -1, 1], k)], q)
    if G.kind in ("C", "D"):
        nf = dihedral_normal_form(G.n, q, budget)
        s = nf.to_form(standard_s(nf.data))
        mats = [s] if G.kind == "C" else [s, nf.to_form(standard_t(k))]
        return _certify(G, mats, q, nf)
    P = explicit_isometry(qn, q0(k), budget).P
    if G == S4:
        raw = cube_generators(k)
    elif G == A4:
        raw = tetrahedron_generators(k)
    else:
        raw = icosahedron_generators(k)
    return _certify(G, [conjugate_by(P, M) for M in raw], q)
