"""Brute-force ground truth over small prime fields.

SO(q)(F_p) is enumerated column by column, turned into an integer
multiplication table, and every 2-generated subgroup is found and sorted
into conjugacy classes.  The census is then compared with what the
structural functions in this package predict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .conjugacy import (
    conjugacy_summary,
    dihedral_class,
    involution_class,
    klein_invariant,
)
from .embedding import KLEIN, Cyclic, Dihedral, GroupSpec, A4, A5, S4, embeds, identify, verify_subgroup
from .errors import BudgetExceeded, FieldMismatch
from .field import sqrt_mod
from .quadform import DiagonalForm
from .spectra import OrthoMatrix, p_irregular_isotropy_check

MAX_PRIME = 13


# ---------------------------------------------------------------------------
# enumeration


def _vectors(p):
    return [(x, y, z) for x in range(p) for y in range(p) for z in range(p)]


def _enumerate_ints(d, p):
    """All columns (c1, c2, c3) with q(ci) = di, B(ci, cj) = 0, det = 1."""
    def qv(v):
        return (d[0] * v[0] * v[0] + d[1] * v[1] * v[1] + d[2] * v[2] * v[2]) % p

    def bil(u, v):
        return (d[0] * u[0] * v[0] + d[1] * u[1] * v[1] + d[2] * u[2] * v[2]) % p

    spheres = {}
    for v in _vectors(p):
        spheres.setdefault(qv(v), []).append(v)
    out = []
    for c1 in spheres.get(d[0], []):
        for c2 in spheres.get(d[1], []):
            if bil(c1, c2):
                continue
            # the orthogonal complement of c1, c2 is spanned by w = G^{-1}(c1 x c2)
            x = (c1[1] * c2[2] - c1[2] * c2[1],
                 c1[2] * c2[0] - c1[0] * c2[2],
                 c1[0] * c2[1] - c1[1] * c2[0])
            w = tuple(x[i] * pow(d[i], -1, p) % p for i in range(3))
            qw = qv(w)
            lam = sqrt_mod(d[2] * pow(qw, -1, p) % p, p)
            if lam is None:
                continue
            for s in {lam, (-lam) % p}:
                c3 = tuple(s * t % p for t in w)
                M = ((c1[0], c2[0], c3[0]), (c1[1], c2[1], c3[1]), (c1[2], c2[2], c3[2]))
                det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                       - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                       + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) % p
                if det == 1:
                    out.append(M)
    return sorted(out)


def _check_form(q: DiagonalForm):
    p = q.field.p
    if not p:
        raise FieldMismatch("the oracle works over a finite prime field")
    if p > MAX_PRIME:
        raise BudgetExceeded(f"p = {p} exceeds the oracle limit {MAX_PRIME}")
    if q.dim != 3:
        raise ValueError("the oracle needs a ternary form")
    return p


def enumerate_group(q: DiagonalForm) -> list[OrthoMatrix]:
    """Every element of SO(q)(F_p), in lexicographic order of entries."""
    return list(_group(q).elements)


@dataclass(frozen=True, eq=False)
class _Group:
    p: int
    form: DiagonalForm
    ints: np.ndarray          # (N, 3, 3)
    elements: tuple
    table: np.ndarray         # table[i, j] = index of e_i e_j
    inv: np.ndarray
    orders: np.ndarray
    conj: np.ndarray          # conj[g, h] = index of g^{-1} h g
    identity: int


def _codes(A, p):
    w = p ** np.arange(8, -1, -1, dtype=np.int64)
    return A.reshape(*A.shape[:-2], 9) @ w


@lru_cache(maxsize=16)
def _group(q: DiagonalForm) -> _Group:
    p = _check_form(q)
    d = [int(x.value) for x in q.diag]
    mats = _enumerate_ints(d, p)
    A = np.array(mats, dtype=np.int64)
    N = len(A)
    codes = _codes(A, p)
    assert np.all(np.diff(codes) > 0)
    table = np.empty((N, N), dtype=np.int32)
    step = max(1, 200000 // (9 * N))
    for i in range(0, N, step):
        prod = np.einsum("aij,bjk->abik", A[i:i + step], A) % p
        table[i:i + step] = np.searchsorted(codes, _codes(prod, p))
    e = int(np.searchsorted(codes, _codes(np.eye(3, dtype=np.int64), p)))
    inv = np.argmax(table == e, axis=1).astype(np.int32)
    orders = np.zeros(N, dtype=np.int32)
    cur = np.arange(N, dtype=np.int32)
    idx = np.arange(N)
    for k in range(1, 2 * p + 3):
        orders[(cur == e) & (orders == 0)] = k
        cur = table[cur, idx]
    assert np.all(orders > 0)
    left = table[inv, :]
    conj = table[left, idx[:, None]]
    elements = tuple(OrthoMatrix(M, q) for M in mats)
    return _Group(p, q, A, elements, table, inv, orders, conj, e)


# ---------------------------------------------------------------------------
# census


@dataclass
class SubgroupClass:
    order: int
    iso_type: GroupSpec | None
    p_irregular: bool
    generators: tuple                 # element indices generating a representative
    members: list = dc_field(repr=False, default_factory=list)   # sorted index tuples, one per conjugate

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        if self.p_irregular:
            return f"p-irregular({self.order})"
        return self.iso_type.label if self.iso_type else f"unidentified({self.order})"


@dataclass
class CensusEntry:
    label: str
    iso_type: GroupSpec | None
    p_irregular: bool
    order: int
    subgroup_count: int
    conjugacy_class_count: int
    representatives: list              # list of generator lists (OrthoMatrix)


@dataclass
class GroupCensus:
    p: int
    form: DiagonalForm
    group_order: int
    entries: list[CensusEntry]
    classes: list[SubgroupClass] = dc_field(repr=False)

    def entry(self, G: GroupSpec) -> CensusEntry | None:
        return next((e for e in self.entries if e.iso_type == G and not e.p_irregular), None)

    def summary(self) -> dict:
        return {e.label: (e.subgroup_count, e.conjugacy_class_count) for e in self.entries}


def _closure(T, gens, e):
    seen = {e}
    todo = [e]
    while todo:
        h = todo.pop()
        row = T[h]
        for g in gens:
            z = row[g]
            if z not in seen:
                seen.add(z)
                todo.append(z)
    return tuple(sorted(seen))


def _orbit(grp: _Group, H) -> list:
    rows = np.sort(grp.conj[:, list(H)], axis=1)
    return [tuple(int(x) for x in r) for r in np.unique(rows, axis=0)]


def _type_of(grp: _Group, H):
    T = grp.table
    sub = T[np.ix_(H, H)]
    abelian = bool(np.array_equal(sub, sub.T))
    return identify(len(H), abelian, [int(grp.orders[h]) for h in H])


@lru_cache(maxsize=16)
def subgroup_census(q: DiagonalForm) -> GroupCensus:
    grp = _group(q)
    p, N, e = grp.p, len(grp.elements), grp.identity
    T = grp.table.tolist()
    # one generator for each conjugacy class of cyclic subgroups
    cyclic = {}
    for x in range(N):
        C = _closure(T, [x], e)
        if C not in cyclic:
            cyclic[C] = x
    seen_cyc, xs = set(), []
    for C, x in sorted(cyclic.items()):
        if C in seen_cyc:
            continue
        seen_cyc.update(_orbit(grp, C))
        xs.append(x)
    # every 2-generated subgroup is conjugate to some <x, y> with x from xs
    found = {}
    for x in xs:
        for y in range(N):
            H = _closure(T, [x, y], e)
            if H not in found:
                found[H] = (x, y)
    classes = []
    done = set()
    for H in sorted(found, key=lambda h: (len(h), h)):
        if H in done:
            continue
        orbit = _orbit(grp, H)
        done.update(orbit)
        irregular = len(H) % p == 0
        iso = None if irregular else _type_of(grp, H)
        x, y = found[H]
        if y in _closure(T, [x], e):
            gens = (x,)
        elif x in _closure(T, [y], e):
            gens = (y,)
        else:
            gens = (x, y)
        classes.append(SubgroupClass(len(H), iso, irregular, gens, orbit))
    entries = {}
    for c in classes:
        ent = entries.get(c.label)
        if ent is None:
            ent = entries[c.label] = CensusEntry(c.label, c.iso_type, c.p_irregular, c.order, 0, 0, [])
        ent.subgroup_count += c.size
        ent.conjugacy_class_count += 1
        ent.representatives.append([grp.elements[i] for i in c.generators])
    ordered = sorted(entries.values(), key=lambda t: (t.order, t.label))
    return GroupCensus(p, q, N, ordered, classes)


def verify_representatives(census: GroupCensus) -> bool:
    """Re-close each representative with exact arithmetic and compare."""
    for c in census.classes:
        grp = _group(census.form)
        rep = verify_subgroup([grp.elements[i] for i in c.generators], census.form, cap=census.group_order)
        if rep.order != c.order or (not c.p_irregular and rep.iso_type != c.iso_type):
            return False
    return True


# ---------------------------------------------------------------------------
# cross check


@dataclass
class CheckRow:
    name: str
    expected: str
    observed: str
    passed: bool


@dataclass
class CrossCheckReport:
    p: int
    form: DiagonalForm
    rows: list[CheckRow]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rows)

    def table(self) -> str:
        w = max(len(r.name) for r in self.rows)
        lines = [f"oracle cross-check over F{self.p}, q = {self.form}"]
        for r in self.rows:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"{mark}  {r.name:<{w}}  expected {r.expected}, observed {r.observed}")
        lines.append(f"{sum(r.passed for r in self.rows)}/{len(self.rows)} passed")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "form": [str(x) for x in self.form.diag],
            "ok": self.ok,
            "rows": [vars(r) for r in self.rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def candidate_types(p: int) -> list[GroupSpec]:
    """p-regular finite subgroup types that can occur in PGL2(F_p)."""
    out = [Cyclic(n) for n in range(1, p + 2) if n % p]
    out += [Dihedral(n) for n in range(2, p + 2) if n % p and (2 * n) % p]
    out += [G for G in (A4, S4, A5) if G.order % p]
    return out


def _invariant(G: GroupSpec, gens, q):
    if G == Cyclic(2):
        return involution_class(gens[0], q).d
    if G == KLEIN:
        return klein_invariant(gens, q).orbit
    return dihedral_class(gens, G.n, q).c


def cross_check(q: DiagonalForm) -> CrossCheckReport:
    census = subgroup_census(q)
    grp = _group(q)
    p = census.p
    rows = []

    def add(name, expected, observed):
        rows.append(CheckRow(name, str(expected), str(observed), expected == observed))

    add("|SO(q)| = p(p^2 - 1)", p * (p * p - 1), census.group_order)
    add("representatives re-verify exactly", True, verify_representatives(census))

    cands = candidate_types(p)
    for G in cands:
        ent = census.entry(G)
        add(f"{G.label} embeds", bool(embeds(G, q)), ent is not None)
        add(f"{G.label} classes", conjugacy_summary(G, q).count, ent.conjugacy_class_count if ent else 0)

    stray = [c for c in census.classes if not c.p_irregular and c.iso_type not in cands]
    add("p-regular subgroups of unexpected type", 0, len(stray))

    # the invariants separate classes and are constant on each class
    for G in [Cyclic(2), KLEIN] + [Dihedral(n) for n in range(3, p + 2) if n % p and (2 * n) % p]:
        cls = [c for c in census.classes if c.iso_type == G and not c.p_irregular]
        if not cls:
            continue
        invs = []
        stable = True
        for c in cls:
            vals = set()
            for H in c.members[:3]:
                gens = _gens_in(grp, H, c, G)
                vals.add(_invariant(G, gens, q))
            stable &= len(vals) == 1
            invs.append(vals.pop())
        add(f"{G.label} invariant separates classes", len(cls), len(set(invs)))
        add(f"{G.label} invariant constant on classes", True, stable)

    # isotropy witness for every subgroup of order divisible by p
    bad = total = 0
    for c in census.classes:
        if not c.p_irregular:
            continue
        for H in c.members:
            total += 1
            g = next(h for h in H if grp.orders[h] == p)
            v = p_irregular_isotropy_check(grp.elements[g])
            if q(v) != 0 or not any(x != 0 for x in v):
                bad += 1
    add(f"isotropy witness for all {total} p-irregular subgroups", 0, bad)
    return CrossCheckReport(p, q, rows)


def _gens_in(grp: _Group, H, c: SubgroupClass, G: GroupSpec):
    """Generators for the conjugate H of a class representative."""
    T = grp.table
    rep = set(_closure(T.tolist(), list(c.generators), grp.identity))
    Hs = set(H)
    for g in range(len(grp.elements)):
        if {int(grp.conj[g, h]) for h in rep} == Hs:
            return [grp.elements[int(grp.conj[g, x])] for x in c.generators]
    raise AssertionError("conjugate not found")


def group_is_closed(q: DiagonalForm, sample: int | None = None, seed: int = 0) -> bool:
    """Closure under products and inverses, exhaustively or on a random sample."""
    grp = _group(q)
    N = len(grp.elements)
    A, p = grp.ints, grp.p
    codes = _codes(A, p)
    if sample is None:
        i, j = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
        i, j = i.ravel(), j.ravel()
    else:
        rng = np.random.default_rng(seed)
        i, j = rng.integers(0, N, sample), rng.integers(0, N, sample)
    prod = np.einsum("aij,ajk->aik", A[i], A[j]) % p
    ok = np.isin(_codes(prod, p), codes).all()
    invs = np.einsum("aij,ajk->aik", A, A[grp.inv]) % p
    return bool(ok and (invs == np.eye(3, dtype=np.int64)).all())
