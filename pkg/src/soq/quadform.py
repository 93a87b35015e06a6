"""Diagonal quadratic forms: local invariants, isotropy, representation and
constructive isometries over Q and F_p.

Decisions over Q go through Hilbert symbols (Hasse-Minkowski); witnesses are
searched for only after the decision says one exists, so a search failure is
always reported as SearchBudgetExceeded and never as a wrong "no".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import ClassVar
from fractions import Fraction
from math import gcd, isqrt, prod

from . import linalg as la
from .errors import (
    DegenerateInput,
    FieldMismatch,
    InvalidPlace,
    NotIsometric,
    NotRepresentable,
    SearchBudgetExceeded,
)
from .field import QQ, Field, Residue, SquareClass, factorize, is_prime, legendre_symbol, reduce_square_class

DEFAULT_BUDGET = 5000


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class DiagonalForm:
    """The form sum(d_i x_i^2).  Entries are coerced into `field`."""

    diag: tuple
    field: Field = QQ
    # (gram, P) when the form came out of diagonalize(); P^T gram P = diag
    provenance: tuple | None = dc_field(default=None, compare=False, repr=False)

    _dim: ClassVar[int | None] = None

    def __post_init__(self):
        d = tuple(self.field(x) for x in self.diag)
        object.__setattr__(self, "diag", d)
        if not d or any(x == 0 for x in d):
            raise DegenerateInput(f"degenerate form <{', '.join(map(str, d))}>")
        if self._dim is not None and len(d) != self._dim:
            raise ValueError(f"{type(self).__name__} needs {self._dim} entries, got {len(d)}")

    @property
    def dim(self) -> int:
        return len(self.diag)

    def __call__(self, v):
        return sum((d * x * x for d, x in zip(self.diag, v)), start=self.field.zero)

    def bilinear(self, u, v):
        return sum((d * x * y for d, x, y in zip(self.diag, u, v)), start=self.field.zero)

    def gram(self):
        return la.diag(self.diag, self.field)

    def disc(self) -> SquareClass:
        return reduce_square_class(prod(self.diag, start=self.field.one), self.field)

    def scaled(self, c) -> DiagonalForm:
        c = self.field(c)
        return make_form([c * x for x in self.diag], self.field)

    def normalized(self) -> tuple[DiagonalForm, object]:
        """A scalar multiple with trivial discriminant, and the scalar used."""
        c = self.disc().element
        return self.scaled(c), c

    def perp(self, other) -> DiagonalForm:
        other = other.diag if isinstance(other, DiagonalForm) else tuple(other)
        return make_form(self.diag + tuple(other), self.field)

    def signature(self) -> tuple[int, int]:
        if self.field.p:
            raise ValueError("signature only makes sense over Q")
        pos = sum(1 for x in self.diag if x > 0)
        return pos, self.dim - pos

    def __str__(self):
        return "<" + ", ".join(str(x) for x in self.diag) + ">"


class TernaryForm(DiagonalForm):
    _dim = 3

    def __init__(self, diag, field: Field = QQ, provenance=None):
        super().__init__(tuple(diag), field, provenance)


class BinaryForm(DiagonalForm):
    _dim = 2

    def __init__(self, diag, field: Field = QQ, provenance=None):
        super().__init__(tuple(diag), field, provenance)


def make_form(entries, field: Field = QQ, provenance=None) -> DiagonalForm:
    entries = tuple(entries)
    cls = {3: TernaryForm, 2: BinaryForm}.get(len(entries))
    if cls is None:
        return DiagonalForm(entries, field, provenance)
    return cls(entries, field, provenance)


Q0 = TernaryForm((1, 1, 1))


def q0(field: Field = QQ) -> TernaryForm:
    """The sum of three squares."""
    return TernaryForm((1, 1, 1), field)


# ---------------------------------------------------------------------------
# places and local symbols


@dataclass(frozen=True)
class Place:
    """A place of Q: the real place (prime is None) or a prime p."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise InvalidPlace(f"{self.prime} is not prime")

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


REAL = Place()


def as_place(v) -> Place:
    if isinstance(v, Place):
        return v
    if v is None or v in ("inf", "oo", "R"):
        return REAL
    return Place(int(v))


def _rational(x) -> Fraction:
    if isinstance(x, Residue):
        raise FieldMismatch("local symbols are only defined over Q")
    x = Fraction(x)
    if x == 0:
        raise DegenerateInput("zero argument")
    return x


def _split(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, v=REAL) -> int:
    """(a, b)_v for nonzero rationals a, b."""
    a, b = _rational(a), _rational(b)
    place = as_place(v)
    if place.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = place.prime
    # n*d lies in the square class of n/d
    al, u = _split(a.numerator * a.denominator, p)
    be, w = _split(b.numerator * b.denominator, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(w) + al * omega(w) + be * omega(u)
        return -1 if e % 2 else 1
    s = -1 if (al * be * ((p - 1) // 2)) % 2 else 1
    if be % 2:
        s *= legendre_symbol(u, p)
    if al % 2:
        s *= legendre_symbol(w, p)
    return s


def is_local_square(x, v) -> bool:
    x = _rational(x)
    place = as_place(v)
    if place.is_real:
        return x > 0
    p = place.prime
    e, u = _split(x.numerator * x.denominator, p)
    if e % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre_symbol(u, p) == 1


def hasse_invariant(q: DiagonalForm, v) -> int:
    """Product of (d_i, d_j)_v over i < j."""
    _require_rational(q)
    d = q.diag
    out = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            out *= hilbert_symbol(d[i], d[j], v)
    return out


def relevant_primes(*forms: DiagonalForm, extra=()) -> list[int]:
    """2 together with every prime dividing a numerator or denominator."""
    bound = forms[0].field.factor_bound if forms else QQ.factor_bound
    ps = {2}
    for x in [e for f in forms for e in f.diag] + [Fraction(e) for e in extra]:
        ps.update(factorize(x.numerator * x.denominator, bound))
    return sorted(ps)


def _locally_isotropic(entries, place: Place) -> bool:
    n = len(entries)
    if place.is_real:
        return any(e > 0 for e in entries) and any(e < 0 for e in entries)
    if n == 1:
        return False
    d = prod(entries, start=Fraction(1))
    if n == 2:
        return is_local_square(-d, place)
    c = 1
    for i in range(n):
        for j in range(i + 1, n):
            c *= hilbert_symbol(entries[i], entries[j], place)
    if n == 3:
        return c == hilbert_symbol(-1, -d, place)
    if n == 4:
        return not is_local_square(d, place) or c == hilbert_symbol(-1, -1, place)
    return True


def _require_rational(q: DiagonalForm):
    if q.field.p:
        raise FieldMismatch("this operation is only defined over Q")


# ---------------------------------------------------------------------------
# decisions


def is_isotropic(q: DiagonalForm) -> bool:
    k = q.field
    d = q.diag
    if q.dim == 1:
        return False
    if q.dim == 2:
        return k.is_square(-d[0] * d[1])
    if k.p:
        return True
    places = [REAL] + [Place(p) for p in relevant_primes(q)]
    return all(_locally_isotropic(d, v) for v in places)


def represents(q: DiagonalForm, d) -> bool:
    """Whether q(v) = d for some v; d must be nonzero."""
    k = q.field
    d = k(d)
    if d == 0:
        raise DegenerateInput("representing 0 is an isotropy question")
    if q.dim == 1:
        return k.is_square(d / q.diag[0])
    if k.p:
        # nondegenerate forms of dimension >= 2 over a finite field are universal
        return True
    if is_isotropic(q):
        return True
    return is_isotropic(q.perp([-d]))


def isometric(q1: DiagonalForm, q2: DiagonalForm) -> bool:
    if q1.field != q2.field:
        raise FieldMismatch(f"forms over {q1.field} and {q2.field}")
    if q1.dim != q2.dim or q1.disc() != q2.disc():
        return False
    if q1.field.p:
        return True
    if q1.signature() != q2.signature():
        return False
    return all(hasse_invariant(q1, Place(p)) == hasse_invariant(q2, Place(p))
               for p in relevant_primes(q1, q2))


def quaternion_isomorphic(ab, cd, field: Field = QQ) -> bool:
    """Compare (a,b) and (c,d) through the forms <-a,-b,ab> and <-c,-d,cd>."""
    a, b = (field(x) for x in ab)
    c, d = (field(x) for x in cd)
    if 0 in (a, b, c, d):
        raise DegenerateInput("quaternion algebra with a zero parameter")
    return isometric(TernaryForm((-a, -b, a * b), field), TernaryForm((-c, -d, c * d), field))


# ---------------------------------------------------------------------------
# witnesses


def _unit(n, i, k, scale):
    return tuple(scale if j == i else k.zero for j in range(n))


def _rationals_by_height(budget: int):
    """Nonnegative rationals in increasing max(|num|, den) order."""
    yield Fraction(0)
    for h in range(1, budget + 1):
        for b in range(1, h + 1):
            if gcd(h, b) == 1:
                yield Fraction(h, b)
        for a in range(1, h):
            if gcd(a, h) == 1:
                yield Fraction(a, h)


def _conic_zero(coeffs, budget: int):
    """Nonzero rational (x, y, z) with a x^2 + b y^2 + c z^2 = 0 over Q.

    Each coefficient is first written as s * r^2 with s a squarefree
    integer, then integer points are scanned in increasing height, solving
    for the coordinate with the smallest squarefree part.
    """
    parts = []
    for x in coeffs:
        n = x.numerator * x.denominator
        s = 1 if n > 0 else -1
        m = 1
        for p, e in factorize(n).items():
            s *= p ** (e % 2)
            m *= p ** (e // 2)
        # x = s * (m / den)^2
        parts.append((s, Fraction(m, x.denominator)))
    order = sorted(range(3), key=lambda i: (abs(parts[i][0]), i))
    i1, i2, i3 = order[2], order[1], order[0]
    s1, s2, s3 = parts[i1][0], parts[i2][0], parts[i3][0]
    for h in range(1, budget + 1):
        for X1, X2 in _height_shell(h):
            num = -(s1 * X1 * X1 + s2 * X2 * X2)
            if num == 0:
                X3 = 0
            elif num % s3 or (num // s3) < 0:
                continue
            else:
                t = num // s3
                X3 = isqrt(t)
                if X3 * X3 != t:
                    continue
            big = [0, 0, 0]
            big[i1], big[i2], big[i3] = X1, X2, X3
            return tuple(Fraction(X) / parts[i][1] for i, X in enumerate(big))
    raise SearchBudgetExceeded(f"no point on conic {coeffs} below height {budget}")


def _height_shell(h: int):
    for b in range(h + 1):
        yield h, b
    for a in range(h):
        yield a, h


def find_isotropic_vector(q: DiagonalForm, budget: int = DEFAULT_BUDGET):
    """A nonzero v with q(v) = 0."""
    k = q.field
    if not is_isotropic(q):
        raise NotRepresentable(f"{q} is anisotropic")
    d = q.diag
    if q.dim == 2:
        v = (k.sqrt(-d[1] / d[0]), k.one)
    elif k.p:
        v = None
        for x in k.elements():
            for y in k.elements():
                r = k.sqrt(-(d[0] * x * x + d[1] * y * y) / d[2])
                if r is not None and (x, y, r) != (0, 0, 0):
                    v = (x, y, r)
                    break
            if v:
                break
        v = v + (k.zero,) * (q.dim - 3)
    elif q.dim == 3:
        v = _conic_zero(d, budget)
    else:
        if not is_isotropic(make_form(d[:3], k)):
            raise NotImplementedError("isotropic vectors beyond a ternary subform")
        v = _conic_zero(d[:3], budget) + (k.zero,) * (q.dim - 3)
    assert q(v) == 0 and any(x != 0 for x in v)
    return tuple(v)


def _hyperbolic_solve(q: DiagonalForm, v, d):
    """Given q(v) = 0, v != 0, return w with q(w) = d."""
    k = q.field
    i = next(i for i, (di, vi) in enumerate(zip(q.diag, v)) if di * vi != 0)
    b = q.diag[i] * v[i]
    t = (d - q.diag[i]) / (2 * b)
    return tuple(t * x + (k.one if j == i else k.zero) for j, x in enumerate(v))


def find_representation_vector(q: DiagonalForm, d, budget: int = DEFAULT_BUDGET):
    """An exact vector v with q(v) = d.

    d = 0 is routed to find_isotropic_vector.  Representability is decided
    first, so NotRepresentable and SearchBudgetExceeded never overlap.
    """
    k = q.field
    d = k(d)
    if d == 0:
        return find_isotropic_vector(q, budget)
    if not represents(q, d):
        raise NotRepresentable(f"{q} does not represent {d}")
    n = q.dim
    for i, di in enumerate(q.diag):
        r = k.sqrt(d / di)
        if r is not None:
            return _unit(n, i, k, r)
    if is_isotropic(q):
        v = _hyperbolic_solve(q, find_isotropic_vector(q, budget), d)
    elif k.p:
        # anisotropic binary over F_p
        d1, d2 = q.diag
        v = next((x, r) for x in k.elements()
                 for r in [k.sqrt((d - d1 * x * x) / d2)] if r is not None)
    elif n == 2:
        x, y, z = _conic_zero((q.diag[0], q.diag[1], -d), budget)
        v = (x / z, y / z)
    else:
        head = make_form(q.diag[:-1], k)
        last = q.diag[-1]
        v = None
        for r in _rationals_by_height(budget):
            t = d - last * r * r
            if t != 0 and represents(head, t):
                v = find_representation_vector(head, t, budget) + (r,)
                break
        if v is None:
            raise SearchBudgetExceeded(f"no vector with {q}(v) = {d} below height {budget}")
    v = tuple(k(x) for x in v)
    assert q(v) == d
    return v


# ---------------------------------------------------------------------------
# change of basis


@dataclass(frozen=True)
class IsometryWitness:
    """P with P^T Gram(target) P = Gram(source), i.e. source = target o P."""

    P: tuple
    source: DiagonalForm | None = None
    target: DiagonalForm | None = None

    def verify(self) -> bool:
        if self.source is None or self.target is None:
            return True
        return la.congruent(self.P, self.target.gram()) == self.source.gram()


def _diag_gram(G, k: Field):
    """Symmetric elimination: (D, P) with P^T G P = diag(D)."""
    n = len(G)
    A = [[k(x) for x in row] for row in G]
    P = [list(r) for r in la.identity(n, k)]

    def add_basis(dst, src, f):
        # e_dst <- e_dst + f * e_src
        for r in range(n):
            A[r][dst] += f * A[r][src]
        for c in range(n):
            A[dst][c] += f * A[src][c]
        for r in range(n):
            P[r][dst] += f * P[r][src]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for c in range(n):
        if A[c][c] == 0:
            j = next((j for j in range(c + 1, n) if A[j][j] != 0), None)
            if j is not None:
                swap(c, j)
            else:
                j = next((j for j in range(c + 1, n) if A[c][j] != 0), None)
                if j is None:
                    raise DegenerateInput("singular Gram matrix")
                add_basis(c, j, k.one)
        piv = A[c][c]
        for j in range(c + 1, n):
            if A[c][j] != 0:
                add_basis(j, c, -A[c][j] / piv)
    return [A[i][i] for i in range(n)], tuple(tuple(r) for r in P)


def diagonalize(G, field: Field = QQ):
    """Diagonal form of a symmetric Gram matrix plus the change of basis.

    Returns (form, witness) with witness.P^T G witness.P = Gram(form).
    """
    G = la.as_matrix(G, field)
    if la.transpose(G) != G:
        raise DegenerateInput("Gram matrix is not symmetric")
    if la.det(G) == 0:
        raise DegenerateInput("singular Gram matrix")
    D, P = _diag_gram(G, field)
    form = make_form(D, field, provenance=(G, P))
    return form, IsometryWitness(P, form, None)


def orthogonal_completion(q: DiagonalForm, v):
    """Extend v (q(v) != 0) to an orthogonal basis.

    Returns (C, values): C has v as first column and C^T Gram(q) C is
    diagonal with entries `values`.
    """
    k = q.field
    v = tuple(k(x) for x in v)
    if q(v) == 0:
        raise DegenerateInput("cannot split off an isotropic vector")
    cols = [v]
    values = [q(v)]
    if q.dim > 1:
        K = la.kernel([[d * x for d, x in zip(q.diag, v)]])
        H = [[q.bilinear(a, b) for b in K] for a in K]
        D, T = _diag_gram(H, k)
        for j in range(len(K)):
            cols.append(tuple(sum((T[i][j] * K[i][r] for i in range(len(K))), start=k.zero)
                              for r in range(q.dim)))
        values.extend(D)
    return la.from_columns(cols), tuple(values)


def _realize(target: DiagonalForm, values, basis, budget):
    """Mutually orthogonal vectors in span(basis) with target-values `values`."""
    k = target.field
    H = [[target.bilinear(a, b) for b in basis] for a in basis]
    D, T = _diag_gram(H, k)
    m = len(basis)
    obasis = [tuple(sum((T[i][j] * basis[i][r] for i in range(m)), start=k.zero)
                    for r in range(target.dim)) for j in range(m)]
    sub = make_form(D, k)
    y = find_representation_vector(sub, values[0], budget)
    c1 = tuple(sum((y[j] * obasis[j][r] for j in range(m)), start=k.zero) for r in range(target.dim))
    if len(values) == 1:
        return [c1]
    K = la.kernel([[D[j] * y[j] for j in range(m)]])
    rest = [tuple(sum((z[j] * obasis[j][r] for j in range(m)), start=k.zero)
                  for r in range(target.dim)) for z in K]
    return [c1] + _realize(target, values[1:], rest, budget)


def explicit_isometry(q: DiagonalForm, target: DiagonalForm, budget: int = DEFAULT_BUDGET) -> IsometryWitness:
    """P with P^T Gram(target) P = Gram(q), built by repeated Witt splitting."""
    if not isometric(q, target):
        raise NotIsometric(f"{q} and {target} are not isometric")
    k = q.field
    basis = [tuple(r) for r in la.identity(q.dim, k)]
    P = la.from_columns(_realize(target, list(q.diag), basis, budget))
    w = IsometryWitness(P, q, target)
    assert w.verify()
    return w
