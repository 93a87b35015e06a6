"""Elements of SO(q)(k): eigenvalue type, order, and isotropy witnesses."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import linalg as la
from .errors import NotInGroup, OrderMismatch
from .field import field_of
from .quadform import DiagonalForm

RATIONAL_ORDER_CAP = 120


@dataclass(frozen=True)
class OrthoMatrix:
    """A matrix M with M^T Q M = Q and det M = 1, checked on construction."""

    M: tuple
    form: DiagonalForm

    def __post_init__(self):
        k = self.form.field
        M = la.as_matrix(self.M, k)
        object.__setattr__(self, "M", M)
        Q = self.form.gram()
        if la.congruent(M, Q) != Q:
            raise NotInGroup("matrix does not preserve the form")
        if la.det(M) != 1:
            raise NotInGroup("determinant is not 1")

    def __matmul__(self, other: OrthoMatrix) -> OrthoMatrix:
        return OrthoMatrix(la.matmul(self.M, other.M), self.form)

    def inverse(self) -> OrthoMatrix:
        # M^{-1} = Q^{-1} M^T Q
        return OrthoMatrix(la.inverse(self.M), self.form)

    def __pow__(self, e: int) -> OrthoMatrix:
        return OrthoMatrix(la.matpow(self.M, e), self.form)

    def is_identity(self) -> bool:
        return la.is_identity(self.M)

    def trace(self):
        return self.M[0][0] + self.M[1][1] + self.M[2][2]

    def __hash__(self):
        return hash(self.M)


class Kind(enum.Enum):
    IDENTITY = "identity"
    SPLIT = "diagonalizable, eigenvalues in k"
    QUADRATIC = "diagonalizable over a quadratic extension"
    UNIPOTENT = "unipotent"
    OTHER = "non-semisimple, eigenvalue -1"


@dataclass(frozen=True)
class SpectralReport:
    char_poly: tuple          # (c0, c1, c2, c3) for c0 + c1 x + c2 x^2 + c3 x^3
    kind: Kind
    trace_sum: object         # lambda + 1/lambda, always in k
    lam: object | None        # lambda itself when it lies in k
    order: int | None         # None: infinite, or above the search cap
    witness: tuple | None     # nonzero v with q(v) = 0


def char_poly(M) -> tuple:
    """Coefficients of det(x I - M), lowest degree first."""
    tr = M[0][0] + M[1][1] + M[2][2]
    minors = (M[0][0] * M[1][1] - M[0][1] * M[1][0]
              + M[0][0] * M[2][2] - M[0][2] * M[2][0]
              + M[1][1] * M[2][2] - M[1][2] * M[2][1])
    one = tr ** 0
    return (-la.det(M), minors, -tr, one)


def element_order(M, cap: int) -> int | None:
    I = la.identity(len(M), field_of(M[0][0]))
    A = M
    for e in range(1, cap + 1):
        if A == I:
            return e
        A = la.matmul(A, M)
    return None


def _order_cap(k) -> int:
    return 2 * (k.p + 1) if k.p else RATIONAL_ORDER_CAP


def unipotent_witness(M, form: DiagonalForm):
    """Fixed vector v1 of a Jordan chain M v1 = v1, M v2 = v1 + v2."""
    k = form.field
    N = la.sub(M, la.identity(3, k))
    N2 = la.matmul(N, N)
    A = N2 if not la.is_zero(N2) else N
    for col in la.columns(A):
        if any(x != 0 for x in col):
            return col
    raise OrderMismatch("matrix is not a nontrivial unipotent")


def analyze_element(M: OrthoMatrix) -> SpectralReport:
    if not isinstance(M, OrthoMatrix):
        raise NotInGroup("expected an OrthoMatrix")
    q = M.form
    k = q.field
    A = M.M
    cp = char_poly(A)
    s = M.trace() - 1
    order = element_order(A, _order_cap(k))
    I = la.identity(3, k)
    lam = witness = None
    if A == I:
        kind, lam = Kind.IDENTITY, k.one
    elif s == 2:
        kind, lam = Kind.UNIPOTENT, k.one
        witness = unipotent_witness(A, q)
    elif s == -2:
        lam = -k.one
        kind = Kind.SPLIT if la.matmul(A, A) == I else Kind.OTHER
    else:
        r = k.sqrt(s * s - 4)
        if r is None:
            kind = Kind.QUADRATIC
        else:
            kind = Kind.SPLIT
            lam = (s + r) / 2
            # eigenvector of lambda != +-1 is isotropic: q(v) = q(Mv) = lambda^2 q(v)
            witness = la.kernel(la.sub(A, la.diag([lam] * 3, k)))[0]
    if witness is not None:
        assert q(witness) == 0 and any(x != 0 for x in witness)
    return SpectralReport(cp, kind, s, lam, order, witness)


def p_irregular_isotropy_check(M: OrthoMatrix):
    """For M of order p = char k, return a nonzero v with q(v) = 0."""
    q = M.form
    k = q.field
    if not k.p:
        raise OrderMismatch("needs a field of positive characteristic")
    I = la.identity(3, k)
    if M.M == I or la.matpow(M.M, k.p) != I:
        raise OrderMismatch(f"matrix does not have order {k.p}")
    N = la.sub(M.M, I)
    # (M - I)^p = M^p - I = 0 in characteristic p, and nilpotent 3x3 means N^3 = 0
    assert la.is_zero(la.matpow(N, 3))
    v = unipotent_witness(M.M, q)
    assert q(v) == 0
    return v
