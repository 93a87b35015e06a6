"""Small exact matrix helpers.

Matrices are tuples of row tuples whose entries are Fractions or Residues.
Nothing here ever rounds; equality is literal equality of entries.
"""

from __future__ import annotations

from .errors import DegenerateInput
from .field import Field


def as_matrix(rows, k: Field):
    return tuple(tuple(k(x) for x in row) for row in rows)


def identity(n: int, k: Field):
    return tuple(tuple(k.one if i == j else k.zero for j in range(n)) for i in range(n))


def diag(entries, k: Field):
    entries = [k(x) for x in entries]
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else k.zero for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), start=row[0] * 0) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum((a * x for a, x in zip(row, v)), start=row[0] * 0) for row in A)


def from_columns(cols):
    return transpose(tuple(tuple(c) for c in cols))


def columns(A):
    return [tuple(c) for c in transpose(A)]


def matpow(A, k: int):
    n = len(A)
    one = A[0][0] ** 0
    result = tuple(tuple(one if i == j else one * 0 for j in range(n)) for i in range(n))
    base = A
    if k < 0:
        base, k = inverse(A), -k
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def det(A):
    """Determinant by Gaussian elimination."""
    M = [list(r) for r in A]
    n = len(M)
    d = M[0][0] ** 0
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return d * 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f != 0:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return d


def inverse(A):
    n = len(A)
    one = A[0][0] ** 0
    zero = one * 0
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise DegenerateInput("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = one / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def kernel(A):
    """Basis of the right null space {x : A x = 0}, as a list of tuples."""
    rows = [list(r) for r in A]
    m, n = len(rows), len(rows[0])
    one = rows[0][0] ** 0
    zero = one * 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [zero] * n
        v[free] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


def sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def is_identity(A) -> bool:
    return all((x == 1) if i == j else (x == 0) for i, row in enumerate(A) for j, x in enumerate(row))


def is_zero(A) -> bool:
    return all(x == 0 for row in A for x in row)


def congruent(P, G):
    """P^T G P."""
    return matmul(matmul(transpose(P), G), P)
