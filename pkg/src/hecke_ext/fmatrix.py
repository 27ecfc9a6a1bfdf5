"""Dense matrices over a FiniteField, stored as lists of lists of element codes."""
from __future__ import annotations

from .errors import ParameterError
from .field import FiniteField


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def shape(A) -> tuple[int, int]:
    return (len(A), len(A[0]) if A else 0)


def scalar(F: FiniteField, c: int, n: int):
    return [[c if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(F: FiniteField, A, B, inner: int | None = None):
    n = len(A)
    m = len(B[0]) if B else 0
    if inner is None:
        inner = len(B)
    if F.k == 1:
        p = F.p
        Bt = list(zip(*B)) if B else [()] * m
        if not B:
            return zeros(n, m)
        return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]
    out = zeros(n, m)
    add, mul = F.add, F.mul
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for k in range(inner):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(m):
                    b = Bk[j]
                    if b:
                        Oi[j] = add(Oi[j], mul(a, b))
    return out


def mat_add(F: FiniteField, A, B):
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F: FiniteField, A, B):
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F: FiniteField, c: int, A):
    return [[F.mul(c, a) for a in row] for row in A]


def mat_eq(A, B) -> bool:
    return [list(r) for r in A] == [list(r) for r in B]


def kron(F: FiniteField, A, B):
    ra, ca = shape(A)
    rb, cb = shape(B)
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if not a:
                continue
            for k in range(rb):
                row = out[i * rb + k]
                Bk = B[k]
                for l in range(cb):
                    row[j * cb + l] = F.mul(a, Bk[l])
    return out


def rref(F: FiniteField, rows, ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    if ncols is None:
        ncols = len(M[0])
    pivots = []
    r = 0
    prime = F.k == 1
    p = F.p
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        if prime:
            inv = pow(pr[c], -1, p)
            if inv != 1:
                pr = [x * inv % p for x in pr]
                M[r] = pr
            for i in range(len(M)):
                if i != r:
                    f = M[i][c]
                    if f:
                        Mi = M[i]
                        M[i] = [(x - f * y) % p for x, y in zip(Mi, pr)]
        else:
            inv = F.inv(pr[c])
            pr = [F.mul(x, inv) for x in pr]
            M[r] = pr
            for i in range(len(M)):
                if i != r:
                    f = M[i][c]
                    if f:
                        M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: FiniteField, rows) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return len(rref(F, rows)[1])


def nullspace(F: FiniteField, rows, ncols: int):
    """Basis of {x : rows . x = 0} (x a column vector of length ncols)."""
    R, pivots = rref(F, [r for r in rows if any(r)], ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(R, pivots):
            x[pc] = F.neg(row[fc])
        basis.append(x)
    return basis


def mat_inv(F: FiniteField, A):
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, pivots = rref(F, aug, n)
    if pivots != list(range(n)):
        raise ParameterError("matrix is singular")
    return [row[n:] for row in R]


def mat_pow(F: FiniteField, A, e: int):
    n = len(A)
    if e < 0:
        A = mat_inv(F, A)
        e = -e
    out = identity(n)
    base = A
    while e:
        if e & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        e >>= 1
    return out


def is_invertible(F: FiniteField, A) -> bool:
    return rank(F, A) == len(A)
