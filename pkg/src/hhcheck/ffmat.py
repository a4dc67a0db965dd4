"""Dense linear algebra over the finite fields of :mod:`hhcheck.exactnum`.

Matrices are numpy int64 arrays of field codes.  Products go through the
GF(p)-linear embedding (each entry becomes an f x f block over the prime
field), so they are exact and vectorized; elimination is done in Python,
which is fine for the dimensions used here.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exactnum import FieldDesc, pgcd, pmonic, pmul, pdivmod, ptrim, psub


def mat(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(rows, dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def scalar(n: int, c: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64) * c


def right_map(B: np.ndarray, F: FieldDesc) -> np.ndarray:
    """The GF(p)-matrix R with digits(row @ B) = digits(row) @ R (mod p)."""
    m, k = B.shape
    f = F.f
    blocks = F.mulmat[B]  # (m, k, f, f) indexed [row, col, s, t]
    return blocks.transpose(0, 3, 1, 2).reshape(m * f, k * f)


def to_digits(A: np.ndarray, F: FieldDesc) -> np.ndarray:
    """Codes -> prime-field digits, last axis expanded (..., cols * f)."""
    D = F.digits[A]
    return D.reshape(A.shape[:-1] + (A.shape[-1] * F.f,))


def from_digits(D: np.ndarray, F: FieldDesc) -> np.ndarray:
    f = F.f
    D = D.reshape(D.shape[:-1] + (D.shape[-1] // f, f))
    return (D % F.p) @ F.pows


def mul(A: np.ndarray, B: np.ndarray, F: FieldDesc) -> np.ndarray:
    if F.f == 1:
        return (A @ B) % F.p
    R = right_map(B, F)
    return from_digits((to_digits(A, F) @ R) % F.p, F)


def add(A: np.ndarray, B: np.ndarray, F: FieldDesc) -> np.ndarray:
    return F.vadd(A, B)


def sub(A: np.ndarray, B: np.ndarray, F: FieldDesc) -> np.ndarray:
    return F.vadd(A, F.vneg(B))


def smul(c: int, A: np.ndarray, F: FieldDesc) -> np.ndarray:
    return F.vmul(np.full(A.shape, c, dtype=np.int64), A)


def power(A: np.ndarray, e: int, F: FieldDesc) -> np.ndarray:
    if e < 0:
        A = inverse(A, F)
        e = -e
    out = identity(A.shape[0])
    base = A
    while e:
        if e & 1:
            out = mul(out, base, F)
        base = mul(base, base, F)
        e >>= 1
    return out


def frobenius(A: np.ndarray, e: int, F: FieldDesc) -> np.ndarray:
    """Entrywise x -> x**e."""
    out = F.exp_np[(F.log_np[A] * e) % max(F.q - 1, 1)]
    return np.where(A == 0, 0, out)


def transpose(A: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(A.T)


def echelon(A: np.ndarray, F: FieldDesc) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(map(int, r)) for r in A]
    nrows = len(rows)
    ncols = A.shape[1] if A.ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                t = rows[i][c]
                rows[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rank(A: np.ndarray, F: FieldDesc) -> int:
    return len(echelon(A, F)[1])


def nullspace(A: np.ndarray, F: FieldDesc) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0}."""
    ncols = A.shape[1]
    rows, pivots = echelon(A, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def left_nullspace(A: np.ndarray, F: FieldDesc) -> np.ndarray:
    return nullspace(transpose(A), F)


def row_space(A: np.ndarray, F: FieldDesc) -> np.ndarray:
    rows, _ = echelon(A, F)
    return np.array(rows, dtype=np.int64).reshape(len(rows), A.shape[1])


def inverse(A: np.ndarray, F: FieldDesc) -> np.ndarray:
    n = A.shape[0]
    aug = np.concatenate([A, identity(n)], axis=1)
    rows, pivots = echelon(aug, F)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return np.array([r[n:] for r in rows], dtype=np.int64)


def det(A: np.ndarray, F: FieldDesc) -> int:
    rows = [list(map(int, r)) for r in A]
    n = len(rows)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = F.neg(d)
        d = F.mul(d, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                t = F.mul(rows[i][c], inv)
                rows[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(rows[i], rows[c])]
    return d


def trace(A: np.ndarray, F: FieldDesc) -> int:
    t = 0
    for i in range(A.shape[0]):
        t = F.add(t, int(A[i, i]))
    return t


def charpoly(A: np.ndarray, F: FieldDesc) -> tuple[int, ...]:
    """det(x I - A) via reduction to Hessenberg form."""
    H = [list(map(int, r)) for r in A]
    n = len(H)
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if H[i][j]:
                m = F.mul(H[i][j], inv)
                H[i] = [F.sub(x, F.mul(m, y)) for x, y in zip(H[i], H[j + 1])]
                for r in H:
                    r[j + 1] = F.add(r[j + 1], F.mul(m, r[i]))
    polys: list[tuple[int, ...]] = [(1,)]
    for m in range(1, n + 1):
        pm = pmul((F.neg(H[m - 1][m - 1]), 1), polys[m - 1], F)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            if prod == 0:
                break
            c = F.mul(H[i - 1][m - 1], prod)
            if c:
                pm = psub(pm, tuple(F.mul(c, x) for x in polys[i - 1]), F)
        polys.append(ptrim(pm))
    return polys[n]


def poly_at_matrix(poly: Sequence[int], A: np.ndarray, F: FieldDesc) -> np.ndarray:
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(list(poly)):
        out = mul(out, A, F)
        if c:
            out = add(out, scalar(n, c), F)
    return out


def local_minpoly(A: np.ndarray, v: np.ndarray, F: FieldDesc) -> tuple[int, ...]:
    """Monic generator of {f : f(A) v = 0}, from the Krylov sequence v, Av, ..."""
    n = A.shape[0]
    vecs = [np.asarray(v, dtype=np.int64)]
    At = transpose(A)
    while True:
        M = np.stack(vecs)
        if rank(M, F) < len(vecs):
            # express last vector in terms of earlier ones
            coeffs = nullspace(transpose(M), F)
            c = [int(x) for x in coeffs[0]]
            return pmonic(ptrim(c), F)
        if len(vecs) > n:
            raise ArithmeticError("Krylov sequence did not terminate")
        vecs.append(mul(vecs[-1][None, :], At, F)[0])


def plcm(a, b, F: FieldDesc) -> tuple[int, ...]:
    g = pgcd(a, b, F)
    return pmonic(pdivmod(pmul(a, b, F), g, F)[0], F)


def minpoly(A: np.ndarray, F: FieldDesc) -> tuple[int, ...]:
    n = A.shape[0]
    out: tuple[int, ...] = (1,)
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        out = plcm(out, local_minpoly(A, e, F), F)
    return out


def is_scalar(A: np.ndarray) -> bool:
    n = A.shape[0]
    return bool(np.all(A == np.eye(n, dtype=np.int64) * A[0, 0]))


def is_identity(A: np.ndarray) -> bool:
    return bool(np.array_equal(A, identity(A.shape[0])))


def order(A: np.ndarray, F: FieldDesc, limit: int = 1 << 20) -> int:
    """Multiplicative order of an invertible matrix."""
    n = A.shape[0]
    I = identity(n)
    B = A
    k = 1
    while not np.array_equal(B, I):
        B = mul(B, A, F)
        k += 1
        if k > limit:
            raise ArithmeticError("order exceeds limit")
    return k


def restrict(A: np.ndarray, W: np.ndarray, F: FieldDesc) -> np.ndarray:
    """Matrix of v -> A v on the invariant subspace spanned by the rows of W.

    Vectors are columns for A; the result X satisfies A W^T = W^T X.
    """
    d = W.shape[0]
    images = mul(W, transpose(A), F)  # rows: (A w_i)^T
    # solve images[i] = sum_j X[j, i] W[j]
    aug = np.concatenate([transpose(W), transpose(images)], axis=1)
    rows, pivots = echelon(aug, F)
    if pivots[:d] != list(range(d)) or any(p >= d for p in pivots):
        raise ValueError("subspace is not invariant")
    X = np.array([r[d:] for r in rows[:d]], dtype=np.int64)
    return X


def span_contains(W: np.ndarray, v: np.ndarray, F: FieldDesc) -> bool:
    return rank(np.vstack([W, v[None, :]]), F) == rank(W, F)
