"""Minimal-polynomial degrees: eigenvalue multiplicities from character
values, direct matrix minimal polynomials, and the Jordan-block calculus for
unipotent actions in characteristic p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Sequence

import numpy as np

from . import ffmat as fm
from .exactnum import CycInt, FieldDesc, prime_field


@dataclass(frozen=True)
class MultVector:
    N: int
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.N or any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be N nonnegative integers")

    @property
    def dim(self) -> int:
        return sum(self.mult)

    @property
    def deg(self) -> int:
        return deg_of(self)

    def support(self) -> list[int]:
        return [j for j, m in enumerate(self.mult) if m]


def deg_of(mv: MultVector) -> int:
    d = sum(1 for m in mv.mult if m)
    if d == 0:
        raise ValueError("the zero vector has no eigenvalues")
    return d


def mults_from_character(values: Sequence[CycInt | int], N: int) -> MultVector:
    """mult_j = (1/N) sum_m chi(g^m) zeta_N^(-jm), computed exactly."""
    if len(values) != N:
        raise ValueError("need chi(g^m) for m = 0..N-1")
    V = np.zeros((N, N), dtype=np.int64)
    for m, v in enumerate(values):
        if not isinstance(v, CycInt):
            v = CycInt.from_int(int(v))
        if N % v.N:
            raise ValueError(f"value conductor {v.N} does not divide {N}")
        V[m] = v.lift(N).coeffs if v.N != N else v.coeffs
    # S[j, k] = sum_m V[m, (k + j m) mod N]: coefficient of zeta^k in sum_m chi(g^m) zeta^(-jm)
    j = np.arange(N)[:, None, None]
    m = np.arange(N)[None, :, None]
    k = np.arange(N)[None, None, :]
    idx = (k + j * m) % N
    S = V[np.broadcast_to(m, idx.shape), idx].sum(axis=1)
    out = []
    for row in S:
        r = CycInt(N, row.tolist()).reduced()
        if any(r[1:]) or (r and r[0] % N):
            raise ArithmeticError("non-integral multiplicity")
        out.append((r[0] if r else 0) // N)
    return MultVector(N, tuple(out))


def mults_mod_center(mv: MultVector, o: int) -> MultVector:
    """Multiplicities of g times a scalar, rescaled to a vector of length o(g).

    Eigenvalues of an element acting on an irreducible module whose o-th power is
    scalar share a residue modulo N/o; shifting by the least one gives exponents
    that are multiples of N/o.
    """
    N = mv.N
    if N % o:
        raise ValueError("o must divide N")
    step = N // o
    sup = mv.support()
    j0 = sup[0]
    if any((j - j0) % step for j in sup):
        raise ArithmeticError("g^o does not act as a scalar")
    out = [0] * o
    for j in sup:
        out[((j - j0) // step) % o] += mv.mult[j]
    return MultVector(o, tuple(out))


def character_mults(values_on_powers: Sequence[CycInt], N: int, o: int | None = None) -> MultVector:
    mv = mults_from_character(values_on_powers, N)
    return mults_mod_center(mv, o) if o is not None else mv


# ---------------------------------------------------------------------------
# matrix oracle


def matrix_minpoly_deg(M: np.ndarray, K: FieldDesc) -> int:
    return len(fm.minpoly(np.asarray(M, dtype=np.int64), K)) - 1


def jordan_block(k: int, K: FieldDesc, lam: int = 1) -> np.ndarray:
    J = fm.scalar(k, lam)
    for i in range(k - 1):
        J[i, i + 1] = 1
    return J


def direct_sum(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    M = np.zeros((n, n), dtype=np.int64)
    s = 0
    for b in blocks:
        k = b.shape[0]
        M[s : s + k, s : s + k] = b
        s += k
    return M


def kron(A: np.ndarray, B: np.ndarray, K: FieldDesc) -> np.ndarray:
    a, b = A.shape[0], B.shape[0]
    out = np.zeros((a * b, a * b), dtype=np.int64)
    for i in range(a):
        for j in range(a):
            if A[i, j]:
                out[i * b : (i + 1) * b, j * b : (j + 1) * b] = K.vmul(np.full(B.shape, int(A[i, j])), B)
    return out


def jordan_type_unipotent(M: np.ndarray, K: FieldDesc) -> list[int]:
    """Block sizes (descending) of a unipotent matrix, from ranks of powers of M - 1."""
    n = M.shape[0]
    N = fm.sub(M, fm.identity(n), K)
    ranks = [n]
    P = fm.identity(n)
    while ranks[-1] > 0:
        P = fm.mul(P, N, K)
        ranks.append(fm.rank(P, K))
        if len(ranks) > n + 1:
            raise ValueError("matrix is not unipotent")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes += [k] * exactly
    return sizes


# ---------------------------------------------------------------------------
# Jordan calculus


@dataclass(frozen=True)
class JordanType:
    p: int
    partition: tuple[int, ...]

    def __post_init__(self):
        if any(not 1 <= b <= self.p for b in self.partition):
            raise ValueError("block sizes must lie in 1..p")

    @property
    def largest(self) -> int:
        return max(self.partition)


def jordan_tensor(l: int, m: int, p: int) -> JordanType:
    """Jordan type of J_l (x) J_m in characteristic p, 1 <= l <= m <= p."""
    if not 1 <= l <= m <= p:
        raise ValueError("need 1 <= l <= m <= p")
    if l + m <= p:
        parts = list(range(m + l - 1, m - l, -2))
    else:
        parts = [p] * (l + m - p) + list(range(2 * p - m - l - 1, m - l, -2))
    return JordanType(p, tuple(parts))


def tensor_deg(degs: Sequence[int], p: int) -> int:
    return min(p, 1 - len(degs) + sum(degs))


def perm_rule(s: int, d1: int) -> int:
    return s * d1


def root1_bounds(deg_of_power: int, p: int, i: int) -> tuple[int, int]:
    """Interval for deg(b) given deg(b^(p^i))."""
    return p**i * (deg_of_power - 1) + 1, p**i * deg_of_power


def filtr_deg(n: int, p: int, b: int, m: int) -> int:
    return (n - 1) * p**b + m


def free_bound(p: int, dimU: int, dimV: int) -> int:
    """Lower bound for d_U(g) when V is free over <g> of order p."""
    if dimU * p > (p - 1) * dimV:
        return p
    return ceil(p * dimU / dimV)


# witnesses for the rules


def block_shift(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """g permuting s summands cyclically: v_i -> A_i v_i in summand i+1."""
    s = len(blocks)
    k = blocks[0].shape[0]
    M = np.zeros((s * k, s * k), dtype=np.int64)
    for i, A in enumerate(blocks):
        j = (i + 1) % s
        M[j * k : (j + 1) * k, i * k : (i + 1) * k] = A
    return M


def quotient_action(M: np.ndarray, W: np.ndarray, K: FieldDesc) -> np.ndarray:
    """Matrix of v -> M v on V/W (W rows span an M-invariant subspace)."""
    n = M.shape[0]
    d = W.shape[0]
    basis = [list(map(int, w)) for w in fm.row_space(W, K)] if d else []
    comp = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        trial = np.array(basis + comp + [e.tolist()], dtype=np.int64)
        if fm.rank(trial, K) == len(basis) + len(comp) + 1:
            comp.append(e.tolist())
    B = np.array(basis + comp, dtype=np.int64)  # rows: new basis
    # coordinates of M b in basis B: solve c B = (M b)^T
    Binv = fm.inverse(B, K)
    imgs = fm.mul(fm.mul(B, fm.transpose(M), K), Binv, K)  # row r: coords of M b_r
    X = fm.transpose(imgs)
    return np.ascontiguousarray(X[len(basis) :, len(basis) :])


def unipotent_filtr_instance(M: np.ndarray, p: int, b: int) -> tuple[int, int]:
    """(n, m) for g = M: n = d(g^(p^b)), m = d(g) on V / ker((h - 1)^(n-1))."""
    K = prime_field(p)
    h = fm.power(M, p**b, K)
    n = matrix_minpoly_deg(h, K)
    N = fm.sub(h, fm.identity(M.shape[0]), K)
    W = fm.nullspace(fm.power(N, n - 1, K), K) if n > 1 else np.zeros((0, M.shape[0]), dtype=np.int64)
    Q = quotient_action(M, W, K)
    return n, matrix_minpoly_deg(Q, K)
