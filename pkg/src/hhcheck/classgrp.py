"""Classical forms and groups over finite fields.

Vectors are columns and a matrix M acts by v -> M v.  For a unitary space
the field is GF(q^2) built over GF(q), the form is B(u, v) = u^T G conj(v) and
conj is x -> x^q.  Quadratic forms are stored by an upper triangular
coefficient matrix Qc with Q(v) = sum_{i <= j} Qc[i, j] v_i v_j; the Gram
matrix of a quadratic space is the polar form Qc + Qc^T.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import prod

import numpy as np

from . import ffmat as fm
from .exactnum import (
    FieldDesc,
    ff_quadratic,
    field_of_size,
    poly_factor,
    poly_is_irreducible,
)

FAMILIES = ("GL", "SL", "GU", "SU", "Sp", "CSp", "GO", "SO", "Omega")
FORM_KIND = {
    "GL": "none",
    "SL": "none",
    "GU": "hermitian",
    "SU": "hermitian",
    "Sp": "symplectic",
    "CSp": "symplectic",
    "GO": "quadratic",
    "SO": "quadratic",
    "Omega": "quadratic",
}
MINIMAL_SUBSPACE_CAP = 10_000


@dataclass(eq=False)
class FormSpace:
    field: FieldDesc
    n: int
    kind: str
    eps: str | None
    gram: np.ndarray
    quad: np.ndarray | None = None
    q: int = 0  # size of the defining field (GF(q) even for unitary spaces)

    def conj(self, A: np.ndarray) -> np.ndarray:
        if self.kind != "hermitian":
            return A
        return fm.frobenius(A, self.q, self.field)

    def bil(self, u: np.ndarray, v: np.ndarray) -> int:
        F = self.field
        u = np.asarray(u, dtype=np.int64).reshape(1, -1)
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        return int(fm.mul(fm.mul(u, self.gram, F), self.conj(v), F)[0, 0])

    def gram_of(self, W: np.ndarray) -> np.ndarray:
        """Gram matrix of the rows of W."""
        F = self.field
        return fm.mul(fm.mul(W, self.gram, F), self.conj(fm.transpose(W)), F)

    def Q(self, v) -> int:
        if self.quad is None:
            raise ValueError("no quadratic form on this space")
        F = self.field
        v = [int(x) for x in v]
        acc = 0
        for i in range(self.n):
            if v[i]:
                for j in range(i, self.n):
                    c = int(self.quad[i, j])
                    if c and v[j]:
                        acc = F.add(acc, F.mul(c, F.mul(v[i], v[j])))
        return acc

    def singular(self, v) -> bool:
        if self.kind == "quadratic":
            return self.Q(v) == 0
        return self.bil(v, v) == 0

    def totally_singular(self, W: np.ndarray) -> bool:
        if W.shape[0] == 0:
            return True
        if self.gram_of(W).any():
            return False
        if self.kind == "quadratic":
            return all(self.Q(w) == 0 for w in W)
        return True

    def perp(self, W: np.ndarray) -> np.ndarray:
        """Rows spanning {v : B(w, v) = 0 for all rows w of W}."""
        F = self.field
        # B(w, v) = w G conj(v); solve (W G) conj(v) = 0, then undo conj
        A = fm.mul(W, self.gram, F)
        K = fm.nullspace(A, F)
        if self.kind == "hermitian" and K.shape[0]:
            K = fm.frobenius(K, self.q, F)  # conj is an involution
        return K


@dataclass(eq=False)
class GroupSpec:
    family: str
    n: int
    q: int
    eps: str | None
    form: FormSpace
    name: str = ""
    meta: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> FieldDesc:
        return self.form.field

    def order(self) -> int:
        return group_order(self.family, self.n, self.q, self.eps)

    def contains(self, M: np.ndarray) -> bool:
        return in_group(M, self)

    def center_scalars(self) -> list[int]:
        F = self.field
        return [c for c in range(1, F.q) if in_group(fm.scalar(self.n, c), self)]

    def __repr__(self) -> str:
        eps = self.eps if self.eps and self.eps != "o" else ""
        return f"{self.family}{eps}_{self.n}({self.q})"


class MatrixElem:
    """An invertible matrix over a finite field (immutable)."""

    __slots__ = ("field", "a")

    def __init__(self, a, field: FieldDesc, check: bool = True):
        arr = np.array(a, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        if check and fm.det(arr, field) == 0:
            raise ValueError("matrix is not invertible")
        arr.setflags(write=False)
        self.a = arr
        self.field = field

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __mul__(self, other: MatrixElem) -> MatrixElem:
        return MatrixElem(fm.mul(self.a, other.a, self.field), self.field, check=False)

    def __pow__(self, e: int) -> MatrixElem:
        return MatrixElem(fm.power(self.a, e, self.field), self.field, check=False)

    def inverse(self) -> MatrixElem:
        return MatrixElem(fm.inverse(self.a, self.field), self.field, check=False)

    def order(self) -> int:
        return fm.order(self.a, self.field)

    def det(self) -> int:
        return fm.det(self.a, self.field)

    def key(self) -> bytes:
        return self.a.astype(np.uint16).tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixElem) and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"MatrixElem({self.a.tolist()} over GF({self.field.q}))"


# ---------------------------------------------------------------------------
# orders


def group_order(family: str, n: int, q: int, eps: str | None = None) -> int:
    if family in ("GL", "SL"):
        o = q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))
        return o if family == "GL" else o // (q - 1)
    if family in ("GU", "SU"):
        o = q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))
        return o if family == "GU" else o // (q + 1)
    if family in ("Sp", "CSp"):
        m = n // 2
        o = q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return o if family == "Sp" else o * (q - 1)
    if family in ("GO", "SO", "Omega"):
        if n % 2:
            m = (n - 1) // 2
            o = 2 * q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        else:
            m = n // 2
            sign = 1 if eps == "+" else -1
            o = 2 * q ** (m * (m - 1)) * (q**m - sign) * prod(q ** (2 * i) - 1 for i in range(1, m))
        if family == "GO":
            return o
        if q % 2 == 0:
            return o if family == "SO" else o // 2
        return o // 2 if family == "SO" else o // 4
    raise ValueError(f"unknown family {family}")


# ---------------------------------------------------------------------------
# forms


def _least_irreducible_quadratic(F: FieldDesc) -> tuple[int, int]:
    for c in range(F.q):
        for d in range(1, F.q):
            if poly_is_irreducible((d, c, 1), F):
                return c, d
    raise ArithmeticError("no irreducible quadratic")


def standard_form(family: str, n: int, q: int, eps: str | None = None) -> FormSpace:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("dimension must be positive")
    kind = FORM_KIND[family]
    if kind in ("none", "hermitian", "symplectic") and eps not in (None, ""):
        raise ValueError(f"eps is meaningless for {family}")
    if kind == "none":
        F = field_of_size(q)
        return FormSpace(F, n, kind, None, np.zeros((n, n), dtype=np.int64), None, q)
    if kind == "hermitian":
        F = ff_quadratic(q)
        return FormSpace(F, n, kind, None, fm.identity(n), None, q)
    F = field_of_size(q)
    if kind == "symplectic":
        if n % 2:
            raise ValueError("symplectic spaces have even dimension")
        m = n // 2
        G = np.zeros((n, n), dtype=np.int64)
        for i in range(m):
            G[i, m + i] = 1
            G[m + i, i] = F.neg(1)
        return FormSpace(F, n, kind, None, G, None, q)
    # quadratic
    Qc = np.zeros((n, n), dtype=np.int64)
    if n % 2:
        if q % 2 == 0:
            raise ValueError("odd-dimensional orthogonal groups over even q are not supported")
        if eps not in (None, "", "o"):
            raise ValueError("odd-dimensional quadratic spaces take eps = 'o'")
        eps = "o"
        for i in range(n):
            Qc[i, i] = 1
    else:
        if eps not in ("+", "-"):
            raise ValueError("even-dimensional quadratic spaces need eps in {'+', '-'}")
        m = n // 2
        if eps == "+":
            for i in range(m):
                Qc[i, m + i] = 1
        else:
            for i in range(m - 1):
                Qc[i, m - 1 + i] = 1
            c, d = _least_irreducible_quadratic(F)
            Qc[n - 2, n - 2] = 1
            Qc[n - 2, n - 1] = c
            Qc[n - 1, n - 1] = d
    G = F.vadd(Qc, fm.transpose(Qc))
    return FormSpace(F, n, kind, eps, G, Qc, q)


def make_group(family: str, n: int, q: int, eps: str | None = None, name: str = "") -> GroupSpec:
    if family in ("Sp", "CSp") and n % 2:
        raise ValueError("Sp needs even dimension")
    form = standard_form(family, n, q, eps)
    G = GroupSpec(family, n, q, form.eps, form, name)
    if not G.name:
        G.name = repr(G)
    return G


def preserves_form(M: np.ndarray, F: FormSpace) -> tuple[bool, int]:
    """(True, tau) when B(Mu, Mv) = tau B(u, v) (and Q(Mv) = tau Q(v)); else (False, 0)."""
    M = np.asarray(M, dtype=np.int64)
    K = F.field
    if F.kind == "none":
        return True, 1
    img = fm.mul(fm.mul(fm.transpose(M), F.gram, K), F.conj(M), K)
    idx = np.argwhere(F.gram != 0)
    if len(idx) == 0:
        return False, 0
    i, j = idx[0]
    tau = K.div(int(img[i, j]), int(F.gram[i, j]))
    if tau == 0 or not np.array_equal(img, fm.smul(tau, F.gram, K)):
        return False, 0
    if F.kind == "quadratic":
        for col in range(F.n):
            e = np.zeros(F.n, dtype=np.int64)
            e[col] = 1
            if F.Q(M[:, col]) != K.mul(tau, F.Q(e)):
                return False, 0
    return True, tau


def is_square(x: int, K: FieldDesc) -> bool:
    if x == 0:
        return True
    if K.p == 2:
        return True
    return K.pow(x, (K.q - 1) // 2) == 1


def spinor_norm(M: np.ndarray, F: FormSpace) -> int:
    """Spinor norm of an isometry (odd q) as a field element; reflections r_v give Q(v)."""
    K = F.field
    n = F.n
    D = fm.sub(M, fm.identity(n), K)
    cols = []
    W: list[np.ndarray] = []
    for j in range(n):
        cand = W + [D[:, j]]
        if fm.rank(np.stack(cand), K) == len(cand):
            W = cand
            cols.append(j)
    d = len(cols)
    if d == 0:
        return 1
    A = np.zeros((d, d), dtype=np.int64)
    for k in range(d):
        for l in range(d):
            e = np.zeros(n, dtype=np.int64)
            e[cols[l]] = 1
            A[k, l] = F.bil(W[k], e)
    disc = fm.det(A, K)
    return disc if d % 2 == 0 else K.neg(disc)


def dickson_invariant(M: np.ndarray, F: FormSpace) -> int:
    return fm.rank(fm.sub(M, fm.identity(F.n), F.field), F.field) % 2


def in_group(M: np.ndarray, G: GroupSpec) -> bool:
    M = np.asarray(M, dtype=np.int64)
    K = G.field
    if M.shape != (G.n, G.n):
        return False
    d = fm.det(M, K)
    if d == 0:
        return False
    fam = G.family
    if fam == "GL":
        return True
    if fam == "SL":
        return d == 1
    ok, tau = preserves_form(M, G.form)
    if not ok:
        return False
    if fam == "CSp":
        return True
    if tau != 1:
        return False
    if fam in ("GU", "Sp", "GO"):
        return True
    if fam == "SU":
        return d == 1
    if fam == "SO":
        return d == 1
    if fam == "Omega":
        if K.p == 2:
            return dickson_invariant(M, G.form) == 0
        return d == 1 and is_square(spinor_norm(M, G.form), K)
    raise ValueError(f"unknown family {fam}")


def reflection(v: np.ndarray, F: FormSpace) -> np.ndarray:
    """x -> x - (B(x, v)/Q(v)) v for a nonsingular vector v of a quadratic space."""
    K = F.field
    qv = F.Q(v)
    if qv == 0:
        raise ValueError("reflection needs a nonsingular vector")
    n = F.n
    # column j of the matrix is e_j - (B(e_j, v)/Q(v)) v
    row = fm.mul(np.asarray(v, dtype=np.int64).reshape(1, n), F.gram, K)[0]  # B(e_j, v) = (v^T G)_j
    coef = K.vmul(row, np.full(n, K.inv(qv), dtype=np.int64))
    outer = K.vmul(np.asarray(v, dtype=np.int64)[:, None], coef[None, :])
    return fm.sub(fm.identity(n), outer, K)


# ---------------------------------------------------------------------------
# random members (used to build generating sets)


def _random_vector(n: int, K: FieldDesc, rng: random.Random) -> np.ndarray:
    return np.array([rng.randrange(K.q) for _ in range(n)], dtype=np.int64)


def _norm_root(N: int, K: FieldDesc, q: int) -> int:
    """An s in GF(q^2) with s^(q+1) = N for N in GF(q)^*."""
    k = K.log[N]
    if k % (q + 1):
        raise ValueError("element is not in the subfield")
    return K.exp[k // (q + 1)]


def _random_unitary(F: FormSpace, rng: random.Random) -> np.ndarray:
    K, n, q = F.field, F.n, F.q
    while True:
        basis: list[np.ndarray] = []
        ok = True
        for _ in range(n):
            for _attempt in range(50):
                v = _random_vector(n, K, rng)
                for u in basis:
                    c = F.bil(v, u)
                    v = K.vadd(v, K.vneg(K.vmul(np.full(n, c), u)))
                N = F.bil(v, v)
                if N:
                    s = _norm_root(K.inv(N), K, q)
                    basis.append(K.vmul(np.full(n, s), v))
                    break
            else:
                ok = False
                break
        if ok:
            return fm.transpose(np.stack(basis))


def _random_symplectic_basis(F: FormSpace, rng: random.Random) -> np.ndarray:
    K, n = F.field, F.n
    m = n // 2
    es: list[np.ndarray] = []
    fs: list[np.ndarray] = []

    def project(v):
        for e, f in zip(es, fs):
            a = F.bil(v, f)
            b = F.bil(v, e)
            v = K.vadd(v, K.vneg(K.vmul(np.full(n, a), e)))
            v = K.vadd(v, K.vmul(np.full(n, b), f))
        return v

    for _ in range(m):
        while True:
            e = project(_random_vector(n, K, rng))
            if e.any():
                break
        while True:
            w = project(_random_vector(n, K, rng))
            c = F.bil(e, w)
            if c:
                break
        f = K.vmul(np.full(n, K.inv(c)), w)
        es.append(e)
        fs.append(f)
    return fm.transpose(np.stack(es + fs))


def _random_reflection(F: FormSpace, rng: random.Random) -> tuple[np.ndarray, int]:
    while True:
        v = _random_vector(F.n, F.field, rng)
        qv = F.Q(v)
        if qv:
            return reflection(v, F), qv


def random_member(G: GroupSpec, rng: random.Random) -> np.ndarray:
    K, n, fam = G.field, G.n, G.family
    if fam in ("GL", "SL"):
        while True:
            M = np.array([[rng.randrange(K.q) for _ in range(n)] for _ in range(n)], dtype=np.int64)
            d = fm.det(M, K)
            if d:
                break
        if fam == "SL":
            M[0] = K.vmul(M[0], np.full(n, K.inv(d)))
        return M
    if fam in ("GU", "SU"):
        M = _random_unitary(G.form, rng)
        if fam == "SU":
            d = fm.det(M, K)
            D = fm.identity(n)
            D[0, 0] = K.inv(d)
            M = fm.mul(M, D, K)
        return M
    if fam in ("Sp", "CSp"):
        M = _random_symplectic_basis(G.form, rng)
        if fam == "CSp":
            tau = rng.randrange(1, K.q)
            D = fm.identity(n)
            for i in range(n // 2):
                D[i, i] = tau
            M = fm.mul(M, D, K)
        return M
    # orthogonal families: products of reflections
    count = 2 * n + (rng.randrange(2) if fam == "GO" else 0)
    M = fm.identity(n)
    norms = 1
    for _ in range(count):
        R, qv = _random_reflection(G.form, rng)
        M = fm.mul(M, R, K)
        norms = K.mul(norms, qv)
    if fam == "Omega" and K.p != 2 and not is_square(norms, K):
        # swap in a reflection pair with nonsquare norm product
        while True:
            R1, q1 = _random_reflection(G.form, rng)
            R2, q2 = _random_reflection(G.form, rng)
            if not is_square(K.mul(q1, q2), K):
                M = fm.mul(fm.mul(M, R1, K), R2, K)
                break
    return M


# ---------------------------------------------------------------------------
# pseudoreflections and invariant subspaces


def e_dim(M: np.ndarray, lam: int, K: FieldDesc) -> int:
    """dim ker(M - lam Id)."""
    n = M.shape[0]
    return n - fm.rank(fm.sub(M, fm.scalar(n, lam), K), K)


def is_pseudoreflection(M: np.ndarray, F: FormSpace | FieldDesc) -> tuple[int, int] | None:
    """(alpha, beta) when M is conjugate to diag(alpha, beta, ..., beta), alpha != beta."""
    K = F.field if isinstance(F, FormSpace) else F
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if n < 2:
        return None
    roots = _roots(fm.charpoly(M, K), K)
    for beta in roots:
        if e_dim(M, beta, K) == n - 1:
            alpha = K.sub(fm.trace(M, K), K.mul(K.from_int(n - 1), beta))
            if alpha != beta:
                return alpha, beta
    return None


def _roots(poly, K: FieldDesc) -> list[int]:
    out = []
    for fac, _m in poly_factor(poly, K):
        if len(fac) == 2:
            out.append(K.neg(fac[0]))
    return sorted(set(out))


def _cyclic_span(M: np.ndarray, v: np.ndarray, d: int, K: FieldDesc) -> np.ndarray:
    vecs = [v]
    for _ in range(d - 1):
        vecs.append(fm.mul(M, vecs[-1].reshape(-1, 1), K)[:, 0])
    return np.stack(vecs)


def _enumerate_space(B: np.ndarray, K: FieldDesc):
    """All vectors of the row space of B, in a fixed order."""
    k = B.shape[0]
    for idx in range(1, K.q**k):
        coeffs = [(idx // K.q**i) % K.q for i in range(k)]
        v = np.zeros(B.shape[1], dtype=np.int64)
        for c, b in zip(coeffs, B):
            if c:
                v = K.vadd(v, K.vmul(np.full(B.shape[1], c), b))
        yield v


def minimal_invariant_subspaces(M: np.ndarray, K: FieldDesc, cap: int = MINIMAL_SUBSPACE_CAP):
    """Yield (factor, basis) for every minimal M-invariant subspace (M semisimple)."""
    cp = fm.charpoly(M, K)
    for fac, _mult in poly_factor(cp, K):
        d = len(fac) - 1
        ker = fm.nullspace(fm.poly_at_matrix(fac, M, K), K)
        m = ker.shape[0] // d
        count = (K.q ** (d * m) - 1) // (K.q**d - 1)
        if count > cap:
            raise OverflowError(f"{count} minimal submodules exceed the cap {cap}")
        seen: set[bytes] = set()
        for v in _enumerate_space(ker, K):
            if v.tobytes() in seen:
                continue
            U = _cyclic_span(M, v, d, K)
            U = fm.row_space(U, K)
            for w in _enumerate_space(U, K):
                seen.add(w.tobytes())
            yield fac, U


def invariant_totally_singular_subspace(
    g: np.ndarray, F: FormSpace, cap: int = MINIMAL_SUBSPACE_CAP
) -> np.ndarray | None:
    """Basis of a nonzero g-invariant totally singular subspace, or None."""
    g = np.asarray(g, dtype=np.int64)
    for _fac, U in minimal_invariant_subspaces(g, F.field, cap):
        if F.totally_singular(U):
            return U
    return None


@dataclass
class Char2Exception:
    """g fixes a nonsingular vector of an even-characteristic quadratic space."""

    vector: np.ndarray


def _first_minimal(M: np.ndarray, K: FieldDesc) -> np.ndarray:
    cp = fm.charpoly(M, K)
    fac, _ = poly_factor(cp, K)[0]
    d = len(fac) - 1
    ker = fm.nullspace(fm.poly_at_matrix(fac, M, K), K)
    return fm.row_space(_cyclic_span(M, ker[0], d, K), K)


def orthogonal_irreducible_decomposition(
    g: np.ndarray, F: FormSpace, cap: int = MINIMAL_SUBSPACE_CAP
) -> list[np.ndarray] | Char2Exception:
    """Split V into pairwise orthogonal nondegenerate g-irreducible subspaces (rows = basis)."""
    g = np.asarray(g, dtype=np.int64)
    K = F.field
    if invariant_totally_singular_subspace(g, F, cap) is not None:
        raise ValueError("g fixes a totally singular subspace")
    blocks: list[np.ndarray] = []
    W = fm.identity(F.n)
    while W.shape[0]:
        gW = fm.restrict(g, W, K)
        Ucoords = _first_minimal(gW, K)
        U = fm.mul(Ucoords, W, K)
        G = F.gram_of(U)
        if fm.rank(G, K) < U.shape[0]:
            if F.kind == "quadratic" and K.p == 2 and U.shape[0] == 1:
                return Char2Exception(U[0])
            raise ValueError("degenerate minimal subspace; form precondition violated")
        blocks.append(U)
        # orthogonal complement of U inside W
        P = F.perp(U)
        inter = _intersect(W, P, K)
        W = inter
    return blocks


def _intersect(A: np.ndarray, B: np.ndarray, K: FieldDesc) -> np.ndarray:
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    # x A = y B  <=>  [x, -y] [A; B] = 0
    stacked = np.vstack([A, B])
    N = fm.left_nullspace(stacked, K)
    if N.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    X = N[:, : A.shape[0]]
    vecs = fm.mul(X, A, K)
    return fm.row_space(vecs, K)


def fixed_space_dim(g: np.ndarray, K: FieldDesc) -> int:
    return e_dim(g, 1, K)
