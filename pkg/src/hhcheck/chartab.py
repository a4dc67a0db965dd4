"""Brute-force group oracle: enumeration, conjugacy classes, power maps and
ordinary character tables by the Dixon-Schneider method.

Elements are stored as prime-field digit vectors (row-major entries, each
expanded into its f base-p digits).  Right multiplication by a fixed matrix
is then one GF(p)-linear map applied to every row, so whole batches of
products are a single float32 matmul followed by ``% p`` (all partial sums
stay far below 2**24, so this is exact).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import ffmat as fm
from .exactnum import CycInt, FieldDesc, is_prime, lcm, prime_divisors

ENUM_CAP = 2_000_000
CLASS_CAP = 200
CHUNK = 1 << 17


# ---------------------------------------------------------------------------
# enumeration


@dataclass(eq=False)
class GroupEnum:
    field: FieldDesc
    n: int
    gens: list[np.ndarray]
    digits: np.ndarray  # (size, n*n*f) uint8, sorted by key
    keys: np.ndarray  # (size,) int64, strictly increasing
    name: str = ""

    @property
    def size(self) -> int:
        return int(self.keys.shape[0])

    def key_of_digits(self, D: np.ndarray) -> np.ndarray:
        return _keys(D, self.field.p)

    def digits_of(self, A: np.ndarray) -> np.ndarray:
        """Digit vector(s) of code matrices (..., n, n)."""
        A = np.asarray(A, dtype=np.int64)
        return self.field.digits[A].reshape(A.shape[:-2] + (-1,)).astype(np.uint8)

    def matrix(self, i: int) -> np.ndarray:
        D = self.digits[i].astype(np.int64).reshape(self.n, self.n, self.field.f)
        return (D @ self.field.pows).astype(np.int64)

    def lookup_digits(self, D: np.ndarray, strict: bool = True) -> np.ndarray:
        k = self.key_of_digits(D)
        idx = np.searchsorted(self.keys, k)
        idx = np.minimum(idx, self.size - 1)
        found = self.keys[idx] == k
        if strict and not found.all():
            raise KeyError("element not in group")
        return np.where(found, idx, -1)

    def index(self, A: np.ndarray) -> int:
        return int(self.lookup_digits(self.digits_of(A)[None, :])[0])

    def contains(self, A: np.ndarray) -> bool:
        return int(self.lookup_digits(self.digits_of(A)[None, :], strict=False)[0]) >= 0

    def right_mul(self, D: np.ndarray, g: np.ndarray) -> np.ndarray:
        return _right_mul(D, g, self.field, self.n)

    def left_mul(self, g: np.ndarray, D: np.ndarray) -> np.ndarray:
        return _left_mul(g, D, self.field, self.n)

    def conj(self, D: np.ndarray, s: np.ndarray, s_inv: np.ndarray) -> np.ndarray:
        """s^-1 x s for every digit row x."""
        return _right_mul(_left_mul(s_inv, D, self.field, self.n), s, self.field, self.n)

    def identity_index(self) -> int:
        return self.index(fm.identity(self.n))


def _pow_vector(D: int, p: int) -> np.ndarray:
    if p**D >= 2**62:
        raise OverflowError("element keys would overflow 64 bits")
    return np.array([p**i for i in range(D)], dtype=np.int64)


def _keys(D: np.ndarray, p: int) -> np.ndarray:
    w = _pow_vector(D.shape[-1], p)
    out = np.empty(D.shape[0], dtype=np.int64)
    for s in range(0, D.shape[0], CHUNK):
        out[s : s + CHUNK] = D[s : s + CHUNK].astype(np.int64) @ w
    return out


def _right_mul(D: np.ndarray, g: np.ndarray, F: FieldDesc, n: int) -> np.ndarray:
    R = fm.right_map(np.asarray(g, dtype=np.int64), F).astype(np.float32)
    width = n * F.f
    out = np.empty_like(D)
    for s in range(0, D.shape[0], CHUNK):
        blk = D[s : s + CHUNK].astype(np.float32).reshape(-1, width)
        prod = (blk @ R).astype(np.int64) % F.p
        out[s : s + CHUNK] = prod.reshape(-1, n * width).astype(np.uint8)
    return out


def _transpose_digits(D: np.ndarray, n: int, f: int) -> np.ndarray:
    return D.reshape(-1, n, n, f).transpose(0, 2, 1, 3).reshape(D.shape[0], -1)


def _left_mul(g: np.ndarray, D: np.ndarray, F: FieldDesc, n: int) -> np.ndarray:
    Dt = _transpose_digits(D, n, F.f)
    P = _right_mul(Dt, fm.transpose(np.asarray(g, dtype=np.int64)), F, n)
    return _transpose_digits(P, n, F.f)


def enumerate_group(
    generators: Sequence[np.ndarray],
    F: FieldDesc,
    cap: int = ENUM_CAP,
    name: str = "",
) -> GroupEnum:
    """Closure of the generators under multiplication, sorted by element key."""
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if gens:
        n = gens[0].shape[0]
    else:
        raise ValueError("need at least one generator (use the identity for the trivial group)")
    for g in gens:
        if g.shape != (n, n) or fm.det(g, F) == 0:
            raise ValueError("generators must be invertible and of equal size")
    ident = F.digits[fm.identity(n)].reshape(1, -1).astype(np.uint8)
    p = F.p
    found_keys = _keys(ident, p)
    found_digits = [ident]
    frontier = ident
    total = 1
    while frontier.shape[0]:
        cand = np.concatenate([_right_mul(frontier, g, F, n) for g in gens])
        ck = _keys(cand, p)
        ck, first = np.unique(ck, return_index=True)
        pos = np.searchsorted(found_keys, ck)
        pos = np.minimum(pos, found_keys.shape[0] - 1)
        new = found_keys[pos] != ck
        ck = ck[new]
        frontier = cand[first[new]]
        total += ck.shape[0]
        if total > cap:
            raise OverflowError(f"group exceeds the enumeration cap {cap}")
        found_keys = np.sort(np.concatenate([found_keys, ck]))
        found_digits.append(frontier)
    digits = np.concatenate(found_digits)
    keys = _keys(digits, p)
    order = np.argsort(keys, kind="stable")
    return GroupEnum(F, n, gens, digits[order], keys[order], name)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(eq=False)
class ConjData:
    group: GroupEnum
    labels: np.ndarray  # class index of each element
    reps: list[int]  # element index of each class representative
    sizes: list[int]
    orders: list[int]  # element orders
    names: list[str]
    power_classes: list[list[int]]  # power_classes[i][m] = class of rep_i ** m, 0 <= m < order
    exponent: int
    center: list[int] = field(default_factory=list)  # classes of size one

    @property
    def k(self) -> int:
        return len(self.reps)

    def rep_matrix(self, i: int) -> np.ndarray:
        return self.group.matrix(self.reps[i])

    def power_map(self, m: int) -> list[int]:
        return [pc[m % len(pc)] for pc in self.power_classes]

    def inverse_class(self, i: int) -> int:
        pc = self.power_classes[i]
        return pc[-1] if len(pc) > 1 else pc[0]

    def class_of(self, A: np.ndarray) -> int:
        return int(self.labels[self.group.index(A)])

    def class_elements(self, i: int) -> np.ndarray:
        return np.nonzero(self.labels == i)[0]


def conjugacy(G: GroupEnum) -> ConjData:
    F, n = G.field, G.n
    N = G.size
    rows, cols = [np.arange(N)], [np.arange(N)]
    for s in G.gens:
        s_inv = fm.inverse(s, F)
        img = np.empty(N, dtype=np.int64)
        for a in range(0, N, CHUNK):
            img[a : a + CHUNK] = G.lookup_digits(G.conj(G.digits[a : a + CHUNK], s, s_inv))
        rows.append(np.arange(N))
        cols.append(img)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(r.shape[0], dtype=np.int8), (r, c)), shape=(N, N)).tocsr()
    ncomp, comp = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(comp, minlength=ncomp)
    first = np.full(ncomp, N, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(N))
    orders = [fm.order(G.matrix(int(first[c])), F) for c in range(ncomp)]
    perm = sorted(range(ncomp), key=lambda c: (orders[c], int(sizes[c]), int(G.keys[first[c]])))
    relabel = np.empty(ncomp, dtype=np.int64)
    for new, old in enumerate(perm):
        relabel[old] = new
    labels = relabel[comp]
    reps = [int(first[c]) for c in perm]
    csizes = [int(sizes[c]) for c in perm]
    corders = [orders[c] for c in perm]
    names = []
    counter: dict[int, int] = {}
    for o in corders:
        j = counter.get(o, 0)
        counter[o] = j + 1
        names.append(f"{o}{_letters(j)}")
    power_classes = []
    for i, rep in enumerate(reps):
        g = G.matrix(rep)
        D = np.empty((corders[i], G.digits.shape[1]), dtype=np.uint8)
        cur = fm.identity(n)
        for m in range(corders[i]):
            D[m] = G.digits_of(cur)
            cur = fm.mul(cur, g, F)
        power_classes.append([int(x) for x in labels[G.lookup_digits(D)]])
    exponent = lcm(*corders)
    center = [i for i, s in enumerate(csizes) if s == 1]
    return ConjData(G, labels, reps, csizes, corders, names, power_classes, exponent, center)


def _letters(j: int) -> str:
    s = ""
    j += 1
    while j:
        j, r = divmod(j - 1, 26)
        s = chr(65 + r) + s
    return s


# ---------------------------------------------------------------------------
# arithmetic modulo a prime r


def _dixon_prime(exponent: int, order: int) -> int:
    bound = 2 * isqrt(order) + 2
    r = exponent + 1
    while r <= bound or not is_prime(r):
        r += exponent
    return r


def _primitive_root(r: int) -> int:
    fac = prime_divisors(r - 1)
    for g in range(2, r):
        if all(pow(g, (r - 1) // f, r) != 1 for f in fac):
            return g
    raise ArithmeticError("no primitive root")


def _rref_mod(A: np.ndarray, r: int) -> tuple[np.ndarray, list[int]]:
    A = A.copy() % r
    nrows, ncols = A.shape
    pivots = []
    row = 0
    for c in range(ncols):
        nz = np.nonzero(A[row:, c])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        A[row] = A[row] * pow(int(A[row, c]), r - 2, r) % r
        others = np.nonzero(A[:, c])[0]
        others = others[others != row]
        if others.size:
            A[others] = (A[others] - A[others, c][:, None] * A[row][None, :]) % r
        pivots.append(c)
        row += 1
        if row == nrows:
            break
    return A[:row], pivots


def _nullspace_mod(A: np.ndarray, r: int) -> np.ndarray:
    """Columns spanning {v : A v = 0} mod r."""
    ncols = A.shape[1]
    R, piv = _rref_mod(A, r)
    free = [c for c in range(ncols) if c not in piv]
    out = np.zeros((ncols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        out[fc, k] = 1
        for i, pc in enumerate(piv):
            out[pc, k] = (-R[i, fc]) % r
    return out


def _inv_mod(A: np.ndarray, r: int) -> np.ndarray:
    d = A.shape[0]
    R, piv = _rref_mod(np.concatenate([A, np.eye(d, dtype=np.int64)], axis=1), r)
    if piv[:d] != list(range(d)):
        raise ZeroDivisionError("singular matrix mod r")
    return R[:, d:]


def _charpoly_mod(A: np.ndarray, r: int) -> list[int]:
    H = [[int(x) % r for x in row] for row in A]
    n = len(H)
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(H[j + 1][j], r - 2, r)
        for i in range(j + 2, n):
            if H[i][j]:
                m = H[i][j] * inv % r
                H[i] = [(x - m * y) % r for x, y in zip(H[i], H[j + 1])]
                for row in H:
                    row[j + 1] = (row[j + 1] + m * row[i]) % r
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        pm = [0] * (m + 1)
        for i, c in enumerate(prev):
            pm[i + 1] = (pm[i + 1] + c) % r
            pm[i] = (pm[i] - H[m - 1][m - 1] * c) % r
        prodv = 1
        for i in range(m - 1, 0, -1):
            prodv = prodv * H[i][i - 1] % r
            if prodv == 0:
                break
            c = H[i - 1][m - 1] * prodv % r
            if c:
                for t, x in enumerate(polys[i - 1]):
                    pm[t] = (pm[t] - c * x) % r
        polys.append(pm)
    return polys[n]


def _roots_mod(poly: list[int], r: int) -> list[int]:
    xs = np.arange(r, dtype=np.int64)
    acc = np.zeros(r, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % r
    return [int(x) for x in np.nonzero(acc == 0)[0]]


# ---------------------------------------------------------------------------
# character tables


@dataclass(eq=False)
class ClassFunction:
    """Values on the classes of a group; each value is a CycInt."""

    values: list[CycInt]
    conductor: int

    def __getitem__(self, i: int) -> CycInt:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def degree(self) -> int:
        return self.values[0].to_int()


@dataclass(eq=False)
class CharacterTable:
    conj: ConjData
    degrees: list[int]
    mults: list[list[tuple[int, ...]]]  # mults[chi][class][j]: multiplicity of zeta_o^j
    prime: int
    exponent: int
    _values: list[list[CycInt]] | None = None

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def values(self) -> list[list[CycInt]]:
        if self._values is None:
            self._values = [[CycInt.from_mults(m) for m in row] for row in self.mults]
        return self._values

    def character(self, i: int) -> ClassFunction:
        return ClassFunction(self.values[i], self.exponent)

    def value(self, chi: int, cls: int) -> CycInt:
        return self.values[chi][cls]

    def names(self) -> list[str]:
        out = []
        counter: dict[int, int] = {}
        for d in self.degrees:
            j = counter.get(d, 0)
            counter[d] = j + 1
            out.append(f"{d}{_letters(j).lower()}")
        return out

    def to_json(self) -> dict:
        C = self.conj
        return {
            "group": C.group.name,
            "order": C.group.size,
            "exponent": self.exponent,
            "field": C.group.field.q,
            "classes": [
                {
                    "name": C.names[i],
                    "size": C.sizes[i],
                    "order": C.orders[i],
                    "representative": C.rep_matrix(i).tolist(),
                    "powers": C.power_classes[i],
                }
                for i in range(C.k)
            ],
            "characters": [
                {
                    "name": name,
                    "degree": self.degrees[c],
                    "values": [
                        {"conductor": C.orders[i], "coeffs": list(self.mults[c][i])} for i in range(C.k)
                    ],
                }
                for c, name in enumerate(self.names())
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def class_matrix(C: ConjData, j: int) -> np.ndarray:
    """A_j[i, l] = #{x in C_j : x^-1 g_l in C_i} (class-algebra structure constants)."""
    G = C.group
    k = C.k
    jinv = C.inverse_class(j)
    Y = G.digits[C.class_elements(jinv)]
    A = np.zeros((k, k), dtype=np.int64)
    for l in range(k):
        prods = G.right_mul(Y, C.rep_matrix(l))
        lab = C.labels[G.lookup_digits(prods)]
        A[:, l] = np.bincount(lab, minlength=k)
    return A


def dixon_table(C: ConjData, class_cap: int = CLASS_CAP, log: Callable[[str], None] | None = None) -> CharacterTable:
    """Irreducible characters via simultaneous eigenvectors of the class matrices mod r."""
    k = C.k
    if k > class_cap:
        raise OverflowError(f"{k} classes exceed the cap {class_cap}")
    order = C.group.size
    e = C.exponent
    r = _dixon_prime(e, order)
    spaces = [np.eye(k, dtype=np.int64)]
    done: list[np.ndarray] = []
    if k == 1:
        done, spaces = [spaces[0][:, 0]], []
    candidates = sorted(range(1, k), key=lambda j: (C.sizes[j], j))
    t0 = time.time()
    for j in candidates:
        if not spaces:
            break
        A = class_matrix(C, j) % r
        nxt = []
        for B in spaces:
            d = B.shape[1]
            _, piv_rows = _rref_mod(B.T.copy(), r)
            P = piv_rows
            AB = A @ B % r
            sub = _inv_mod(B[P], r) @ AB[P] % r
            for lam in _roots_mod(_charpoly_mod(sub, r), r):
                M = (sub - lam * np.eye(d, dtype=np.int64)) % r
                N = _nullspace_mod(M, r)
                W = B @ N % r
                if W.shape[1] == 1:
                    done.append(W[:, 0])
                else:
                    nxt.append(W)
        spaces = nxt
        if log:
            log(f"class {C.names[j]}: {len(done)} characters split ({time.time() - t0:.1f}s)")
    if spaces or len(done) != k:
        raise ArithmeticError("eigenspace splitting did not finish")
    inv = [C.inverse_class(i) for i in range(k)]
    inv_sizes = [pow(int(s), r - 2, r) for s in C.sizes]
    rows = []
    z = pow(_primitive_root(r), (r - 1) // e, r)
    for w in done:
        w = w * pow(int(w[0]), r - 2, r) % r  # w[i] = |C_i| chi(g_i)/chi(1)
        s = 0
        for i in range(k):
            s = (s + int(w[i]) * int(w[inv[i]]) % r * inv_sizes[i]) % r
        d2 = order * pow(s, r - 2, r) % r
        deg = next((d for d in range(1, isqrt(order) + 1) if d * d % r == d2), None)
        if deg is None:
            raise ArithmeticError("degree recovery failed")
        vals = [int(w[i]) * deg % r * inv_sizes[i] % r for i in range(k)]
        mults = []
        for i in range(k):
            o = C.orders[i]
            zo = pow(z, e // o, r)
            seq = [vals[c] for c in C.power_classes[i]]
            inv_o = pow(o, r - 2, r)
            mv = []
            for jj in range(o):
                acc = 0
                step = pow(zo, (-jj) % o, r)
                t = 1
                for m in range(o):
                    acc += seq[m] * t
                    t = t * step % r
                mv.append(acc % r * inv_o % r)
            if any(x > deg for x in mv) or sum(mv) != deg:
                raise ArithmeticError("multiplicity lifting failed; prime too small")
            mults.append(tuple(mv))
        rows.append((deg, mults))
    rows.sort(key=lambda t: (t[0], tuple(tuple(-x for x in m) for m in t[1])))
    return CharacterTable(C, [d for d, _ in rows], [m for _, m in rows], r, e)


def trivial_row(T: CharacterTable) -> int:
    return 0


def restrict_to_subgroup(
    chi: ClassFunction,
    G: ConjData,
    H: ConjData,
    embed: Callable[[np.ndarray], np.ndarray] | None = None,
) -> ClassFunction:
    """Transport class-function values from G to H through an embedding of matrices."""
    vals = []
    for i in range(H.k):
        h = H.rep_matrix(i)
        x = embed(h) if embed else h
        idx = G.group.lookup_digits(G.group.digits_of(x)[None, :], strict=False)[0]
        if idx < 0:
            raise KeyError("subgroup element not found in the ambient group")
        vals.append(chi[int(G.labels[idx])])
    return ClassFunction(vals, chi.conductor)


def inner_product(C: ConjData, a: Sequence[CycInt], b: Sequence[CycInt]) -> CycInt:
    """sum |C| a(C) conj(b(C)) / |G| computed exactly (raises if not integral)."""
    buckets: dict[int, CycInt] = {}
    for i in range(C.k):
        t = (a[i] * b[i].conj()) * C.sizes[i]
        N = t.N
        buckets[N] = buckets[N] + t if N in buckets else t
    total = CycInt.from_int(0)
    for t in buckets.values():
        total = total + t.simplify()
    return total.exact_div(C.group.size)
