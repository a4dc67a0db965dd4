"""Semisimple prime-power-order elements: invariants, canonical
constructions, and the Sylow-cyclicity test via cyclotomic factorization of
group order polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import ffmat as fm
from .classgrp import (
    Char2Exception,
    FormSpace,
    GroupSpec,
    in_group,
    invariant_totally_singular_subspace,
    make_group,
    orthogonal_irreducible_decomposition,
    preserves_form,
)
from .exactnum import (
    FieldDesc,
    Poly,
    cyclotomic,
    divisors,
    ff_extend,
    ff_quadratic,
    field_of_size,
    mult_order,
    p_part,
    poly_factor,
    poly_is_irreducible,
    prime_power,
    zp_divexact,
    zp_eval,
    zp_mul,
)

TAGS = ("irreducible", "torus-diagonal", "parabolic", "block-decomposable", "char2-sp-exception")


class CompositeOrderError(ValueError):
    """o(g) is not a prime power."""


# ---------------------------------------------------------------------------
# basic invariants


def charpoly_irreducible(g: np.ndarray, K: FieldDesc) -> tuple[Poly, bool]:
    cp = fm.charpoly(np.asarray(g, dtype=np.int64), K)
    return Poly(cp, K), poly_is_irreducible(cp, K)


@dataclass(frozen=True)
class CenterOrder:
    o: int  # order modulo the center
    abs_order: int
    p: int | None  # None when o = 1
    a: int


def o_mod_center(g: np.ndarray, G: GroupSpec, require_prime_power: bool = True) -> CenterOrder:
    """Least m with g**m a scalar of Z(G), and |g|."""
    K = G.field
    g = np.asarray(g, dtype=np.int64)
    N = fm.order(g, K)
    center = set(G.center_scalars())
    o = N
    for d in divisors(N):
        h = fm.power(g, d, K)
        if fm.is_scalar(h) and int(h[0, 0]) in center:
            o = d
            break
    if o == 1:
        return CenterOrder(1, N, None, 0)
    pp = prime_power(o)
    if pp is None:
        if require_prime_power:
            raise CompositeOrderError(f"o(g) = {o} is not a prime power")
        return CenterOrder(o, N, None, 0)
    return CenterOrder(o, N, pp[0], pp[1])


def p_part_element(g: np.ndarray, K: FieldDesc, p: int) -> np.ndarray:
    """The p-part h of g = h t (h, t commuting powers of g)."""
    N = fm.order(g, K)
    pp = p_part(N, p)
    rest = N // pp
    # h = g**(rest * u) with u = rest^-1 mod pp
    u = pow(rest, -1, pp) if pp > 1 else 0
    return fm.power(g, rest * u % N, K)


def spectrum_frobenius_orbit(g: np.ndarray, K: FieldDesc) -> tuple[int, FieldDesc, list[int]]:
    """A root lam of the char poly in GF(|K|**n) and its |K|-power orbit."""
    cp, irr = charpoly_irreducible(g, K)
    if not irr:
        raise ValueError("g is not irreducible")
    n = cp.degree
    if n == 1:
        lam = K.neg(cp.coeffs[0])
        return lam, K, [lam]
    L = ff_extend(K, n)
    roots = [L.neg(f[0]) for f, _ in poly_factor(cp.coeffs, L) if len(f) == 2]
    lam = min(roots)
    orbit = [lam]
    x = L.pow(lam, K.q)
    while x != lam:
        orbit.append(x)
        x = L.pow(x, K.q)
    if len(orbit) != n or sorted(orbit) != sorted(roots):
        raise ArithmeticError("Frobenius orbit does not match the spectrum")
    return lam, L, orbit


# ---------------------------------------------------------------------------
# classification


@dataclass
class SemisimpleClassification:
    p: int
    a: int
    o: int
    abs_order: int
    k: int
    b: int | None
    tag: str
    torus_note: str = ""
    checks: dict[str, bool] = field(default_factory=dict)


def _splits(cp: Sequence[int], K: FieldDesc) -> bool:
    return all(len(f) == 2 for f, _ in poly_factor(cp, K))


def classify(g: np.ndarray, G: GroupSpec) -> SemisimpleClassification:
    K = G.field
    g = np.asarray(g, dtype=np.int64)
    co = o_mod_center(g, G)
    if co.abs_order % K.p == 0:
        raise ValueError("g is not semisimple")
    if co.o == 1:
        raise ValueError("g is central")
    p, a = co.p, co.a
    k = mult_order(K.q, p)
    n = G.n
    cp, irr = charpoly_irreducible(g, K)
    checks: dict[str, bool] = {}
    note = ""
    kind = G.form.kind
    b = None
    if irr:
        tag = "irreducible"
        pp = prime_power(n // k) if n % k == 0 else None
        checks["n = k p^b"] = n % k == 0 and (n == k or (pp is not None and pp[0] == p))
        b = 0 if n == k else (pp[1] if pp else None)
        q = G.q
        if kind == "hermitian":
            checks["n odd"] = n % 2 == 1
            note = f"torus of order q^{n}+1"
        elif kind == "symplectic":
            m = n // 2
            checks["p > 2"] = p > 2
            checks["torus q^m+1"] = fm.is_identity(fm.power(g, q**m + 1, K))
            note = f"torus of order q^{m}+1 in SL_2(q^{m})"
        elif kind == "quadratic":
            m = n // 2
            checks["eps = -"] = G.eps == "-"
            checks["torus q^m+1"] = n % 2 == 0 and fm.is_identity(fm.power(g, q**m + 1, K))
            note = f"torus of order q^{m}+1"
        if kind != "none":
            checks["no totally singular subspace"] = invariant_totally_singular_subspace(g, G.form) is None
    elif kind == "none":
        tag = "torus-diagonal" if _splits(cp.coeffs, K) else "parabolic"
    elif invariant_totally_singular_subspace(g, G.form) is not None:
        tag = "parabolic"
    else:
        dec = orthogonal_irreducible_decomposition(g, G.form)
        if isinstance(dec, Char2Exception):
            tag = "char2-sp-exception"
            note = "fixes a nonsingular vector; lies in Sp_{n-2}(q) x 2"
        elif all(B.shape[0] == 1 for B in dec):
            tag = "torus-diagonal"
        else:
            tag = "block-decomposable"
            note = "block sizes " + ",".join(str(B.shape[0]) for B in dec)
    return SemisimpleClassification(p, a, co.o, co.abs_order, k, b, tag, note, checks)


# ---------------------------------------------------------------------------
# canonical constructions


def build_canonical_irreducible(side: str, n: int, q: int) -> tuple[np.ndarray, FieldDesc]:
    """x(v_i) = v_{i+1}, x(v_n) = alpha v_1 with alpha of order (q -+ 1)_p."""
    pp = prime_power(n)
    if pp is None or pp[0] == 2:
        raise ValueError("n must be a power of an odd prime")
    p = pp[0]
    if side == "SL":
        if (q - 1) % p:
            raise ValueError("need p | q - 1")
        K = field_of_size(q)
        c = p_part(q - 1, p)
    elif side == "SU":
        if (q + 1) % p:
            raise ValueError("need p | q + 1")
        K = ff_quadratic(q)
        c = p_part(q + 1, p)
    else:
        raise ValueError("side must be SL or SU")
    alpha = K.root_of_unity(c)
    x = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        x[i + 1, i] = 1
    x[0, n - 1] = alpha
    return x, K


def _trace(z: int, L: FieldDesc, qK: int, deg: int) -> int:
    t = 0
    for i in range(deg):
        t = L.add(t, L.pow(z, qK**i))
    return t


def _coords(z: int, qK: int, deg: int) -> list[int]:
    return [(z // qK**i) % qK for i in range(deg)]


def _mult_matrix(mu: int, L: FieldDesc, qK: int, deg: int) -> np.ndarray:
    M = np.zeros((deg, deg), dtype=np.int64)
    for i in range(deg):
        col = _coords(L.mul(mu, qK**i), qK, deg)
        M[:, i] = col
    return M


def _standard_basis(F: FormSpace, bil, Q, dim: int, K: FieldDesc, rng: random.Random) -> np.ndarray:
    """Rows b_i (old coordinates) with bil(b_i, b_j) = F.gram[i, j] (and Q matching F)."""

    def rand_vec(W: np.ndarray) -> np.ndarray:
        while True:
            c = np.array([rng.randrange(K.q) for _ in range(W.shape[0])], dtype=np.int64)
            if c.any():
                return fm.mul(c[None, :], W, K)[0]

    def perp(vs: list[np.ndarray], W: np.ndarray) -> np.ndarray:
        if not vs:
            return W
        # coordinates c with bil(v, c W) = 0 for all v: linear in c (hermitian: semilinear, solve for conj)
        A = np.array([[bil(v, w) for w in W] for v in vs], dtype=np.int64)
        N = fm.nullspace(A, K)
        if F.kind == "hermitian":
            N = fm.frobenius(N, F.q, K)
        return fm.row_space(fm.mul(N, W, K), K) if N.shape[0] else np.zeros((0, dim), dtype=np.int64)

    W = fm.identity(dim)
    out: list[np.ndarray] = []
    if F.kind == "hermitian":
        for _ in range(dim):
            while True:
                v = rand_vec(W)
                h = bil(v, v)
                if h:
                    break
            # scale by c with c^(q+1) = h^-1
            target = K.inv(h)
            c = next(x for x in range(1, K.q) if K.pow(x, F.q + 1) == target)
            v = K.vmul(np.full(dim, c), v)
            out.append(v)
            W = perp(out, fm.identity(dim))
        return np.stack(out)
    if F.kind == "symplectic":
        m = dim // 2
        es, fs = [], []
        for _ in range(m):
            e = rand_vec(W)
            while True:
                f = rand_vec(W)
                t = bil(e, f)
                if t:
                    break
            f = K.vmul(np.full(dim, K.inv(t)), f)
            es.append(e)
            fs.append(f)
            W = perp(es + fs, fm.identity(dim))
        return np.stack(es + fs)
    # quadratic, minus type
    m = dim // 2
    es, fs = [], []
    for _ in range(m - 1):
        while True:
            e = rand_vec(W)
            if Q(e) == 0:
                break
        while True:
            f = rand_vec(W)
            t = bil(e, f)
            if t:
                break
        f = K.vmul(np.full(dim, K.inv(t)), f)
        f = K.vadd(f, K.vmul(np.full(dim, K.neg(Q(f))), e))
        es.append(e)
        fs.append(f)
        W = perp(es + fs, fm.identity(dim))
    c = int(F.quad[dim - 2, dim - 1])
    d = int(F.quad[dim - 1, dim - 1])
    pts = [fm.mul(np.array([[x, y]], dtype=np.int64), W, K)[0] for x in range(K.q) for y in range(K.q)]
    u = next(v for v in pts if Q(v) == 1)
    w = next(v for v in pts if bil(u, v) == c and Q(v) == d)
    return np.stack(es + fs + [u, w])


def build_torus_element(family: str, n: int, q: int, d: int, seed: int = 0) -> tuple[np.ndarray, GroupSpec]:
    """An element of order d in a cyclic torus of order q^m + 1 written in the standard form.

    family: 'Sp' (n = 2m), 'GO-' (n = 2m), or 'GU' (n odd, torus of order q^n + 1).
    """
    if family == "Sp":
        G = make_group("Sp", n, q)
        m = n // 2
        K = G.field
        deg, qK, T = n, q, q**m + 1
    elif family in ("GO-", "GO"):
        G = make_group("GO", n, q, "-")
        m = n // 2
        K = G.field
        deg, qK, T = n, q, q**m + 1
    elif family == "GU":
        if n % 2 == 0:
            raise ValueError("the unitary torus of order q^n + 1 needs n odd")
        G = make_group("GU", n, q)
        K = G.field
        deg, qK, T = n, q * q, q**n + 1
        m = n
    else:
        raise ValueError(f"unsupported family {family}")
    if T % d:
        raise ValueError(f"{d} does not divide the torus order {T}")
    if d == 1:
        return fm.identity(n), G
    L = ff_extend(K, deg)
    bar = q**m  # the involution of L fixing the subfield of index 2
    if family == "Sp":
        # c**bar = -c makes the trace form alternating in odd characteristic
        c = L.pow(L.gen, (bar + 1) // 2) if q % 2 else 1
    else:
        c = 1

    def to_L(v: np.ndarray) -> int:
        return sum(int(x) * qK**i for i, x in enumerate(v))

    def bil(u: np.ndarray, v: np.ndarray) -> int:
        return _trace(L.mul(c, L.mul(to_L(u), L.pow(to_L(v), bar))), L, qK, deg)

    def Q(u: np.ndarray) -> int:
        z = to_L(u)
        return _trace(L.pow(z, bar + 1), L, qK, deg // 2) if deg % 2 == 0 else 0

    mu = L.root_of_unity(d)
    M = _mult_matrix(mu, L, qK, deg)
    rng = random.Random(seed)
    Bst = _standard_basis(G.form, bil, Q, deg, K, rng)
    # new coordinates y with x = Bst^T y
    P = fm.transpose(Bst)
    A = fm.mul(fm.mul(fm.inverse(P, K), M, K), P, K)
    ok, tau = preserves_form(A, G.form)
    if not ok or tau != 1 or not in_group(A, G):
        raise ArithmeticError("form transport failed")
    return A, G


# ---------------------------------------------------------------------------
# Sylow cyclicity


def order_polynomial(family: str, n: int, eps: str | None = None) -> tuple[int, ...]:
    """The polynomial part of |G| as an integer polynomial in q (p-part dropped)."""
    one = (1,)

    def qm(i: int, sign: int) -> tuple[int, ...]:
        c = [0] * (i + 1)
        c[0] = -sign
        c[i] = 1
        return tuple(c)

    out = one
    if family in ("GL", "SL"):
        start = 1 if family == "GL" else 2
        for i in range(start, n + 1):
            out = zp_mul(out, qm(i, 1))
    elif family in ("GU", "SU"):
        start = 1 if family == "GU" else 2
        for i in range(start, n + 1):
            out = zp_mul(out, qm(i, (-1) ** i))
    elif family in ("Sp", "CSp"):
        for i in range(1, n // 2 + 1):
            out = zp_mul(out, qm(2 * i, 1))
        if family == "CSp":
            out = zp_mul(out, qm(1, 1))
    elif family in ("GO", "SO", "Omega"):
        if n % 2:
            for i in range(1, (n - 1) // 2 + 1):
                out = zp_mul(out, qm(2 * i, 1))
        else:
            m = n // 2
            out = qm(m, 1 if eps == "+" else -1)
            for i in range(1, m):
                out = zp_mul(out, qm(2 * i, 1))
    else:
        raise ValueError(f"unknown family {family}")
    return out


def cyclotomic_exponents(poly: tuple[int, ...]) -> dict[int, int]:
    """r_m with poly = prod Phi_m**r_m (poly must be such a product)."""
    out: dict[int, int] = {}
    rest = poly
    deg = len(poly) - 1
    for m in range(1, 4 * deg + 2):
        phi = cyclotomic(m).coeffs
        while len(rest) > 1:
            try:
                rest = zp_divexact(rest, phi)
            except ArithmeticError:
                break
            out[m] = out.get(m, 0) + 1
        if len(rest) <= 1:
            break
    if rest not in ((1,), ()):
        raise ArithmeticError("not a product of cyclotomic polynomials")
    return out


def sylow_cyclic(G: GroupSpec, p: int) -> bool:
    if G.q % p == 0:
        raise ValueError("p must not divide q")
    r = cyclotomic_exponents(order_polynomial(G.family, G.n, G.eps))
    hits = [m for m in r if zp_eval(cyclotomic(m).coeffs, G.q) % p == 0]
    return len(hits) == 1 and r[hits[0]] == 1


def sylow_cyclic_bruteforce(element_orders: Iterable[int], group_order: int, p: int) -> bool:
    """True iff some element has order |G|_p."""
    target = p_part(group_order, p)
    if target == 1:
        return True
    return any(o % target == 0 for o in element_orders)


def sylow_cyclic_quotient_bruteforce(orders_mod_center: Iterable[int], quotient_order: int, p: int) -> bool:
    """Same test for G/Z(G) using orders modulo the center."""
    return sylow_cyclic_bruteforce(orders_mod_center, quotient_order, p)


def pcyclic_m(socle: tuple, p: int, pa: int | None = None) -> tuple[int, str]:
    """m = mult_order(q, p) and the matching clause for a simple socle (PSL_2 counts as PSp_2).

    socle = (kind, n, q) with kind in {'L', 'U', 'S', 'O+', 'O-'} (S = PSp_{2n}, n as stated
    for each family: L_n, U_n, S_{2n}, O^+-_{2n}).
    """
    kind, n, q = socle
    m = mult_order(q, p)
    g2 = 2 if q % 2 else 1
    if kind == "L" and n == 2:  # PSL_2(q) = PSp_2(q)
        kind, n = "S", 1
    if kind == "L" and n >= 3 and m == n:
        if n % 2 == 0 and pa is not None and not (pa == p == (q ** (n // 2) + 1) // g2):
            raise ArithmeticError("forced equality fails")
        return m, "i"
    if kind == "U" and n >= 3 and m == 4 * ((n - 1) // 2) + 2:
        return m, "ii"
    if kind == "S" and n >= 1 and m == 2 * n:
        if pa is not None and not (pa == p == (q**n + 1) // g2):
            raise ArithmeticError("forced equality fails")
        return m, "iii"
    if kind == "O+" and n >= 4 and m == 2 * n - 2:
        if n % 2 and pa is not None and not (pa == p == (q ** (n - 1) + 1) // g2):
            raise ArithmeticError("forced equality fails")
        return m, "iv"
    if kind == "O-" and n >= 4 and m == 2 * n:
        if n % 2 == 0 and pa is not None and not (pa == p == (q**n + 1) // g2):
            raise ArithmeticError("forced equality fails")
        return m, "v"
    raise ArithmeticError("no clause matches")
