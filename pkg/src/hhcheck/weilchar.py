"""Closed-form Weil characters of GU_n(q), their branching to GU_{n-1}(q),
and their restriction to a cyclic group generated by a pseudoreflection.

Convention: omega(x) = (-1)^n (-q)^{e(x-1)} with e(y) = dim ker(y) on
GF(q^2)^n, and zeta^i is the part of omega on which the central element
delta * Id acts by xi^i, where delta generates the norm-one subgroup of
GF(q^2)* and xi = exp(2 pi i/(q+1)).  Then

    zeta^i(x) = 1/(q+1) sum_l xi^(-il) omega(delta^l x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import ffmat as fm
from .chartab import CharacterTable, ClassFunction, ConjData
from .classgrp import e_dim
from .exactnum import CycInt, FieldDesc, ff_quadratic


@dataclass(frozen=True)
class WeilContext:
    n: int
    q: int

    @property
    def field(self) -> FieldDesc:
        return ff_quadratic(self.q)

    @property
    def delta(self) -> int:
        K = self.field
        return K.pow(K.gen, self.q - 1)

    def xi(self, j: int = 1) -> CycInt:
        return CycInt.root(self.q + 1, j)

    def delta_pow(self, l: int) -> int:
        return self.field.pow(self.delta, l % (self.q + 1))


def reducible_weil(x: np.ndarray, q: int) -> int:
    """omega(x) = (-1)^n (-q)^{e(x - 1)}; degree q^n."""
    K = ff_quadratic(q)
    n = x.shape[0]
    return (-1) ** n * (-q) ** e_dim(np.asarray(x, dtype=np.int64), 1, K)


def _e_profile(x: np.ndarray, ctx: WeilContext) -> list[int]:
    """e(x - delta^-l) for l = 0..q."""
    K = ctx.field
    x = np.asarray(x, dtype=np.int64)
    return [e_dim(x, ctx.delta_pow(-l), K) for l in range(ctx.q + 1)]


def _weil_from_profile(i: int, prof: Sequence[int], n: int, q: int) -> CycInt:
    N = q + 1
    c = [0] * N
    sign = (-1) ** n
    for l, e in enumerate(prof):
        c[(-i * l) % N] += sign * (-q) ** e
    return CycInt(N, c).exact_div(N)


def weil_value(i: int, x: np.ndarray, ctx: WeilContext) -> CycInt:
    if not 0 <= i <= ctx.q:
        raise ValueError("i must lie in 0..q")
    return _weil_from_profile(i, _e_profile(x, ctx), ctx.n, ctx.q)


def weil_degree(i: int, n: int, q: int) -> int:
    if i == 0:
        return (q**n + (-1) ** n * q) // (q + 1)
    return (q**n - (-1) ** n) // (q + 1)


def weil_class_functions(C: ConjData, q: int) -> list[ClassFunction]:
    """zeta^0, ..., zeta^q on the classes of an enumerated GU_n(q)."""
    n = C.group.n
    ctx = WeilContext(n, q)
    profiles = [_e_profile(C.rep_matrix(c), ctx) for c in range(C.k)]
    return [
        ClassFunction([_weil_from_profile(i, prof, n, q) for prof in profiles], q + 1) for i in range(q + 1)
    ]


def identify_weil(T: CharacterTable, q: int) -> dict[int, tuple[int, int]]:
    """Rows of T equal to zeta^i * lambda (lambda linear); row -> (i, row of lambda).

    Matching is by exact value equality on every class.
    """
    C = T.conj
    zetas = weil_class_functions(C, q)
    linear = [r for r, d in enumerate(T.degrees) if d == 1]
    out: dict[int, tuple[int, int]] = {}
    by_degree: dict[int, list[int]] = {}
    for r, d in enumerate(T.degrees):
        by_degree.setdefault(d, []).append(r)
    for i, z in enumerate(zetas):
        d = z.degree()
        for lam in linear:
            prod = [z[c] * T.value(lam, c) for c in range(C.k)]
            for r in by_degree.get(d, []):
                if r not in out and all(prod[c] == T.value(r, c) for c in range(C.k)):
                    out[r] = (i, lam)
                    break
    return out


@dataclass
class BranchingReport:
    i: int
    n: int
    q: int
    classes_checked: int
    mismatches: list[int]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def branching_verify(i: int, H: ConjData, q: int, embed: Callable[[np.ndarray], np.ndarray] | None = None) -> BranchingReport:
    """zeta^i_{n+1}|_H = sum_{j != i} zeta^j_n on every class of H = GU_n(q)."""
    n = H.group.n
    big = WeilContext(n + 1, q)
    small = WeilContext(n, q)
    if embed is None:

        def embed(h: np.ndarray) -> np.ndarray:
            M = fm.identity(n + 1)
            M[:n, :n] = h
            return M

    bad = []
    for c in range(H.k):
        h = H.rep_matrix(c)
        lhs = weil_value(i, embed(h), big)
        prof = _e_profile(h, small)
        rhs = CycInt.from_int(0)
        for j in range(q + 1):
            if j != i:
                rhs = rhs + _weil_from_profile(j, prof, n, q)
        if lhs != rhs:
            bad.append(c)
    return BranchingReport(i, n, q, H.k, bad)


def pseudoreflection_restriction(i: int, n: int, q: int) -> tuple[list[int], int]:
    """Multiplicities of lambda_k (g -> xi^k) in zeta^i restricted to <g>,
    g = diag(delta, 1, ..., 1); returns (multiplicities, number of nonzero ones).
    """
    c = (q ** (n - 1) + (-1) ** n) // (q + 1)
    mults = [0] + [c] * q
    if i != 0:
        mults[i] -= (-1) ** n
    if any(m < 0 for m in mults):
        raise ArithmeticError("negative multiplicity")
    return mults, sum(1 for m in mults if m)


def pseudoreflection(n: int, q: int) -> np.ndarray:
    ctx = WeilContext(n, q)
    g = fm.identity(n)
    g[0, 0] = ctx.delta
    return g


def export_weil_table(C: ConjData, q: int) -> dict:
    zetas = weil_class_functions(C, q)
    return {
        "group": C.group.name,
        "classes": [{"name": C.names[i], "size": C.sizes[i], "order": C.orders[i]} for i in range(C.k)],
        "characters": [
            {
                "name": f"zeta{i}",
                "degree": z.degree(),
                "values": [{"conductor": v.N, "coeffs": list(v.simplify().coeffs)} for v in z.values],
            }
            for i, z in enumerate(zetas)
        ],
    }
