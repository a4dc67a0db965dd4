"""Instance checks for the lemma-level statements behind the clause checker.

Each verifier rebuilds the statement's conclusion on a concrete group, either
from an enumerated character table (Dixon + DFT) or, for Weil modules, from
the closed character formula, and reports every triple that disagrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable

import numpy as np

from . import ffmat as fm
from .check import Candidate, FixtureContext, check_fixture, context_for, enumerate_candidates
from .classgrp import is_pseudoreflection, make_group
from .exactnum import prime_power
from .fixtures import DEFAULT_FIXTURES, fixture_id
from .minpoly import MultVector, mults_from_character, mults_mod_center
from .sselem import (
    build_canonical_irreducible,
    charpoly_irreducible,
    o_mod_center,
    pcyclic_m,
    sylow_cyclic,
)
from .weilchar import WeilContext, weil_value

LEMMAS = ("sl21", "sl22", "su2", "weil1", "weil2", "slsup", "sp1", "su31", "p-cyclic")


@dataclass
class LemmaRow:
    cls: str
    abs_order: int
    o: int
    char_id: str
    dim: int
    deg: int
    clause: str
    ok: bool
    spectrum: tuple[int, ...] = ()
    note: str = ""


@dataclass
class LemmaReport:
    name: str
    params: dict
    rows: list[LemmaRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def mismatches(self) -> list[LemmaRow]:
        return [r for r in self.rows if not r.ok]

    def summary(self) -> str:
        bad = len(self.mismatches)
        p = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({p}): {len(self.rows)} rows, {bad} mismatches"


def _spectrum(ctx: FixtureContext, cand: Candidate, chi: int) -> MultVector:
    """Eigenvalue multiplicities of Theta(g) at exponents j of zeta_|g|^j."""
    C, T = ctx.conj, ctx.table
    pc = C.power_classes[cand.cls]
    return mults_from_character([T.value(chi, pc[m]) for m in range(cand.abs_order)], cand.abs_order)


def _triples(ctx: FixtureContext, cand_filter: Callable[[Candidate], bool] = lambda c: True):
    T = ctx.table
    names = T.names()
    for cand in enumerate_candidates(ctx):
        if not cand_filter(cand):
            continue
        for chi in range(T.k):
            if T.degrees[chi] > 1:
                spec = _spectrum(ctx, cand, chi)
                deg = mults_mod_center(spec, cand.o).deg
                yield cand, chi, names[chi], T.degrees[chi], deg, spec


def _power_is_identity(ctx: FixtureContext, cand: Candidate, m: int) -> bool:
    pc = ctx.conj.power_classes[cand.cls]
    ident = ctx.conj.power_classes[cand.cls][0]
    return pc[m % cand.abs_order] == ident


# ---------------------------------------------------------------------------
# SL_2, GL_2, GU_2


def verify_sl21(q: int = 8) -> LemmaReport:
    """SL_2(q), g^(q+1) = 1: the small-degree cases and their spectra."""
    if q <= 3:
        raise ValueError("need q > 3")
    ctx = context_for(fixture_id("SL", 2, q))
    rep = LemmaReport("sl21", {"q": q})
    for cand, chi, name, dim, deg, spec in _triples(ctx, lambda c: (q + 1) % c.abs_order == 0):
        if not 1 < deg < cand.o:
            continue
        N, p = cand.abs_order, cand.p
        sup = set(spec.support())
        note = ""
        if q % 2:
            bad_ev = 0 if p > 2 else N // 2  # (-1)^(p-1)
            ok = cand.o == (q + 1) // 2 and dim == deg == (q - 1) // 2 and bad_ev not in sup
            clause = "i"
        else:
            ok = cand.o == N == q + 1
            if dim == q:
                ok = ok and 0 not in sup
            elif dim == q - 1:
                # the missing pair {eps, eps^-1}; eps need not be primitive, its order goes in the note
                missing = sorted(set(range(N)) - sup)
                ok = ok and len(missing) == 2 and missing[0] + missing[1] == N
                if ok:
                    note = f"eps of order {N // gcd(missing[0], N)}"
            else:
                ok = False
            clause = "iii"
        rep.rows.append(LemmaRow(cand.name, N, cand.o, name, dim, deg, clause, ok, spec.mult, note))
    return rep


def _reducible_over_sl(ctx: FixtureContext, chi: int) -> bool:
    """<chi|_S, chi|_S> > 1 for S = SL (the determinant-one classes)."""
    C, T = ctx.conj, ctx.table
    K = ctx.spec.field
    total = None
    ssize = 0
    for c in range(C.k):
        if fm.det(C.rep_matrix(c), K) != 1:
            continue
        v = T.value(chi, c)
        term = v * v.conj() * C.sizes[c]
        total = term if total is None else total + term
        ssize += C.sizes[c]
    val = total.simplify()
    if any(val.coeffs[1:]):
        raise ArithmeticError("norm is not rational")
    return val.coeffs[0] > ssize


def verify_sl22(q: int = 7) -> LemmaReport:
    """GL_2(q), 3 < q = 3 mod 4, non-central 2-elements."""
    if not (q > 3 and q % 4 == 3):
        raise ValueError("need 3 < q = 3 mod 4")
    ctx = context_for(fixture_id("GL", 2, q))
    rep = LemmaReport("sl22", {"q": q})
    c = (q + 1).bit_length() - 1
    pow2 = 1 << c == q + 1
    for cand, chi, name, dim, deg, spec in _triples(ctx, lambda x: x.p == 2):
        if not 1 < deg < cand.o:
            continue
        clause, ok = "", False
        if pow2 and q + 1 >= 8:
            if dim == q and cand.o == q + 1 and deg == cand.o - 1:
                clause, ok = "i", True
            elif dim == q - 1 and cand.o == q + 1 and deg == cand.o - 2:
                clause, ok = "ii", True
            elif dim == q - 1 and cand.o == (q + 1) // 2 and deg == cand.o - 1:
                clause, ok = "iii", _reducible_over_sl(ctx, chi)
        rep.rows.append(LemmaRow(cand.name, cand.abs_order, cand.o, name, dim, deg, clause, ok, spec.mult))
    return rep


def verify_su2(q: int = 5) -> LemmaReport:
    """GU_2(q): 1 < deg < o(g) forces g^(q+1) = 1 and one of three shapes."""
    ctx = context_for(fixture_id("GU", 2, q))
    rep = LemmaReport("su2", {"q": q})
    for cand, chi, name, dim, deg, spec in _triples(ctx):
        if not 1 < deg < cand.o:
            continue
        pa = cand.o
        clause, ok = "", False
        if _power_is_identity(ctx, cand, q + 1):
            if q + 1 == pa and deg == dim == q:
                clause, ok = "i", True
            elif q + 1 == pa and dim == q - 1 and deg == q - 1:
                clause, ok = "ii", True
            elif q + 1 == 2 * pa and dim == q - 1 and 2 * deg == q - 1:
                clause, ok = "iii", True
        rep.rows.append(LemmaRow(cand.name, cand.abs_order, cand.o, name, dim, deg, clause, ok, spec.mult))
    return rep


# ---------------------------------------------------------------------------
# Weil modules via the closed formula


def _weil_degs(g: np.ndarray, n: int, q: int) -> tuple[int, int, list[MultVector]]:
    G = make_group("GU", n, q)
    K = G.field
    co = o_mod_center(g, G)
    ctx = WeilContext(n, q)
    N = co.abs_order
    powers = [fm.identity(n)]
    for _ in range(N - 1):
        powers.append(fm.mul(powers[-1], g, K))
    out = []
    for i in range(q + 1):
        spec = mults_from_character([weil_value(i, x, ctx) for x in powers], N)
        out.append(mults_mod_center(spec, co.o))
    return N, co.o, out


def verify_weil1(b: int = 1, q: int = 2) -> LemmaReport:
    """GU_{p^b}(q), q + 1 = p^c: Weil modules at an irreducible p-element have d = o(g)."""
    pp = prime_power(q + 1)
    if pp is None or pp[0] == 2:
        raise ValueError("need q + 1 a power of an odd prime")
    p = pp[0]
    n = p**b
    g, K = build_canonical_irreducible("SU", n, q)
    if not charpoly_irreducible(g, K)[1]:
        raise ArithmeticError("constructed element is reducible")
    N, o, mvs = _weil_degs(g, n, q)
    rep = LemmaReport("weil1", {"b": b, "q": q, "p": p})
    exc = (n, q) == (3, 2)
    for i, mv in enumerate(mvs):
        ok = mv.deg == o or exc
        rep.rows.append(LemmaRow("irr", N, o, f"zeta{i}", mv.dim, mv.deg, "exception" if exc and mv.deg != o else "", ok, mv.mult))
    return rep


def verify_weil2(b: int = 1, q: int = 2) -> LemmaReport:
    """GU_{p^b+1}(q): g = diag(x, 1) with g^(p^b) a pseudoreflection of order q + 1."""
    pp = prime_power(q + 1)
    if pp is None or pp[0] == 2:
        raise ValueError("need q + 1 a power of an odd prime")
    p = pp[0]
    n = p**b
    x, K = build_canonical_irreducible("SU", n, q)
    g = fm.identity(n + 1)
    g[:n, :n] = x
    h = fm.power(g, n, K)
    G = make_group("GU", n + 1, q)
    if is_pseudoreflection(h, K) is None or o_mod_center(h, G).o != q + 1:
        raise ArithmeticError("g^(p^b) is not a pseudoreflection of order q + 1")
    N, o, mvs = _weil_degs(g, n + 1, q)
    rep = LemmaReport("weil2", {"b": b, "q": q, "p": p})
    exc = (n, q) == (3, 2)
    for i, mv in enumerate(mvs):
        if mv.deg == n * q:
            clause, ok = "generic", True
        elif exc and mv.deg == n * q - 1:
            clause, ok = "exception", True
        else:
            clause, ok = "", False
        rep.rows.append(LemmaRow("diag(x,1)", N, o, f"zeta{i}", mv.dim, mv.deg, clause, ok, mv.mult))
    return rep


# ---------------------------------------------------------------------------
# irreducible elements of SL^eps_p and Sp_2n


def _irreducible(ctx: FixtureContext, cand: Candidate) -> bool:
    return charpoly_irreducible(ctx.conj.rep_matrix(cand.cls), ctx.spec.field)[1]


def verify_slsup(p: int = 3, q: int = 4, eps: str = "+") -> LemmaReport:
    """GL^eps_p(q): every dim > 1 irreducible gives deg = o(g) = p at irreducible p-elements."""
    fam = "GL" if eps == "+" else "GU"
    ctx = context_for(fixture_id(fam, p, q))
    rep = LemmaReport("slsup", {"p": p, "q": q, "eps": eps})
    exc = (p, q, eps) == (3, 2, "-")
    for cand, chi, name, dim, deg, spec in _triples(ctx, lambda c: c.p == p and _irreducible(ctx, c)):
        ok = (deg == cand.o == p) or exc
        rep.rows.append(LemmaRow(cand.name, cand.abs_order, cand.o, name, dim, deg, "exception" if exc else "", ok, spec.mult))
    if not rep.rows:
        rep.notes.append("no irreducible p-elements")
    return rep


def verify_sp1(n: int = 3, q: int = 2) -> LemmaReport:
    """Sp_2n(q) at irreducible p-elements: the cases with 1 < deg < o(g)."""
    ctx = context_for(fixture_id("Sp", 2 * n, q))
    rep = LemmaReport("sp1", {"n": n, "q": q})
    for cand, chi, name, dim, deg, spec in _triples(ctx, lambda c: _irreducible(ctx, c)):
        if not 1 < deg < cand.o:
            continue
        p, N, o = cand.p, cand.abs_order, cand.o
        head = p > 2 and o == N == (q**n + 1) // gcd(2, q + 1)
        clause, ok = "", False
        if head and q % 2 and n & (n - 1) == 0 and deg == o - 1 and sylow_cyclic(ctx.spec, p):
            clause, ok = "i", True
        elif head and (n, q, N) == (3, 2, 9) and dim == deg == 7:
            clause, ok = "ii", True
        rep.rows.append(LemmaRow(cand.name, N, o, name, dim, deg, clause, ok, spec.mult))
    return rep


# ---------------------------------------------------------------------------
# GU_3(q)


def o3_classes(ctx: FixtureContext) -> set[int]:
    """Classes of 3-elements of SU_3(2); they form the normal subgroup O_3(SU_3(2))."""
    C = ctx.conj
    K = ctx.spec.field
    out = set()
    for c in range(C.k):
        pp = prime_power(C.orders[c])
        if (C.orders[c] == 1 or (pp and pp[0] == 3)) and fm.det(C.rep_matrix(c), K) == 1:
            out.add(c)
    return out


def su31_clause(ctx: FixtureContext, cand: Candidate, chi: int, deg: int) -> str | None:
    """The clause (i)-(v) that accounts for deg < o(g) at l = 0, or None."""
    q = ctx.spec.q
    p, a, o, N = cand.p, cand.a, cand.o, cand.abs_order
    dim = ctx.table.degrees[chi]
    weil = chi in ctx.weil
    pseudo = ctx.is_pseudoreflection(cand.cls)
    if deg != o - 1:
        return None
    if q + 1 == p**a and weil and pseudo:
        return "i"
    if p**a == q * q - q + 1 and gcd(3, q + 1) == 1 and weil and dim == q * q - q:
        return "ii"
    if q == 3 and o == N == q + 1 and not pseudo and weil and dim == q * (q - 1):
        return "iv"
    if q == 2 and N == 9 and o == 3 and weil:
        return "v"
    return None


def verify_su31(q: int = 2) -> LemmaReport:
    """GU_3(q): deg = o(g) or one of the listed exceptions (l = 0)."""
    ctx = context_for(fixture_id("GU", 3, q))
    rep = LemmaReport("su31", {"q": q})
    T = ctx.table
    o3 = o3_classes(ctx) if q == 2 else set()
    skipped = 0
    for cand, chi, name, dim, deg, spec in _triples(ctx):
        if cand.cls in o3 and all(T.value(chi, c) == T.value(chi, 0) for c in o3):
            skipped += 1
            continue
        if deg == cand.o:
            clause, ok = "", True
        else:
            cl = su31_clause(ctx, cand, chi, deg)
            clause, ok = cl or "", cl is not None
        rep.rows.append(LemmaRow(cand.name, cand.abs_order, cand.o, name, dim, deg, clause, ok, spec.mult))
    if skipped:
        rep.notes.append(f"{skipped} pairs with g in O_3(S) contained in the kernel skipped")
    return rep


# ---------------------------------------------------------------------------
# cyclic Sylow rows


def verify_pcyclic(fixtures: tuple[str, ...] = DEFAULT_FIXTURES) -> LemmaReport:
    """Rows with deg = p^(a-1)(p-1) and cyclic Sylow p of G/Z(G) satisfy the m-clauses."""
    rep = LemmaReport("p-cyclic", {"fixtures": len(fixtures)})
    for fid in fixtures:
        ctx = context_for(fid)
        for v in check_fixture(ctx):
            if v.clause != "main2-ii":
                continue
            p, a = prime_power(v.o)
            try:
                m, tag = pcyclic_m(ctx.socle, p, v.o)
                ok, clause = ctx.quotient_sylow_cyclic(p), f"{tag} (m={m})"
            except ArithmeticError:
                ok, clause = False, ""
            rep.rows.append(LemmaRow(f"{fid}:{v.cls}", v.abs_order, v.o, v.char_id, v.dim, v.deg, clause, ok))
    return rep


VERIFIERS: dict[str, Callable[..., LemmaReport]] = {
    "sl21": verify_sl21,
    "sl22": verify_sl22,
    "su2": verify_su2,
    "weil1": verify_weil1,
    "weil2": verify_weil2,
    "slsup": verify_slsup,
    "sp1": verify_sp1,
    "su31": verify_su31,
    "p-cyclic": verify_pcyclic,
}


def verify_lemma(name: str, **params) -> LemmaReport:
    if name not in VERIFIERS:
        raise KeyError(f"unknown lemma {name!r}; choose from {', '.join(LEMMAS)}")
    return VERIFIERS[name](**params)
