"""Clause checker: candidate elements, minimal-polynomial degrees of every
irreducible character at them, clause matching and the phi(o(g)) - 1 bound.

Clause predicates are tried in a fixed order (first match wins):
main2-i, main2-v, main2-iv, main2-iii, main2-ii.  In a group outside the
family the theorem covers (soluble, or orthogonal of small dimension) every
triple other than main2-i is tagged out-of-hypothesis.  Otherwise triples that
match no clause are tagged excluded-M (socle with exceptional Schur
multiplier, compared with the stored small-degree table) or 'none', which is
a failure.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable

import numpy as np

from . import ffmat as fm
from .chartab import CharacterTable, ConjData
from .classgrp import GroupSpec, is_pseudoreflection
from .exactnum import euler_phi, prime_power
from .fixtures import Fixture, get_fixture
from .minpoly import MultVector, mults_from_character, mults_mod_center
from .sselem import pcyclic_m, sylow_cyclic_quotient_bruteforce
from .tablei import match_row
from .weilchar import identify_weil

CLAUSES = ("main2-i", "main2-v", "main2-iv", "main2-iii", "main2-ii", "excluded-M", "out-of-hypothesis", "none")
CSV_COLUMNS = ("fixture", "class", "|g|", "o(g)", "char-id", "degree", "deg", "clause", "pass")

# simple socles with exceptional Schur multiplier, keyed by (kind, n, q)
M_SOCLES = {
    ("L", 2, 4): "PSL2(4)",
    ("L", 3, 2): "PSL3(2)",
    ("L", 4, 2): "PSL4(2)",
    ("U", 4, 2): "PSU4(2)",
    ("S", 3, 2): "PSp6(2)",
    ("L", 2, 9): "PSL2(9)",
    ("L", 3, 4): "PSL3(4)",
    ("U", 4, 3): "PSU4(3)",
    ("U", 6, 2): "PSU6(2)",
    ("O", 3, 3): "O7(3)",
    ("O+", 4, 2): "O8+(2)",
}
SOLUBLE = {("L", 2, 2), ("L", 2, 3), ("U", 3, 2)}


def socle_of(spec: GroupSpec) -> tuple:
    """(kind, n, q) of soc(G/Z(G)): L_n, U_n, S = PSp_{2n}, O+-/O with Witt index n."""
    fam, n, q = spec.family, spec.n, spec.q
    if fam in ("GL", "SL"):
        return ("L", n, q)
    if fam in ("GU", "SU"):
        return ("L", 2, q) if n == 2 else ("U", n, q)
    if fam in ("Sp", "CSp"):
        return ("S", n // 2, q)
    if fam in ("GO", "SO", "Omega"):
        if n % 2:
            return ("O", (n - 1) // 2, q)
        return ("O" + (spec.eps or "+"), n // 2, q)
    raise ValueError(f"unknown family {fam}")


def in_family_c(spec: GroupSpec) -> bool:
    """Whether G is one of the insoluble classical groups the theorem is stated for."""
    kind, n, q = socle_of(spec)
    if (kind, n, q) in SOLUBLE:
        return False
    if spec.family in ("GO", "SO", "Omega"):
        return (spec.n % 2 == 1 and spec.n >= 7 and q % 2 == 1) or (spec.n % 2 == 0 and spec.n >= 8)
    if spec.family in ("Sp", "CSp"):
        return spec.n >= 4
    return spec.n >= 2


@dataclass(frozen=True)
class ClauseVerdict:
    fixture: str
    cls: str
    abs_order: int
    o: int
    char_id: str
    dim: int
    deg: int
    clause: str
    bound: int
    passed: bool
    note: str = ""

    def csv_row(self) -> list:
        return [self.fixture, self.cls, self.abs_order, self.o, self.char_id, self.dim, self.deg, self.clause,
                "pass" if self.passed else "fail"]  # fmt: skip


@dataclass(frozen=True)
class Candidate:
    cls: int
    name: str
    abs_order: int
    o: int
    p: int
    a: int


@dataclass(eq=False)
class FixtureContext:
    """Everything the clause predicates need about one enumerated group."""

    fixture: Fixture

    @property
    def spec(self) -> GroupSpec:
        return self.fixture.spec

    @property
    def conj(self) -> ConjData:
        return self.fixture.conj

    @property
    def table(self) -> CharacterTable:
        return self.fixture.table

    @cached_property
    def socle(self) -> tuple:
        return socle_of(self.spec)

    @cached_property
    def unitary(self) -> bool:
        return self.spec.family in ("GU", "SU")

    @cached_property
    def center(self) -> set[int]:
        return set(self.conj.center)

    @cached_property
    def orders_mod_center(self) -> list[int]:
        C = self.conj
        out = []
        for pc in C.power_classes:
            N = len(pc)
            out.append(next(d for d in range(1, N + 1) if N % d == 0 and pc[d % N] in self.center))
        return out

    @cached_property
    def weil(self) -> dict[int, tuple[int, int]]:
        if not self.unitary:
            return {}
        return identify_weil(self.table, self.spec.q)

    def element_power(self, cls: int, m: int) -> np.ndarray:
        return fm.power(self.conj.rep_matrix(cls), m, self.spec.field)

    def is_pseudoreflection(self, cls: int, m: int = 1) -> bool:
        return is_pseudoreflection(self.element_power(cls, m), self.spec.field) is not None

    def quotient_sylow_cyclic(self, p: int) -> bool:
        C = self.conj
        zsize = sum(C.sizes[i] for i in self.center)
        return sylow_cyclic_quotient_bruteforce(self.orders_mod_center, C.group.size // zsize, p)

    def mults(self, cand: Candidate, chi: int) -> MultVector:
        C, T = self.conj, self.table
        pc = C.power_classes[cand.cls]
        vals = [T.value(chi, pc[m]) for m in range(cand.abs_order)]
        return mults_mod_center(mults_from_character(vals, cand.abs_order), cand.o)

    def deg(self, cand: Candidate, chi: int) -> int:
        return self.mults(cand, chi).deg


def enumerate_candidates(ctx: FixtureContext) -> list[Candidate]:
    """One class per p-element (p not dividing q) with o(g) > 1.

    Every semisimple g with o(g) = p^a has its p-part in such a class, and the
    p'-part is central modulo which the degree does not change; so these
    classes represent all candidates.
    """
    C = ctx.conj
    out = []
    for c in range(C.k):
        N, o = C.orders[c], ctx.orders_mod_center[c]
        if o == 1 or gcd(N, ctx.spec.q) != 1:
            continue
        pp = prime_power(N)
        if pp is None:
            continue
        p, a = prime_power(o)
        out.append(Candidate(c, C.names[c], N, o, p, a))
    return out


def _weil_deg_ok_v(ctx: FixtureContext, cand: Candidate, dim: int, deg: int) -> bool:
    kind, n, q = ctx.socle
    if kind != "L":
        return False
    if not _is_prime(n) or cand.o != (q**n - 1) // (q - 1):
        return False
    if not (n == 2 and q % 2 == 0):  # n > 2 needs l = p
        return False
    return dim == deg and deg in (cand.o - 1, cand.o - 2)


def _is_prime(n: int) -> bool:
    pp = prime_power(n)
    return pp is not None and pp[1] == 1


def _clause_iv(ctx: FixtureContext, cand: Candidate, chi: int, deg: int) -> bool:
    n, q = ctx.spec.n, ctx.spec.q
    p, a = cand.p, cand.a
    if not (ctx.unitary and a >= 2 and q + 1 == p and n % p ** (a - 1) == 1 % p ** (a - 1)):
        return False
    if chi not in ctx.weil or not ctx.is_pseudoreflection(cand.cls, p ** (a - 1)):
        return False
    return deg == p ** (a - 1) * (p - 1) or ((n, p**a, q) == (4, 9, 2) and deg == 5)


def _clause_iii(ctx: FixtureContext, cand: Candidate, chi: int, deg: int) -> bool:
    n, q = ctx.spec.n, ctx.spec.q
    p = cand.p
    if not (ctx.unitary and cand.o == p == q + 1 and chi in ctx.weil and deg == p - 1):
        return False
    if not fm.is_identity(ctx.element_power(cand.cls, q + 1)):
        return False
    return n <= 3 or ctx.is_pseudoreflection(cand.cls)


def _clause_ii(ctx: FixtureContext, cand: Candidate, deg: int) -> tuple[bool, str]:
    p, a = cand.p, cand.a
    if not (p > 2 and deg == p ** (a - 1) * (p - 1) and ctx.quotient_sylow_cyclic(p)):
        return False, ""
    try:
        m, tag = pcyclic_m(ctx.socle, p, p**a)
    except ArithmeticError:
        return False, "p-cyclic clause fails"
    return True, f"m={m} clause {tag}"


def classify_clause(ctx: FixtureContext, cand: Candidate, chi: int, deg: int) -> tuple[str, str]:
    """(clause, note) for one triple; first match wins."""
    p, a = cand.p, cand.a
    dim = ctx.table.degrees[chi]
    if p**a >= deg > p ** (a - 1) * (p - 1):
        return "main2-i", ""
    if not in_family_c(ctx.spec):
        return "out-of-hypothesis", "group outside the covered family"
    if _weil_deg_ok_v(ctx, cand, dim, deg):
        return "main2-v", ""
    if _clause_iv(ctx, cand, chi, deg):
        return "main2-iv", ""
    if _clause_iii(ctx, cand, chi, deg):
        return "main2-iii", ""
    ok, note = _clause_ii(ctx, cand, deg)
    if ok:
        return "main2-ii", note
    if ctx.socle in M_SOCLES:
        return "excluded-M", ""
    return "none", note


def verdict_for(ctx: FixtureContext, cand: Candidate, chi: int) -> ClauseVerdict:
    dim = ctx.table.degrees[chi]
    deg = ctx.deg(cand, chi)
    if deg > cand.o:
        raise ArithmeticError("deg exceeds o(g)")
    clause, note = classify_clause(ctx, cand, chi, deg)
    bound = euler_phi(cand.o) - 1
    passed = deg >= bound
    if clause == "excluded-M":
        row = match_row(M_SOCLES[ctx.socle], cand.o, dim, deg)
        if row is not None:
            note = f"table row {row.group} {'/'.join(row.names)} dim {row.dim} deg {row.deg}"
            passed = True
        elif not passed:
            note = "no table row"
    elif clause == "out-of-hypothesis" and ctx.unitary and ctx.spec.n == 3:
        from .lemmas import su31_clause

        cl = su31_clause(ctx, cand, chi, deg) if deg < cand.o else None
        note = f"GU3 exception ({cl})" if cl else note
    elif clause == "none":
        passed = False
    name = ctx.table.names()[chi]
    if chi in ctx.weil:
        i, _ = ctx.weil[chi]
        name += f"[zeta{i}]"
    return ClauseVerdict(ctx.fixture.fid, cand.name, cand.abs_order, cand.o, name, dim, deg, clause, bound, passed, note)


def check_fixture(ctx: FixtureContext) -> list[ClauseVerdict]:
    out = []
    T = ctx.table
    for cand in enumerate_candidates(ctx):
        for chi in range(T.k):
            if T.degrees[chi] > 1:
                out.append(verdict_for(ctx, cand, chi))
    return out


@dataclass
class PhiSummary:
    total: int
    failures: list[ClauseVerdict]
    witnesses: list[ClauseVerdict]  # deg = phi(o) - 1 attained
    below_bound_M: list[ClauseVerdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_phi_bound(verdicts: Iterable[ClauseVerdict]) -> PhiSummary:
    """Every triple outside the exceptional-multiplier socles has deg >= phi(o) - 1.

    Witnesses of sharpness are rows with deg = phi(o) - 1 among the clause (v)
    rows and the tabulated exceptional rows.
    """
    vs = list(verdicts)
    fails = [v for v in vs if not v.passed or (v.clause not in ("excluded-M",) and v.deg < v.bound)]
    wit = [v for v in vs if v.deg == v.bound and v.clause in ("main2-v", "excluded-M")]
    low_m = [v for v in vs if v.clause == "excluded-M" and v.deg < v.bound]
    return PhiSummary(len(vs), fails, wit, low_m)


# ---------------------------------------------------------------------------
# reports


def verdicts_csv(verdicts: Iterable[ClauseVerdict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for v in verdicts:
        w.writerow(v.csv_row())
    return buf.getvalue()


def verdicts_json(verdicts: Iterable[ClauseVerdict], extra: dict | None = None) -> str:
    rows = []
    for v in verdicts:
        d = asdict(v)
        rows.append(d)
    doc = {"columns": list(CSV_COLUMNS), "rows": rows}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def context_for(fid: str, seed: int = 1) -> FixtureContext:
    return FixtureContext(get_fixture(fid, seed))
