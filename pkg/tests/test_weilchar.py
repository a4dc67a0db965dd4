from __future__ import annotations

import random
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhcheck import ffmat as fm
from hhcheck.classgrp import e_dim, make_group, random_member
from hhcheck.exactnum import CycInt
from hhcheck.fixtures import block_embed, get_fixture
from hhcheck.minpoly import mults_from_character, mults_mod_center
from hhcheck.sselem import build_canonical_irreducible, o_mod_center
from hhcheck.weilchar import (
    WeilContext,
    branching_verify,
    export_weil_table,
    identify_weil,
    pseudoreflection,
    pseudoreflection_restriction,
    reducible_weil,
    weil_class_functions,
    weil_degree,
    weil_value,
)


def _zero():
    return CycInt.from_int(0)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_context_roots(q):
    ctx = WeilContext(3, q)
    K = ctx.field
    assert K.order(ctx.delta) == q + 1
    assert ctx.xi(q + 1) == CycInt.from_int(1)
    assert all(ctx.xi(j) != CycInt.from_int(1) for j in range(1, q + 1))


def test_e_dim_examples():
    K = WeilContext(3, 2).field
    assert e_dim(fm.identity(3), 1, K) == 3
    g = pseudoreflection(3, 2)
    assert e_dim(g, 1, K) == 2
    x, _ = build_canonical_irreducible("SU", 3, 2)
    assert all(e_dim(x, lam, K) == 0 for lam in range(1, K.q))


def test_reducible_weil_examples():
    assert reducible_weil(fm.identity(3), 2) == 8
    x, _ = build_canonical_irreducible("SU", 3, 2)
    assert reducible_weil(x, 2) == -1
    # (-1)^n (-q)^e: degree q^n at the identity for every n, hence -8 (not 8) here
    assert reducible_weil(pseudoreflection(4, 2), 2) == -8
    assert reducible_weil(fm.identity(4), 2) == 16


def test_weil_value_examples():
    ctx = WeilContext(3, 2)
    assert weil_value(0, fm.identity(3), ctx) == CycInt.from_int(2)
    assert weil_value(1, fm.identity(3), ctx) == CycInt.from_int(3)
    x, _ = build_canonical_irreducible("SU", 3, 2)
    assert weil_value(0, x, ctx) == CycInt.from_int(-1)
    assert weil_value(1, x, ctx) == _zero()
    with pytest.raises(ValueError):
        weil_value(3, x, ctx)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_n1_weil_characters(q):
    """GU_1(q) is cyclic of order q + 1; zeta^0 vanishes and the others are linear."""
    ctx = WeilContext(1, q)
    gens = [fm.mat([[ctx.delta_pow(k)]]) for k in range(q + 1)]
    assert all(weil_value(0, g, ctx) == _zero() for g in gens)
    for i in range(1, q + 1):
        vals = [weil_value(i, g, ctx) for g in gens]
        assert vals[0] == CycInt.from_int(1)
        for a in range(q + 1):
            for b in range(q + 1):
                assert vals[(a + b) % (q + 1)] == vals[a] * vals[b]


@given(st.integers(2, 7), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_degrees_sum_and_branch(n, q):
    assert sum(weil_degree(i, n, q) for i in range(q + 1)) == q**n
    for i in range(q + 1):
        assert weil_degree(i, n + 1, q) == sum(weil_degree(j, n, q) for j in range(q + 1) if j != i)
        assert weil_value(i, fm.identity(n), WeilContext(n, q)) == CycInt.from_int(weil_degree(i, n, q))


@pytest.mark.parametrize("fid,q", [("GU3(2)", 2), ("GU2(3)", 3), ("GU2(4)", 4), ("GU3(3)", 3)])
def test_branching_every_class(fid, q):
    H = get_fixture(fid).conj
    for i in range(q + 1):
        rep = branching_verify(i, H, q, block_embed(H.group.n + 1))
        assert rep.ok and rep.classes_checked == H.k


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (2, 4), (5, 2), (4, 3)])
def test_pseudoreflection_restriction_matches_dft(n, q):
    g = pseudoreflection(n, q)
    ctx = WeilContext(n, q)
    K = ctx.field
    for i in range(q + 1):
        vals = [weil_value(i, fm.power(g, m, K), ctx) for m in range(q + 1)]
        mv = mults_from_character(vals, q + 1)
        mults, deg = pseudoreflection_restriction(i, n, q)
        assert list(mv.mult) == mults
        assert deg == mv.deg
        assert sum(mults) == weil_degree(i, n, q)


def test_pseudoreflection_restriction_examples():
    mults, deg = pseudoreflection_restriction(0, 4, 2)
    assert mults == [0, 3, 3] and deg == 2
    assert pseudoreflection_restriction(1, 3, 2)[0] == [0, 2, 1]


@pytest.mark.parametrize("fid,q", [("GU3(2)", 2), ("GU4(2)", 2), ("GU2(3)", 3), ("GU3(3)", 3), ("GU2(4)", 4)])
def test_formula_rows_are_table_rows(fid, q):
    T = get_fixture(fid).table
    for z in weil_class_functions(T.conj, q):
        assert any(T.values[r] == z.values for r in range(T.k))
    found = identify_weil(T, q)
    assert all(T.degrees[r] in (weil_degree(0, T.conj.group.n, q), weil_degree(1, T.conj.group.n, q)) for r in found)
    if T.conj.group.n >= 3:
        # untwisted rows are recorded under their own label
        assert sorted(i for i, lam in found.values() if lam == 0) == list(range(q + 1))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_class_function_property(seed):
    G = make_group("GU", 3, 3)
    K = G.field
    rng = random.Random(seed)
    h, g = random_member(G, rng), random_member(G, rng)
    conj = fm.mul(fm.mul(g, h, K), fm.inverse(g, K), K)
    ctx = WeilContext(3, 3)
    for i in range(4):
        assert weil_value(i, h, ctx) == weil_value(i, conj, ctx)


@pytest.mark.parametrize("n,q", [(3, 5), (5, 4), (3, 8), (9, 8), (5, 9)])
def test_irreducible_element_attains_order(n, q):
    """At the canonical irreducible element every zeta^i has deg = o(g)."""
    x, K = build_canonical_irreducible("SU", n, q)
    o = o_mod_center(x, make_group("GU", n, q)).o
    # Weil values live in Q(zeta_{q+1}); sample the powers over a common period
    N = lcm(fm.order(x, K), q + 1)
    ctx = WeilContext(n, q)
    powers = [fm.power(x, m, K) for m in range(N)]
    for i in range(q + 1):
        vals = [weil_value(i, P, ctx) for P in powers]
        assert mults_mod_center(mults_from_character(vals, N), o).deg == o


def test_export_schema():
    C = get_fixture("GU3(2)").conj
    doc = export_weil_table(C, 2)
    assert len(doc["characters"]) == 3
    assert [c["degree"] for c in doc["characters"]] == [2, 3, 3]
