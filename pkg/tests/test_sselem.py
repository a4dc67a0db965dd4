from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hhcheck import ffmat as fm
from hhcheck.classgrp import (
    group_order,
    invariant_totally_singular_subspace,
    make_group,
    preserves_form,
    random_member,
)
from hhcheck.exactnum import mult_order, p_part, prime_field
from hhcheck.sselem import (
    CompositeOrderError,
    build_canonical_irreducible,
    build_torus_element,
    charpoly_irreducible,
    classify,
    cyclotomic_exponents,
    o_mod_center,
    order_polynomial,
    p_part_element,
    pcyclic_m,
    spectrum_frobenius_orbit,
    sylow_cyclic,
    sylow_cyclic_bruteforce,
)
from hhcheck.fixtures import get_fixture


def test_charpoly_examples():
    K = prime_field(2)
    comp = fm.mat([[0, 1], [1, 1]])  # companion of t^2 + t + 1
    cp, irr = charpoly_irreducible(comp, K)
    assert irr and cp.coeffs == (1, 1, 1)
    cp, irr = charpoly_irreducible(fm.identity(2), K)
    assert not irr and cp.coeffs == (1, 0, 1)  # (t - 1)^2 = t^2 + 1 over GF(2)
    x, K4 = build_canonical_irreducible("SL", 9, 4)
    cp, irr = charpoly_irreducible(x, K4)
    assert irr and cp.degree == 9


def test_o_mod_center_examples():
    G = make_group("GL", 3, 4)
    assert o_mod_center(fm.scalar(3, 2), G).o == 1
    x, _ = build_canonical_irreducible("SU", 3, 2)
    co = o_mod_center(x, make_group("GU", 3, 2))
    assert (co.o, co.p, co.a, co.abs_order) == (3, 3, 1, 9)
    x, _ = build_canonical_irreducible("SL", 9, 4)
    assert o_mod_center(x, make_group("GL", 9, 4)).o == 9
    x, _ = build_canonical_irreducible("SU", 9, 8)
    assert o_mod_center(x, make_group("GU", 9, 8)).o == 9


def test_o_mod_center_composite():
    g = fm.identity(2)
    g[0, 0] = 3  # order 6
    with pytest.raises(CompositeOrderError):
        o_mod_center(g, make_group("GL", 2, 7))
    assert o_mod_center(g, make_group("GL", 2, 7), require_prime_power=False).o == 6


def test_spectrum_examples():
    K = prime_field(5)
    lam, L, orbit = spectrum_frobenius_orbit(fm.mat([[3]]), K)
    assert lam == 3 and orbit == [3]

    K2 = prime_field(2)
    g = fm.mat([[0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])  # companion of Phi_5
    assert fm.order(g, K2) == 5
    lam, L, orbit = spectrum_frobenius_orbit(g, K2)
    assert L.q == 16 and L.order(lam) == 5
    assert orbit == [lam, L.pow(lam, 2), L.pow(lam, 4), L.pow(lam, 8)]

    x, K4 = build_canonical_irreducible("SU", 3, 2)
    lam, L, orbit = spectrum_frobenius_orbit(x, K4)
    assert len(orbit) == 3 and L.q == 64

    with pytest.raises(ValueError):
        spectrum_frobenius_orbit(fm.identity(2), K)


def test_classify_examples():
    G = make_group("GU", 3, 2)
    x, _ = build_canonical_irreducible("SU", 3, 2)
    c = classify(x, G)
    assert (c.tag, c.o, c.abs_order, c.p) == ("irreducible", 3, 9, 3)
    assert all(c.checks.values())

    # distinct diagonal entries: each eigenline is spanned by a nonsingular basis vector
    w = G.field.root_of_unity(3)
    d = fm.identity(3)
    d[1, 1], d[2, 2] = w, G.field.mul(w, w)
    assert classify(d, G).tag == "torus-diagonal"
    # a repeated eigenvalue gives a 2-dim eigenspace, which contains isotropic vectors
    G4 = make_group("GU", 4, 2)
    d4 = fm.identity(4)
    d4[0, 0], d4[1, 1] = w, G4.field.mul(w, w)
    assert classify(d4, G4).tag == "parabolic"

    S = make_group("Sp", 4, 3)
    g = fm.identity(4)
    g[0, 0], g[2, 2] = 2, 2
    assert classify(g, S).tag == "parabolic"

    with pytest.raises(ValueError):
        classify(fm.mat([[1, 1], [0, 1]]), make_group("SL", 2, 3))


@pytest.mark.parametrize("fam,n,q,d", [("Sp", 4, 3, 5), ("GO-", 4, 2, 5), ("Sp", 6, 2, 9), ("GU", 3, 2, 9), ("Sp", 4, 3, 1)])
def test_torus_elements(fam, n, q, d):
    g, G = build_torus_element(fam, n, q, d)
    assert preserves_form(g, G.form) == (True, 1)
    assert fm.order(g, G.field) == d
    if d == 1:
        assert fm.is_identity(g)
    elif d > 2 and fam != "GU":
        assert charpoly_irreducible(g, G.field)[1]


def test_torus_bad_order():
    with pytest.raises(ValueError):
        build_torus_element("Sp", 4, 3, 7)


@pytest.mark.parametrize("side,n,q", [("SL", 3, 4), ("SL", 3, 7), ("SL", 5, 11), ("SU", 3, 2), ("SU", 3, 5), ("SU", 5, 4), ("SL", 9, 4)])
def test_canonical_element_invariants(side, n, q):
    x, K = build_canonical_irreducible(side, n, q)
    p, b = sympy.factorint(n).popitem()
    c = sympy.multiplicity(p, q - 1 if side == "SL" else q + 1)
    G = make_group("GL" if side == "SL" else "GU", n, q)
    assert G.contains(x)
    assert o_mod_center(x, G).o == n
    assert fm.order(x, K) == p ** (b + c)
    # x^p is a nontrivial scalar
    if b == 1:
        xp = fm.power(x, p, K)
        assert fm.is_scalar(xp) and not fm.is_identity(xp)
    # conjugate to its q-th powers: same characteristic polynomial
    cp = fm.charpoly(x, K)
    for i in range(1, n):
        assert fm.charpoly(fm.power(x, K.q**i, K), K) == cp
    if K.q**n <= 1 << 16:
        # eigenvalue order p^(b+c) and a Frobenius orbit of size n
        lam, L, orbit = spectrum_frobenius_orbit(x, K)
        assert L.order(lam) == p ** (b + c) and len(orbit) == n


def test_canonical_preconditions():
    with pytest.raises(ValueError):
        build_canonical_irreducible("SL", 3, 5)
    with pytest.raises(ValueError):
        build_canonical_irreducible("SU", 4, 3)


@pytest.mark.parametrize(
    "fam,n,eps",
    [("GL", 3, None), ("SL", 4, None), ("GU", 3, None), ("SU", 4, None), ("Sp", 6, None), ("GO", 5, None), ("GO", 6, "+"), ("GO", 8, "-")],
)
def test_order_polynomial_matches_group_order(fam, n, eps):
    for q in (2, 3, 4, 5, 7):
        if fam == "GO" and n % 2 and q % 2 == 0:
            continue
        val = sum(c * q**i for i, c in enumerate(order_polynomial(fam, n, eps)))
        ratio, rem = divmod(group_order(fam, n, q, eps), val)
        assert rem == 0
        # what is left is a power of the characteristic, times 2 for the full orthogonal group
        if fam == "GO":
            ratio //= 2
        assert sympy.primefactors(ratio) in ([], sympy.primefactors(q))
        exps = cyclotomic_exponents(order_polynomial(fam, n, eps))
        prod = 1
        for m, r in exps.items():
            prod *= int(sympy.cyclotomic_poly(m, q)) ** r
        assert prod == abs(val)


def test_sylow_cyclic_examples():
    assert sylow_cyclic(make_group("Sp", 6, 2), 7)
    assert not sylow_cyclic(make_group("SL", 3, 4), 3)
    with pytest.raises(ValueError):
        sylow_cyclic(make_group("SL", 2, 5), 5)


def test_sylow_bruteforce_examples():
    C = get_fixture("SL2(5)").conj
    assert sylow_cyclic_bruteforce(C.orders, 120, 5)
    C = get_fixture("SL2(9)").conj
    assert not sylow_cyclic_bruteforce(C.orders, C.group.size, 3)
    assert sylow_cyclic_bruteforce([1, 2], 2, 7)


@pytest.mark.parametrize("fid", ["SL2(7)", "SL2(13)", "GU3(3)", "Sp4(3)", "GO-4(3)", "SL3(3)"])
def test_sylow_agrees_with_bruteforce(fid):
    fx = get_fixture(fid)
    C = fx.conj
    for p in sympy.primefactors(C.group.size):
        if fx.spec.q % p:
            assert sylow_cyclic(fx.spec, p) == sylow_cyclic_bruteforce(C.orders, C.group.size, p)


def test_pcyclic_examples():
    assert pcyclic_m(("S", 2, 2), 5, 5) == (4, "iii")
    assert pcyclic_m(("U", 3, 3), 7) == (6, "ii")
    assert pcyclic_m(("L", 2, 4), 5, 5) == (2, "iii")
    assert pcyclic_m(("L", 2, 9), 5, 5) == (2, "iii")
    assert pcyclic_m(("L", 3, 2), 7) == (3, "i")
    with pytest.raises(ArithmeticError):
        pcyclic_m(("L", 2, 9), 5, 25)
    with pytest.raises(ArithmeticError):
        pcyclic_m(("L", 3, 4), 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_p_part_normalisation(seed):
    G = make_group("GL", 3, 4)
    K = G.field
    g = random_member(G, random.Random(seed))
    N = fm.order(g, K)
    if N % 2 == 0:
        return
    for p in sympy.primefactors(N):
        h = p_part_element(g, K, p)
        assert fm.order(h, K) == p_part(N, p)
        # h is a power of g, so it commutes with g
        assert (fm.mul(g, h, K) == fm.mul(h, g, K)).all()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_irreducible_tag_has_no_singular_subspace(seed):
    G = make_group("Sp", 4, 3)
    g = random_member(G, random.Random(seed))
    N = fm.order(g, G.field)
    if N % 3 == 0:
        return
    try:
        c = classify(g, G)
    except ValueError:
        return
    if c.tag == "irreducible":
        assert invariant_totally_singular_subspace(g, G.form) is None
        assert mult_order(3, c.p) == c.k
