from __future__ import annotations

import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhcheck import ffmat as fm
from hhcheck.check import context_for, enumerate_candidates
from hhcheck.exactnum import CycInt, field_of_size, prime_field
from hhcheck.fixtures import get_fixture
from hhcheck.minpoly import (
    MultVector,
    block_shift,
    deg_of,
    direct_sum,
    filtr_deg,
    free_bound,
    jordan_block,
    jordan_tensor,
    jordan_type_unipotent,
    kron,
    matrix_minpoly_deg,
    mults_from_character,
    mults_mod_center,
    perm_rule,
    root1_bounds,
    tensor_deg,
    unipotent_filtr_instance,
)
from hhcheck.sselem import build_canonical_irreducible


def _values_from_mults(mults):
    """chi(g^m) for the diagonal action with the given eigenvalue multiplicities."""
    N = len(mults)
    out = []
    for m in range(N):
        c = [0] * N
        for j, k in enumerate(mults):
            c[(j * m) % N] += k
        out.append(CycInt(N, c))
    return out


def _rand_unitri(k, p, rng):
    A = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        A[i, i] = 1
        for j in range(i + 1, k):
            A[i, j] = rng.randrange(p)
    return A


def test_mults_examples():
    assert mults_from_character([2, 0], 2).mult == (1, 1)
    assert deg_of(MultVector(2, (1, 1))) == 2
    with pytest.raises(ValueError):
        MultVector(2, (0, -1))
    with pytest.raises(ValueError):
        deg_of(MultVector(2, (0, 0)))
    with pytest.raises(ArithmeticError):
        mults_from_character([2, 1], 2)


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_order9_rational_formula(m0, m3, m1):
    mults = [m0, m1, m1, m3, m1, m1, m3, m1, m1]
    vals = _values_from_mults(mults)
    t1, tg, tg3 = vals[0].to_int(), vals[1].to_int(), vals[3].to_int()
    mv = mults_from_character(vals, 9)
    assert mv.mult == tuple(mults)
    assert mv.mult[0] * 9 == t1 + 2 * tg3 + 6 * tg
    assert mv.mult[3] * 9 == t1 + 2 * tg3 - 3 * tg


@given(st.sampled_from([4, 5, 6, 8, 9, 12]), st.data())
def test_dft_roundtrip(N, data):
    mults = data.draw(st.lists(st.integers(0, 4), min_size=N, max_size=N).filter(any))
    mv = mults_from_character(_values_from_mults(mults), N)
    assert list(mv.mult) == mults
    assert mv.deg == sum(1 for m in mults if m)


def test_sl28_degree7_spectrum():
    ctx = context_for("SL2(8)")
    T = ctx.table
    for cand in enumerate_candidates(ctx):
        if cand.abs_order != 9:
            continue
        pc = ctx.conj.power_classes[cand.cls]
        chi = T.degrees.index(7)
        vals = [T.value(r, pc[m]) for r in (chi,) for m in range(9)]
        mv = mults_from_character(vals, 9)
        missing = [j for j in range(9) if mv.mult[j] == 0]
        if mv.deg == 7:
            assert len(missing) == 2 and sum(missing) == 9


def test_mults_mod_center_rescales():
    # eigenvalues zeta_6^1, zeta_6^3, zeta_6^5 : g^3 is scalar, o = 3
    mv = MultVector(6, (0, 2, 0, 1, 0, 1))
    red = mults_mod_center(mv, 3)
    assert red.mult == (2, 1, 1) and red.deg == 3
    with pytest.raises(ArithmeticError):
        mults_mod_center(MultVector(6, (1, 1, 0, 0, 0, 0)), 3)


@pytest.mark.parametrize("fid", ["SL2(5)", "SL2(8)", "GU3(2)", "SL3(2)"])
def test_dft_sound_and_galois_constant(fid):
    T = get_fixture(fid).table
    C = T.conj
    for c in range(C.k):
        pc = C.power_classes[c]
        N = len(pc)
        for chi in range(T.k):
            vals = [T.value(chi, pc[m]) for m in range(N)]
            mv = mults_from_character(vals, N)
            assert mv.dim == T.degrees[chi]
            if all(v.is_integer() for v in vals):
                for t in range(1, N):
                    if gcd(t, N) == 1:
                        assert all(mv.mult[j] == mv.mult[(j * t) % N] for j in range(N))


def test_matrix_minpoly_examples():
    K3 = prime_field(3)
    assert matrix_minpoly_deg(fm.identity(4), K3) == 1
    for p in (2, 3, 5, 7):
        K = prime_field(p)
        assert matrix_minpoly_deg(jordan_block(p, K), K) == p
    J2 = jordan_block(2, K3)
    assert matrix_minpoly_deg(kron(J2, J2, K3), K3) == 3


def test_jordan_tensor_examples():
    assert jordan_tensor(2, 2, 3).partition == (3, 1)
    assert jordan_tensor(1, 4, 5).partition == (4,)
    assert jordan_tensor(3, 3, 3).partition == (3, 3, 3)
    with pytest.raises(ValueError):
        jordan_tensor(3, 2, 5)


@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_jordan_tensor_matches_oracle(p, data):
    m = data.draw(st.integers(1, p))
    l = data.draw(st.integers(1, m))
    K = prime_field(p)
    jt = jordan_tensor(l, m, p)
    oracle = jordan_type_unipotent(kron(jordan_block(l, K), jordan_block(m, K), K), K)
    assert sorted(jt.partition) == sorted(oracle)
    assert jt.largest == min(p, l + m - 1)
    assert sum(jt.partition) == l * m


def test_tensor_deg_examples():
    assert tensor_deg([2, 2], 3) == 3
    assert tensor_deg([1, 6], 7) == 6
    K = prime_field(5)
    J2 = jordan_block(2, K)
    M = kron(kron(J2, J2, K), J2, K)
    assert tensor_deg([2, 2, 2], 5) == matrix_minpoly_deg(M, K) == 4


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(1, 4), min_size=2, max_size=3))
def test_tensor_deg_matches_oracle(p, sizes):
    K = prime_field(p)
    sizes = [min(s, p) for s in sizes]
    M = jordan_block(sizes[0], K)
    for s in sizes[1:]:
        M = kron(M, jordan_block(s, K), K)
    assert tensor_deg(sizes, p) == matrix_minpoly_deg(M, K)


def test_perm_rule_examples():
    K = prime_field(2)
    assert perm_rule(1, 5) == 5
    one = fm.identity(1)
    for s in (2, 4, 8):
        assert matrix_minpoly_deg(block_shift([one] * s), K) == perm_rule(s, 1)
    K3 = prime_field(3)
    J = jordan_block(2, K3)
    g = block_shift([J, fm.identity(2), fm.identity(2)])
    assert matrix_minpoly_deg(fm.power(g, 3, K3)[:2, :2], K3) == 2
    assert matrix_minpoly_deg(g, K3) == perm_rule(3, 2) == 6


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_perm_rule_random(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5, 7])
    K = prime_field(p)
    k = rng.randint(1, 4)
    s = p ** rng.randint(1, 2) if p < 5 else p
    g = block_shift([_rand_unitri(k, p, rng) for _ in range(s)])
    gs = fm.power(g, s, K)[:k, :k]
    assert matrix_minpoly_deg(g, K) == perm_rule(s, matrix_minpoly_deg(gs, K))


def test_root1_examples():
    assert root1_bounds(1, 5, 1) == (1, 5)
    assert root1_bounds(2, 3, 1) == (4, 6)
    K = prime_field(3)
    b = jordan_block(5, K)
    assert matrix_minpoly_deg(fm.power(b, 3, K), K) == 2
    lo, hi = root1_bounds(2, 3, 1)
    assert lo <= matrix_minpoly_deg(b, K) == 5 <= hi


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_root1_random(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5, 7])
    K = prime_field(p)
    b = direct_sum([jordan_block(rng.randint(1, 2 * p), K) for _ in range(rng.randint(1, 3))])
    b = fm.mul(fm.mul(_rand_unitri(b.shape[0], p, rng), b, K), fm.inverse(_rand_unitri(b.shape[0], p, rng), K), K)
    i = rng.randint(1, 2)
    lo, hi = root1_bounds(matrix_minpoly_deg(fm.power(b, p**i, K), K), p, i)
    assert lo <= matrix_minpoly_deg(b, K) <= hi


def test_filtr_examples():
    assert filtr_deg(1, 3, 1, 2) == 2
    assert filtr_deg(2, 3, 1, 3) == 6
    K = prime_field(3)
    g = jordan_block(9, K)
    n, m = unipotent_filtr_instance(g, 3, 1)
    assert (n, m) == (3, 3)
    assert filtr_deg(n, 3, 1, m) == matrix_minpoly_deg(g, K) == 9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_filtr_random(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    K = prime_field(p)
    b = rng.randint(1, 2)
    g = jordan_block(rng.randint(2, min(60, 3 * p**b)), K)
    g = fm.mul(fm.mul(_rand_unitri(g.shape[0], p, rng), g, K), fm.inverse(_rand_unitri(g.shape[0], p, rng), K), K)
    n, m = unipotent_filtr_instance(g, p, b)
    assert filtr_deg(n, p, b, m) == matrix_minpoly_deg(g, K)


def test_free_bound_examples():
    assert free_bound(7, 7, 7) == 7
    assert free_bound(3, 5, 6) == 3
    assert free_bound(5, 1, 5) == 1


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.data())
def test_free_bound_on_submodules(p, copies, data):
    """V = copies of the regular module of Z_p; U = a sum of Jordan blocks inside it."""
    K = prime_field(p)
    sizes = data.draw(st.lists(st.integers(1, p), min_size=1, max_size=copies))
    U = direct_sum([jordan_block(s, K) for s in sizes])
    assert matrix_minpoly_deg(U, K) >= free_bound(p, U.shape[0], p * copies)


@pytest.mark.parametrize("n,q", [(3, 4), (3, 7), (5, 11)])
def test_commutator_spectrum_closure(n, q):
    """[a, b] scalar of order p forces Spec(b) to be a union of cosets of <c>."""
    x, K = build_canonical_irreducible("SL", n, q)
    mu = K.root_of_unity(n)
    b = fm.identity(n)
    for i in range(n):
        b[i, i] = K.pow(mu, i)
    comm = fm.mul(fm.mul(x, b, K), fm.mul(fm.inverse(x, K), fm.inverse(b, K), K), K)
    assert fm.is_scalar(comm)
    c = int(comm[0, 0])
    assert K.order(c) == n
    spec = {int(b[i, i]) for i in range(n)}
    assert {K.mul(c, s) for s in spec} == spec


@pytest.mark.parametrize("fid", ["SL2(5)", "SL2(7)", "SL2(8)", "SL3(2)", "Sp4(3)"])
def test_noncentral_elements_act_nonscalar(fid):
    T = get_fixture(fid).table
    C = T.conj
    for c in range(C.k):
        if c in C.center:
            continue
        pc = C.power_classes[c]
        for chi in range(T.k):
            if T.degrees[chi] > 2:
                assert mults_from_character([T.value(chi, pc[m]) for m in range(len(pc))], len(pc)).deg >= 2


def test_field_of_size_roundtrip():
    assert field_of_size(9).q == 9
