from __future__ import annotations

from collections import Counter

import pytest

from hhcheck.check import context_for
from hhcheck.lemmas import LEMMAS, VERIFIERS, verify_lemma


@pytest.mark.parametrize(
    "name,params",
    [
        ("sl21", {"q": 4}),
        ("sl21", {"q": 5}),
        ("sl21", {"q": 8}),
        ("sl22", {}),
        ("su2", {}),
        ("weil1", {}),
        ("weil2", {}),
        ("sp1", {"n": 2, "q": 3}),
        ("su31", {"q": 2}),
        ("p-cyclic", {}),
    ],
)
def test_lemma_instances_have_no_mismatches(name, params):
    rep = verify_lemma(name, **params)
    assert rep.rows, rep.summary()
    assert rep.ok, [r for r in rep.mismatches][:5]


def test_slsup_instance():
    rep = verify_lemma("slsup", p=3, q=4, eps="+")
    assert len(rep.rows) == 114 and rep.ok


def test_su31_q2_skips_kernel_pairs():
    rep = verify_lemma("su31", q=2)
    assert any("skipped" in n for n in rep.notes)
    assert {r.clause for r in rep.rows if r.deg < r.o} <= {"i", "ii", "iii", "iv", "v"}


def test_su31_q3_known_gap():
    """The listed exceptions do not cover order-8 elements of GU_3(3).

    All such rows have deg = o - 2 = 6 on characters of degree 6 or 7, which
    still clears the phi(o) - 1 = 3 bound.
    """
    rep = verify_lemma("su31", q=3)
    bad = Counter((r.abs_order, r.o, r.dim, r.deg) for r in rep.mismatches)
    assert bad == {(8, 8, 7, 6): 96, (8, 8, 6, 6): 32}
    ctx = context_for("GU3(3)")
    names = ctx.table.names()
    assert {r.char_id for r in rep.mismatches} <= {names[c] for c in ctx.weil}
    assert all(r.deg == r.o for r in rep.rows if r.ok and r.o != 8 and not r.clause)


def test_registry():
    assert set(VERIFIERS) == set(LEMMAS)
    with pytest.raises(KeyError):
        verify_lemma("nope")
