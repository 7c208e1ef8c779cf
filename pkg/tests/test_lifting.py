"""Lifting lemmas: concrete instances, hypothesis rejections, and a
bounded hypothesis scan over the small-group catalog."""

import pytest

from hamcay import CayleyGraph, cyclic, dihedral, direct_product
from hamcay.errors import HypothesisFailure, NotNormal
from hamcay.lifting import (
    fgl_cyclic_cosets,
    fgl_normal,
    fgl_skew,
    multi_double,
    normal_easy,
    stud61,
    stud71,
)

from helpers import scan_lemmas


def test_fgl_normal_lifts_z6():
    # N = {0,3} in Z6; the quotient 3-cycle (1,1,1) has product 3 = N's
    # generator, so it lifts with repeat 2
    g = CayleyGraph(cyclic(6), (1,))
    cert = fgl_normal(g, (0, 3), (1, 1, 1))
    assert cert.repeat == 2 and cert.word == (1, 1, 1)
    cert.verify(g.group)


def test_fgl_normal_rejects_bad_product():
    # word (1,1,-1) revisits a coset: not a quotient Hamiltonian cycle
    g = CayleyGraph(cyclic(6), (1,))
    with pytest.raises(HypothesisFailure):
        fgl_normal(g, (0, 3), (1, 1, -1))


def test_fgl_normal_requires_normal():
    g = CayleyGraph(dihedral(12), (1, 2))
    with pytest.raises(NotNormal):
        fgl_normal(g, (0, 1), (2, 2, 2, 2, 2, 1))


def test_fgl_cyclic_cosets_lifts_z6():
    g = CayleyGraph(cyclic(6), (1,))
    cert = fgl_cyclic_cosets(g, (0, 3), (1, 1, 1))
    assert cert.repeat == 2
    cert.verify(g.group)


def test_fgl_cyclic_cosets_rejects_wrong_length():
    g = CayleyGraph(cyclic(6), (1,))
    with pytest.raises(HypothesisFailure) as e:
        fgl_cyclic_cosets(g, (0, 3), (1, 1))
    assert e.value.clause == "index"


def test_fgl_skew_z12():
    # H = <2> of order 6, K = <6> of order 2; the 2-coset cycle (1,1) has
    # product 2 of order 3 = |H:K|, so it lifts to the K-quotient
    g = CayleyGraph(cyclic(12), (1,))
    word, repeat = fgl_skew(g, (0, 6), tuple(range(0, 12, 2)), (1, 1))
    assert (word, repeat) == ((1, 1), 3)


def test_fgl_skew_rejects_containment():
    g = CayleyGraph(cyclic(12), (1,))
    with pytest.raises(HypothesisFailure) as e:
        fgl_skew(g, (0, 4, 8), (0, 6), (1, 1))
    assert e.value.clause == "containment"


def test_multi_double_z6():
    # H = <2> has prime order 3; both symbols 1 and -1 cross between the
    # two cosets, a genuine double edge the cycle (1,1) traverses
    g = CayleyGraph(cyclic(6), (1,))
    cert = multi_double(g, (0, 2, 4), (1, 1))
    assert cert.repeat == 3
    cert.verify(g.group)


def test_multi_double_rejects_composite_subgroup():
    g = CayleyGraph(cyclic(12), (1,))
    with pytest.raises(HypothesisFailure) as e:
        multi_double(g, tuple(range(0, 12, 2)), (1, 1))
    assert e.value.clause == "subgroup-not-prime"


def test_involution_gives_no_fake_double_edge():
    # f and f^-1 are the same element: the flip must contribute one edge to
    # the quotient, not a spurious parallel pair
    from hamcay import CosetMultigraph

    g = CayleyGraph(dihedral(12), (1, 2))
    M = CosetMultigraph(g, tuple(range(0, 12, 4)))
    for u, v, syms in M.double_edges():
        elems = {g.symbol_element(s) for s in syms}
        assert len(elems) == len(syms)


def test_normal_easy_cyclic_branch():
    g = CayleyGraph(cyclic(12), (1,))
    cert = normal_easy(g, 1, None)
    assert cert.word == (1,) * 12
    cert.verify(g.group)


def test_normal_easy_central_branch():
    from hamcay import solve

    G = direct_product(cyclic(2), cyclic(4))
    g = CayleyGraph(G, (1, 4))
    cert = normal_easy(g, 2, lambda q, s: solve(q, s, allow_fallback=True))
    assert "normal-easy(Z)" in cert.method
    cert.verify(G)


def test_stud61_hypothesis_rejection():
    g = CayleyGraph(dihedral(12), (1, 2))
    with pytest.raises(HypothesisFailure) as e:
        stud61(g, 2, 1)
    assert e.value.lemma == "stud61"


def test_stud71_d12():
    # s1 = f, the subgroup cycle sweeps <x>; |fx| = 2 = |G:H|
    g = CayleyGraph(dihedral(12), (1, 2))
    cert = stud71(g, 1, 2, (2,) * 6)
    assert cert.repeat == 2
    cert.verify(g.group)


def test_stud71_rejects_cycle_using_s1():
    g = CayleyGraph(dihedral(12), (1, 2))
    with pytest.raises(HypothesisFailure):
        stud71(g, 2, 1, (2,) * 6)


def test_scan_small_catalog():
    # every lemma application over catalog groups of order <= 16 verifies,
    # and each lemma fires at least once (the full order-48 scan is the
    # acceptance run)
    applied, failures = scan_lemmas(16)
    assert failures == []
    for lemma in ("stud61", "stud71", "fgl_normal", "fgl_cyclic_cosets",
                  "fgl_skew", "multi_double", "normal_easy"):
        assert applied[lemma] > 0, lemma
