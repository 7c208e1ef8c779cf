"""Cayley graphs, certificates, coset multigraphs, the 3p^2 quotient grid,
and generalized Petersen recognition."""

import pytest

from hamcay.cayley import (
    CayleyGraph,
    CosetMultigraph,
    make_certificate,
    recognize_generalized_petersen,
    row_sweep_cycle,
    three_p_sq_multigraph,
    word_invert,
    word_power,
    word_rotate,
)
from hamcay.errors import HypothesisFailure, NotHamiltonian
from hamcay.groups import cyclic, dihedral, direct_product
from helpers import two_dihedral_product


def test_word_helpers():
    assert word_power((1, -2), 3) == (1, -2, 1, -2, 1, -2)
    assert word_invert((1, -2, 3)) == (-3, 2, -1)
    assert word_rotate((1, 2, 3), 1) == (2, 3, 1)


def test_walk_and_check():
    G = cyclic(6)
    g = CayleyGraph(G, (1,))
    ok, _ = g.check_hamiltonian_cycle((1,), repeat=6)
    assert ok
    ok, why = g.check_hamiltonian_cycle((1, -1), repeat=3)
    assert not ok and why


def test_connectivity():
    G = cyclic(6)
    assert CayleyGraph(G, (1,)).is_connected()
    assert not CayleyGraph(G, (2,)).is_connected()


def test_certificate_verify_and_tamper():
    G = dihedral(10)
    g = CayleyGraph(G, (1, 2))
    # sweep the rotation row, flip, sweep the reflection row, flip back
    word = (2, 2, 2, 2, 1, 2, 2, 2, 2, 1)
    cert = make_certificate(g, word, 1, ("test",))
    cert.verify(G)
    from dataclasses import replace
    bad = replace(cert, word=(2, 2, 2, 1, 2, 2, 2, 2, 2, 1))
    with pytest.raises(NotHamiltonian):
        bad.verify(G)


def test_certificate_order_mismatch():
    G = cyclic(6)
    cert = make_certificate(CayleyGraph(G, (1,)), (1,), 6, ("t",))
    with pytest.raises(NotHamiltonian):
        cert.verify(cyclic(5))


def test_coset_multigraph_double_edges():
    # D12 / <x^2>: the rotation image has order 2, so x and x^-1 give
    # parallel edges between every coset pair they join
    G = dihedral(12)
    g = CayleyGraph(G, (1, 2))
    h = G.closure([G.power(2, 2)])
    M = CosetMultigraph(g, h)
    assert M.n == 4
    assert len(M.double_edges()) > 0
    for (u, v, syms) in M.double_edges():
        assert len(syms) >= 2 and u != v


def test_coset_multigraph_requires_subgroup():
    G = dihedral(12)
    g = CayleyGraph(G, (1, 2))
    with pytest.raises(HypothesisFailure):
        CosetMultigraph(g, (0, 1, 2))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_three_p_sq_two_double_edges(p):
    M = three_p_sq_multigraph(p)
    doubles = M.double_edges()
    assert len(doubles) == 2
    # the published coordinates: with k from p = 3k+1 or 3k+2, the double
    # edge lies in row j = k (resp. k+1) between i = 2j and i = 2j +/- 1
    if p % 3 == 1:
        k = (p - 1) // 3
        j, lo = k, 2 * k
    else:
        k = (p - 2) // 3
        j, lo = k + 1, 2 * k + 1
    sgn = lambda n: n % p if n % p <= (p - 1) // 2 else n % p - p
    expect = tuple(sorted(((sgn(lo), sgn(j)), (sgn(lo + 1), sgn(j)))))
    pairs = [tuple(sorted(d[:2])) for d in doubles]
    assert expect in pairs
    # the two double edges are exchanged by negating both coordinates
    other = tuple(sorted(((-expect[0][0], -expect[0][1]),
                          (-expect[1][0], -expect[1][1]))))
    assert other in pairs


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_row_sweep_cycle_hamiltonian_through_double_edge(p):
    M = three_p_sq_multigraph(p)
    word = row_sweep_cycle(p)
    ok, why = M.check_hamiltonian_cycle(word, (1, 1))
    assert ok, why
    # walk it and record whether a double edge is traversed
    doubles = {tuple(sorted(d[:2])) for d in M.double_edges()}
    v = (1, 1)
    crossed = set()
    for sym in word:
        w = M.step(v, sym)
        if tuple(sorted((v, w))) in doubles:
            crossed.add(tuple(sorted((v, w))))
        v = w
    assert crossed == doubles  # the sweep uses both double edges


def test_recognize_generalized_petersen_positive():
    # D_{2p} x D_{2q} on {(fx, e), (f, f'), (fx^2, f'x')} with p = 3:
    # the spoke generator matches two disjoint 2pq-cycles
    G, A, B, nb = two_dihedral_product(3, 5)
    s = A.mul(1, 2) * nb + 0
    t = 1 * nb + 1
    u = A.mul(1, A.power(2, 2)) * nb + B.mul(1, 2)
    rec = recognize_generalized_petersen(CayleyGraph(G, (s, t, u)))
    assert rec is not None
    n, r, spoke, mapping = rec
    assert n == 30
    assert sorted(mapping) == list(range(60))


def test_recognize_generalized_petersen_negative():
    G = dihedral(12)
    assert recognize_generalized_petersen(CayleyGraph(G, (1, 2))) is None
    # the cube on Z2^3 is GP(4, 1); K4 on Z2^2 is not a GP graph
    Z = direct_product(cyclic(2), cyclic(2))
    assert recognize_generalized_petersen(CayleyGraph(Z, (1, 2, 3))) is None
