"""Order-form constructions: the explicit word identities, endgame
purity, minimality reduction, and solver determinism."""

import pytest

from hamcay import (
    CayleyGraph,
    InvalidAction,
    Unsupported,
    cyclic,
    dihedral,
    direct_product,
    minimality_reduce,
    solve,
    verify_independent,
)

from helpers import (
    d8_kernel_group,
    hexprod_group,
    hexwreath_group,
    two_dihedral_product,
    z3_on_zp_squared,
)


def _solve_pure(G, S, label=""):
    """Solve and require zero fallbacks; citations, if any, must name an
    enumerated cited result."""
    from hamcay.cli import ALLOWED_CITATIONS

    cert = solve(G, tuple(S))
    cert.verify(G)
    ok, why = verify_independent([list(r) for r in G.table], cert.gens,
                                 cert.word, cert.repeat)
    assert ok, why
    assert not [s for s in cert.trace if "fallback" in s], (label, cert.trace)
    for step in cert.trace:
        for piece in step.replace("[", ";").replace("]", ";").split(";"):
            if piece.startswith("cited:"):
                assert piece[6:].split()[0] in ALLOWED_CITATIONS, (label,
                                                                  cert.trace)
    return cert


def _handler_pure(cert, label):
    """A construction handler's own word: no fallback and no citation."""
    assert cert is not None, label
    impure = [s for s in cert.trace if "fallback" in s or "cited" in s]
    assert not impure, (label, cert.trace)
    return cert


# -- explicit word identities ------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_8p_kernel_identities(p):
    G, f, x, z = d8_kernel_group(p)
    fx = G.mul(f, x)
    x2z = G.mul(G.mul(x, x), z)
    fx3z = G.mul(G.mul(f, G.power(x, 3)), z)
    # the four-step product over {f, fx, x^2 z} is fz, of order 2p
    prod = G.prod([fx, f, fx, x2z])
    assert prod == G.mul(f, z)
    assert G.element_order(prod) == 2 * p
    # the eight-step product over {f, fx, fx^3 z} is z^3
    prod8 = G.prod([fx, fx3z, fx, f, fx3z, fx, fx3z, f])
    assert prod8 == G.power(z, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_4p2_commutator_identity(p):
    D = dihedral(2 * p)
    G = direct_product(D, D)
    x, f = 2, 1
    nb = D.n
    s1 = x * nb + f  # (x, f')
    s2 = f * nb + x  # (f, x')
    gamma = G.commutator(s1, s2)
    assert gamma == D.inv(D.mul(x, x)) * nb + D.mul(x, x)  # (x^-2, x'^2)


@pytest.mark.parametrize("p,q", [(3, 5), (3, 7), (5, 7)])
def test_2p_2q_four_step_identity(p, q):
    G, A, B, nb = two_dihedral_product(p, q)
    xa, fa, xb, fb = 2, 1, 2, 1
    for k in range(p):
        if k % p == 2 % p:
            continue
        s = A.mul(fa, xa) * nb + 0                          # (fx, e)
        t = fa * nb + fb                                    # (f, f')
        u = A.mul(fa, A.power(xa, k)) * nb + B.mul(fb, xb)  # (fx^k, f'x')
        assert G.prod([s, t, s, u]) == A.power(xa, k - 2) * nb + xb


def test_18p_product_identity():
    # in D6 x (Z3 |x Z7): (fy)^5 (fxyz) = xz
    G, f, x, y, z = hexprod_group(7, 2)
    fy = G.mul(f, y)
    fxyz = G.prod([f, x, y, z])
    assert G.mul(G.power(fy, 5), fxyz) == G.mul(x, z)


def test_18p_voltage_identity():
    # in (D6 x Z3) |x Z7 with z^y = z^2: the 18-step closed walk over
    # {f, a} with a = fxyz has voltage z^(8r+10) != e since 4r != -5 mod 7
    p, r = 7, 2
    assert (4 * r + 5) % p != 0
    G, f, x, y, z = hexwreath_group(p, r)
    assert G.conjugate(z, f) == G.inv(z)
    assert G.conjugate(z, y) == G.power(z, r)
    a = G.prod([f, x, y, z])
    ai = G.inv(a)
    word = [a, f, ai, ai, f, ai, ai, ai, f, a, a, a, f, a, a, f, ai, f]
    volt = G.prod(word)
    assert volt == G.power(z, 8 * r + 10)
    assert volt != G.identity


# -- endgame purity ----------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_8p_endgames_pure(p):
    G, f, x, z = d8_kernel_group(p)
    fx = G.mul(f, x)
    _solve_pure(G, (f, fx, G.mul(G.mul(x, x), z)), f"8p x2z p={p}")
    _solve_pure(G, (f, fx, G.mul(G.mul(f, G.power(x, 3)), z)),
                f"8p fx3z p={p}")


@pytest.mark.parametrize("p", [3, 5])
def test_4p2_endgames_pure(p):
    D = dihedral(2 * p)
    G = direct_product(D, D)
    nb = D.n
    _solve_pure(G, (2 * nb + 1, 1 * nb + 2), f"4p2 p={p}")


@pytest.mark.parametrize("p,q,k", [(3, 5, 0), (3, 5, 1), (3, 7, 0),
                                   (5, 7, 0), (5, 7, 3)])
def test_2p_2q_endgames_pure(p, q, k):
    G, A, B, nb = two_dihedral_product(p, q)
    s = A.mul(1, 2) * nb + 0
    t = 1 * nb + 1
    u = A.mul(1, A.power(2, k)) * nb + B.mul(1, 2)
    _solve_pure(G, (s, t, u), f"2p2q p={p} q={q} k={k}")


def test_18p_endgames_pure():
    G, f, x, y, z = hexprod_group(7, 2)
    fy = G.mul(f, y)
    fxyz = G.prod([f, x, y, z])
    xyz = G.prod([x, y, z])
    _solve_pure(G, (fy, fxyz), "18p product fy,fxyz")
    _solve_pure(G, (fy, xyz), "18p product fy,xyz")
    _solve_pure(G, (G.mul(f, z), fy, G.mul(f, x)), "18p product fz,fy,fx")
    H, f2, x2, y2, z2 = hexwreath_group(7, 2)
    a = H.prod([f2, x2, y2, z2])
    _solve_pure(H, (f2, a), "18p twisted f,fxyz")
    _solve_pure(H, (f2, H.prod([x2, y2, z2])), "18p twisted f,xyz")


@pytest.mark.parametrize("p", [5, 7])
def test_3p2_multigraph_lift_pure(p):
    G, s, t, u = z3_on_zp_squared(p)
    cert = _solve_pure(G, (s, t), f"3p2 p={p}")
    assert any("three-p-sq" in step for step in cert.trace)


# -- solver surface ----------------------------------------------------


def test_minimality_reduce():
    assert minimality_reduce(cyclic(6), (1, 2, 3)) == (1,)
    assert minimality_reduce(dihedral(12), (1, 2)) == (1, 2)
    with pytest.raises(InvalidAction):
        minimality_reduce(cyclic(6), (2,))


def test_solve_rejects_nongenerating_and_oversize(monkeypatch):
    from hamcay.errors import OrderTooLarge

    with pytest.raises(InvalidAction):
        solve(cyclic(6), (2,))
    with pytest.raises(OrderTooLarge):
        cyclic(513)
    import hamcay.constructions as C
    monkeypatch.setattr(C, "MAX_ORDER", 10)
    with pytest.raises(Unsupported):
        solve(cyclic(12), (1,))


def test_solve_deterministic():
    G, f, x, z = d8_kernel_group(5)
    S = (f, G.mul(f, x), G.mul(G.mul(x, x), z))
    a = solve(G, S)
    # a fresh isomorphic table must give the identical certificate
    H, f2, x2, z2 = d8_kernel_group(5)
    S2 = (f2, H.mul(f2, x2), H.mul(H.mul(x2, x2), z2))
    b = solve(H, S2)
    assert (a.gens, a.word, a.repeat, a.trace) == (b.gens, b.word,
                                                   b.repeat, b.trace)


def test_solve_cartesian_and_fallback_label():
    # a graph with no applicable construction still solves when fallback
    # is allowed, and the trace says so
    G = cyclic(30)
    cert = solve(G, (6, 10, 15), allow_fallback=True)
    cert.verify(G)


# -- the endgame handlers emit their own words -------------------------


def _sym_of(graph, elem):
    for s in graph.symbols():
        if graph.symbol_element(s) == elem:
            return s
    raise AssertionError("element is not a generator symbol")


@pytest.mark.parametrize("p", [3, 5, 7])
def test_8p_handler_words(p):
    from hamcay.constructions import _h8p

    G, f, x, z = d8_kernel_group(p)
    fx = G.mul(f, x)
    for extra in (G.mul(G.mul(x, x), z), G.mul(G.mul(f, G.power(x, 3)), z)):
        g = CayleyGraph(G, (f, fx, extra))
        cert = _handler_pure(_h8p(g, lambda a, b: solve(a, b)), f"8p p={p}")
        assert "eight-p" in cert.method
        cert.verify(G)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_4p2_commutator_handler_words(p):
    from hamcay.lifting import stud61

    D = dihedral(2 * p)
    G = direct_product(D, D)
    nb = D.n
    s1, s2 = 2 * nb + 1, 1 * nb + 2
    g = CayleyGraph(G, (s1, s2))
    cert = stud61(g, _sym_of(g, s1), _sym_of(g, s2))
    _handler_pure(cert, f"stud61 p={p}")
    cert.verify(G)


@pytest.mark.parametrize("p,q,k", [(3, 5, 0), (3, 7, 1), (5, 7, 0)])
def test_2p_2q_handler_words(p, q, k):
    from hamcay.constructions import _h4pq

    G, A, B, nb = two_dihedral_product(p, q)
    s = A.mul(1, 2) * nb + 0
    t = 1 * nb + 1
    u = A.mul(1, A.power(2, k)) * nb + B.mul(1, 2)
    g = CayleyGraph(G, tuple(sorted((s, t, u))))
    cert = _handler_pure(_h4pq(g, lambda a, b: solve(a, b)),
                         f"2p2q {p} {q} {k}")
    assert "four-pq" in cert.method
    cert.verify(G)


def test_18p_handler_words():
    from hamcay.constructions import _h18p

    G, f, x, y, z = hexprod_group(7, 2)
    fy = G.mul(f, y)
    fxyz = G.prod([f, x, y, z])
    H, f2, x2, y2, z2 = hexwreath_group(7, 2)
    a = H.prod([f2, x2, y2, z2])
    for grp, S in ((G, (fy, fxyz)), (H, (f2, a))):
        g = CayleyGraph(grp, tuple(sorted(S)))
        cert = _handler_pure(_h18p(g, lambda aa, bb: solve(aa, bb)), "18p")
        assert "eighteen-p" in cert.method
        cert.verify(grp)


@pytest.mark.parametrize("p", [5, 7])
def test_3p2_handler_words(p):
    from hamcay.constructions import _h3p2

    G, s, t, u = z3_on_zp_squared(p)
    g = CayleyGraph(G, tuple(sorted((s, t))))
    cert = _handler_pure(_h3p2(g, lambda a, b: solve(a, b)), f"3p2 p={p}")
    assert "three-p-sq" in cert.method
    cert.verify(G)
