"""Constructed group instances shared by the test modules.

Each builder returns a GroupTable plus the element numbers of its named
generators, built from explicit permutation actions so the tests do not
depend on the catalog's element numbering.
"""

from hamcay.groups import GroupTable, dihedral, direct_product, from_permutations


def _index(elems, perm) -> int:
    return elems.index(tuple(perm))


def d8_kernel_group(p: int):
    """Order 8p: <f, x, z | f^2 = x^4 = z^p = e, x^f = x^-1, z^f = z,
    z^x = z^-1>; returns (G, f, x, z)."""
    x = [1, 2, 3, 0] + [4 + ((-i) % p) for i in range(p)]
    f = [0, 3, 2, 1] + list(range(4, 4 + p))
    z = list(range(4)) + [4 + ((i + 1) % p) for i in range(p)]
    G, elems = from_permutations([x, f, z], name=f"D8kern{8 * p}")
    assert G.n == 8 * p
    return G, _index(elems, f), _index(elems, x), _index(elems, z)


def two_dihedral_product(p: int, q: int):
    """D_2p x D_2q; returns (G, x, f, x2, f2) with x, f the rotation and a
    reflection of the first factor (element numbers in the product)."""
    A, B = dihedral(2 * p), dihedral(2 * q)
    G = direct_product(A, B)
    nb = B.n
    # dihedral numbering: element 2r is x^r, element 2r+1 is f x^r
    return G, A, B, nb


def z3_semidirect_zp(p: int, r: int):
    """Z3 acting on Z_p by z -> z^r (r^3 = 1 mod p); returns (K, y, z)."""
    y = [(r * i) % p for i in range(p)]
    z = [(i + 1) % p for i in range(p)]
    K, elems = from_permutations([y, z], name=f"Z3sZ{p}")
    assert K.n == 3 * p
    return K, _index(elems, y), _index(elems, z)


def hexprod_group(p: int, r: int):
    """D6 x (Z3 |x Z_p); returns (G, f, x, y, z) with f, x from the D6
    factor and y, z from the semidirect factor."""
    K, y, z = z3_semidirect_zp(p, r)
    D = dihedral(6)
    G = direct_product(D, K)
    nb = K.n
    return G, 1 * nb + 0, 2 * nb + 0, y, z


def hexwreath_group(p: int, r: int):
    """(D6 x Z3) |x Z_p with z^f = z^-1, z^x = z, z^y = z^r; returns
    (G, f, x, y, z)."""
    hexa = list(range(6))
    tri = [6, 7, 8]

    def mk(hperm, tperm, zperm):
        return hperm + tperm + [9 + zperm(i) for i in range(p)]

    x = mk([2, 3, 4, 5, 0, 1], tri, lambda i: i)
    f = mk([0, 5, 4, 3, 2, 1], tri, lambda i: (-i) % p)
    y = mk(hexa, [7, 8, 6], lambda i: (r * i) % p)
    z = mk(hexa, tri, lambda i: (i + 1) % p)
    G, elems = from_permutations([x, f, y, z], name=f"D6Z3sZ{p}")
    assert G.n == 18 * p
    return (G, _index(elems, f), _index(elems, x),
            _index(elems, y), _index(elems, z))


def z3_on_zp_squared(p: int):
    """Z3 |x (Z_p x Z_p) with the order-3 matrix [[0, -1], [1, -1]];
    returns (G, s, t, u) with s of order 3 and t, u the translations."""
    pts = p * p

    def mk(fn):
        return [fn(i // p, i % p) for i in range(pts)]

    t = mk(lambda a, b: ((a + 1) % p) * p + b)
    u = mk(lambda a, b: a * p + (b + 1) % p)
    s = mk(lambda a, b: ((-b) % p) * p + (a - b) % p)
    G, elems = from_permutations([s, t, u], name=f"Z3sZ{p}sq")
    assert G.n == 3 * p * p
    return G, _index(elems, s), _index(elems, t), _index(elems, u)


# -- lemma hypothesis scan ---------------------------------------------
#
# For every catalog group up to a given order and every inverse-reduced
# generating set of size <= 2, assemble candidate inputs for each lifting
# lemma and call it.  Hypothesis rejections count as inapplicable; every
# emitted certificate must verify.  Candidate quotient cycles come from a
# bounded DFS (per-subgraph node budget, a few cycles per multigraph), so
# the scan is exhaustive over hypotheses on the candidates it generates.

from collections import Counter

from hamcay import (
    CayleyGraph,
    CosetMultigraph,
    builtin_catalog,
    enumerate_generating_sets,
    solve,
)
from hamcay.errors import (
    HypothesisFailure,
    NotNormal,
    RotationImpossible,
)
from hamcay.lifting import (
    fgl_cyclic_cosets,
    fgl_normal,
    fgl_skew,
    multi_double,
    normal_easy,
    stud61,
    stud71,
)

_DFS_NODES = 20_000
_CYCLES_PER_GRAPH = 3


def _ham_cycle_words(step, start, n, syms, limit=_CYCLES_PER_GRAPH,
                     allowed=None):
    """Up to `limit` Hamiltonian-cycle symbol words of the graph given by
    `step(v, sym)` on `n` vertices, via budgeted DFS from `start`."""
    found = []
    budget = [_DFS_NODES]
    visited = {start}
    word = []

    def dfs(v):
        if budget[0] <= 0 or len(found) >= limit:
            return
        budget[0] -= 1
        if len(visited) == n:
            for s in syms:
                if step(v, s) == start:
                    found.append(tuple(word) + (s,))
                    if len(found) >= limit:
                        return
            return
        for s in syms:
            w = step(v, s)
            if w not in visited and (allowed is None or w in allowed):
                visited.add(w)
                word.append(s)
                dfs(w)
                word.pop()
                visited.discard(w)

    dfs(start)
    return found


def _coset_cycle_words(M):
    return _ham_cycle_words(M.step, M.reps[0], M.n, M.graph.symbols())


def _cyclic_subgroups(G):
    """Nontrivial proper cyclic subgroups, deduplicated, sorted."""
    seen = set()
    for g in range(G.n):
        h = tuple(sorted(G.closure([g])))
        if 1 < len(h) < G.n:
            seen.add(h)
    return sorted(seen, key=lambda h: (len(h), h))


def _record(applied, failures, lemma, G, gens, detail, thunk):
    try:
        cert = thunk()
    except (HypothesisFailure, NotNormal, RotationImpossible):
        return
    try:
        if cert is not None:
            cert.verify(G)
        applied[lemma] += 1
    except Exception as exc:  # any verification failure is a scan failure
        failures.append((lemma, G.name, gens, detail, repr(exc)))


def scan_lemmas(max_order):
    """Run the hypothesis scan; returns (Counter of applications, failures)."""
    applied = Counter()
    failures = []
    for entry in builtin_catalog(max_order):
        G = entry.group
        for rec in enumerate_generating_sets(G, 2).records:
            graph = CayleyGraph(G, rec.generators)
            _scan_graph(graph, applied, failures)
    return applied, failures


def _scan_graph(graph, applied, failures):
    G = graph.group
    gens = graph.gens
    syms = graph.symbols()

    for s1 in syms:
        for s2 in syms:
            if abs(s1) != abs(s2):
                _record(applied, failures, "stud61", G, gens, (s1, s2),
                        lambda a=s1, b=s2: stud61(graph, a, b))

    # stud71: a Hamiltonian cycle of the subgroup generated by S - {s1}
    for i1 in range(1, len(gens) + 1):
        sub_syms = [s for s in syms if abs(s) != i1]
        if not sub_syms:
            continue
        h = set(G.closure([graph.symbol_element(s) for s in sub_syms]))
        if len(h) == G.n:
            continue
        words = _ham_cycle_words(graph.step, G.identity, len(h), sub_syms,
                                 allowed=h)
        for sub_cycle in words:
            for s2 in syms:
                if abs(s2) == i1:
                    continue
                _record(applied, failures, "stud71", G, gens,
                        (i1, s2, sub_cycle),
                        lambda a=i1, b=s2, w=sub_cycle:
                        stud71(graph, a, b, w))

    subgroups = _cyclic_subgroups(G)
    for h in subgroups:
        M = CosetMultigraph(graph, h)
        words = _coset_cycle_words(M)
        normal = G.is_normal(h)
        doubles = M.double_edges()
        for word in words:
            if normal:
                _record(applied, failures, "fgl_normal", G, gens, (h, word),
                        lambda n=h, w=word: fgl_normal(graph, n, w))
            _record(applied, failures, "fgl_cyclic_cosets", G, gens,
                    (h, word),
                    lambda n=h, w=word: fgl_cyclic_cosets(graph, n, w))
            if doubles and M.doubled_steps(word):
                _record(applied, failures, "multi_double", G, gens,
                        (h, word),
                        lambda n=h, w=word: multi_double(graph, n, w))
            # fgl_skew: nontrivial proper subgroups K of the cyclic H
            hset = set(h)
            for k in subgroups:
                if len(k) < len(h) and set(k) < hset:
                    def run(kk=k, hh=h, w=word):
                        lifted, repeat = fgl_skew(graph, kk, hh, w)
                        mk = CosetMultigraph(graph, kk)
                        ok, why = mk.check_hamiltonian_cycle(
                            tuple(lifted) * repeat)
                        assert ok, why
                        return None
                    _record(applied, failures, "fgl_skew", G, gens,
                            (k, h, word), run)

    def solver(group, qgens):
        return solve(group, qgens, allow_fallback=True)

    for i in range(1, len(gens) + 1):
        _record(applied, failures, "normal_easy", G, gens, i,
                lambda s=i: normal_easy(graph, s, solver))
