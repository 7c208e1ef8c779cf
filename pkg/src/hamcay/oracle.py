"""Bounded backtracking search for Hamiltonian cycles, plus an independent
certificate verifier that shares no graph code with the rest of the package.

The searcher works on explicit adjacency lists and is used both for raw
edge-list graphs and (through a thin wrapper) for Cayley graphs, where each
directed edge remembers its generator symbol.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import BudgetExceeded, ParseError
from .cayley import CayleyGraph

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_TIME_BUDGET = 30.0
FALLBACK_NODE_BUDGET = 100_000_000
FALLBACK_TIME_BUDGET = 300.0


@dataclass
class SearchResult:
    """status is 'found', 'exhausted' (search space fully explored, no
    cycle), or 'budget' (node or time budget hit)."""

    status: str
    cycle: tuple | None
    nodes: int
    elapsed: float


def _search(adj, n, start, node_budget, time_budget):
    """Core DFS.  adj[v] is a sequence of (label, w); returns SearchResult
    whose cycle is the list of (label, vertex) steps from start back to
    start.

    Candidates at each head are taken in ascending symbol order, but a
    forced-move rule runs first: if an unvisited neighbor w of the head has
    only two usable connections left and the head is one of them, the edge
    head-w must be used now.  A connectivity + degree cut prunes the rest.
    """
    t0 = time.monotonic()
    nodes = 0
    visited = bytearray(n)
    visited[start] = 1
    path = []  # list of (label, vertex)
    nbr = [tuple(w for _, w in adj[v]) for v in range(n)]
    mark = [0] * n  # BFS stamp
    stamp = 0
    remaining = n - 1

    def free_degree(u, head):
        c = 0
        for w in nbr[u]:
            if not visited[w] or w == start or w == head:
                c += 1
                if c > 2:
                    return c
        return c

    def candidates(head):
        # unvisited neighbors in symbol order; shrink to forced moves
        cand = [(label, w) for label, w in adj[head] if not visited[w]]
        forced = []
        for label, w in cand:
            if free_degree(w, head) <= 2:
                forced.append((label, w))
        if forced:
            # the start vertex still has both cycle slots free until the
            # first step is taken; every later head has only one slot left
            slots = 2 if (head == start and not path) else 1
            if len({w for _, w in forced}) > slots:
                return []  # more vertices demand head edges than slots
            return forced[:1]
        # Warnsdorff order: fewest usable onward connections first; ties
        # broken by ascending symbol, keeping the search deterministic
        cand.sort(key=lambda lw: (free_degree(lw[1], head), abs(lw[0]), lw[0] < 0))
        return cand

    def feasible(head):
        nonlocal stamp
        if remaining == 0:
            return True
        stamp += 1
        st = stamp
        stack = [head]
        reached = 0
        order = []
        while stack:
            v = stack.pop()
            for w in nbr[v]:
                if not visited[w] and mark[w] != st:
                    mark[w] = st
                    reached += 1
                    order.append(w)
                    stack.append(w)
        if reached < remaining:
            return False
        for u in order:
            if free_degree(u, head) < 2:
                return False
        return True

    stack = [(start, iter(candidates(start)))]
    while stack:
        nodes += 1
        if nodes % 4096 == 0 and time.monotonic() - t0 > time_budget:
            return SearchResult("budget", None, nodes, time.monotonic() - t0)
        if nodes > node_budget:
            return SearchResult("budget", None, nodes, time.monotonic() - t0)
        v, it = stack[-1]
        advanced = False
        if remaining == 0:
            # all vertices on the path; close if possible
            for label, w in adj[v]:
                if w == start:
                    path.append((label, w))
                    return SearchResult("found", tuple(path), nodes,
                                        time.monotonic() - t0)
            stack.pop()
            if path:
                _, u = path.pop()
                visited[u] = 0
                remaining += 1
            continue
        for label, w in it:
            visited[w] = 1
            remaining -= 1
            if feasible(w):
                path.append((label, w))
                stack.append((w, iter(candidates(w))))
                advanced = True
                break
            visited[w] = 0
            remaining += 1
        if not advanced:
            stack.pop()
            if path:
                _, u = path.pop()
                visited[u] = 0
                remaining += 1
    return SearchResult("exhausted", None, nodes, time.monotonic() - t0)


def _posa(nbr_sets, n, start, rng, max_steps):
    """Pósa rotation-extension; returns a spanning cycle as a vertex list
    (start first) or None.  Only ever *finds* cycles; exhaustion proofs come
    from the DFS."""
    path = [start]
    pos = {start: 0}
    steps = 0
    while steps < max_steps:
        steps += 1
        end = path[-1]
        fresh = [w for w in nbr_sets[end] if w not in pos]
        if fresh:
            w = fresh[rng.randrange(len(fresh))] if len(fresh) > 1 else fresh[0]
            pos[w] = len(path)
            path.append(w)
            continue
        if len(path) == n and start in nbr_sets[end]:
            return path
        # rotate about a random neighbor on the path
        cands = [w for w in nbr_sets[end] if w != path[-2] or len(path) < 2]
        if not cands:
            return None
        w = cands[rng.randrange(len(cands))]
        i = pos[w]
        tail = path[i + 1:]
        tail.reverse()
        path[i + 1:] = tail
        for j in range(i + 1, len(path)):
            pos[path[j]] = j
    return None


def _posa_cycle(adj, n, start, seed_base, tries, steps):
    import random as _random

    nbr_sets = [set(w for _, w in adj[v]) for v in range(n)]
    if any(len(s) < 2 for s in nbr_sets):
        return None
    for t in range(tries):
        rng = _random.Random(seed_base + t)
        path = _posa(nbr_sets, n, start, rng, steps)
        if path is not None:
            # translate vertex path to edge labels
            labels = []
            prev = start
            for v in path[1:] + [start]:
                for label, w in adj[prev]:
                    if w == v:
                        labels.append((label, v))
                        break
                prev = v
            return tuple(labels)
    return None


def find_hamiltonian_cycle(graph: CayleyGraph,
                           node_budget: int = DEFAULT_NODE_BUDGET,
                           time_budget: float = DEFAULT_TIME_BUDGET) -> SearchResult:
    """Search Cay(G;S) from the identity.  On success the cycle field is the
    symbol word (length |G|, repeat 1).

    Strategy: rotation-extension first (it only finds, never refutes), then
    the DFS, which alone can report 'exhausted'."""
    adj = graph.adjacency()
    n, start = graph.n, graph.group.identity
    t0 = time.monotonic()
    cyc = _posa_cycle(adj, n, start, seed_base=1, tries=64, steps=200 * n)
    if cyc is not None:
        res = SearchResult("found", cyc, 0, time.monotonic() - t0)
    else:
        res = _search(adj, n, start, node_budget, time_budget)
    if res.status == "found":
        word = tuple(sym for sym, _ in res.cycle)
        return SearchResult("found", word, res.nodes,
                            time.monotonic() - t0)
    return res


def find_hamiltonian_cycle_adj(adj_lists,
                               start: int = 0,
                               node_budget: int = DEFAULT_NODE_BUDGET,
                               time_budget: float = DEFAULT_TIME_BUDGET) -> SearchResult:
    """Search a raw undirected graph; adj_lists[v] is an iterable of
    neighbors.  On success the cycle field is the vertex sequence."""
    n = len(adj_lists)
    adj = tuple(tuple((w, w) for w in sorted(adj_lists[v])) for v in range(n))
    res = _search(adj, n, start, node_budget, time_budget)
    if res.status == "found":
        verts = tuple(v for _, v in res.cycle)
        return SearchResult("found", verts, res.nodes, res.elapsed)
    return res


def parse_edge_list(text: str):
    """Adjacency lists from 'u v' lines; '#' starts a comment.  Vertices are
    0..max."""
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex") from None
        if u < 0 or v < 0 or u == v:
            raise ParseError(f"line {lineno}: bad edge {u} {v}")
        edges.append((u, v))
        top = max(top, u, v)
    if top < 0:
        raise ParseError("empty edge list")
    adj = [set() for _ in range(top + 1)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return [sorted(a) for a in adj]


def verify_independent(rows, gens, word, repeat: int):
    """Re-verify a certificate from first principles.

    rows: the raw multiplication table (list of lists); gens: element
    numbers; word: signed 1-based indices into gens; repeat: lift count.
    Checks the walk from the identity hits all elements exactly once and
    closes.  Deliberately shares no code with the CayleyGraph verifier.
    """
    n = len(rows)
    # locate identity without trusting conventions
    ident = None
    for e in range(n):
        if all(rows[e][b] == b for b in range(n)):
            ident = e
            break
    if ident is None:
        return False, "no identity"
    # inverses
    inv = {}
    for a in range(n):
        for b in range(n):
            if rows[a][b] == ident and rows[b][a] == ident:
                inv[a] = b
                break
    steps = []
    for sym in word:
        if sym == 0 or abs(sym) > len(gens):
            return False, f"symbol {sym} out of range"
        g = gens[abs(sym) - 1]
        steps.append(g if sym > 0 else inv[g])
    if len(steps) * repeat != n:
        return False, "wrong total length"
    seen = {ident}
    v = ident
    count = 0
    for _ in range(repeat):
        for g in steps:
            v = rows[v][g]
            count += 1
            if count < n:
                if v in seen:
                    return False, f"revisits {v}"
                seen.add(v)
    if v != ident:
        return False, "does not close"
    if len(seen) != n:
        return False, "misses vertices"
    return True, None
