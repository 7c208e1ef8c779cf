"""Cayley graphs, symbol words, coset multigraphs and their walks.

A generating set S of size k gives symbols 1..k; the word entry +i means
"step by the i-th generator", -i means "step by its inverse".  Words are
plain tuples of signed symbol numbers, composed with the combinators below
and evaluated lazily against a graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisFailure, NotHamiltonian, ParseError
from .groups import GroupTable


# -- words -------------------------------------------------------------


def word_power(word, k: int):
    if k < 0:
        raise ParseError("word power must be non-negative; invert first")
    return tuple(word) * k


def word_concat(*words):
    out = []
    for w in words:
        out.extend(w)
    return tuple(out)


def word_drop_last(word):
    if not word:
        raise ParseError("cannot drop the last symbol of the empty word")
    return tuple(word[:-1])


def word_invert(word):
    return tuple(-x for x in reversed(word))


def word_rotate(word, k: int):
    """Cyclic shift: the word read starting from position k."""
    k %= len(word)
    return tuple(word[k:] + word[:k])


# -- Cayley graphs -----------------------------------------------------


class CayleyGraph:
    """Cay(G; S): vertices are group elements, g adjacent to g*s for s in
    S and S^-1.  Generators are kept sorted; identity not allowed in S."""

    def __init__(self, G: GroupTable, gens):
        gens = tuple(sorted(set(gens)))
        if any(g == G.identity for g in gens):
            raise ParseError("the identity cannot be a generator symbol")
        if any(not 0 <= g < G.n for g in gens):
            raise ParseError("generator out of range")
        if not gens:
            raise ParseError("empty generating set")
        self.group = G
        self.gens = gens
        self._step = {}
        for i, g in enumerate(gens, start=1):
            self._step[i] = g
            self._step[-i] = G.inv(g)

    @property
    def n(self) -> int:
        return self.group.n

    def symbols(self):
        """Signed symbols in deterministic order: 1, -1, 2, -2, ..."""
        out = []
        for i in range(1, len(self.gens) + 1):
            out.append(i)
            out.append(-i)
        return out

    def symbol_element(self, sym: int) -> int:
        return self._step[sym]

    def reduced_symbols(self):
        """Like symbols(), but -i is dropped when generator i is an
        involution (both symbols would name the same edge)."""
        out = []
        for i, g in enumerate(self.gens, start=1):
            out.append(i)
            if self.group.inv(g) != g:
                out.append(-i)
        return out

    def is_connected(self) -> bool:
        return self.group.generates(self.gens)

    def step(self, v: int, sym: int) -> int:
        return self.group.table[v][self._step[sym]]

    def walk(self, word, repeat: int = 1, start: int | None = None):
        """Yield the vertices visited after each step (start excluded)."""
        v = self.group.identity if start is None else start
        for _ in range(repeat):
            for sym in word:
                v = self.group.table[v][self._step[sym]]
                yield v

    def evaluate(self, word, repeat: int = 1, start: int | None = None) -> int:
        v = self.group.identity if start is None else start
        for _ in range(repeat):
            for sym in word:
                v = self.group.table[v][self._step[sym]]
        return v

    def adjacency(self):
        """adj[v] = tuple of (sym, neighbor), symbols in deterministic order."""
        syms = self.symbols()
        return tuple(
            tuple((s, self.step(v, s)) for s in syms) for v in range(self.n)
        )

    def check_hamiltonian_cycle(self, word, repeat: int = 1, start: int | None = None):
        """Return (True, None) or (False, witness).  The walk must visit
        every vertex exactly once and return to its start."""
        n = self.n
        if len(word) * repeat != n:
            return False, f"walk length {len(word) * repeat} != {n} vertices"
        v0 = self.group.identity if start is None else start
        visited = bytearray(n)
        last = v0
        for i, v in enumerate(self.walk(word, repeat, v0)):
            if i < n - 1:
                if visited[v] or v == v0:
                    return False, ("revisit", i, v)
                visited[v] = 1
            last = v
        if last != v0:
            return False, ("open", last)
        return True, None

    def assert_hamiltonian_cycle(self, word, repeat: int = 1):
        ok, witness = self.check_hamiltonian_cycle(word, repeat)
        if not ok:
            raise NotHamiltonian(f"walk is not a hamiltonian cycle: {witness}",
                                 witness=witness)


# -- certificates ------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A verified Hamiltonian cycle of Cay(G;S): the word, its repeat count,
    and the trace of construction steps that produced it.

    Trace steps are plain strings; the first token of each step names the
    construction (e.g. ``fgl-notnormal``), and steps realized by a cited
    external result carry a ``cited:`` prefix."""

    group: str
    order: int
    gens: tuple[int, ...]
    word: tuple[int, ...]
    repeat: int
    trace: tuple[str, ...]

    @property
    def method(self) -> str:
        return ";".join(self.trace)

    def verify(self, G: GroupTable) -> None:
        """Re-check the cycle against a group table; raises NotHamiltonian."""
        if G.n != self.order:
            raise NotHamiltonian(
                f"certificate is for order {self.order}, table has {G.n}")
        CayleyGraph(G, self.gens).assert_hamiltonian_cycle(self.word, self.repeat)

    def prefixed(self, *steps: str) -> "Certificate":
        """The same certificate with extra leading trace steps."""
        return Certificate(self.group, self.order, self.gens, self.word,
                           self.repeat, tuple(steps) + self.trace)


def make_certificate(graph: CayleyGraph, word, repeat: int, trace) -> Certificate:
    """Build a Certificate, verifying the cycle before returning it."""
    word = tuple(word)
    graph.assert_hamiltonian_cycle(word, repeat)
    return Certificate(graph.group.name, graph.n, graph.gens, word, repeat,
                       tuple(trace))


# -- coset multigraphs -------------------------------------------------


class CosetMultigraph:
    """H\\Cay(G;S): vertices are right cosets Hg (named by least member);
    one edge per signed symbol, so parallel (double) edges are visible."""

    def __init__(self, graph: CayleyGraph, h_elems):
        G = graph.group
        if not G.is_subgroup(h_elems):
            raise HypothesisFailure("H is not a subgroup")
        self.graph = graph
        self.h = tuple(sorted(h_elems))
        cosets = G.right_cosets(self.h)
        self.reps = tuple(c[0] for c in cosets)
        rep_of = [0] * G.n
        for c in cosets:
            for g in c:
                rep_of[g] = c[0]
        self.rep_of = tuple(rep_of)
        self.index = {r: i for i, r in enumerate(self.reps)}

    @property
    def n(self) -> int:
        return len(self.reps)

    def step(self, coset_rep: int, sym: int) -> int:
        return self.rep_of[self.graph.step(coset_rep, sym)]

    def walk(self, word, repeat: int = 1, start: int | None = None):
        v = self.reps[0] if start is None else self.rep_of[start]
        for _ in range(repeat):
            for sym in word:
                v = self.step(v, sym)
                yield v

    def neighbors(self, coset_rep: int):
        return tuple((s, self.step(coset_rep, s))
                     for s in self.graph.reduced_symbols())

    def multiplicity(self, u: int, v: int) -> int:
        """Number of signed symbols leading from coset u to coset v."""
        return sum(1 for _, w in self.neighbors(u) if w == v)

    def double_edges(self):
        """Pairs of distinct cosets joined by >= 2 symbols, with the symbol
        lists: ((u, v, (sym, ...)), ...)."""
        out = []
        for u in self.reps:
            per = {}
            for s, w in self.neighbors(u):
                if w != u:
                    per.setdefault(w, []).append(s)
            for w, syms in sorted(per.items()):
                if len(syms) >= 2 and u < w:
                    out.append((u, w, tuple(syms)))
        return tuple(out)

    def check_hamiltonian_cycle(self, word, start: int | None = None):
        n = self.n
        if len(word) != n:
            return False, f"walk length {len(word)} != {n} cosets"
        v0 = self.reps[0] if start is None else self.rep_of[start]
        visited = set()
        last = v0
        for i, v in enumerate(self.walk(word, 1, v0)):
            if i < n - 1:
                if v in visited or v == v0:
                    return False, ("revisit", i, v)
                visited.add(v)
            last = v
        if last != v0:
            return False, ("open", last)
        return True, None

    def doubled_steps(self, word, start: int | None = None):
        """Steps of the walk that traverse a multiple edge, as
        (position, u, v, alternative_symbols)."""
        v = self.reps[0] if start is None else self.rep_of[start]
        out = []
        for i, sym in enumerate(word):
            w = self.step(v, sym)
            if w != v:
                syms = tuple(s for s, x in self.neighbors(v) if x == w)
                if len(syms) >= 2:
                    out.append((i, v, w, syms))
            v = w
        return out


# -- the 3p^2 quotient grid --------------------------------------------


def _signed(n: int, p: int) -> int:
    """Representative of n mod p in [-(p-1)/2, (p-1)/2]."""
    m = n % p
    return m if m <= (p - 1) // 2 else m - p


class ThreePSquaredMultigraph:
    """Quotient multigraph on p^2 vertices (i, j) with i, j signed residues
    mod p.  Symbols: 't' -> (i+1, j); 'T' (t^-1) -> (i-1, j);
    's' -> (-j, i-j); 'S' (s^-1) -> (j-i, -i)."""

    SYMS = ("t", "T", "s", "S")

    def __init__(self, p: int):
        if p < 5 or not p % 2:
            raise HypothesisFailure("p must be an odd prime >= 5")
        self.p = p

    def vertices(self):
        h = (self.p - 1) // 2
        return [(_signed(i, self.p), _signed(j, self.p))
                for j in range(-h, h + 1) for i in range(-h, h + 1)]

    def step(self, v, sym):
        i, j = v
        p = self.p
        if sym == "t":
            return (_signed(i + 1, p), j)
        if sym == "T":
            return (_signed(i - 1, p), j)
        if sym == "s":
            return (_signed(-j, p), _signed(i - j, p))
        if sym == "S":
            return (_signed(j - i, p), _signed(-i, p))
        raise ParseError(f"unknown symbol {sym!r}")

    def neighbors(self, v):
        return tuple((sym, self.step(v, sym)) for sym in self.SYMS)

    def double_edges(self):
        """The pairs of vertices joined by two edges, each as
        (u, v, (symbols from u))."""
        out = []
        for u in self.vertices():
            per = {}
            for sym, w in self.neighbors(u):
                if w != u:
                    per.setdefault(w, []).append(sym)
            for w, syms in sorted(per.items()):
                if len(syms) >= 2 and u < w:
                    out.append((u, w, tuple(syms)))
        return tuple(out)

    def check_hamiltonian_cycle(self, word, start):
        n = self.p * self.p
        if len(word) != n:
            return False, "wrong length"
        visited = set()
        v = start
        last = start
        for i, sym in enumerate(word):
            v = self.step(v, sym)
            if i < n - 1:
                if v in visited or v == start:
                    return False, ("revisit", i, v)
                visited.add(v)
            last = v
        if last != start:
            return False, ("open", last)
        return True, None


def three_p_sq_multigraph(p: int) -> ThreePSquaredMultigraph:
    """The order-3p^2 coset quotient multigraph on signed-residue
    coordinates; see ThreePSquaredMultigraph."""
    return ThreePSquaredMultigraph(p)


def row_sweep_cycle(p: int):
    """Explicit hamiltonian cycle of the 3p^2 quotient multigraph, starting
    at (1, 1).  Returns the symbol word (over 't'/'T'/'s'/'S'); it traverses
    both double edges."""
    if p % 3 == 1:
        k = (p - 1) // 3
    elif p % 3 == 2:
        k = (p - 2) // 3
    else:
        raise HypothesisFailure("p must not be divisible by 3")
    word: list[str] = []

    def rem(n):  # {n}: remainder in [0, p)
        return n % p

    for j in range(1, (p - 3) // 2 + 1):
        word += ["T"] * rem(3 * j - 1) + ["S"] + ["t"] * rem(-3 * j - 1) + ["S"]
    word += ["T"] * ((p - 5) // 2) + ["S"] + ["t"] * ((p + 1) // 2) + ["s"]
    word += ["t"] * (p - 1) + ["S"]
    for j in range(-(p - 1) // 2, -k):  # j = -(p-1)/2 .. -k-1
        star = "S" if (j == -k - 1 and p % 3 == 1) else "s"
        word += ["t"] * rem(3 * j - 1) + ["s"] + ["T"] * rem(-3 * j - 1) + [star]
    for j in range(-k, -1):  # j = -k .. -2
        word += ["T"] * rem(3 * j - 1) + ["S"] + ["t"] * rem(-3 * j - 1) + ["S"]
    word += ["T"] * (p - 4) + ["S"] + ["t"] * 2 + ["s"]
    return tuple(word)


# -- generalized Petersen recognition ----------------------------------


def _cycles_of_subgraph(n, adj):
    """Decompose a 2-regular graph (dict v -> set of neighbors) into cycles."""
    seen = set()
    cycles = []
    for v0 in sorted(adj):
        if v0 in seen:
            continue
        cyc = [v0]
        seen.add(v0)
        prev, cur = None, v0
        while True:
            nxt = [w for w in sorted(adj[cur]) if w != prev]
            if not nxt:
                break
            # in a cycle with possible 2-cycles, fall back to any unseen
            w = nxt[0]
            if w == v0 and len(cyc) >= 2:
                break
            prev, cur = cur, w
            if cur in seen:
                break
            seen.add(cur)
            cyc.append(cur)
        cycles.append(cyc)
    return cycles


def recognize_generalized_petersen(graph: CayleyGraph):
    """If Cay(G;S) is isomorphic to a generalized Petersen graph GP(n, r),
    return (n, r, spoke_symbol, mapping); otherwise None.  ``mapping[i]``
    is the graph vertex playing outer vertex ``i`` of GP(n, r) and
    ``mapping[n + i]`` the vertex playing inner vertex ``i``.

    Looks for a spoke generator s such that the remaining edges form two
    disjoint |G|/2-cycles matched perfectly by the s-edges.
    """
    G = graph.group
    if len(graph.gens) != 3:
        return None
    if any(G.element_order(g) != 2 for g in graph.gens):
        return None
    nverts = G.n
    if nverts % 2:
        return None
    n = nverts // 2
    for spoke_i, spoke in enumerate(graph.gens, start=1):
        others = [g for g in graph.gens if g != spoke]
        adj = {v: {G.table[v][g] for g in others} for v in range(nverts)}
        if any(len(a) != 2 for a in adj.values()):
            continue
        cycles = _cycles_of_subgraph(nverts, adj)
        if len(cycles) != 2 or any(len(c) != n for c in cycles):
            continue
        outer, inner = cycles
        pos_outer = {v: i for i, v in enumerate(outer)}
        # spokes must match outer to inner perfectly
        match = {}
        ok = True
        for v in outer:
            w = G.table[v][spoke]
            if w in pos_outer:
                ok = False
                break
            match[v] = w
        if not ok or len(set(match.values())) != n:
            continue
        # inner cycle in outer coordinates
        y = {pos_outer[v]: match[v] for v in outer}
        # find r: inner neighbors of y[0]
        inner_adj = {v: {G.table[v][g] for g in others} for v in inner}
        ypos = {w: i for i, w in y.items()}
        rset = set()
        for w in inner_adj[y[0]]:
            if w in ypos:
                rset.add(ypos[w] % n)
        ok = False
        for r in sorted(rset):
            if all(
                {ypos[w] for w in inner_adj[y[i]]} == {(i + r) % n, (i - r) % n}
                for i in range(n)
            ):
                mapping = tuple(outer) + tuple(y[i] for i in range(n))
                return n, r, spoke_i, mapping
    return None
