"""Finite groups as dense multiplication tables, with structural queries.

Elements of a group of order n are the integers 0..n-1; the table row
``table[a]`` lists the products ``a*b`` for each b.  Every public
constructor either fully validates the table (Latin square, identity,
inverses, associativity) or produces one that is a group by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    BudgetExceeded,
    InvalidAction,
    NoIdentity,
    NoInverse,
    NotADivisor,
    NotAssociative,
    NotIsomorphic,
    NotLatinSquare,
    NotNormal,
    OrderTooLarge,
    ParseError,
)

HARD_CAP = 512


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == {n: 1}


class GroupTable:
    """Immutable finite group given by its multiplication table."""

    __slots__ = ("n", "table", "identity", "inverse", "name", "_cache")

    def __init__(self, rows, name: str = "", validate: bool = True):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise NoIdentity("empty table")
        if n > HARD_CAP:
            raise OrderTooLarge(f"order {n} exceeds hard cap {HARD_CAP}")
        self.n = n
        self.table = rows
        self.name = name or f"group{n}"
        self._cache = {}
        if validate:
            self._validate()
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()

    # -- validation ----------------------------------------------------

    def _validate(self):
        n = self.n
        T = np.array(self.table, dtype=np.int64)
        if T.shape != (n, n) or T.min() < 0 or T.max() >= n:
            raise NotLatinSquare("entries out of range or ragged rows")
        want = np.arange(n)
        for a in range(n):
            if not np.array_equal(np.sort(T[a]), want):
                raise NotLatinSquare(f"row {a} is not a permutation")
            if not np.array_equal(np.sort(T[:, a]), want):
                raise NotLatinSquare(f"column {a} is not a permutation")
        # associativity, chunked so the intermediate stays small
        step = max(1, (1 << 22) // (n * n))
        for lo in range(0, n, step):
            hi = min(n, lo + step)
            left = T[T[lo:hi]]          # left[a,b,c] = (a*b)*c
            right = T[lo:hi][:, T]      # right[a,b,c] = a*(b*c)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                a, b, c = int(bad[0]) + lo, int(bad[1]), int(bad[2])
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")

    def _find_identity(self) -> int:
        for e in range(self.n):
            if all(self.table[e][b] == b for b in range(self.n)) and all(
                self.table[b][e] == b for b in range(self.n)
            ):
                return e
        raise NoIdentity("no two-sided identity element")

    def _find_inverses(self):
        e = self.identity
        inv = [None] * self.n
        for a in range(self.n):
            row = self.table[a]
            for b in range(self.n):
                if row[b] == e and self.table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise NoInverse(f"element {a} has no inverse")
        return tuple(inv)

    # -- basic operations ----------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        while k:
            if k & 1:
                out = self.table[out][a]
            a = self.table[a][a]
            k >>= 1
        return out

    def prod(self, elems) -> int:
        out = self.identity
        for g in elems:
            out = self.table[out][g]
        return out

    def element_order(self, a: int) -> int:
        orders = self.element_orders()
        return orders[a]

    def element_orders(self) -> tuple[int, ...]:
        if "orders" not in self._cache:
            e = self.identity
            out = []
            for a in range(self.n):
                k, x = 1, a
                while x != e:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            self._cache["orders"] = tuple(out)
        return self._cache["orders"]

    def conjugate(self, g: int, h: int) -> int:
        """h^-1 g h."""
        return self.mul(self.mul(self.inverse[h], g), h)

    def commutator(self, g: int, h: int) -> int:
        """g^-1 h^-1 g h."""
        return self.mul(self.mul(self.inverse[g], self.inverse[h]), self.mul(g, h))

    def __repr__(self):
        return f"GroupTable({self.name}, n={self.n})"

    def key(self) -> tuple:
        return self.table

    # -- structure -----------------------------------------------------

    def closure(self, gens) -> tuple[int, ...]:
        """Sorted elements of the subgroup generated by gens."""
        gens = sorted(set(gens))
        seen = {self.identity}
        frontier = [self.identity]
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        i = 0
        while i < len(frontier):
            a = frontier[i]
            i += 1
            row = self.table[a]
            for g in gens:
                p = row[g]
                if p not in seen:
                    seen.add(p)
                    frontier.append(p)
        return tuple(sorted(seen))

    def generates(self, gens) -> bool:
        return len(self.closure(gens)) == self.n

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s)

    def is_normal(self, elems) -> bool:
        s = set(elems)
        return all(self.conjugate(h, g) in s for h in s for g in range(self.n))

    def centralizes(self, g: int, elems) -> bool:
        return all(self.table[g][a] == self.table[a][g] for a in elems)

    def center(self) -> tuple[int, ...]:
        if "center" not in self._cache:
            full = range(self.n)
            self._cache["center"] = tuple(
                g for g in full if self.centralizes(g, full)
            )
        return self._cache["center"]

    def is_abelian(self) -> bool:
        return len(self.center()) == self.n

    def commutator_subgroup(self) -> tuple[int, ...]:
        if "derived" not in self._cache:
            comms = {self.commutator(a, b) for a in range(self.n) for b in range(self.n)}
            self._cache["derived"] = self.closure(comms)
        return self._cache["derived"]

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        if "classes" not in self._cache:
            seen = set()
            classes = []
            for g in range(self.n):
                if g in seen:
                    continue
                orb = {self.conjugate(g, h) for h in range(self.n)}
                seen |= orb
                classes.append(tuple(sorted(orb)))
            self._cache["classes"] = tuple(classes)
        return self._cache["classes"]

    def normal_closure(self, elems) -> tuple[int, ...]:
        conj = {self.conjugate(g, h) for g in elems for h in range(self.n)}
        return self.closure(conj)

    def all_subgroups(self) -> tuple[tuple[int, ...], ...]:
        """Every subgroup, as sorted element tuples (exhaustive lattice walk)."""
        if "subgroups" not in self._cache:
            triv = (self.identity,)
            found = {triv}
            queue = [triv]
            while queue:
                h = queue.pop()
                hs = set(h)
                for g in range(self.n):
                    if g in hs:
                        continue
                    k = self.closure(h + (g,))
                    if k not in found:
                        found.add(k)
                        if len(k) < self.n:
                            queue.append(k)
            self._cache["subgroups"] = tuple(sorted(found, key=lambda t: (len(t), t)))
        return self._cache["subgroups"]

    def maximal_subgroups(self) -> tuple[tuple[int, ...], ...]:
        subs = [s for s in self.all_subgroups() if len(s) < self.n]
        out = []
        for s in subs:
            ss = set(s)
            if not any(len(t) > len(s) and ss < set(t) for t in subs):
                out.append(s)
        return tuple(out)

    def frattini_subgroup(self) -> tuple[int, ...]:
        if "frattini" not in self._cache:
            maxes = self.maximal_subgroups()
            if not maxes:
                self._cache["frattini"] = tuple(range(self.n))
            else:
                acc = set(maxes[0])
                for m in maxes[1:]:
                    acc &= set(m)
                self._cache["frattini"] = tuple(sorted(acc))
        return self._cache["frattini"]

    def sylow_subgroup(self, p: int) -> tuple[int, ...]:
        """A Sylow p-subgroup, grown through successive normalizers."""
        fac = factorize(self.n)
        if p not in fac:
            return (self.identity,)
        target = p ** fac[p]
        orders = self.element_orders()
        # seed with an element of order p (Cauchy)
        seed = next(g for g in range(self.n) if orders[g] == p)
        P = self.closure([seed])
        while len(P) < target:
            ps = set(P)
            norm = [g for g in range(self.n) if all(self.conjugate(h, g) in ps for h in P)]
            grown = False
            for g in norm:
                if g in ps:
                    continue
                o = orders[g]
                q = o
                while q % p == 0:
                    q //= p
                gp = self.power(g, q)  # p-part of g
                if gp not in ps:
                    P = self.closure(P + (gp,))
                    grown = True
                    break
            if not grown:
                raise NotADivisor(f"failed to grow Sylow {p}-subgroup")  # pragma: no cover
        return P

    def sylow_is_normal(self, p: int) -> bool:
        """Sufficient divisor test: 1 is the only divisor k of |G|/|P| with
        k = 1 mod p.  May return False for a normal Sylow subgroup."""
        fac = factorize(self.n)
        if p not in fac:
            return True
        m = self.n // p ** fac[p]
        for k in range(1 + p, m + 1):
            if m % k == 0 and k % p == 1:
                return False
        return True

    def right_cosets(self, elems) -> tuple[tuple[int, ...], ...]:
        """Right cosets Hg, each sorted, ordered by least member."""
        hs = sorted(set(elems))
        seen = set()
        cosets = []
        for g in range(self.n):
            if g in seen:
                continue
            c = tuple(sorted(self.table[h][g] for h in hs))
            seen |= set(c)
            cosets.append(c)
        return tuple(cosets)

    def coset_reps(self, elems) -> tuple[int, ...]:
        return tuple(c[0] for c in self.right_cosets(elems))


# -- quotient ----------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """G/N with element i represented by section[i]; projection maps G onto
    quotient indices."""

    group: GroupTable
    projection: tuple[int, ...]
    section: tuple[int, ...]


def quotient(G: GroupTable, n_elems) -> Quotient:
    ns = set(n_elems)
    if not G.is_subgroup(ns):
        raise NotNormal("not a subgroup")
    if not G.is_normal(ns):
        raise NotNormal("subgroup is not normal")
    cosets = G.right_cosets(ns)
    reps = tuple(c[0] for c in cosets)
    idx_of_rep = {r: i for i, r in enumerate(reps)}
    proj = [0] * G.n
    for i, c in enumerate(cosets):
        for g in c:
            proj[g] = i
    m = len(reps)
    rows = [[idx_of_rep[reps[proj[G.mul(reps[i], reps[j])]]] for j in range(m)] for i in range(m)]
    # rows via proj directly
    rows = [[proj[G.mul(reps[i], reps[j])] for j in range(m)] for i in range(m)]
    Q = GroupTable(rows, name=f"{G.name}/N{len(ns)}", validate=False)
    return Quotient(Q, tuple(proj), reps)


# -- constructors ------------------------------------------------------


def trivial() -> GroupTable:
    return GroupTable(((0,),), name="Z1", validate=False)


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ParseError("cyclic group order must be positive")
    if n > HARD_CAP:
        raise OrderTooLarge(f"order {n} exceeds hard cap {HARD_CAP}")
    rows = [[(a + b) % n for b in range(n)] for a in range(n)]
    return GroupTable(rows, name=f"Z{n}", validate=False)


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the given (even) order 2m: <x, f | x^m, f^2, x^f = x^-1>.

    Element 2i is x^i, element 2i+1 is f x^i.
    """
    if order % 2 or order < 2:
        raise ParseError("dihedral order must be even and >= 2")
    m = order // 2
    if order > HARD_CAP:
        raise OrderTooLarge(f"order {order} exceeds hard cap {HARD_CAP}")

    def code(flip, rot):
        return 2 * rot + flip

    rows = [[0] * order for _ in range(order)]
    for f1 in (0, 1):
        for r1 in range(m):
            for f2 in (0, 1):
                for r2 in range(m):
                    # (f^f1 x^r1)(f^f2 x^r2) = f^(f1+f2) x^(±r1+r2)
                    rot = (r2 - r1 if f2 else r1 + r2) % m
                    rows[code(f1, r1)][code(f2, r2)] = code((f1 + f2) % 2, rot)
    return GroupTable(rows, name=f"D{order}", validate=False)


def generalized_quaternion(order: int) -> GroupTable:
    """Generalized quaternion/dicyclic group of order 4m:
    <x, f | x^2m = e, f^2 = x^m, x^f = x^-1>.

    Element i (i < 2m) is x^i; element 2m+i is f x^i.
    """
    if order % 4 or order < 8:
        raise ParseError("generalized quaternion order must be a multiple of 4, >= 8")
    if order > HARD_CAP:
        raise OrderTooLarge(f"order {order} exceeds hard cap {HARD_CAP}")
    m2 = order // 2  # |x|

    def code(flip, rot):
        return m2 * flip + rot

    rows = [[0] * order for _ in range(order)]
    for f1 in (0, 1):
        for r1 in range(m2):
            for f2 in (0, 1):
                for r2 in range(m2):
                    flip = (f1 + f2) % 2
                    rot = (r2 - r1) % m2 if f2 else (r1 + r2) % m2
                    if f1 and f2:  # f x^r1 f x^r2 = f^2 x^(r2-r1)
                        rot = (rot + m2 // 2) % m2
                    rows[code(f1, r1)][code(f2, r2)] = code(flip, rot)
    return GroupTable(rows, name=f"Q{order}", validate=False)


def direct_product(A: GroupTable, B: GroupTable, name: str = "") -> GroupTable:
    """A x B with element (a, b) numbered a*|B| + b (second factor fastest)."""
    if A.n * B.n > HARD_CAP:
        raise OrderTooLarge(f"order {A.n * B.n} exceeds hard cap {HARD_CAP}")
    nb = B.n
    rows = [
        [A.table[a1][a2] * nb + B.table[b1][b2] for a2 in range(A.n) for b2 in range(nb)]
        for a1 in range(A.n)
        for b1 in range(nb)
    ]
    return GroupTable(rows, name=name or f"{A.name}x{B.name}", validate=False)


def semidirect(H: GroupTable, K: GroupTable, action: dict[int, tuple[int, ...]],
               name: str = "", validate: bool = True) -> GroupTable:
    """H acting on K; ``action[h]`` is the permutation k -> k^h for a set of
    h that generates H.  Element (h, k) is numbered h*|K| + k.

    The action is validated: each given permutation must be an automorphism
    of K and the extension to all of H must be consistent (a homomorphism
    into Aut(K)).
    """
    if H.n * K.n > HARD_CAP:
        raise OrderTooLarge(f"order {H.n * K.n} exceeds hard cap {HARD_CAP}")
    for h, perm in action.items():
        if sorted(perm) != list(range(K.n)):
            raise InvalidAction(f"action of {h} is not a permutation of K")
        for a in range(K.n):
            for b in range(K.n):
                if perm[K.table[a][b]] != K.table[perm[a]][perm[b]]:
                    raise InvalidAction(f"action of {h} is not an automorphism of K")
    if not H.generates(action.keys()):
        raise InvalidAction("action generators do not generate H")
    ident = tuple(range(K.n))
    phi: dict[int, tuple[int, ...]] = {H.identity: ident}
    frontier = [H.identity]
    gens = sorted(action)
    while frontier:
        h = frontier.pop()
        for g in gens:
            hg = H.mul(h, g)
            # k^(h g) = (k^h)^g
            composed = tuple(action[g][phi[h][k]] for k in range(K.n))
            if hg in phi:
                if phi[hg] != composed:
                    raise InvalidAction("action is not a homomorphism into Aut(K)")
            else:
                phi[hg] = composed
                frontier.append(hg)
    # consistency across all products
    for h1 in range(H.n):
        for g in gens:
            hg = H.mul(h1, g)
            composed = tuple(action[g][phi[h1][k]] for k in range(K.n))
            if phi[hg] != composed:
                raise InvalidAction("action is not a homomorphism into Aut(K)")
    nk = K.n
    rows = [
        [H.table[h1][h2] * nk + K.table[phi[h2][k1]][k2] for h2 in range(H.n) for k2 in range(nk)]
        for h1 in range(H.n)
        for k1 in range(nk)
    ]
    return GroupTable(rows, name=name or f"{H.name}semi{K.name}", validate=validate)


def cyclic_extension(N: GroupTable, p: int, beta, n0: int,
                     name: str = "", validate: bool = True) -> GroupTable:
    """Extension of N by Z_p: adjoin t with a^t = beta(a) and t^p = n0.

    ``beta`` is an automorphism of N (as a permutation tuple) that fixes
    ``n0``, with beta^p equal to conjugation by n0.  Element (i, a) is
    numbered i*|N| + a (the normal factor varies fastest).  Every group with
    a normal subgroup of prime index p arises this way.
    """
    if not is_prime(p):
        raise InvalidAction(f"extension degree {p} is not prime")
    if p * N.n > HARD_CAP:
        raise OrderTooLarge(f"order {p * N.n} exceeds hard cap {HARD_CAP}")
    beta = tuple(beta)
    if sorted(beta) != list(range(N.n)):
        raise InvalidAction("beta is not a permutation of N")
    for a in range(N.n):
        for b in range(N.n):
            if beta[N.table[a][b]] != N.table[beta[a]][beta[b]]:
                raise InvalidAction("beta is not an automorphism of N")
    if beta[n0] != n0:
        raise InvalidAction("beta does not fix t^p = n0")
    power = tuple(range(N.n))
    powers = [power]
    for _ in range(p - 1):
        power = tuple(beta[x] for x in power)
        powers.append(power)
    betap = tuple(beta[x] for x in power)
    inv0 = N.inv(n0)
    if any(betap[a] != N.table[N.table[inv0][a]][n0] for a in range(N.n)):
        raise InvalidAction("beta^p is not conjugation by n0")
    nn = N.n
    rows = []
    for i in range(p):
        for a in range(nn):
            row = [0] * (p * nn)
            for j in range(p):
                conj = N.table[powers[j][a]]
                m = i + j
                carry = None
                if m >= p:
                    m -= p
                    carry = N.table[n0]
                base = m * nn
                if carry is None:
                    for b in range(nn):
                        row[j * nn + b] = base + conj[b]
                else:
                    for b in range(nn):
                        row[j * nn + b] = base + carry[conj[b]]
            rows.append(row)
    return GroupTable(rows, name=name or f"{N.name}.{p}", validate=validate)


def from_permutations(perms, name: str = ""):
    """Closure of the given permutations (tuples over 0..d-1).

    Returns (GroupTable, elements) where elements[i] is the permutation for
    group element i; elements are sorted lexicographically, so the identity
    is element 0.
    """
    perms = [tuple(p) for p in perms]
    if not perms:
        raise ParseError("need at least one permutation")
    d = len(perms[0])
    for p in perms:
        if sorted(p) != list(range(d)):
            raise ParseError(f"not a permutation of 0..{d - 1}: {p}")
    ident = tuple(range(d))
    seen = {ident}
    frontier = [ident]
    while frontier:
        a = frontier.pop()
        for p in perms:
            q = tuple(p[a[i]] for i in range(d))
            if q not in seen:
                if len(seen) >= HARD_CAP:
                    raise OrderTooLarge(f"closure exceeds hard cap {HARD_CAP}")
                seen.add(q)
                frontier.append(q)
    elems = sorted(seen)
    idx = {p: i for i, p in enumerate(elems)}
    rows = [
        [idx[tuple(b[a[i]] for i in range(d))] for b in elems]
        for a in elems
    ]
    return GroupTable(rows, name=name or f"perm{len(elems)}", validate=False), tuple(elems)


# -- table file format -------------------------------------------------


def save_table(G: GroupTable) -> str:
    """Text form: first line is the order, then one row per line.
    Element 0 must be the identity."""
    if G.identity != 0:
        raise ParseError("table file format requires element 0 to be the identity")
    lines = [str(G.n)]
    for row in G.table:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def load_table(text: str, name: str = "") -> GroupTable:
    """Parse the text table format; '#' starts a comment."""
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise ParseError(f"line {lineno}: expected the group order")
            n = int(parts[0])
            continue
        try:
            row = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry") from None
        if len(row) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    if n is None:
        raise ParseError("empty table file")
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}")
    G = GroupTable(rows, name=name, validate=True)
    if G.identity != 0:
        raise ParseError("element 0 is not the identity")
    return G


# -- element fingerprints, isomorphism, automorphisms ------------------


def _class_invariants(G: GroupTable):
    """Per-element tuple invariant under any automorphism."""
    if "clsinv" in G._cache:
        return G._cache["clsinv"]
    orders = G.element_orders()
    classes = G.conjugacy_classes()
    class_of = {}
    for ci, cls in enumerate(classes):
        for g in cls:
            class_of[g] = ci
    csize = {g: len(classes[class_of[g]]) for g in range(G.n)}
    # square's order and class size refine the profile
    inv = tuple(
        (orders[g], csize[g], orders[G.mul(g, g)], csize[G.mul(g, g)])
        for g in range(G.n)
    )
    G._cache["clsinv"] = inv
    return inv


def fingerprint(G: GroupTable) -> tuple:
    """Isomorphism-invariant signature (not complete, used for bucketing)."""
    if "fingerprint" in G._cache:
        return G._cache["fingerprint"]
    orders = G.element_orders()
    der = G.commutator_subgroup()
    cen = G.center()
    inv = _class_invariants(G)
    fp = (
        G.n,
        tuple(sorted(orders)),
        len(cen),
        tuple(sorted(orders[g] for g in cen)),
        len(der),
        tuple(sorted(orders[g] for g in der)),
        tuple(sorted(inv)),
    )
    G._cache["fingerprint"] = fp
    return fp


def generating_sequence(G: GroupTable) -> tuple[int, ...]:
    """Short deterministic generating sequence (greedy by element order)."""
    gens: list[int] = []
    cl = (G.identity,)
    orders = G.element_orders()
    while len(cl) < G.n:
        cs = set(cl)
        best = min((g for g in range(G.n) if g not in cs), key=lambda g: (-orders[g], g))
        gens.append(best)
        cl = G.closure(gens)
    return tuple(gens)


def _hom_extend(G: GroupTable, H: GroupTable, gens, imgs):
    """Extend gens->imgs to a homomorphism on <gens>; return the map dict or
    None if inconsistent."""
    m = {G.identity: H.identity}
    frontier = [G.identity]
    gi = list(zip(gens, imgs))
    while frontier:
        a = frontier.pop()
        for g, ig in gi:
            p = G.mul(a, g)
            q = H.mul(m[a], ig)
            if p in m:
                if m[p] != q:
                    return None
            else:
                m[p] = q
                frontier.append(p)
    # full generator-product consistency (sufficient for a homomorphism)
    for a in m:
        for g, ig in gi:
            if m[G.mul(a, g)] != H.mul(m[a], ig):
                return None
    return m


def _iso_search(G: GroupTable, H: GroupTable, budget: int):
    """Yield isomorphisms G->H as image tuples for generating_sequence(G)."""
    gens = generating_sequence(G)
    ginv = _class_invariants(G)
    hinv = _class_invariants(H)
    cand = {}
    for g in gens:
        cand[g] = [h for h in range(H.n) if hinv[h] == ginv[g]]
    nodes = 0

    def rec(i, imgs):
        nonlocal nodes
        if i == len(gens):
            m = _hom_extend(G, H, gens, imgs)
            if m is not None and len(m) == G.n and len(set(m.values())) == G.n:
                yield tuple(imgs)
            return
        for h in cand[gens[i]]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"isomorphism search exceeded {budget} nodes")
            imgs.append(h)
            m = _hom_extend(G, H, gens[: i + 1], imgs)
            if m is not None and len(set(m.values())) == len(m):
                yield from rec(i + 1, imgs)
            imgs.pop()

    yield from rec(0, [])


def isomorphic(G: GroupTable, H: GroupTable, budget: int = 5_000_000) -> bool:
    if G.n != H.n:
        return False
    if fingerprint(G) != fingerprint(H):
        return False
    for _ in _iso_search(G, H, budget):
        return True
    return False


def isomorphism_map(G: GroupTable, H: GroupTable,
                    budget: int = 5_000_000) -> dict[int, int] | None:
    """The first isomorphism G -> H in deterministic search order, as an
    element map, or None when the groups are not isomorphic."""
    if G.n != H.n or fingerprint(G) != fingerprint(H):
        return None
    gens = generating_sequence(G)
    for imgs in _iso_search(G, H, budget):
        return _hom_extend(G, H, gens, imgs)
    return None


def automorphisms(G: GroupTable, budget: int = 20_000_000) -> list[tuple[int, ...]]:
    """All automorphisms of G as permutation tuples, sorted."""
    gens = generating_sequence(G)
    out = []
    for imgs in _iso_search(G, G, budget):
        m = _hom_extend(G, G, gens, imgs)
        out.append(tuple(m[g] for g in range(G.n)))
    return sorted(out)


# -- presentations -----------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Named generators with target orders and defining relations.

    orders maps generator name -> exact element order (or None for "any");
    each relation is a word, a tuple of (name, exponent) pairs, required to
    multiply out to the identity.
    """

    gens: tuple[str, ...]
    orders: dict = field(default_factory=dict)
    relations: tuple = ()


def eval_word(G: GroupTable, assign: dict, word) -> int:
    out = G.identity
    for name, exp in word:
        out = G.mul(out, G.power(assign[name], exp))
    return out


def iter_presentation_matches(G: GroupTable, pres: Presentation,
                              require_generate: bool = True,
                              budget: int = 1_000_000):
    """Yield assignments {name: element} satisfying the presentation.

    Deterministic order; raises BudgetExceeded past the node budget.
    """
    orders = G.element_orders()
    names = pres.gens
    cands = []
    for name in names:
        want = pres.orders.get(name)
        cands.append([g for g in range(G.n) if want is None or orders[g] == want])
    nodes = 0

    def relations_ok(assign, bound):
        for word in pres.relations:
            if all(name in assign for name, _ in word):
                # only check relations that became fully assigned at this step
                if any(name == bound for name, _ in word):
                    if eval_word(G, assign, word) != G.identity:
                        return False
        return True

    def rec(i, assign):
        nonlocal nodes
        if i == len(names):
            if not require_generate or G.generates(assign.values()):
                yield dict(assign)
            return
        name = names[i]
        for g in cands[i]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"presentation search exceeded {budget} nodes")
            assign[name] = g
            if relations_ok(assign, name):
                yield from rec(i + 1, assign)
            del assign[name]

    yield from rec(0, {})


def match_presentation(G: GroupTable, pres: Presentation,
                       require_generate: bool = True,
                       budget: int = 1_000_000) -> dict:
    for assign in iter_presentation_matches(G, pres, require_generate, budget):
        return assign
    raise NotIsomorphic(f"{G.name} has no elements satisfying the presentation")


# -- structure predicates ----------------------------------------------


def index_two_subgroups(G: GroupTable):
    """All subgroups of index 2 (sorted element tuples)."""
    sq = {G.mul(g, g) for g in range(G.n)}
    K = G.closure(tuple(sq) + G.commutator_subgroup())
    if len(K) == G.n:
        return ()
    q = quotient(G, K)
    Q = q.group
    out = []
    for sub in Q.all_subgroups():
        if len(sub) * 2 == Q.n:
            members = tuple(sorted(g for g in range(G.n) if q.projection[g] in set(sub)))
            out.append(members)
    return tuple(sorted(out))


def dihedral_type(G: GroupTable):
    """Return (A, f) with A an abelian index-2 subgroup whose every element
    is inverted by the involution f outside A; None if no such pair."""
    orders = G.element_orders()
    for A in index_two_subgroups(G):
        aset = set(A)
        if not all(G.table[a][b] == G.table[b][a] for a in A for b in A):
            continue
        for f in range(G.n):
            if f in aset or orders[f] != 2:
                continue
            if all(G.conjugate(a, f) == G.inv(a) for a in A):
                return A, f
    return None


def quaternion_type(G: GroupTable):
    """Return (A, f) with A abelian of index 2 and f of order 4 outside A
    inverting every element of A; None if no such pair."""
    orders = G.element_orders()
    for A in index_two_subgroups(G):
        aset = set(A)
        if not all(G.table[a][b] == G.table[b][a] for a in A for b in A):
            continue
        for f in range(G.n):
            if f in aset or orders[f] != 4:
                continue
            if all(G.conjugate(a, f) == G.inv(a) for a in A):
                return A, f
    return None


def is_cyclic(G: GroupTable) -> bool:
    return max(G.element_orders()) == G.n


def is_dihedral(G: GroupTable) -> bool:
    if G.n % 2:
        return False
    if G.n == 2:
        return False
    dt = dihedral_type(G)
    if dt is None:
        return False
    A, _ = dt
    sub = [[G.table[a][b] for b in A] for a in A]
    # relabel A as its own table
    idx = {a: i for i, a in enumerate(A)}
    sub = [[idx[G.table[a][b]] for b in A] for a in A]
    return is_cyclic(GroupTable(sub, validate=False))


def abelian_invariants(G: GroupTable) -> tuple[int, ...]:
    """Primary-decomposition invariants (prime-power cyclic factors, sorted)."""
    if not G.is_abelian():
        raise NotIsomorphic("group is not abelian")
    orders = G.element_orders()
    out = []
    for p, a in sorted(factorize(G.n).items()):
        # n_k = number of elements with g^(p^k) = e
        counts = []
        for k in range(a + 1):
            pk = p ** k
            counts.append(sum(1 for o in orders if pk % o == 0))
        # partition lambda: multiplicity of p^k factors from rank differences
        ranks = []
        for k in range(1, a + 1):
            if counts[k] == counts[k - 1]:
                break
            ranks.append((counts[k] // counts[k - 1]))
        # ranks[k-1] = p^(number of factors of size >= p^k)
        import math

        nfac = [round(math.log(r, p)) for r in ranks]
        for k in range(len(nfac)):
            mult = nfac[k] - (nfac[k + 1] if k + 1 < len(nfac) else 0)
            out.extend([p ** (k + 1)] * mult)
    return tuple(sorted(out))


def subgroup_table(G: GroupTable, elems, name: str = "") -> GroupTable:
    """The subgroup as its own GroupTable, elements renumbered in sorted
    order; returns (table, embedding) via .embedding attribute convention."""
    elems = tuple(sorted(elems))
    idx = {a: i for i, a in enumerate(elems)}
    rows = [[idx[G.table[a][b]] for b in elems] for a in elems]
    H = GroupTable(rows, name=name or f"{G.name}sub{len(elems)}", validate=False)
    H._cache["embedding"] = elems
    return H
