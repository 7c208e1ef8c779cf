"""Built-in catalog of all groups of each order up to the sweep cap,
generating-set enumeration, and directory-backed certificate persistence.

Groups are enumerated by prime-index cyclic extensions: every solvable
group has a normal subgroup of prime index, so iterating the extension
construction over the catalog of order n/p (for each prime p | n) reaches
every isomorphism class except the simple group of order 60, which is
added from a permutation representation.  Duplicates are removed by a
structural fingerprint followed by explicit isomorphism tests, and the
per-order counts are cross-checked against frozen reference counts in the
test suite.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import groups as gr
from .cayley import Certificate
from .errors import ParseError, StoreCorrupt, Unsupported
from .groups import GroupTable, factorize

#: Catalog enumeration is exhaustive only up to this order; table-level
#: operations go further, but complete isomorphism-class enumeration of
#: 2-groups beyond order 63 is out of scope.
CATALOG_MAX_ORDER = 63


# -- catalog entries ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    recipe: str
    order: int
    order_form: str
    tags: tuple[str, ...]
    group: GroupTable


def order_form(n: int) -> str:
    """Classify n by the most specific covered order form."""
    f = factorize(n)
    primes = sorted(f)
    if len(f) == 1:
        return "pk"
    if len(f) == 3 and all(a == 1 for a in f.values()):
        return "pqr"
    if any(a >= 3 and n // p**3 <= 2 for p, a in f.items()):
        return "kp3"
    if any(a >= 2 and n // p**2 <= 4 for p, a in f.items()):
        return "kp2"
    if any(n // (p * q) <= 5 for p, q in itertools.combinations(primes, 2)):
        return "kpq"
    if any(n // p < 32 and n // p != 24 for p in primes):
        return "kp"
    return "other"


# -- automorphism conjugacy machinery ----------------------------------


def _perm_compose(a, b):
    """(a . b)(x) = a[b[x]]."""
    return tuple(a[x] for x in b)


def _perm_inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


_AUT_CACHE: dict[int, list] = {}


def _automorphisms(G: GroupTable):
    key = id(G)
    if key not in _AUT_CACHE:
        _AUT_CACHE[key] = gr.automorphisms(G)
    return _AUT_CACHE[key]


def _aut_class_reps(auts):
    """First-seen conjugacy class representatives, in enumeration order."""
    seen = set()
    reps = []
    invs = [_perm_inverse(s) for s in auts]
    for a in auts:
        if a in seen:
            continue
        reps.append(a)
        for s, si in zip(auts, invs):
            seen.add(_perm_compose(_perm_compose(s, a), si))
    return reps


# -- enumeration -------------------------------------------------------


def _extension_candidates(parent: CatalogEntry, p: int):
    """All (group, recipe) cyclic extensions of the parent by Z_p, one per
    (automorphism class representative, admissible n0)."""
    N = parent.group
    out = []
    for beta in _aut_class_reps(_automorphisms(N)):
        power = tuple(range(N.n))
        for _ in range(p):
            power = _perm_compose(beta, power)
        betap = power
        for n0 in range(N.n):
            if beta[n0] != n0:
                continue
            inv0 = N.inv(n0)
            if any(betap[a] != N.table[N.table[inv0][a]][n0]
                   for a in range(N.n)):
                continue
            G = gr.cyclic_extension(N, p, beta, n0)
            recipe = f"cyclic_extension({parent.recipe}, {p}, {beta}, {n0})"
            out.append((G, recipe))
    return out


def _alternating5():
    G, _ = gr.from_permutations([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], name="A5")
    return G


_NAMED_REFERENCES = {
    12: (("A4", "perm_group([[1, 2, 0, 3], [0, 2, 3, 1]])",
          lambda: gr.from_permutations([(1, 2, 0, 3), (0, 2, 3, 1)])[0]),),
    24: (("S4", "perm_group([[1, 2, 3, 0], [1, 0, 2, 3]])",
          lambda: gr.from_permutations([(1, 2, 3, 0), (1, 0, 2, 3)])[0]),),
    60: (("A5", "perm_group([[1, 2, 3, 4, 0], [1, 2, 0, 3, 4]])",
          _alternating5),),
}


def _name_entry(G: GroupTable, n: int, idx: int) -> str:
    if G.is_abelian():
        if gr.is_cyclic(G):
            return f"Z{n}"
        return "x".join(f"Z{d}" for d in gr.abelian_invariants(G))
    if gr.is_dihedral(G):
        return f"D{n}"
    if n % 4 == 0 and n >= 8 and gr.isomorphic(G, gr.generalized_quaternion(n)):
        return f"Q{n}"
    for name, _recipe, build in _NAMED_REFERENCES.get(n, ()):
        if gr.isomorphic(G, build()):
            return name
    return f"G{n}_{idx}"


def _tags(G: GroupTable) -> tuple[str, ...]:
    tags = []
    if G.is_abelian():
        tags.append("abelian")
    if gr.is_cyclic(G):
        tags.append("cyclic")
    if not G.is_abelian():
        if gr.dihedral_type(G) is not None:
            tags.append("dihedral-type")
        if gr.quaternion_type(G) is not None:
            tags.append("quaternion-type")
    return tuple(tags)


# Enumeration results are memoized on disk (the heavy orders take tens of
# seconds to enumerate); bump the version to invalidate old caches.
_CACHE_VERSION = 1


def _cache_dir() -> Path | None:
    override = os.environ.get("HAMCAY_CACHE")
    if override == "off":
        return None
    if override:
        return Path(override)
    return Path.home() / ".cache" / "hamcay"


def _write_order_cache(n: int, entries) -> None:
    cache = _cache_dir()
    if cache is None:
        return
    lines = [f"# hamcay catalog cache v{_CACHE_VERSION} order {n}"]
    for e in entries:
        lines.append(f"entry {e.name}")
        lines.append(f"recipe {e.recipe}")
        lines.append("tags " + " ".join(e.tags))
        lines.append("table " + " ".join(
            str(x) for row in e.group.table for x in row))
    try:
        cache.mkdir(parents=True, exist_ok=True)
        tmp = cache / f"order{n}.txt.tmp{os.getpid()}"
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(cache / f"order{n}.txt")
    except OSError:
        pass


def _read_order_cache(n: int):
    cache = _cache_dir()
    if cache is None:
        return None
    path = cache / f"order{n}.txt"
    try:
        text = path.read_text()
    except OSError:
        return None
    lines = text.splitlines()
    if not lines or lines[0] != f"# hamcay catalog cache v{_CACHE_VERSION} " \
                                f"order {n}":
        return None
    entries = []
    form = order_form(n)
    name = recipe = tags = None
    try:
        for line in lines[1:]:
            key, _, rest = line.partition(" ")
            if key == "entry":
                name = rest
            elif key == "recipe":
                recipe = rest
            elif key == "tags":
                tags = tuple(rest.split())
            elif key == "table":
                flat = [int(x) for x in rest.split()]
                rows = [flat[i * n:(i + 1) * n] for i in range(n)]
                G = GroupTable(rows, name=name, validate=False)
                entries.append(CatalogEntry(name, recipe, n, form, tags, G))
        return tuple(entries) or None
    except (ValueError, IndexError):
        return None


@functools.lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[CatalogEntry, ...]:
    """Every isomorphism class of order n, exactly once, deterministically
    ordered and named."""
    if not 1 <= n <= CATALOG_MAX_ORDER:
        raise Unsupported(
            f"catalog enumeration covers orders 1..{CATALOG_MAX_ORDER}, "
            f"not {n}")
    cached = _read_order_cache(n)
    if cached is not None:
        return cached
    if n == 1:
        G = gr.trivial()
        return (CatalogEntry("Z1", "cyclic(1)", 1, order_form(1),
                             ("abelian", "cyclic"), G),)
    kept: list[tuple] = []  # (fingerprint, group, recipe)
    for p in sorted(factorize(n)):
        for parent in groups_of_order(n // p):
            for G, recipe in _extension_candidates(parent, p):
                fp = gr.fingerprint(G)
                if any(fp == ofp and gr.isomorphic(G, other)
                       for ofp, other, _ in kept):
                    continue
                kept.append((fp, G, recipe))
    if n == 60:
        G = _alternating5()
        fp = gr.fingerprint(G)
        if not any(fp == ofp and gr.isomorphic(G, other)
                   for ofp, other, _ in kept):
            kept.append((fp, G, _NAMED_REFERENCES[60][0][1]))
    form = order_form(n)
    entries = []
    for idx, (_fp, G, recipe) in enumerate(kept, start=1):
        name = _name_entry(G, n, idx)
        G = GroupTable(G.table, name=name, validate=False)
        entries.append(CatalogEntry(name, recipe, n, form, _tags(G), G))
    entries = tuple(entries)
    _write_order_cache(n, entries)
    return entries


def builtin_catalog(max_order: int) -> list[CatalogEntry]:
    """All catalog entries of order 1..max_order."""
    if max_order > CATALOG_MAX_ORDER:
        raise Unsupported(
            f"catalog enumeration covers orders up to {CATALOG_MAX_ORDER}")
    out = []
    for n in range(1, max_order + 1):
        out.extend(groups_of_order(n))
    return out


def _order_of_name(name: str) -> int | None:
    """Cheap order inference from a deterministic catalog name."""
    import math
    import re

    if re.fullmatch(r"Z\d+(xZ\d+)*", name):
        return math.prod(int(part[1:]) for part in name.split("x"))
    m = re.fullmatch(r"[DQ](\d+)|G(\d+)_\d+", name)
    if m:
        return int(m.group(1) or m.group(2))
    return {"A4": 12, "S4": 24, "A5": 60}.get(name)


def catalog_entry(name: str) -> CatalogEntry:
    """Look up a catalog entry by its deterministic name (e.g. 'D12')."""
    n = _order_of_name(name)
    if n is not None and n > CATALOG_MAX_ORDER:
        raise Unsupported(
            f"{name!r} names a group of order {n}, beyond the catalog "
            f"cap {CATALOG_MAX_ORDER}")
    if n is None or n < 1:
        raise ParseError(f"no catalog entry named {name!r}")
    for entry in groups_of_order(n):
        if entry.name == name:
            return entry
    raise ParseError(f"no catalog entry named {name!r}")


RECIPE_NAMESPACE = {
    "cyclic": gr.cyclic,
    "dihedral": gr.dihedral,
    "generalized_quaternion": gr.generalized_quaternion,
    "direct_product": gr.direct_product,
    "cyclic_extension": gr.cyclic_extension,
    "perm_group": lambda perms: gr.from_permutations(
        [tuple(p) for p in perms])[0],
}


def eval_recipe(recipe: str) -> GroupTable:
    """Evaluate a catalog recipe expression into a GroupTable."""
    try:
        return eval(recipe, {"__builtins__": {}}, RECIPE_NAMESPACE)
    except Exception as exc:  # noqa: BLE001 - surfaced as a parse problem
        raise ParseError(f"bad recipe {recipe!r}: {exc}") from exc


# -- generating sets ---------------------------------------------------


@dataclass(frozen=True)
class GenSetRecord:
    group: str
    generators: tuple[int, ...]
    minimal: bool
    connected: bool = True


@dataclass
class GenSetEnumeration:
    records: list[GenSetRecord] = field(default_factory=list)
    capped: bool = False


def enumerate_generating_sets(G: GroupTable, max_size: int,
                              cap: int = 20000) -> GenSetEnumeration:
    """All inverse-reduced generating sets of size <= max_size.

    Inverse reduction keeps, for each element with a distinct inverse, only
    the lesser index (Cay(G;S) only depends on S together with S^-1).  The
    minimal flag marks sets with no generating proper subset.  Hitting the
    cap is reported via the ``capped`` flag, never silently.
    """
    if max_size > 4:
        raise ParseError("generating sets of size > 4 are out of scope")
    universe = [g for g in range(G.n)
                if g != G.identity and g <= G.inv(g)]
    result = GenSetEnumeration()
    generates: dict[tuple, bool] = {}

    def gen(subset) -> bool:
        if subset not in generates:
            generates[subset] = len(G.closure(subset)) == G.n
        return generates[subset]

    for size in range(1, max_size + 1):
        for subset in itertools.combinations(universe, size):
            if not gen(subset):
                continue
            minimal = not any(gen(subset[:i] + subset[i + 1:])
                              for i in range(size))
            result.records.append(
                GenSetRecord(G.name, subset, minimal))
            if len(result.records) >= cap:
                result.capped = True
                return result
    return result


# -- certificate serialization and the store ---------------------------


def serialize_certificate(cert: Certificate) -> str:
    return (f"group {cert.group}\n"
            f"order {cert.order}\n"
            "gens " + " ".join(str(g) for g in cert.gens) + "\n"
            "word " + " ".join(str(s) for s in cert.word) + "\n"
            f"repeat {cert.repeat}\n"
            f"method {cert.method}\n")


def parse_certificate(text: str) -> Certificate:
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key in fields:
            raise ParseError(f"duplicate certificate field {key!r}")
        fields[key] = rest.strip()
    missing = {"group", "order", "gens", "word", "repeat", "method"} - set(fields)
    if missing:
        raise ParseError(f"certificate is missing fields: {sorted(missing)}")
    try:
        return Certificate(
            group=fields["group"],
            order=int(fields["order"]),
            gens=tuple(int(x) for x in fields["gens"].split()),
            word=tuple(int(x) for x in fields["word"].split()),
            repeat=int(fields["repeat"]),
            trace=tuple(fields["method"].split(";")),
        )
    except ValueError as exc:
        raise ParseError(f"malformed certificate field: {exc}") from exc


def certificate_filename(cert: Certificate) -> str:
    safe = "".join(c if c.isalnum() or c in "_-" else "_"
                   for c in cert.group)
    gens = "-".join(str(g) for g in cert.gens)
    return f"{safe}.o{cert.order}.g{gens}.cert"


def store_certificate(store_dir, cert: Certificate) -> Path:
    """Persist one certificate; the filename is a pure function of the
    certified graph, so re-solving the same graph overwrites in place."""
    store = Path(store_dir)
    store.mkdir(parents=True, exist_ok=True)
    path = store / certificate_filename(cert)
    path.write_text(serialize_certificate(cert) + "# verified\n")
    return path


def load_certificates(store_dir, tables: dict[str, GroupTable]) -> list[Certificate]:
    """Load and re-verify every stored certificate; any entry that fails to
    parse, names an unknown group, or fails re-verification raises
    StoreCorrupt."""
    store = Path(store_dir)
    if not store.is_dir():
        return []
    out = []
    for path in sorted(store.glob("*.cert")):
        try:
            cert = parse_certificate(path.read_text())
        except ParseError as exc:
            raise StoreCorrupt(f"{path.name}: {exc}") from exc
        table = tables.get(cert.group)
        if table is None:
            raise StoreCorrupt(f"{path.name}: unknown group {cert.group!r}")
        try:
            cert.verify(table)
        except Exception as exc:
            raise StoreCorrupt(f"{path.name}: re-verification failed: {exc}") \
                from exc
        out.append(cert)
    return out
