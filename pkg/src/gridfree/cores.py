"""Linear 2-cores on at most nine vertices, the (9,6) classification, and
scanning host hypergraphs against the core catalog."""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .detect import (GRID, TRIANGLE, Embedding, _default_threads, find_embeddings,
                     verify_embedding)
from .hypergraph import Pattern, TripartiteHypergraph, _canonical, canonical_form, is_linear

log = logging.getLogger(__name__)

GRID_FORM = canonical_form(GRID)


def _children(n, edges):
    """Canonical forms of every linear one-edge extension of ``edges`` on n points."""
    covered = {pr for t in edges for pr in combinations(t, 2)}
    out = set()
    for t in combinations(range(n), 3):
        if covered.isdisjoint(combinations(t, 2)):
            enc, _ = _canonical(n, edges + (t,))
            out.add(enc)
    return out


def _children_batch(args):
    n, parents = args
    out = set()
    for edges in parents:
        out |= _children(n, edges)
    return out


def linear_hypergraphs(n: int, threads: int | None = None):
    """Yield (edge count, sorted canonical edge lists) level by level for every
    linear 3-uniform hypergraph on n points (isolated points allowed), up to
    isomorphism."""
    threads = _default_threads() if threads is None else max(1, threads)
    level = [()]
    m = 0
    while level:
        yield m, level
        if threads > 1 and len(level) > 1:
            step = -(-len(level) // threads)
            batches = [(n, level[i:i + step]) for i in range(0, len(level), step)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                found = set().union(*pool.map(_children_batch, batches))
        else:
            found = _children_batch((n, level))
        level = sorted(found)
        m += 1


def _degrees(n, edges):
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    return deg


def _is_2core(edges) -> bool:
    deg: dict[int, int] = {}
    for e in edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    return bool(deg) and min(deg.values()) >= 2


def _is_minimal_core(edges) -> bool:
    """No proper nonempty edge subset is itself a 2-core."""
    m = len(edges)
    for k in range(1, m):
        for sub in combinations(edges, k):
            if _is_2core(sub):
                return False
    return True


def _strip_isolated(n, edges) -> Pattern:
    """Pattern on the non-isolated points only; canonical labels put isolated points last."""
    deg = _degrees(n, edges)
    k = sum(1 for d in deg if d)
    return Pattern(k, edges)


@dataclass(frozen=True)
class CoreEntry:
    name: str
    pattern: Pattern
    canonical: bytes
    contains_triangle: bool
    is_grid: bool
    contains_grid: bool
    minimal: bool

    @property
    def v(self) -> int:
        return self.pattern.n

    @property
    def e(self) -> int:
        return self.pattern.num_edges

    def flags(self) -> dict:
        return {"contains_triangle": self.contains_triangle, "is_grid": self.is_grid,
                "contains_grid": self.contains_grid, "minimal": self.minimal}


@dataclass
class CoreCatalog:
    entries: list[CoreEntry] = field(default_factory=list)
    max_vertices: int = 9

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def select(self, v: int | None = None, e: int | None = None) -> list[CoreEntry]:
        return [c for c in self.entries if (v is None or c.v == v) and (e is None or c.e == e)]

    def grid_entries(self) -> list[CoreEntry]:
        return [c for c in self.entries if c.is_grid]

    def validate(self):
        """Re-check the catalog invariants; raises ValueError on the first violation."""
        forms = set()
        for c in self.entries:
            F = c.pattern
            deg = F.degrees()
            if not F.is_linear():
                raise ValueError(f"{c.name} is not linear")
            if F.n > self.max_vertices or min(deg, default=0) < 2:
                raise ValueError(f"{c.name} is not a 2-core on <= {self.max_vertices} vertices")
            if canonical_form(F) != c.canonical:
                raise ValueError(f"{c.name} has a stale canonical form")
            if c.canonical in forms:
                raise ValueError(f"{c.name} duplicates an earlier entry")
            forms.add(c.canonical)


def make_entry(name: str, F: Pattern) -> CoreEntry:
    form = canonical_form(F)
    tri = find_embeddings(F, TRIANGLE, "first").found
    has_grid = find_embeddings(F, GRID, "first").found
    return CoreEntry(name, Pattern(F.n, F.edges, name), form, tri, form == GRID_FORM,
                     has_grid, _is_minimal_core(F.edges))


def enumerate_linear_2cores(max_vertices: int = 9, threads: int | None = None) -> CoreCatalog:
    """All linear 3-uniform hypergraphs with minimum degree >= 2 on at most
    ``max_vertices`` vertices, one per isomorphism class."""
    if not isinstance(max_vertices, int) or not 6 <= max_vertices <= 9:
        raise ValueError("max_vertices must be between 6 and 9")
    found = []
    for m, level in linear_hypergraphs(max_vertices, threads):
        for edges in level:
            if _is_2core(edges):
                found.append(_strip_isolated(max_vertices, edges))
        log.debug("level %d: %d classes", m, len(level))
    found.sort(key=lambda F: (F.n, F.num_edges, F.edges))
    entries, counter = [], {}
    for F in found:
        k = counter.get((F.n, F.num_edges), 0)
        counter[(F.n, F.num_edges)] = k + 1
        entries.append(make_entry(f"core_v{F.n}_e{F.num_edges}_{k:02d}", F))
    return CoreCatalog(entries, max_vertices)


# -- (9,6) classification -------------------------------------------------


def _c4_structure_holds(F: Pattern) -> bool:
    """For a triangle-free linear (9,6)-configuration with all degrees 2: around
    every vertex a with edges {a,b,c}, {a,d,e}, the other four edges each take two
    of the remaining four vertices and one of b..e, those pairs form a 4-cycle,
    and b, c (likewise d, e) sit on opposite sides of it."""
    for a in range(F.n):
        star = [e for e in F.edges if a in e]
        if len(star) != 2:
            return False
        (b, c), (d, f) = [tuple(v for v in e if v != a) for e in star]
        inner = {b, c, d, f}
        rest = set(range(F.n)) - inner - {a}
        pair_of = {}
        for e in F.edges:
            if a in e:
                continue
            outer = [v for v in e if v in rest]
            mids = [v for v in e if v in inner]
            if len(outer) != 2 or len(mids) != 1:
                return False
            pair_of[mids[0]] = frozenset(outer)
        if set(pair_of) != inner:
            return False
        pairs = list(pair_of.values())
        if len(set(pairs)) != 4:
            return False
        cnt = {v: sum(v in pr for pr in pairs) for v in rest}
        if any(c_ != 2 for c_ in cnt.values()):
            return False
        # four distinct pairs covering each of four vertices twice form a C4
        if pair_of[b] & pair_of[c] or pair_of[d] & pair_of[f]:
            return False
    return True


@dataclass
class Classification96:
    total: int
    with_triangle: int
    grid_isomorphic: int
    triangle_free_non_grid: list[Pattern]
    with_degree3: int
    degree3_all_contain_triangle: bool
    triangle_free_max_degree_le_2: bool
    triangle_free_all_degree_2: bool
    triangle_free_c4_structure: bool
    configurations: list[tuple[Pattern, bool, bool]] = field(default_factory=list, repr=False)

    @property
    def covered(self) -> bool:
        """Every configuration contains a triangle or is the grid."""
        return not self.triangle_free_non_grid

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "with_triangle": self.with_triangle,
            "grid_isomorphic": self.grid_isomorphic,
            "triangle_free_non_grid": len(self.triangle_free_non_grid),
            "covered": self.covered,
            "with_degree3": self.with_degree3,
            "degree3_all_contain_triangle": self.degree3_all_contain_triangle,
            "triangle_free_max_degree_le_2": self.triangle_free_max_degree_le_2,
            "triangle_free_all_degree_2": self.triangle_free_all_degree_2,
            "triangle_free_c4_structure": self.triangle_free_c4_structure,
        }


def linear_96_configurations(threads: int | None = None) -> list[Pattern]:
    """Linear 3-graphs with exactly 6 edges spanning exactly 9 vertices, up to isomorphism."""
    for m, level in linear_hypergraphs(9, threads):
        if m == 6:
            return [Pattern(9, edges) for edges in level if min(_degrees(9, edges)) > 0]
    return []


def classify_96_configurations(threads: int | None = None) -> Classification96:
    configs = linear_96_configurations(threads)
    rows = []
    for F in configs:
        tri = find_embeddings(F, TRIANGLE, "first").found
        rows.append((F, tri, canonical_form(F) == GRID_FORM))
    free = [F for F, tri, _ in rows if not tri]
    deg3 = [(F, tri) for F, tri, _ in rows if max(F.degrees()) >= 3]
    return Classification96(
        total=len(rows),
        with_triangle=sum(tri for _, tri, _ in rows),
        grid_isomorphic=sum(g for _, _, g in rows),
        triangle_free_non_grid=[F for F, tri, g in rows if not tri and not g],
        with_degree3=len(deg3),
        degree3_all_contain_triangle=all(tri for _, tri in deg3),
        triangle_free_max_degree_le_2=all(max(F.degrees()) <= 2 for F in free),
        triangle_free_all_degree_2=all(set(F.degrees()) == {2} for F in free),
        triangle_free_c4_structure=all(_c4_structure_holds(F) for F in free),
        configurations=rows,
    )


# -- scanning --------------------------------------------------------------


@dataclass
class ScanRow:
    entry: CoreEntry
    status: str  # found | not_found | indeterminate
    witness: Embedding | None = None
    nodes: int = 0

    def to_dict(self) -> dict:
        d = {"name": self.entry.name, "v": self.entry.v, "e": self.entry.e,
             "is_grid": self.entry.is_grid, "status": self.status, "nodes": self.nodes}
        if self.witness is not None:
            d["witness"] = {"vertex_map": [list(v) if isinstance(v, tuple) else v
                                           for v in self.witness.vertex_map],
                            "edges": [list(e) for e in self.witness.edge_map]}
        return d


def _scan_one(args):
    H, entry, max_nodes = args
    res = find_embeddings(H, entry.pattern, "first", max_nodes=max_nodes, threads=1)
    if res.found:
        w = res.embeddings[0]
        if not verify_embedding(H, entry.pattern, w):
            raise AssertionError(f"invalid witness for {entry.name}")
        return ScanRow(entry, "found", w, res.nodes)
    return ScanRow(entry, "indeterminate" if res.exhausted else "not_found", None, res.nodes)


def scan_for_cores(H, catalog: CoreCatalog, max_nodes: int | None = None,
                   threads: int | None = None) -> list[ScanRow]:
    """Look for every catalog entry in H; one row per entry, in catalog order."""
    linear = is_linear(H) if isinstance(H, TripartiteHypergraph) else H.is_linear()
    if not linear:
        warnings.warn("host is not linear; non-linear cores are absent from the catalog",
                      stacklevel=2)
    threads = _default_threads() if threads is None else max(1, threads)
    tasks = [(H, entry, max_nodes) for entry in catalog]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_scan_one, tasks))
    return [_scan_one(t) for t in tasks]
