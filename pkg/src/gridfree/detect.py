"""Finding copies of small patterns (grid, triangle, catalog cores) in hosts.

A copy is identified by its image edge-set, so embeddings that differ by a
pattern automorphism count once. Hosts may be ``TripartiteHypergraph`` or
``Pattern`` objects.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .hypergraph import Pattern, TripartiteHypergraph, Vertex, PARTS

GRID = Pattern(9, ((0, 3, 6), (1, 4, 7), (2, 5, 8), (1, 5, 6), (2, 3, 7), (0, 4, 8)), "grid3x3")
"""Vertices p1..p3 = 0..2, q1..q3 = 3..5, r1..r3 = 6..8; edges {p_i, q_i, r_i} and
{p_{i+1}, q_{i+2}, r_i}."""

TRIANGLE = Pattern(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0)), "triangle")

BUILTIN_PATTERNS = {"grid3x3": GRID, "grid": GRID, "triangle": TRIANGLE}


class BudgetExceeded(RuntimeError):
    """The search hit its node budget before deciding."""


@dataclass(frozen=True)
class Embedding:
    """vertex_map[i] is the host vertex of pattern vertex i; edge_map[j] the host
    edge of pattern edge j (host-native form)."""

    vertex_map: tuple
    edge_map: tuple

    def image(self) -> tuple:
        return tuple(sorted(self.edge_map))


@dataclass
class SearchResult:
    mode: str
    count: int
    embeddings: list[Embedding] = field(default_factory=list)
    nodes: int = 0
    exhausted: bool = False

    @property
    def found(self) -> bool:
        return self.count > 0

    @property
    def status(self) -> str:
        if self.found:
            return "found"
        return "budget_exceeded" if self.exhausted else "not_found"


# -- host representation ---------------------------------------------------


@dataclass
class _Host:
    labels: list            # host-native vertex labels, indexed by int id
    native_edges: list      # host-native edge objects
    edges: list             # sorted int-id triples
    part: list | None       # part index per vertex id, tripartite hosts only
    inc: list = field(default_factory=list)
    pairs: dict = field(default_factory=dict)
    edge_id: dict = field(default_factory=dict)
    nb: list = field(default_factory=list)       # co-edge neighbours per vertex
    nbp: list = field(default_factory=list)      # the same split by part
    by_part: list = field(default_factory=list)

    def __post_init__(self):
        nv = len(self.labels)
        self.inc = [[] for _ in range(nv)]
        self.nb = [set() for _ in range(nv)]
        self.pairs, self.edge_id = {}, {}
        for h, (a, b, c) in enumerate(self.edges):
            self.edge_id[(a, b, c)] = h
            for v in (a, b, c):
                self.inc[v].append(h)
            for u, w in ((a, b), (a, c), (b, c)):
                self.pairs.setdefault((u, w), []).append(h)
                self.nb[u].add(w)
                self.nb[w].add(u)
        if self.part is None:
            self.nbp = [[s] * 3 for s in self.nb]
            self.by_part = [list(range(nv))] * 3
        else:
            self.nbp = [[{w for w in s if self.part[w] == k} for k in range(3)] for s in self.nb]
            self.by_part = [[v for v in range(nv) if self.part[v] == k] for k in range(3)]


def _make_host(H) -> _Host:
    if isinstance(H, TripartiteHypergraph):
        labels, ids, part = [], {}, []
        for pi, name in enumerate(PARTS):
            for v in H.parts[name]:
                ids[(pi, v)] = len(labels)
                labels.append(Vertex(name, v))
                part.append(pi)
        edges = [(ids[(0, x)], ids[(1, y)], ids[(2, z)]) for x, y, z in H.edges]
        return _Host(labels, list(H.edges), edges, part)
    if isinstance(H, Pattern):
        return _Host(list(range(H.n)), list(H.edges), list(H.edges), None)
    raise TypeError(f"unsupported host type {type(H).__name__}")


# -- pattern structure -----------------------------------------------------


@lru_cache(maxsize=4096)
def automorphisms(F: Pattern) -> tuple[tuple[int, ...], ...]:
    """Every vertex permutation mapping the edge set to itself."""
    n = F.n
    edge_set = set(F.edges)
    deg = F.degrees()
    by_vertex = [[e for e in F.edges if v in e] for v in range(n)]
    # vertices in edge order so edge checks fire early
    order = []
    for j in _edge_order(F):
        order.extend(v for v in F.edges[j] if v not in order)
    order.extend(v for v in range(n) if v not in order)
    pos = {v: i for i, v in enumerate(order)}
    img = [-1] * n
    used = [False] * n
    out = []

    def rec(i):
        if i == n:
            out.append(tuple(img))
            return
        v = order[i]
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            img[v] = w
            ok = True
            for e in by_vertex[v]:
                if all(pos[u] <= i for u in e):
                    if tuple(sorted(img[u] for u in e)) not in edge_set:
                        ok = False
                        break
            if ok:
                used[w] = True
                rec(i + 1)
                used[w] = False
            img[v] = -1

    rec(0)
    return tuple(out)


def automorphism_group_order(F: Pattern) -> int:
    return len(automorphisms(F))


def _colorings(n: int, edges, vertices=None):
    """Ordered 3-colorings of ``vertices`` with every edge getting all three colors."""
    vertices = list(range(n)) if vertices is None else list(vertices)
    by_vertex = {v: [e for e in edges if v in e] for v in vertices}
    col = {}
    out = []

    def rec(i):
        if i == len(vertices):
            out.append(dict(col))
            return
        v = vertices[i]
        for c in range(3):
            ok = True
            for e in by_vertex[v]:
                seen = [col[u] for u in e if u in col]
                if c in seen:
                    ok = False
                    break
            if ok:
                col[v] = c
                rec(i + 1)
                del col[v]

    rec(0)
    return out


@dataclass
class PartitionReport:
    partitions: list[tuple[tuple[int, ...], ...]]
    equivalent: list[list[bool]]

    @property
    def all_equivalent(self) -> bool:
        return all(all(row) for row in self.equivalent)


def enumerate_3partitions(F: Pattern) -> PartitionReport:
    """All unordered 3-partitions of F and whether each pair is related by an automorphism."""
    parts = set()
    for col in _colorings(F.n, F.edges):
        classes = tuple(sorted(tuple(sorted(v for v in col if col[v] == c)) for c in range(3)))
        parts.add(classes)
    parts = sorted(parts)
    auts = automorphisms(F) if len(parts) > 1 else []

    def related(P, Q):
        target = set(Q)
        return any({tuple(sorted(s[v] for v in C)) for C in P} == target for s in auts)

    eq = [[i == j or related(P, Q) for j, Q in enumerate(parts)] for i, P in enumerate(parts)]
    return PartitionReport(parts, eq)


def _part_assignments(F: Pattern) -> list[dict[int, int]]:
    """Ordered 3-partitions of F's non-isolated vertices, one per automorphism orbit."""
    deg = F.degrees()
    active = [v for v in range(F.n) if deg[v]]
    if not active:
        return [{}]
    # vertices in edge order keeps the coloring backtrack tight
    seen, order = set(), []
    for e in F.edges:
        for v in e:
            if v not in seen:
                seen.add(v)
                order.append(v)
    cols = _colorings(F.n, F.edges, order)
    if len(cols) <= 1:
        return cols
    auts = automorphisms(F)
    reps, covered = [], set()
    for col in sorted(cols, key=lambda c: tuple(c[v] for v in active)):
        key = tuple(col[v] for v in active)
        if key in covered:
            continue
        reps.append(col)
        for s in auts:
            moved = {s[v]: col[v] for v in active}
            covered.add(tuple(moved[v] for v in active))
    return reps


def _edge_order(F: Pattern) -> list[int]:
    """Pattern edges ordered so each one meets as many earlier vertices as possible."""
    m = F.num_edges
    if m == 0:
        return []
    deg = F.degrees()
    first = max(range(m), key=lambda j: (sum(deg[v] for v in F.edges[j]), -j))
    order, covered = [first], set(F.edges[first])
    rest = [j for j in range(m) if j != first]
    while rest:
        j = max(rest, key=lambda j: (sum(v in covered for v in F.edges[j]),
                                     sum(deg[v] for v in F.edges[j]), -j))
        order.append(j)
        covered.update(F.edges[j])
        rest.remove(j)
    return order


# -- search ------------------------------------------------------------------


def _vertex_order(F: Pattern) -> list[int]:
    """Non-isolated pattern vertices, each next one closing or touching as many
    placed edges as possible."""
    deg = F.degrees()
    by_vertex = [[e for e in F.edges if v in e] for v in range(F.n)]
    todo = {v for v in range(F.n) if deg[v]}
    order, placed = [], set()

    def score(v):
        closing = sum(1 for e in by_vertex[v] if sum(u in placed for u in e) == 2)
        touching = sum(1 for e in by_vertex[v] for u in e if u != v and u in placed)
        return (closing, touching, deg[v], -v)

    while todo:
        v = max(todo, key=score)
        order.append(v)
        placed.add(v)
        todo.remove(v)
    return order


def _lex_constraints(F: Pattern, order, assignment) -> dict[int, list[int]]:
    """Symmetry breaking along a stabilizer chain with base ``order``.

    Returns, for each pattern vertex u, the earlier base points b that must map
    to a smaller host id than u. Only automorphisms that keep the part
    assignment are used, so every image edge-set still has a representative.
    """
    G = automorphisms(F)
    if assignment is not None:
        G = [s for s in G if all(assignment.get(s[v], -1) == assignment.get(v, -1)
                                 for v in range(F.n))]
    below: dict[int, list[int]] = {v: [] for v in range(F.n)}
    for b in order:
        if len(G) <= 1:
            break
        for u in {s[b] for s in G} - {b}:
            below[u].append(b)
        G = [s for s in G if s[b] == b]
    return below


def _search(host: _Host, F: Pattern, order, assignment, mode, budget, first_cands):
    """Backtracking over pattern vertices in ``order``.

    Returns (found, nodes, exhausted) where found maps image keys (sorted host
    edge ids) to vertex maps (host vertex id per pattern vertex).
    """
    n = F.n
    pos = {v: i for i, v in enumerate(order)}
    below = _lex_constraints(F, order, assignment)
    slot = [-1] * n if assignment is None else [assignment.get(v, -1) for v in range(n)]
    plan = []
    for i, v in enumerate(order):
        closing, touch = [], set()
        for j, e in enumerate(F.edges):
            if v in e:
                earlier = [u for u in e if u != v and pos[u] < i]
                touch.update(earlier)
                if len(earlier) == 2:
                    closing.append((j, earlier[0], earlier[1]))
        plan.append((v, closing, sorted(touch), below[v], slot[v]))

    phi = [-1] * n
    used = [False] * len(host.labels)
    chosen = [0] * F.num_edges
    found: dict = {}
    nodes = 0
    exhausted = False
    isolated = [v for v, d in enumerate(F.degrees()) if d == 0]
    pairs, hedges, edge_id, part = host.pairs, host.edges, host.edge_id, host.part
    nbp, by_part, nb = host.nbp, host.by_part, host.nb
    depth = len(order)

    def finish():
        vmap = list(phi)
        if isolated:
            spare = [w for w in range(len(host.labels)) if not used[w]]
            if len(spare) < len(isolated):
                return False
            for v, w in zip(isolated, spare):
                vmap[v] = w
        key = tuple(sorted(chosen))
        if key not in found:
            found[key] = tuple(vmap)
        return True

    def place(i, v, w):
        phi[v] = w
        used[w] = True
        stop = rec(i + 1)
        used[w] = False
        phi[v] = -1
        return stop

    def rec(i):
        nonlocal nodes, exhausted
        if i == depth:
            return finish() and mode == "first"
        v, closing, touch, lower, k = plan[i]
        if closing:
            # the third vertex of a host edge through two placed vertices; its
            # part is forced by the other two, so no part check is needed
            (j0, a, b), extra = closing[0], closing[1:]
            fa, fb = phi[a], phi[b]
            rest = [phi[u] for u in touch if u != a and u != b]
            for h in pairs.get((fa, fb) if fa < fb else (fb, fa), ()):
                x, y, z = hedges[h]
                w = x if x != fa and x != fb else (y if y != fa and y != fb else z)
                nodes += 1
                if budget is not None and nodes > budget:
                    exhausted = True
                    return True
                if used[w] or (lower and any(w < phi[u] for u in lower)):
                    continue
                if rest and not all(w in nb[r] for r in rest):
                    continue
                ok = True
                for j, a_, b_ in extra:
                    h2 = edge_id.get(tuple(sorted((w, phi[a_], phi[b_]))))
                    if h2 is None:
                        ok = False
                        break
                    chosen[j] = h2
                if ok:
                    chosen[j0] = h
                    if place(i, v, w):
                        return True
            return False
        if touch:
            sets = sorted((nbp[phi[u]][k] if k >= 0 else nb[phi[u]] for u in touch), key=len)
            cands = sorted(sets[0].intersection(*sets[1:]))
        elif i == 0 and first_cands is not None:
            cands = first_cands
        else:
            cands = by_part[k] if k >= 0 else range(len(host.labels))
        for w in cands:
            nodes += 1
            if budget is not None and nodes > budget:
                exhausted = True
                return True
            if used[w] or (k >= 0 and part is not None and part[w] != k):
                continue
            if lower and any(w < phi[u] for u in lower):
                continue
            if place(i, v, w):
                return True
        return False

    rec(0)
    return found, nodes, exhausted


def _search_task(args):
    return _search(*args)


def _default_threads():
    try:
        return max(1, int(os.environ.get("GRIDFREE_THREADS", "1")))
    except ValueError:
        return 1


def find_embeddings(H, F: Pattern, mode: str = "first", max_nodes: int | None = None,
                    partition_agnostic: bool = False, threads: int | None = None) -> SearchResult:
    """Search for copies of F in H.

    mode "first" stops at one copy, "count" and "all" run to completion and
    return one embedding per distinct image edge-set. For tripartite hosts the
    pattern's part assignment is fixed to one ordered 3-partition per
    automorphism orbit unless ``partition_agnostic`` is set. ``max_nodes``
    bounds the number of placement attempts; when hit, ``exhausted`` is set
    and the result is indeterminate unless something was found.
    """
    if mode not in ("first", "count", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    threads = _default_threads() if threads is None else max(1, threads)
    host = _make_host(H)
    if F.n > len(host.labels) or F.num_edges > len(host.edges):
        return SearchResult(mode, 0)
    order = _vertex_order(F)
    if host.part is not None and not partition_agnostic:
        assignments = _part_assignments(F)
    else:
        assignments = [None]

    if threads > 1 and order:
        tasks = []
        for a in assignments:
            k = -1 if a is None else a.get(order[0], -1)
            first = host.by_part[k] if k >= 0 else list(range(len(host.labels)))
            step = -(-len(first) // threads)
            tasks.extend((host, F, order, a, mode, max_nodes, first[s:s + step])
                         for s in range(0, len(first), step))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_search_task, tasks))
    else:
        results = []
        remaining = max_nodes
        for a in assignments:
            res = _search(host, F, order, a, mode, remaining, None)
            results.append(res)
            if remaining is not None:
                remaining -= res[1]
            if res[2] or (mode == "first" and res[0]):
                break

    merged: dict = {}
    nodes, exhausted = 0, False
    for found, nd, ex in results:
        nodes += nd
        exhausted = exhausted or ex
        for key, vmap in found.items():
            merged.setdefault(key, vmap)
        if mode == "first" and merged:
            break

    embs = []
    for key in sorted(merged):
        vmap = merged[key]
        embs.append(Embedding(tuple(host.labels[w] for w in vmap),
                              tuple(_native_edge(host, F.edges[j], vmap) for j in range(F.num_edges))))
    if mode == "first":
        embs = embs[:1]
    count = len(merged) if mode != "first" else len(embs)
    return SearchResult(mode, count, embs if mode != "count" else [], nodes,
                        exhausted and not (mode == "first" and embs))


def _native_edge(host: _Host, pe, vmap):
    ids = {vmap[v] for v in pe}
    for h in host.inc[vmap[pe[0]]]:
        if set(host.edges[h]) == ids:
            return host.native_edges[h]
    raise AssertionError("embedding maps an edge outside the host")


def verify_embedding(H, F: Pattern, emb: Embedding) -> bool:
    """Check an embedding directly against H's edge list: injective vertex map,
    every pattern edge lands on a host edge, and edge_map agrees with it."""
    vm = emb.vertex_map
    if len(vm) != F.n or len(set(vm)) != F.n or len(emb.edge_map) != F.num_edges:
        return False
    if isinstance(H, TripartiteHypergraph):
        sides = [set(H.X), set(H.Y), set(H.Z)]
        for v in vm:
            if v.part not in PARTS or v.value not in sides[PARTS.index(v.part)]:
                return False
        host_edges = set(H.edges)
        for pe, he in zip(F.edges, emb.edge_map):
            imgs = [vm[v] for v in pe]
            if sorted(v.part for v in imgs) != list(PARTS):
                return False
            triple = tuple(next(v.value for v in imgs if v.part == name) for name in PARTS)
            if triple not in host_edges or tuple(he) != triple:
                return False
        return True
    host_edges = {frozenset(e) for e in H.edges}
    for v in vm:
        if not 0 <= v < H.n:
            return False
    for pe, he in zip(F.edges, emb.edge_map):
        img = frozenset(vm[v] for v in pe)
        if img not in host_edges or frozenset(he) != img:
            return False
    return True


def grid_free(H, max_nodes: int | None = None, threads: int | None = None) -> bool:
    res = find_embeddings(H, GRID, "first", max_nodes=max_nodes, threads=threads)
    if res.exhausted:
        raise BudgetExceeded(f"grid search stopped after {res.nodes} nodes")
    return not res.found


def triangle_count(H, max_nodes: int | None = None, threads: int | None = None) -> int:
    res = find_embeddings(H, TRIANGLE, "count", max_nodes=max_nodes, threads=threads)
    if res.exhausted:
        raise BudgetExceeded(f"triangle count stopped after {res.nodes} nodes")
    return res.count


def pattern_from_host(H: TripartiteHypergraph, name: str = "") -> Pattern:
    """Relabel a small tripartite hypergraph as an abstract pattern (vertices in part order)."""
    ids = {}
    for name_, side in H.parts.items():
        for v in side:
            ids[(name_, v)] = len(ids)
    edges = tuple((ids[("X", x)], ids[("Y", y)], ids[("Z", z)]) for x, y, z in H.edges)
    return Pattern(len(ids), edges, name)
