"""Tripartite 3-uniform hypergraphs, pair degrees, linearization and
canonical forms of small patterns."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

PARTS = ("X", "Y", "Z")
MAX_PATTERN_VERTICES = 12

Edge = tuple[int, int, int]


class SizeError(ValueError):
    pass


class Vertex(NamedTuple):
    part: str
    value: int


@dataclass(frozen=True)
class TripartiteHypergraph:
    """3-partite 3-uniform hypergraph with edges stored as (x, y, z) value triples.

    Vertices are identified by (part, value); the same value may appear in
    several parts as distinct vertices.
    """

    X: tuple[int, ...]
    Y: tuple[int, ...]
    Z: tuple[int, ...]
    edges: tuple[Edge, ...]
    p: int | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        sides = (set(self.X), set(self.Y), set(self.Z))
        for side, name in zip((self.X, self.Y, self.Z), PARTS):
            if len(set(side)) != len(side):
                raise ValueError(f"duplicate vertex in part {name}")
        seen = set()
        for e in self.edges:
            if len(e) != 3:
                raise ValueError(f"edge {e} is not a triple")
            for val, side, name in zip(e, sides, PARTS):
                if val not in side:
                    raise ValueError(f"edge {e} references missing vertex {name}{val}")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)

    @classmethod
    def from_edges(cls, edges, p=None, provenance=None, parts=None) -> TripartiteHypergraph:
        edges = tuple(tuple(int(v) for v in e) for e in edges)
        if parts is None:
            parts = [sorted({e[i] for e in edges}) for i in range(3)]
        X, Y, Z = (tuple(sorted(s)) for s in parts)
        return cls(X, Y, Z, edges, p, dict(provenance or {}))

    @property
    def parts(self) -> dict[str, tuple[int, ...]]:
        return {"X": self.X, "Y": self.Y, "Z": self.Z}

    @property
    def num_vertices(self) -> int:
        return len(self.X) + len(self.Y) + len(self.Z)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> list[Vertex]:
        return [Vertex(name, v) for name, side in self.parts.items() for v in side]

    def edge_vertices(self, e: Edge) -> tuple[Vertex, Vertex, Vertex]:
        return tuple(Vertex(name, v) for name, v in zip(PARTS, e))

    def with_edges(self, edges, **extra_provenance) -> TripartiteHypergraph:
        """Same vertex set, new edge list."""
        prov = dict(self.provenance)
        prov.update(extra_provenance)
        return TripartiteHypergraph(self.X, self.Y, self.Z, tuple(edges), self.p, prov)


PairKey = tuple[str, int, str, int]


def _edge_pairs(e: Edge):
    x, y, z = e
    yield ("X", x, "Y", y)
    yield ("X", x, "Z", z)
    yield ("Y", y, "Z", z)


def pair_degree_table(H: TripartiteHypergraph) -> Counter[PairKey]:
    """Number of edges through each vertex pair that occurs in some edge."""
    table: Counter[PairKey] = Counter()
    for e in H.edges:
        table.update(_edge_pairs(e))
    return table


def is_linear(H: TripartiteHypergraph) -> bool:
    return all(c <= 1 for c in pair_degree_table(H).values())


def conflicting_pairs(H: TripartiteHypergraph) -> list[tuple[Edge, Edge]]:
    """All unordered edge pairs meeting in exactly two vertices, each as (e, f) with e < f."""
    by_pair: dict[PairKey, list[Edge]] = defaultdict(list)
    for e in H.edges:
        for key in _edge_pairs(e):
            by_pair[key].append(e)
    out = []
    for group in by_pair.values():
        # distinct edges share at most one pair, so each conflict is listed once
        for e, f in combinations(sorted(group), 2):
            out.append((e, f))
    out.sort()
    return out


def linearize(H: TripartiteHypergraph) -> TripartiteHypergraph:
    """Delete one edge from every conflicting pair; the larger triple goes.

    When every edge has at most one conflicting partner this removes exactly
    one edge per pair and keeps at least half the edges. Otherwise pairs are
    processed in sorted order, skipping pairs already broken.
    """
    pairs = conflicting_pairs(H)
    if not pairs:
        return H
    partners = Counter()
    for e, f in pairs:
        partners[e] += 1
        partners[f] += 1
    exact = max(partners.values()) <= 1
    removed = set()
    for e, f in pairs:
        if e in removed or f in removed:
            continue
        removed.add(max(e, f))
    kept = [e for e in H.edges if e not in removed]
    return H.with_edges(
        kept,
        linearize={"method": "pair-deletion" if exact else "greedy", "removed": len(removed)},
    )


@dataclass(frozen=True)
class Pattern:
    """Small abstract 3-uniform hypergraph on vertices 0..n-1."""

    n: int
    edges: tuple[Edge, ...]
    name: str = ""

    def __post_init__(self):
        norm = tuple(tuple(sorted(int(v) for v in e)) for e in self.edges)
        object.__setattr__(self, "edges", norm)
        if self.n < 0:
            raise ValueError("negative vertex count")
        if self.n > MAX_PATTERN_VERTICES:
            raise SizeError(f"pattern has {self.n} vertices, limit is {MAX_PATTERN_VERTICES}")
        for e in norm:
            if len(e) != 3 or len(set(e)) != 3:
                raise ValueError(f"edge {e} is not a 3-set")
            if e[0] < 0 or e[2] >= self.n:
                raise ValueError(f"edge {e} out of range for {self.n} vertices")
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge in pattern")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def is_linear(self) -> bool:
        seen = set()
        for e in self.edges:
            for pair in combinations(e, 2):
                if pair in seen:
                    return False
                seen.add(pair)
        return True

    def relabel(self, perm) -> Pattern:
        """Pattern with vertex v renamed perm[v]."""
        return Pattern(self.n, tuple(tuple(sorted(perm[v] for v in e)) for e in self.edges), self.name)


# -- canonical forms -------------------------------------------------------


def _refine(colors: list[int], inc: list[list[tuple[int, int]]]) -> list[int]:
    """Equitable refinement; new colors ranked by signature so cell order is invariant."""
    ncells = len(set(colors))
    while True:
        sigs = []
        for v, c in enumerate(colors):
            nb = sorted((colors[a], colors[b]) if colors[a] <= colors[b] else (colors[b], colors[a])
                        for a, b in inc[v])
            sigs.append((c, tuple(nb)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def _canonical(n: int, edges) -> tuple[tuple[Edge, ...], list[int]]:
    """Minimum relabeled sorted edge list over an individualization-refinement tree.

    Isolated vertices are labelled last. Returns (edges, labeling).
    """
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    active = [v for v in range(n) if deg[v]]
    idx = {v: i for i, v in enumerate(active)}
    k = len(active)
    loc = [tuple(idx[v] for v in e) for e in edges]
    inc: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for a, b, c in loc:
        inc[a].append((b, c))
        inc[b].append((a, c))
        inc[c].append((a, b))

    edge_set = {frozenset(e) for e in loc}

    def is_twin(u, v):
        swap = {u: v, v: u}
        return all(frozenset(swap.get(w, w) for w in e) in edge_set for e in loc if u in e or v in e)

    twin_cache: dict[tuple[int, int], bool] = {}

    def twins(u, v):
        key = (u, v) if u < v else (v, u)
        if key not in twin_cache:
            twin_cache[key] = is_twin(u, v)
        return twin_cache[key]

    best: list = [None, None]

    def search(colors):
        colors = _refine(colors, inc)
        cells: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(colors):
            cells[c].append(v)
        if len(cells) == k:
            enc = tuple(sorted(tuple(sorted(colors[v] for v in e)) for e in loc))
            if best[0] is None or enc < best[0]:
                best[0] = enc
                best[1] = colors
            return
        target = min(c for c, m in cells.items() if len(m) > 1)
        tried: list[int] = []
        for v in cells[target]:
            if any(twins(u, v) for u in tried):
                continue
            tried.append(v)
            nxt = [2 * c + (1 if c == target and w != v else 0) for w, c in enumerate(colors)]
            search(nxt)

    if k:
        search([deg[v] for v in active])
        enc, colors = best
    else:
        enc, colors = (), []
    labeling = [0] * n
    for v in active:
        labeling[v] = colors[idx[v]]
    nxt = k
    for v in range(n):
        if not deg[v]:
            labeling[v] = nxt
            nxt += 1
    return enc, labeling


def canonical_form(F: Pattern) -> bytes:
    """Byte string equal for two patterns iff they are isomorphic."""
    if F.n > MAX_PATTERN_VERTICES:
        raise SizeError(f"pattern has {F.n} vertices, limit is {MAX_PATTERN_VERTICES}")
    enc, _ = _canonical(F.n, F.edges)
    return bytes([F.n, len(enc)] + [v for e in enc for v in e])


def canonical_pattern(F: Pattern) -> Pattern:
    """The canonically labelled isomorph of F."""
    enc, _ = _canonical(F.n, F.edges)
    return Pattern(F.n, enc, F.name)


def pattern_from_canonical(form: bytes, name: str = "") -> Pattern:
    n, m = form[0], form[1]
    flat = form[2:]
    if len(flat) != 3 * m:
        raise ValueError("malformed canonical form")
    return Pattern(n, tuple(tuple(flat[3 * i:3 * i + 3]) for i in range(m)), name)
