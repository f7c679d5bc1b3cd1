import random
from itertools import permutations, product

import pytest

from gridfree.constructions import build_ap, build_multiplicative, build_qr, build_quadratic
from gridfree.detect import (GRID, TRIANGLE, BudgetExceeded, Embedding, automorphism_group_order,
                             automorphisms, enumerate_3partitions, find_embeddings, grid_free,
                             triangle_count, verify_embedding)
from gridfree.hypergraph import Pattern, TripartiteHypergraph, Vertex
from oracles import naive_copy_count, tagged_edges

PASCH = Pattern(6, ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)), "pasch")
EDGE = Pattern(3, ((0, 1, 2),), "edge")
DOUBLE = Pattern(4, ((0, 1, 2), (0, 1, 3)), "double")


def random_host(seed, m=20, k=5):
    rng = random.Random(seed)
    edges = set()
    while len(edges) < m:
        edges.add((rng.randrange(k), rng.randrange(k), rng.randrange(k)))
    return TripartiteHypergraph.from_edges(sorted(edges))


def host_edge_sets(H):
    if isinstance(H, Pattern):
        return [frozenset(e) for e in H.edges]
    return tagged_edges(H)


ORACLE_CASES = [
    ("ap5", build_ap(5), [GRID, TRIANGLE, PASCH]),
    ("mult5", build_multiplicative(5), [GRID, TRIANGLE, PASCH, DOUBLE]),
    ("qr13", build_qr(13), [TRIANGLE, PASCH]),
    ("quad11", build_quadratic(11, "interval:1..3", "interval:1..4"), [GRID, TRIANGLE]),
    ("grid-host", GRID, [GRID, TRIANGLE, EDGE]),
    ("rand1", random_host(1), [TRIANGLE, PASCH, DOUBLE]),
    ("rand2", random_host(2, m=24, k=4), [TRIANGLE, PASCH]),
]


@pytest.mark.parametrize("name,H,patterns", ORACLE_CASES, ids=[c[0] for c in ORACLE_CASES])
def test_count_matches_naive_oracle(name, H, patterns):
    for F in patterns:
        res = find_embeddings(H, F, "all")
        assert res.count == naive_copy_count(host_edge_sets(H), F), F.name
        assert len(res.embeddings) == res.count
        assert len({e.image() for e in res.embeddings}) == res.count
        assert all(verify_embedding(H, F, e) for e in res.embeddings)
        assert find_embeddings(H, F, "count").count == res.count
        first = find_embeddings(H, F, "first")
        assert first.found == (res.count > 0)


@pytest.mark.parametrize("name,H,patterns", ORACLE_CASES[:4] + ORACLE_CASES[5:],
                         ids=[c[0] for c in ORACLE_CASES[:4] + ORACLE_CASES[5:]])
def test_partition_fixing_agrees_with_agnostic_search(name, H, patterns):
    for F in patterns + [GRID]:
        fixed = find_embeddings(H, F, "count")
        free = find_embeddings(H, F, "count", partition_agnostic=True)
        assert fixed.count == free.count


def test_grid_free_agrees_with_agnostic_search():
    hosts = [build_ap(7), build_multiplicative(7), build_qr(13),
             build_quadratic(41, "interval:1..5", "interval:1..5"),
             build_quadratic(13, "all", "all")]
    for H in hosts:
        agn = not find_embeddings(H, GRID, "first", partition_agnostic=True).found
        assert grid_free(H) == agn


def test_grid_embeds_in_itself():
    res = find_embeddings(GRID, GRID, "count")
    assert res.count == 1
    emb = find_embeddings(GRID, GRID, "first").embeddings[0]
    assert set(emb.edge_map) == set(GRID.edges)


def test_grid_free_mult7():
    assert find_embeddings(build_multiplicative(7), GRID, "count").count == 0


def test_ap7_grid_witness():
    H = build_ap(7)
    X, Y, Z = (0, 1, 2), (0, 3, 4), (0, 5, 6)
    vmap = tuple(Vertex("X", v) for v in X) + tuple(Vertex("Y", v) for v in Y) + \
        tuple(Vertex("Z", v) for v in Z)
    edge_map = ((0, 0, 0), (1, 3, 5), (2, 4, 6), (1, 4, 0), (2, 0, 5), (0, 3, 6))
    assert verify_embedding(H, GRID, Embedding(vmap, edge_map))
    res = find_embeddings(H, GRID, "all")
    assert frozenset(edge_map) in {frozenset(e.edge_map) for e in res.embeddings}
    assert not grid_free(H)


def test_ap7_triangle_witness():
    H = build_ap(7)
    vmap = (Vertex("Y", 1), Vertex("X", 0), Vertex("Z", 2), Vertex("Y", 3), Vertex("X", 4),
            Vertex("Z", 5))
    emb = Embedding(vmap, ((0, 1, 2), (4, 3, 2), (4, 1, 5)))
    assert verify_embedding(H, TRIANGLE, emb)
    assert triangle_count(H) >= 1


def test_triangle_count_trivial():
    assert triangle_count(TRIANGLE) == 1
    assert triangle_count(TripartiteHypergraph.from_edges([(0, 1, 2), (0, 3, 4)])) == 0


def test_verify_embedding_rejects_bad_maps():
    H = build_ap(7)
    good = find_embeddings(H, GRID, "first").embeddings[0]
    assert verify_embedding(H, GRID, good)
    dup = Embedding((good.vertex_map[1],) + good.vertex_map[1:], good.edge_map)
    assert not verify_embedding(H, GRID, dup)
    moved = list(good.vertex_map)
    moved[0] = Vertex("X", next(v for v in H.X if Vertex("X", v) not in good.vertex_map))
    assert not verify_embedding(H, GRID, Embedding(tuple(moved), good.edge_map))
    assert not verify_embedding(H, GRID, Embedding(good.vertex_map, good.edge_map[:-1]))


def test_nonlinear_pattern_absent_from_linear_hosts():
    for H in [build_ap(7), build_qr(13), GRID]:
        assert find_embeddings(H, DOUBLE, "count").count == 0
    assert find_embeddings(build_multiplicative(5), DOUBLE, "count").count > 0


def test_pattern_larger_than_host():
    H = TripartiteHypergraph.from_edges([(0, 0, 0)])
    res = find_embeddings(H, GRID, "count")
    assert res.count == 0 and not res.exhausted


def test_budget_is_reported():
    res = find_embeddings(build_multiplicative(13), GRID, "count", max_nodes=10)
    assert res.exhausted and res.status == "budget_exceeded"
    with pytest.raises(BudgetExceeded):
        grid_free(build_multiplicative(13), max_nodes=10)
    # a find inside the budget is conclusive
    res = find_embeddings(build_ap(7), GRID, "first", max_nodes=10_000)
    assert res.status == "found"


def test_threads_do_not_change_results():
    H = build_ap(7)
    for mode in ["first", "count", "all"]:
        a = find_embeddings(H, GRID, mode, threads=1)
        b = find_embeddings(H, GRID, mode, threads=2)
        assert (a.count, a.embeddings) == (b.count, b.embeddings)


def brute_automorphisms(F):
    edges = set(F.edges)
    return sum(1 for perm in permutations(range(F.n))
               if {tuple(sorted(perm[v] for v in e)) for e in F.edges} == edges)


@pytest.mark.parametrize("F", [TRIANGLE, PASCH, EDGE, DOUBLE,
                               Pattern(7, ((0, 1, 2), (2, 3, 4)))])
def test_automorphisms_brute_force(F):
    assert automorphism_group_order(F) == brute_automorphisms(F)
    edges = set(F.edges)
    for s in automorphisms(F):
        assert {tuple(sorted(s[v] for v in e)) for e in F.edges} == edges


def test_automorphism_examples():
    assert automorphism_group_order(EDGE) == 6
    assert automorphism_group_order(TRIANGLE) % 3 == 0
    rotation = (2, 3, 4, 5, 0, 1)  # 1->3->5, 2->4->6 in one-based labels
    assert rotation in automorphisms(TRIANGLE)


def brute_partitions(F):
    out = set()
    for col in product(range(3), repeat=F.n):
        if all({col[v] for v in e} == {0, 1, 2} for e in F.edges):
            out.add(tuple(sorted(tuple(v for v in range(F.n) if col[v] == c) for c in range(3))))
    return sorted(out)


def test_grid_partitions():
    rep = enumerate_3partitions(GRID)
    assert rep.partitions == brute_partitions(GRID)
    # {p_i}, {q_i}, {r_i} and {p1,q3,r2}, {p2,q1,r3}, {p3,q2,r1}
    assert set(rep.partitions) == {((0, 1, 2), (3, 4, 5), (6, 7, 8)),
                                   ((0, 5, 7), (1, 3, 8), (2, 4, 6))}
    assert rep.all_equivalent


def test_triangle_and_edge_partitions():
    rep = enumerate_3partitions(TRIANGLE)
    assert rep.partitions == brute_partitions(TRIANGLE) == [((0, 3), (1, 4), (2, 5))]
    assert len(enumerate_3partitions(EDGE).partitions) == 1
    assert enumerate_3partitions(PASCH).partitions == brute_partitions(PASCH)
