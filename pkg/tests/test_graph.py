"""Chain enumeration, the recoupling graph, and path/pipeline behaviour."""

import random

import pytest

from racah_dunkl import (
    Chain,
    ParameterSet,
    build_basis_tower,
    build_graph,
    casimir_eigenvalue,
    connection_matrix,
    connection_pipeline,
    enumerate_chains,
    neighbors,
    path,
)


def test_chain_canonicalization():
    a = Chain.from_order((1, 2, 3, 4))
    b = Chain.from_order((2, 1, 3, 4))
    assert a == b
    assert a.generators == (frozenset({1, 2}), frozenset({1, 2, 3}))
    assert str(a) == "(C12,C123)"
    c = Chain.from_order((1, 3, 2, 4))
    assert c != a


def test_chain_validation():
    with pytest.raises(ValueError):
        Chain.from_order((1, 2))
    with pytest.raises(ValueError):
        Chain.from_order((1, 1, 2))


def test_enumerate_chain_counts():
    assert len(enumerate_chains(3)) == 3
    assert len(enumerate_chains(4)) == 12
    assert len(enumerate_chains(5)) == 60
    with pytest.raises(ValueError):
        enumerate_chains(2)


def test_n3_chains_and_neighbors():
    chains = enumerate_chains(3)
    names = {str(c) for c in chains}
    assert names == {"(C12)", "(C13)", "(C23)"}
    for c in chains:
        assert set(neighbors(c)) == set(chains) - {c}


def test_n4_figure_vertex_labels():
    expected = {
        "(C12,C123)", "(C12,C124)", "(C14,C124)", "(C24,C124)",
        "(C24,C234)", "(C23,C234)", "(C34,C234)", "(C34,C134)",
        "(C14,C134)", "(C13,C134)", "(C13,C123)", "(C23,C123)",
    }
    assert {str(c) for c in enumerate_chains(4)} == expected


def test_n4_neighbor_example():
    chain = Chain.from_order((1, 2, 3, 4))
    got = {str(c) for c in neighbors(chain)}
    assert got == {"(C12,C124)", "(C13,C123)", "(C23,C123)"}


def test_neighbor_symmetry():
    for c in enumerate_chains(4):
        for other in neighbors(c):
            assert c in neighbors(other)


def test_graph_n4_shape():
    g = build_graph(4)
    assert len(g.vertices) == 12
    assert len(g.edges) == 18
    assert all(g.degree(i) == 3 for i in range(12))
    assert g.is_connected()


def test_graph_n5_connected():
    g = build_graph(5)
    assert len(g.vertices) == 60
    assert g.is_connected()


def test_graph_exports():
    g = build_graph(4)
    obj = g.to_json_obj()
    assert len(obj["vertices"]) == 12 and len(obj["edges"]) == 18
    dot = g.to_dot()
    assert dot.startswith("graph recoupling {")
    assert dot.count("--") == 18


def test_path_trivial_and_single_edge():
    a = Chain.from_order((1, 2, 3, 4))
    assert path(a, a) == []
    b = Chain.from_order((1, 2, 4, 3))
    assert str(b) == "(C12,C124)"
    walk = path(a, b)
    assert walk == [b]


def test_path_first_pair_swap_is_empty():
    a = Chain.from_order((1, 2, 3, 4))
    same = Chain.from_order((2, 1, 3, 4))
    assert path(a, same) == []


def test_path_random_pairs_are_walks():
    rng = random.Random(11)
    chains = enumerate_chains(5)
    for _ in range(25):
        a, b = rng.sample(chains, 2)
        walk = [a] + path(a, b)
        assert walk[-1] == b
        for u, v in zip(walk, walk[1:]):
            assert v in neighbors(u)
        # bound: total adjacent flips in the constructive decomposition,
        # counted by replaying the transpositions on the order list
        current = list(a.order)
        flips = 0
        for p in range(5):
            if current[p] != b.order[p]:
                q = current.index(b.order[p])
                flips += 2 * (q - p) - 1
                moved = current.pop(q)
                current.insert(p, moved)
                displaced = current.pop(p + 1)
                current.insert(q, displaced)
        assert current == list(b.order)
        assert len(walk) - 1 <= flips


def test_pipeline_single_edge_matches_direct():
    params = ParameterSet.make(["1/2", "1/3", "1/4"])
    a = Chain.from_order((1, 2, 3))
    b = Chain.from_order((2, 3, 1))
    mats = connection_pipeline(params, 3, a, b)
    assert len(mats) == 1
    direct = connection_matrix(
        params,
        build_basis_tower(params, 3, a.order),
        build_basis_tower(params, 3, b.order),
    )
    assert mats[0].entries == direct.entries


def test_pipeline_product_equals_direct_n4():
    params = ParameterSet.default(4)
    a = Chain.from_order((1, 2, 3, 4))
    b = Chain.from_order((2, 4, 3, 1))
    mats = connection_pipeline(params, 2, a, b)
    product = mats[0]
    for m in mats[1:]:
        product = product.compose(m)
    direct = connection_matrix(
        params,
        build_basis_tower(params, 2, a.order),
        build_basis_tower(params, 2, b.order),
    )
    assert product.entries == direct.entries


def test_pipeline_edges_block_diagonal():
    params = ParameterSet.default(4)
    a = Chain.from_order((1, 2, 3, 4))
    b = Chain.from_order((2, 4, 3, 1))
    vertices = [a] + path(a, b)
    mats = connection_pipeline(params, 2, a, b)
    for (u, v), w in zip(zip(vertices, vertices[1:]), mats):
        shared = set(u.generators) & set(v.generators)
        for s, from_label in enumerate(w.from_labels):
            for k, to_label in enumerate(w.to_labels):
                if w.at(s, k) == 0:
                    continue
                assert from_label.variable_parities() == to_label.variable_parities()
                for gen in shared:
                    assert casimir_eigenvalue(
                        params, from_label, len(gen)
                    ) == casimir_eigenvalue(params, to_label, len(gen))
