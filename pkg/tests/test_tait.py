"""Tait graphs, block decomposition, fundamental cycles, flow lattices."""

from __future__ import annotations

import random

import pytest

from helpers import (
    block_partition_oracle,
    random_connected_multigraph,
    spanning_tree_count,
)
from knotcert.diagram import checkerboard, classify_special, orient, parse_pd
from knotcert.lattice import definiteness, det_int
from knotcert.tait import TaitGraph, blocks, flow_lattice, fundamental_cycles, tait_graph

LEFT_TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
RIGHT_TREFOIL_ROTATED = "X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)"
GRANNY = "X(9,1,10,12) X(1,11,2,10) X(11,3,12,2) X(3,7,4,6) X(7,5,8,4) X(5,9,6,8)"
KINK = "X(1,2,2,1)"


def taits(text):
    cb = checkerboard(parse_pd(text))
    return tait_graph(cb, 0), tait_graph(cb, 1)


def make_tait(n_vertices, edges):
    """Synthetic TaitGraph for pure-graph algorithms (rotation order is
    arbitrary; nothing in this file reads it beyond dart coverage)."""
    rot = [[] for _ in range(n_vertices)]
    for ei, (u, v) in enumerate(edges):
        rot[u].append((ei, 0))
        rot[v].append((ei, 1))
    return TaitGraph(
        color=0,
        vertex_faces=tuple(range(n_vertices)),
        edges=tuple(tuple(e) for e in edges),
        edge_signs=(1,) * len(edges),
        rotations=tuple(tuple(r) for r in rot),
    )


def test_trefoil_tait_shapes():
    g0, g1 = taits(RIGHT_TREFOIL_ROTATED)
    sizes = sorted((g.num_vertices, g.num_edges) for g in (g0, g1))
    assert sizes == [(2, 3), (3, 3)]
    theta = g0 if g0.num_vertices == 2 else g1
    cycle_graph = g1 if theta is g0 else g0
    assert theta.cycle_rank() == 2
    assert cycle_graph.cycle_rank() == 1
    # one color sits on the sweep pair everywhere, the other never does
    assert {theta.edge_signs, cycle_graph.edge_signs} == {(1, 1, 1), (-1, -1, -1)}


def test_trefoil_tait_signs_follow_mirror():
    g0, g1 = taits(LEFT_TREFOIL)
    assert {g0.edge_signs, g1.edge_signs} == {(1, 1, 1), (-1, -1, -1)}
    # edge signs of the orientable color match the uniform crossing sign
    od = orient(parse_pd(LEFT_TREFOIL))
    rep = classify_special(od)
    cb = checkerboard(od.diagram)
    go = tait_graph(cb, rep.orientable_color)
    assert go.edge_signs == (rep.uniform_sign,) * 3


def test_dart_coverage():
    for g in taits(GRANNY):
        darts = [dd for r in g.rotations for dd in r]
        assert sorted(darts) == sorted(
            (ei, end) for ei in range(g.num_edges) for end in (0, 1)
        )
        for v in range(g.num_vertices):
            assert g.degree(v) == len(g.rotations[v])


def test_flow_lattice_trefoil():
    g0, g1 = taits(RIGHT_TREFOIL_ROTATED)
    theta = g0 if g0.num_vertices == 2 else g1
    other = g1 if theta is g0 else g0
    gram_t, basis_t = flow_lattice(theta)
    gram_o, _ = flow_lattice(other)
    assert gram_t.matrix == ((2, 1), (1, 2))
    assert gram_o.matrix == ((3,),)
    assert det_int(gram_t.matrix) == det_int(gram_o.matrix) == 3
    assert len(basis_t.vectors) == 2


def test_granny_flow_gram_splits():
    od = orient(parse_pd(GRANNY))
    rep = classify_special(od)
    g = tait_graph(checkerboard(od.diagram), rep.orientable_color)
    gram, _ = flow_lattice(g)
    assert gram.matrix == ((2, 1, 0, 0), (1, 2, 0, 0), (0, 0, 2, 1), (0, 0, 1, 2))
    assert definiteness(gram) == "positive_definite"


def test_blocks_granny_and_kink():
    od = orient(parse_pd(GRANNY))
    rep = classify_special(od)
    g = tait_graph(checkerboard(od.diagram), rep.orientable_color)
    dec = blocks(g)
    assert len(dec.blocks) == 2
    assert not dec.is_prime
    assert len(dec.articulation_vertices) == 1
    assert sorted(len(b) for b in dec.blocks) == [3, 3]

    for g in taits(KINK):
        dec = blocks(g)
        assert len(dec.blocks) == 1  # a single crossing is its own block
        assert dec.is_prime


def test_blocks_loop_bridge_triangle():
    g = make_tait(4, [(0, 0), (0, 1), (1, 2), (2, 3), (3, 1)])
    dec = blocks(g)
    assert sorted(tuple(sorted(b)) for b in dec.blocks) == [(0,), (1,), (2, 3, 4)]
    assert set(dec.articulation_vertices) == {0, 1}


def test_blocks_match_oracle_on_random_multigraphs():
    rng = random.Random(20260814)
    for _ in range(150):
        n, edges = random_connected_multigraph(rng, max_edges=9)
        if not edges:
            continue
        mine = sorted(tuple(sorted(b)) for b in blocks(make_tait(n, edges)).blocks)
        assert mine == block_partition_oracle(n, edges), (n, edges)


def test_fundamental_cycles_structure():
    g = make_tait(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (2, 2)])
    cb = fundamental_cycles(g)
    r = g.cycle_rank()
    assert r == 3 == len(cb.vectors)
    assert sorted(cb.tree_edges) + sorted(cb.cotree_edges) != []
    assert len(cb.tree_edges) == g.num_vertices - 1
    for i, cot in enumerate(cb.cotree_edges):
        assert cb.vectors[i][cot] != 0
        for j in range(r):
            if j != i:
                assert cb.vectors[j][cot] == 0
    # every vector is a flow: signed degree balances at each vertex
    for vec in cb.vectors:
        bal = [0] * g.num_vertices
        for ei, coef in enumerate(vec):
            u, v = g.edges[ei]
            bal[u] -= coef
            bal[v] += coef
        assert bal == [0] * g.num_vertices


def test_flow_gram_counts_spanning_trees():
    cases = [
        (2, [(0, 1)] * 3),
        (3, [(0, 1), (1, 2), (2, 0)]),
        (5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]),
        (1, [(0, 0), (0, 0)]),
    ]
    for n, edges in cases:
        gram, _ = flow_lattice(make_tait(n, edges))
        assert det_int(gram.matrix) == spanning_tree_count(n, edges)


def test_flow_gram_counts_spanning_trees_random():
    rng = random.Random(99)
    done = 0
    while done < 60:
        n, edges = random_connected_multigraph(rng, max_edges=8)
        gram, _ = flow_lattice(make_tait(n, edges))
        assert det_int(gram.matrix) == spanning_tree_count(n, edges), (n, edges)
        done += 1


def test_flow_gram_definite():
    rng = random.Random(4)
    for _ in range(40):
        n, edges = random_connected_multigraph(rng, max_edges=8)
        g = make_tait(n, edges)
        gram, basis = flow_lattice(g)
        if g.cycle_rank() == 0:
            assert gram.rank == 0
        else:
            assert definiteness(gram) == "positive_definite"
            assert gram.rank == g.cycle_rank() == len(basis.vectors)
