"""Shared helpers for the test-suite: random unimodular matrices and random
connected planar multigraphs (the latter via networkx, which is a test-only
dependency)."""

from __future__ import annotations

import random

from knotcert.lattice import identity, mat_mul, transpose


def random_unimodular(n: int, rng: random.Random, steps: int = 12,
                      max_entry: int = 40) -> list[list[int]]:
    """Product of elementary integer row operations; determinant is +-1.

    Entries are kept small so that congruence-scrambled Gram matrices stay
    within comfortable exact-enumeration range.
    """
    u = identity(n)
    if n <= 1:
        return u
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        if op == 0:
            t = rng.choice((-1, 1))
            cand = [row[:] for row in u]
            for k in range(n):
                cand[k][j] += t * cand[k][i]
            if max(abs(x) for row in cand for x in row) <= max_entry:
                u = cand
        elif op == 1:
            for k in range(n):
                u[k][i], u[k][j] = u[k][j], u[k][i]
        else:
            for k in range(n):
                u[k][i] = -u[k][i]
    return u


def congruent_scramble(matrix, rng: random.Random):
    """U^T M U for a random unimodular U; returns (scrambled, U)."""
    n = len(matrix)
    u = random_unimodular(n, rng)
    m = mat_mul(mat_mul(transpose(u), [list(r) for r in matrix]), u)
    return [list(map(int, row)) for row in m], u


def random_connected_multigraph(rng: random.Random, max_edges: int = 10,
                                allow_loops: bool = True):
    """Random connected multigraph as (n_vertices, [(u, v), ...]).

    Built from a random spanning tree plus extra (possibly parallel, possibly
    loop) edges.  Planarity is NOT guaranteed; filter with is_planar_multigraph.
    """
    n = rng.randint(1, 6)
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v and not allow_loops:
            continue
        edges.append((min(u, v), max(u, v)))
    return n, edges


def is_planar_multigraph(n: int, edges) -> bool:
    """Planarity of the underlying simple graph (loops/multi-edges are free)."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((u, v) for u, v in edges if u != v)
    ok, _ = nx.check_planarity(g)
    return ok


def canonical_pd(d):
    """Minimum relabeling of the PD tuples over all strand starts/directions.

    Two diagrams of the same knot get equal canonical forms exactly when they
    differ by arc relabeling (including reversing the traversal direction),
    which is what reading the same picture off from a different start gives.
    """
    from knotcert.diagram import orient

    n = d.n
    if n == 0:
        return ()
    od = orient(d)
    nxt = {}
    for ci, c in enumerate(d.crossings):
        nxt[c[0]] = c[2]
        s = od.over_in_slot[ci]
        nxt[c[s]] = c[(s + 2) % 4]
    seq = [1]
    while len(seq) < 2 * n:
        seq.append(nxt[seq[-1]])
    assert nxt[seq[-1]] == 1 and len(set(seq)) == 2 * n
    best = None
    for rev in (False, True):
        order = list(reversed(seq)) if rev else seq
        for k in range(2 * n):
            lab = {order[(k + i) % (2 * n)]: i + 1 for i in range(2 * n)}
            tuples = []
            for c in d.crossings:
                cc = (c[2], c[3], c[0], c[1]) if rev else c
                tuples.append((lab[cc[0]], lab[cc[1]], lab[cc[2]], lab[cc[3]]))
            cand = tuple(sorted(tuples))
            if best is None or cand < best:
                best = cand
    return best


def plane_graph_from_multigraph(n_vertices, edges):
    """Embed a connected multigraph in the plane; None if nonplanar.

    networkx only embeds simple graphs, so every edge is subdivided first
    (loops twice); the rotation at each original vertex is then read off the
    embedding through the midpoint vertices.
    """
    import networkx as nx

    from knotcert.medial import PlaneGraph

    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    dart_of = {}
    nxt_node = n_vertices
    for ei, (u, v) in enumerate(edges):
        if u == v:
            m1, m2 = nxt_node, nxt_node + 1
            nxt_node += 2
            g.add_edge(u, m1)
            g.add_edge(m1, m2)
            g.add_edge(m2, v)
            dart_of[(u, m1)] = (ei, 0)
            dart_of[(v, m2)] = (ei, 1)
        else:
            m = nxt_node
            nxt_node += 1
            g.add_edge(u, m)
            g.add_edge(m, v)
            dart_of[(u, m)] = (ei, 0)
            dart_of[(v, m)] = (ei, 1)
    ok, emb = nx.check_planarity(g)
    if not ok:
        return None
    rotations = []
    for v in range(n_vertices):
        order = list(emb.neighbors_cw_order(v)) if g.degree(v) else []
        rotations.append(tuple(dart_of[(v, w)] for w in order))
    return PlaneGraph(tuple(tuple(e) for e in edges), tuple(rotations))


def spanning_tree_count(n_vertices, edges):
    """Count spanning trees by brute force over edge subsets."""
    from itertools import combinations

    if n_vertices == 1:
        return 1
    count = 0
    for sub in combinations(range(len(edges)), n_vertices - 1):
        parent = list(range(n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for ei in sub:
            ru, rv = find(edges[ei][0]), find(edges[ei][1])
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        count += ok
    return count


def block_partition_oracle(n_vertices, edges):
    """Edge partition into biconnected blocks via networkx on a subdivision."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    half = {}
    nxt = n_vertices
    for ei, (u, v) in enumerate(edges):
        if u == v:
            m1, m2 = nxt, nxt + 1
            nxt += 2
            g.add_edge(u, m1)
            g.add_edge(m1, m2)
            g.add_edge(m2, v)
            half[(m1,)] = ei
            half[(m2,)] = ei
        else:
            m = nxt
            nxt += 1
            g.add_edge(u, m)
            g.add_edge(m, v)
            half[(m,)] = ei
    comp_of = {}
    for comp in nx.biconnected_component_edges(g):
        key = frozenset(comp)
        for (a, b) in comp:
            m = a if a >= n_vertices else b
            comp_of.setdefault(half[(m,)], set()).add(key)
    groups = {}
    for ei in range(len(edges)):
        keys = comp_of[ei]
        assert len(keys) >= 1
        groups.setdefault(frozenset().union(*keys), set()).add(ei)
    return sorted(tuple(sorted(s)) for s in groups.values())
