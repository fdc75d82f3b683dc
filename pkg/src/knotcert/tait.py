"""Tait graphs: the plane multigraphs dual to a checkerboard coloring.

For a fixed color, vertices are the faces of that color and every crossing
contributes one edge joining the two same-colored faces at its opposite
corners.  We keep the rotation system (cyclic order of edge-ends around each
face, read off from the face traversal), which makes the Tait graph a plane
multigraph and lets diagrams be rebuilt from subgraphs.

Edge signs record where the color sits: +1 when the colored faces occupy the
sweep pair {corner 0, corner 2}, -1 when they occupy {corner 1, corner 3}.
An alternating diagram has constant edge sign for each color.

The flow lattice of the graph is the integer cycle space with the Gram form
inherited from the edge basis.  Its determinant equals the number of spanning
trees, which for an alternating diagram equals the knot determinant; the
acceptance suite leans on that cross-check.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .diagram import Checkerboard
from .errors import DiagramError, InconsistencyError
from .lattice import GramForm

Dart = tuple[int, int]  # (edge index, end 0 or 1)


@dataclass(frozen=True)
class TaitGraph:
    color: int
    vertex_faces: tuple[int, ...]  # checkerboard face index per vertex
    edges: tuple[tuple[int, int], ...]  # (vertex, vertex); edge i <-> crossing i
    edge_signs: tuple[int, ...]
    rotations: tuple[tuple[Dart, ...], ...]  # darts ccw-consistently per vertex

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_faces)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def cycle_rank(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def degree(self, v: int) -> int:
        return len(self.rotations[v])


def tait_graph(cb: Checkerboard, color: int) -> TaitGraph:
    d = cb.diagram
    vertex_faces = tuple(
        fi for fi in range(len(cb.faces)) if cb.colors[fi] == color
    )
    vidx = {fi: i for i, fi in enumerate(vertex_faces)}
    edges = []
    signs = []
    end_corner = []  # per edge: (corner of end 0, corner of end 1)
    for ci in range(d.n):
        k0, k1 = cb.corner_pair_of_color(ci, color)
        f0 = cb.face_at_corner[ci][k0]
        f1 = cb.face_at_corner[ci][k1]
        edges.append((vidx[f0], vidx[f1]))
        signs.append(1 if (k0, k1) == (0, 2) else -1)
        end_corner.append((k0, k1))
    rotations = []
    for fi in vertex_faces:
        rot = []
        for (ci, s) in cb.faces[fi]:
            corner = (s - 1) % 4
            k0, k1 = end_corner[ci]
            if corner == k0:
                rot.append((ci, 0))
            elif corner == k1:
                rot.append((ci, 1))
            else:  # pragma: no cover - contradicts corner_pair_of_color
                raise InconsistencyError("face corner missing from its own edge")
        rotations.append(tuple(rot))
    g = TaitGraph(color, vertex_faces, tuple(edges), tuple(signs), tuple(rotations))
    dart_count: dict[Dart, int] = {}
    for rot in g.rotations:
        for dart in rot:
            dart_count[dart] = dart_count.get(dart, 0) + 1
    if d.n and (
        len(dart_count) != 2 * d.n or any(v != 1 for v in dart_count.values())
    ):
        raise InconsistencyError("Tait rotation system does not cover each edge end once")
    return g


# ---------------------------------------------------------------------------
# block (2-connected component) decomposition


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]  # edge indices per block
    articulation_vertices: tuple[int, ...]

    @property
    def is_prime(self) -> bool:
        return len(self.blocks) <= 1


def blocks(g: TaitGraph) -> BlockDecomposition:
    """Blocks of the underlying multigraph.

    Loop edges count as their own single-edge blocks; bridges likewise.  The
    articulation list contains every vertex shared by two or more blocks.
    """
    nv = g.num_vertices
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    loop_blocks = []
    for ei, (u, v) in enumerate(g.edges):
        if u == v:
            loop_blocks.append((ei,))
        else:
            adj[u].append((v, ei))
            adj[v].append((u, ei))
    disc = [0] * nv
    low = [0] * nv
    timer = 1
    edge_stack: list[int] = []
    block_list: list[tuple[int, ...]] = []
    visited_edge = [False] * g.num_edges
    for root in range(nv):
        if disc[root]:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, via_edge, it = stack[-1]
            advanced = False
            for (w, ei) in it:
                if ei == via_edge or visited_edge[ei]:
                    continue
                visited_edge[ei] = True
                edge_stack.append(ei)
                if not disc[w]:
                    stack.append((w, ei, iter(adj[w])))
                    disc[w] = low[w] = timer
                    timer += 1
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    blk = []
                    while True:
                        ei = edge_stack.pop()
                        blk.append(ei)
                        if ei == via_edge:
                            break
                    block_list.append(tuple(sorted(blk)))
    all_blocks = sorted(block_list + loop_blocks, key=min)
    seen_in: dict[int, int] = {}
    cut = set()
    for blk in all_blocks:
        verts = set()
        for ei in blk:
            verts.update(g.edges[ei])
        for v in verts:
            seen_in[v] = seen_in.get(v, 0) + 1
            if seen_in[v] > 1:
                cut.add(v)
    return BlockDecomposition(tuple(all_blocks), tuple(sorted(cut)))


# ---------------------------------------------------------------------------
# cycle space


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a spanning tree.

    Each cycle is stored both as a vector over the edge basis (coefficients
    in {-1, 0, 1}) and as a closed walk: a sequence of (edge, direction)
    steps, direction +1 meaning the edge is traversed from endpoint 0 to
    endpoint 1.  Cycle i starts by traversing cotree edge i forward.
    """

    tree_edges: tuple[int, ...]
    cotree_edges: tuple[int, ...]
    vectors: tuple[tuple[int, ...], ...]
    walks: tuple[tuple[tuple[int, int], ...], ...]


@functools.lru_cache(maxsize=None)
def fundamental_cycles(g: TaitGraph) -> CycleBasis:
    nv = g.num_vertices
    parent: list[tuple[int, int, int] | None] = [None] * nv  # (vertex, edge, dir)
    depth = [0] * nv
    in_tree = set()
    order = [0]
    seen = {0}
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for ei, (a, b) in enumerate(g.edges):
            if a == b or ei in in_tree:
                continue
            w = None
            if a == v and b not in seen:
                w, direction = b, 1
            elif b == v and a not in seen:
                w, direction = a, -1
            if w is not None:
                parent[w] = (v, ei, direction)
                depth[w] = depth[v] + 1
                in_tree.add(ei)
                seen.add(w)
                order.append(w)
    if len(seen) != nv:
        raise DiagramError("Tait graph is disconnected")

    def climb(v: int) -> list[tuple[int, int, int]]:
        # steps (edge, dir, next_vertex) from v toward the root
        steps = []
        while parent[v] is not None:
            pv, ei, direction = parent[v]
            steps.append((ei, -direction, pv))
            v = pv
        return steps

    cotree = tuple(ei for ei in range(g.num_edges) if ei not in in_tree)
    vectors = []
    walks = []
    for ei in cotree:
        u, v = g.edges[ei]
        walk = [(ei, 1)]
        if u != v:
            up_v = climb(v)
            up_u = climb(u)
            while up_v and up_u and up_v[-1][0] == up_u[-1][0]:
                up_v.pop()
                up_u.pop()
            walk.extend((e, s) for (e, s, _) in up_v)
            walk.extend((e, -s) for (e, s, _) in reversed(up_u))
        vec = [0] * g.num_edges
        for e, s in walk:
            vec[e] += s
        if sorted(abs(x) for x in vec if x) != [1] * len(walk):
            raise InconsistencyError("fundamental cycle is not simple")
        vectors.append(tuple(vec))
        walks.append(tuple(walk))
    basis = CycleBasis(
        tuple(sorted(in_tree)), cotree, tuple(vectors), tuple(walks)
    )
    for walk in basis.walks:  # closed-walk sanity: endpoints chain up
        cur = None
        first = None
        for e, s in walk:
            a, b = g.edges[e]
            tail, head = (a, b) if s == 1 else (b, a)
            if cur is None:
                first = tail
            elif tail != cur:
                raise InconsistencyError("cycle walk is not connected")
            cur = head
        if cur != first:
            raise InconsistencyError("cycle walk does not close up")
    return basis


def flow_lattice(g: TaitGraph) -> tuple[GramForm, CycleBasis]:
    """Gram form of the cycle space in the edge basis, plus the basis used."""
    basis = fundamental_cycles(g)
    vecs = basis.vectors
    r = len(vecs)
    gram = tuple(
        tuple(sum(vecs[i][e] * vecs[j][e] for e in range(g.num_edges)) for j in range(r))
        for i in range(r)
    )
    form = GramForm(gram, provenance=f"flow lattice of color-{g.color} Tait graph")
    return form, basis
