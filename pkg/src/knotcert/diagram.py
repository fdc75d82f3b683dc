"""Planar diagram (PD) codes and their checkerboard combinatorics.

A diagram is a list of crossings ``X(a,b,c,d)``: the four arc labels around
the crossing in counterclockwise order, starting with the *incoming under*
strand.  Arc labels run 1..2n and each label appears exactly twice.  The
cyclic order at every crossing is a rotation system, so the code determines a
4-valent graph embedded in the sphere; we validate that the induced face count
satisfies Euler's formula (faces = crossings + 2) and reject anything else.

Grammar for the text form (whitespace/comma separated, case-insensitive `X`)::

    pd        = crossing* ;
    crossing  = "X" "(" label "," label "," label "," label ")" ;
    label     = positive integer ;

The empty string denotes the 0-crossing unknot.  A JSON array of [a,b,c,d]
quadruples is accepted as an equivalent input form.

Local geometry used throughout the package: at a crossing drawn with the
incoming under-strand entering from the west (slot 0), the slots sit at
W, S, E, N (counterclockwise), and corner k lies between slots k and k+1:

    corner 3 = NW   corner 2 = NE
             \\  over  /
    under ->  crossing    (slot 0 = W, 1 = S, 2 = E, 3 = N)
             /        \\
    corner 0 = SW   corner 1 = SE

The *sweep pair* {corner 0, corner 2} is the pair of opposite quadrants swept
when the under-strand is rotated counterclockwise onto the over-strand.  It is
independent of strand orientations and is the combinatorial backbone for
crossing signs, Goeritz signs, and Seifert smoothings.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass, field

from .errors import ClassificationError, DiagramError, InconsistencyError, PDSyntaxError

Crossing = tuple[int, int, int, int]
HalfEdge = tuple[int, int]  # (crossing index, slot 0..3)


@dataclass(frozen=True)
class Diagram:
    """A validated PD code.  Immutable; everything else is derived from it."""

    crossings: tuple[Crossing, ...]

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    def pd_text(self) -> str:
        return " ".join("X({},{},{},{})".format(*c) for c in self.crossings)

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.pd_text() or "<unknot>"


_CROSSING_RE = re.compile(r"[Xx]\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text: str) -> Diagram:
    """Parse and validate a PD code (text form or JSON quadruple array).

    The primary reading is the standard one described in the module docstring.
    Some sources instead list a crossing as (under-in, under-out, over-in,
    over-out); codes in that dialect fail the Euler face check under the
    standard reading, so when that specific check fails the parser retries
    with the dialect conversion (a,b,c,d) -> (a,d,b,c) and accepts the result
    if it validates completely.  A code valid under the standard reading is
    never reinterpreted.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PDSyntaxError(f"bad JSON PD code: {exc}") from exc
        if not isinstance(data, list) or not all(
            isinstance(q, list) and len(q) == 4 and all(isinstance(x, int) for x in q)
            for q in data
        ):
            raise PDSyntaxError("JSON PD code must be an array of [a,b,c,d] quadruples")
        crossings = tuple(tuple(q) for q in data)
    else:
        crossings = tuple(
            tuple(int(g) for g in m.groups()) for m in _CROSSING_RE.finditer(stripped)
        )
        leftover = _CROSSING_RE.sub("", stripped).replace(",", " ").strip()
        if leftover:
            raise PDSyntaxError(f"unparsable PD fragment: {leftover!r}")
    try:
        return build_diagram(crossings)
    except DiagramError as primary_err:
        if "not planar" not in str(primary_err):
            raise
        try:
            return build_diagram((a, d, b, c) for (a, b, c, d) in crossings)
        except (DiagramError, ClassificationError):
            raise primary_err from None


def build_diagram(crossings) -> Diagram:
    """Validate crossing tuples (standard convention) and return a Diagram."""
    crossings = tuple(tuple(int(x) for x in c) for c in crossings)
    for c in crossings:
        if len(c) != 4:
            raise PDSyntaxError(f"crossing {c} does not have four arc labels")
    d = Diagram(crossings)
    _validate(d)
    return d


def _validate(d: Diagram):
    n = d.n
    if n == 0:
        return
    counts: dict[int, list[HalfEdge]] = {}
    for ci, c in enumerate(d.crossings):
        for slot, a in enumerate(c):
            counts.setdefault(a, []).append((ci, slot))
    expected = set(range(1, 2 * n + 1))
    if set(counts) != expected:
        bad = sorted(set(counts) ^ expected)
        raise DiagramError(f"arc labels must be 1..{2*n}; problems at {bad}")
    for a, occ in counts.items():
        if len(occ) != 2:
            raise DiagramError(f"arc {a} appears {len(occ)} times (want 2)")
    # connectivity of the 4-valent graph
    seen = {0}
    stack = [0]
    adj: dict[int, set[int]] = {ci: set() for ci in range(n)}
    for occ in counts.values():
        (c1, _), (c2, _) = occ
        adj[c1].add(c2)
        adj[c2].add(c1)
    while stack:
        ci = stack.pop()
        for cj in adj[ci]:
            if cj not in seen:
                seen.add(cj)
                stack.append(cj)
    if len(seen) != n:
        raise DiagramError("diagram is disconnected")
    # Euler check: tracing faces of the rotation system must give n + 2
    if len(_trace_faces(d)) != n + 2:
        raise DiagramError(
            f"rotation system is not planar: {len(_trace_faces(d))} faces "
            f"instead of {n + 2}"
        )


@functools.lru_cache(maxsize=None)
def _occurrences(d: Diagram) -> dict[int, tuple[HalfEdge, HalfEdge]]:
    occ: dict[int, list[HalfEdge]] = {}
    for ci, c in enumerate(d.crossings):
        for slot, a in enumerate(c):
            occ.setdefault(a, []).append((ci, slot))
    return {a: tuple(v) for a, v in occ.items()}


def _mate(d: Diagram, he: HalfEdge) -> HalfEdge:
    ci, slot = he
    a = d.crossings[ci][slot]
    u, v = _occurrences(d)[a]
    return v if he == u else u


@functools.lru_cache(maxsize=None)
def _trace_faces(d: Diagram) -> tuple[tuple[HalfEdge, ...], ...]:
    """Faces of the underlying 4-valent plane graph.

    Orbits of the map (c, s) -> rotate(mate(c, s)); the face owning half-edge
    (c, s) occupies corner (s - 1) mod 4 at crossing c.
    """
    faces = []
    seen: set[HalfEdge] = set()
    for ci in range(d.n):
        for slot in range(4):
            he = (ci, slot)
            if he in seen:
                continue
            face = []
            cur = he
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                mc, ms = _mate(d, cur)
                cur = (mc, (ms + 1) % 4)
            faces.append(tuple(face))
    return tuple(faces)


@dataclass(frozen=True)
class Checkerboard:
    """Checkerboard structure: faces, their 2-coloring, and per-crossing
    corner ownership.

    `face_at_corner[ci][k]` is the face index owning corner k of crossing ci
    (corner k lies between slots k and k+1 mod 4); `colors[f]` is 0 or 1.
    """

    diagram: Diagram
    faces: tuple[tuple[HalfEdge, ...], ...]
    colors: tuple[int, ...]
    face_at_corner: tuple[tuple[int, int, int, int], ...]

    def color_classes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        c0 = tuple(i for i, c in enumerate(self.colors) if c == 0)
        c1 = tuple(i for i, c in enumerate(self.colors) if c == 1)
        return c0, c1

    def color_counts(self) -> tuple[int, int]:
        a, b = self.color_classes()
        return len(a), len(b)

    def corner_pair_of_color(self, ci: int, color: int) -> tuple[int, int]:
        """The two opposite corners of crossing ci whose faces carry `color`.

        Returns (0, 2) or (1, 3); any other pattern is structurally impossible
        and raises.
        """
        cols = [self.colors[self.face_at_corner[ci][k]] for k in range(4)]
        if cols == [color, 1 - color, color, 1 - color]:
            return (0, 2)
        if cols == [1 - color, color, 1 - color, color]:
            return (1, 3)
        raise InconsistencyError(f"corner colors at crossing {ci} not alternating")

    def arcs_by_face(self, face_idx: int) -> frozenset[int]:
        d = self.diagram
        return frozenset(d.crossings[ci][slot] for ci, slot in self.faces[face_idx])


@functools.lru_cache(maxsize=None)
def checkerboard(d: Diagram) -> Checkerboard:
    """2-color the faces so that faces sharing an arc get opposite colors."""
    faces = _trace_faces(d)
    if d.n == 0:
        return Checkerboard(d, ((), ()), (0, 1), ())
    owner: dict[HalfEdge, int] = {}
    for fi, face in enumerate(faces):
        for he in face:
            owner[he] = fi
    # adjacency across arcs: the two half-edges of an arc see its two sides
    colors: dict[int, int] = {0: 0}
    queue = [0]
    adj: dict[int, set[int]] = {fi: set() for fi in range(len(faces))}
    for a, (h1, h2) in _occurrences(d).items():
        adj[owner[h1]].add(owner[h2])
        adj[owner[h2]].add(owner[h1])
    while queue:
        fi = queue.pop()
        for fj in adj[fi]:
            if fj not in colors:
                colors[fj] = 1 - colors[fi]
                queue.append(fj)
            elif colors[fj] == colors[fi]:
                raise DiagramError("faces are not checkerboard 2-colorable")
    face_at_corner = tuple(
        tuple(owner[(ci, (k + 1) % 4)] for k in range(4)) for ci in range(d.n)
    )
    cb = Checkerboard(
        d,
        faces,
        tuple(colors[fi] for fi in range(len(faces))),
        face_at_corner,
    )
    for ci in range(d.n):
        cb.corner_pair_of_color(ci, 0)  # validates the 2+2 corner pattern
    return cb


# ---------------------------------------------------------------------------
# orientation


@dataclass(frozen=True)
class OrientedDiagram:
    """A diagram with consistently propagated strand orientations.

    `arc_head[a]` is the half-edge the arc points INTO. `over_in_slot[ci]` is
    1 or 3: the slot where the over-strand enters.  `signs[ci]` follows the
    right-hand convention: +1 exactly when the over-strand runs from slot 3
    to slot 1.
    """

    diagram: Diagram
    arc_head: tuple[HalfEdge, ...]  # indexed by arc label - 1
    over_in_slot: tuple[int, ...]
    signs: tuple[int, ...]
    components: int

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def under_in_arc(self, ci: int) -> int:
        return self.diagram.crossings[ci][0]

    def under_out_arc(self, ci: int) -> int:
        return self.diagram.crossings[ci][2]

    def over_in_arc(self, ci: int) -> int:
        return self.diagram.crossings[ci][self.over_in_slot[ci]]

    def over_out_arc(self, ci: int) -> int:
        return self.diagram.crossings[ci][4 - self.over_in_slot[ci]]


@functools.lru_cache(maxsize=None)
def orient(d: Diagram) -> OrientedDiagram:
    """Propagate strand orientations.

    Under-slots fix absolute arc directions (slot 0 is incoming, slot 2
    outgoing); over-strand directions follow by continuity.  Components that
    never pass under anywhere (possible only for split-off unknotted circles,
    which valid PD codes cannot encode, or over-only link components) get a
    deterministic default direction.
    """
    n = d.n
    if n == 0:
        return OrientedDiagram(d, (), (), (), 1)
    occ = _occurrences(d)
    head: dict[int, HalfEdge] = {}

    def set_head(a: int, he: HalfEdge):
        if a in head:
            if head[a] != he:
                raise ClassificationError(
                    f"arc {a} receives conflicting orientations"
                )
        else:
            head[a] = he

    # absolute constraints from the under-strand
    for ci, c in enumerate(d.crossings):
        set_head(c[0], (ci, 0))
        u, v = occ[c[2]]
        other = v if u == (ci, 2) else u
        if other == (ci, 0) and c[0] == c[2]:  # pragma: no cover - degenerate
            raise ClassificationError("arc is both under-in and under-out")
        set_head(c[2], other)
    # propagate across over-strands until stable
    changed = True
    while changed:
        changed = False
        for ci, c in enumerate(d.crossings):
            a1, a3 = c[1], c[3]
            in1 = head.get(a1) == (ci, 1)
            out1 = a1 in head and head[a1] != (ci, 1) and (ci, 1) in occ[a1]
            in3 = head.get(a3) == (ci, 3)
            out3 = a3 in head and head[a3] != (ci, 3) and (ci, 3) in occ[a3]
            # the over strand has exactly one incoming and one outgoing arc
            if in1 and a3 not in head:
                u, v = occ[a3]
                set_head(a3, v if u == (ci, 3) else u)
                changed = True
            elif in3 and a1 not in head:
                u, v = occ[a1]
                set_head(a1, v if u == (ci, 1) else u)
                changed = True
            elif out1 and a3 not in head:
                set_head(a3, (ci, 3))
                changed = True
            elif out3 and a1 not in head:
                set_head(a1, (ci, 1))
                changed = True
    # deterministic default for any leftover (over-everywhere) components
    for a in sorted(occ):
        if a not in head:
            head[a] = max(occ[a])
    # verify per-crossing consistency and read off over direction / sign
    over_in = []
    signs = []
    for ci, c in enumerate(d.crossings):
        if head[c[0]] != (ci, 0):
            raise ClassificationError(f"under-in arc at crossing {ci} misdirected")
        if head[c[2]] == (ci, 2):
            raise ClassificationError(f"under-out arc at crossing {ci} misdirected")
        in1 = head[c[1]] == (ci, 1)
        in3 = head[c[3]] == (ci, 3)
        if in1 == in3:
            raise ClassificationError(
                f"over-strand at crossing {ci} lacks a consistent direction"
            )
        over_in.append(1 if in1 else 3)
        signs.append(1 if in3 else -1)
    # strand components: union arcs joined through crossings
    parent = {a: a for a in occ}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for ci, c in enumerate(d.crossings):
        for x, y in ((c[0], c[2]), (c[1], c[3])):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    components = len({find(a) for a in occ})
    arc_head = tuple(head[a] for a in range(1, 2 * n + 1))
    return OrientedDiagram(d, arc_head, tuple(over_in), tuple(signs), components)


def is_alternating(d: Diagram) -> bool:
    """True when every strand alternates over/under passages (cyclically).

    Vacuously true for 0 or 1 crossings.
    """
    if d.n == 0:
        return True
    visited: set[HalfEdge] = set()
    for ci in range(d.n):
        for start_slot in range(4):
            if (ci, start_slot) in visited:
                continue
            roles = []
            cur = (ci, start_slot)  # entering the crossing through this slot
            while cur not in visited:
                visited.add(cur)
                c, s = cur
                out = (c, (s + 2) % 4)
                visited.add(out)
                roles.append(s % 2 == 0)  # True = under passage
                cur = _mate(d, out)
            for i in range(len(roles)):
                if roles[i] == roles[(i + 1) % len(roles)]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Seifert smoothing and speciality


def seifert_circle_partition(od: OrientedDiagram) -> frozenset[frozenset[int]]:
    """Partition of arcs into Seifert circles (oriented smoothing)."""
    d = od.diagram
    if d.n == 0:
        return frozenset()
    parent = {a: a for a in range(1, 2 * d.n + 1)}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for ci, c in enumerate(d.crossings):
        if od.over_in_slot[ci] == 3:
            union(c[0], c[1])  # channels through corners 0 and 2
            union(c[3], c[2])
        else:
            union(c[0], c[3])  # channels through corners 1 and 3
            union(c[1], c[2])
    groups: dict[int, set[int]] = {}
    for a in parent:
        groups.setdefault(find(a), set()).add(a)
    return frozenset(frozenset(g) for g in groups.values())


def seifert_stats(od: OrientedDiagram) -> tuple[int, int]:
    """(number of Seifert circles, genus of the Seifert-algorithm surface)."""
    d = od.diagram
    if d.n == 0:
        return 1, 0
    circles = len(seifert_circle_partition(od))
    num = 2 + d.n - circles - od.components
    if num % 2:
        raise InconsistencyError("Seifert surface Euler characteristic is odd")
    return circles, num // 2


def smoothing_corner_pair(sign: int) -> tuple[int, int]:
    """Corners through which the oriented smoothing channels pass."""
    return (0, 2) if sign == 1 else (1, 3)


@dataclass(frozen=True)
class SpecialityReport:
    is_alternating: bool
    is_special: bool
    orientable_color: int | None
    uniform_sign: int | None
    mirror_applied: bool = False

    def to_json(self) -> dict:
        return {
            "is_alternating": self.is_alternating,
            "is_special": self.is_special,
            "orientable_color": self.orientable_color,
            "uniform_sign": self.uniform_sign,
            "mirror_applied": self.mirror_applied,
        }


def classify_special(od: OrientedDiagram) -> SpecialityReport:
    """Is the diagram special (Seifert circles = one color class's faces)?

    Two independent routes are evaluated: (a) the Seifert circle partition is
    compared against both checkerboard color classes, and (b) for alternating
    diagrams, speciality is equivalent to all crossing signs being equal.
    Disagreement raises InconsistencyError.  Multi-component input is
    rejected.
    """
    d = od.diagram
    if od.components != 1:
        raise ClassificationError(
            f"expected a knot, got {od.components} components"
        )
    alt = is_alternating(d)
    if d.n == 0:
        # 0-crossing unknot: special by convention, sign +1 by convention
        return SpecialityReport(True, True, 0, 1)
    cb = checkerboard(d)
    seifert = seifert_circle_partition(od)
    orientable_color: int | None = None
    for color in (0, 1):
        faces_arcs = frozenset(
            cb.arcs_by_face(fi)
            for fi in range(len(cb.faces))
            if cb.colors[fi] == color
        )
        if faces_arcs == seifert:
            orientable_color = color
            break
    special_a = orientable_color is not None
    uniform = od.signs[0] if all(s == od.signs[0] for s in od.signs) else None
    if alt:
        special_b = uniform is not None
        if special_a != special_b:
            raise InconsistencyError(
                "speciality routes disagree: faces-vs-Seifert says "
                f"{special_a}, uniform-sign says {special_b}"
            )
    return SpecialityReport(
        is_alternating=alt,
        is_special=special_a,
        orientable_color=orientable_color,
        uniform_sign=uniform if special_a else uniform,
    )


# ---------------------------------------------------------------------------
# mirroring


def mirror_diagram(d: Diagram) -> Diagram:
    """Swap over- and under-strands at every crossing.

    The tuple for each crossing is rotated so the old over-in arc becomes the
    new under-in arc; arc directions are preserved, all crossing signs flip.
    """
    od = orient(d)
    out = []
    for ci, c in enumerate(d.crossings):
        k = od.over_in_slot[ci]
        out.append((c[k], c[(k + 1) % 4], c[(k + 2) % 4], c[(k + 3) % 4]))
    return build_diagram(out)


# ---------------------------------------------------------------------------
# connected sum factorization (implementation continues in this module but
# depends on the Tait graph; imported lazily to avoid a cycle)


def connected_sum_factors(d: Diagram) -> tuple[Diagram, ...]:
    """Split an alternating diagram into its diagrammatic prime summands.

    Factors correspond to the blocks of a Tait graph; each factor diagram is
    rebuilt from its block's plane subgraph with the parent's alternating
    handedness, so factors of a special alternating diagram stay special with
    the same uniform sign.  Crossing counts add up to the input's.
    """
    from .medial import rebuild_factors

    if not is_alternating(d):
        raise ClassificationError(
            "connected-sum factorization requires an alternating diagram"
        )
    if d.n == 0:
        return (d,)
    return rebuild_factors(d)
