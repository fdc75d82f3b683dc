"""Classical invariants computed from diagram combinatorics.

Everything here is exact integer / rational arithmetic:

* Goeritz matrices for both checkerboard colors, and the knot signature via
  the Goeritz matrix corrected by the misoriented-crossing count (computed
  for both surface choices and required to agree).
* A Seifert matrix for special diagrams, built on the checkerboard surface
  realized by Seifert's algorithm: the flow-lattice cycle basis gives the
  curves, half-twisted bands contribute the symmetric part, and chord
  crossings inside the disks contribute the antisymmetric part.
* The Alexander polynomial by two independent backends (Seifert matrix /
  Wirtinger-Fox calculus), with determinant, genus and fiberedness data
  derived from it.

Polynomial determinants are computed by exact interpolation: evaluate the
matrix at enough rational points, take fraction Gaussian elimination, and
Lagrange-interpolate the coefficients.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

from .diagram import (
    OrientedDiagram,
    SpecialityReport,
    checkerboard,
    classify_special,
    seifert_stats,
    smoothing_corner_pair,
)
from .errors import ClassificationError, InconsistencyError
from .lattice import GramForm, Matrix, det_int
from .lattice import signature as form_signature
from .tait import CycleBasis, TaitGraph, flow_lattice, tait_graph

# ---------------------------------------------------------------------------
# Laurent polynomials over the integers


@dataclass(frozen=True)
class LaurentPolynomial:
    """An integer Laurent polynomial, coefficients stored sparsely.

    coeffs is a tuple of (exponent, coefficient) pairs with nonzero
    coefficients, sorted by decreasing exponent.
    """

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "LaurentPolynomial":
        return cls(tuple(sorted(((e, c) for e, c in d.items() if c), reverse=True)))

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls.from_dict({0: int(c)})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls.constant(1)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, exp: int) -> int:
        for e, c in self.coeffs:
            if e == exp:
                return c
        return 0

    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.coeffs[0][0]

    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.coeffs[-1][0]

    def span(self) -> int:
        return self.max_exp() - self.min_exp() if self.coeffs else 0

    def leading_coefficient(self) -> int:
        return self.coeffs[0][1] if self.coeffs else 0

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e + k, c) for e, c in self.coeffs))

    def reciprocal(self) -> "LaurentPolynomial":
        """The substitution t -> 1/t."""
        return LaurentPolynomial.from_dict({-e: c for e, c in self.coeffs})

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e, -c) for e, c in self.coeffs))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = {e: c for e, c in self.coeffs}
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.from_dict(d)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial.from_dict({e: c * other for e, c in self.coeffs})
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial.from_dict(d)

    __rmul__ = __mul__

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self.coeffs), Fraction(0))

    def is_symmetric(self) -> bool:
        return self == self.reciprocal()

    def divides(self, other: "LaurentPolynomial") -> bool:
        """True when other = q * self with q an integer Laurent polynomial."""
        if not self.coeffs:
            return not other.coeffs
        if not other.coeffs:
            return True
        num = [Fraction(other.coefficient(e)) for e in range(other.min_exp(), other.max_exp() + 1)]
        den = [Fraction(self.coefficient(e)) for e in range(self.min_exp(), self.max_exp() + 1)]
        if len(num) < len(den):
            return False
        quot = [Fraction(0)] * (len(num) - len(den) + 1)
        rem = list(num)
        for k in range(len(quot) - 1, -1, -1):
            q = rem[k + len(den) - 1] / den[-1]
            quot[k] = q
            for i, dc in enumerate(den):
                rem[k + i] -= q * dc
        if any(rem):
            return False
        return all(q.denominator == 1 for q in quot)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.coeffs):
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                term = var if mag == 1 else f"{mag}{var}"
            if i == 0:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    _TERM_RE = re.compile(r"^([+-]?\d*)(t(?:\^(-?\d+))?)?$")

    @classmethod
    def from_string(cls, text: str) -> "LaurentPolynomial":
        s = text.replace(" ", "")
        if not s or s == "0":
            return cls(())
        s = s.replace("^-", "^~").replace("-", "+-").replace("^~", "^-")
        d: dict[int, int] = {}
        for tok in s.split("+"):
            if not tok:
                continue
            m = cls._TERM_RE.match(tok)
            if not m or (m.group(1) in ("", "+", "-") and not m.group(2)):
                raise ValueError(f"bad Laurent polynomial term {tok!r} in {text!r}")
            coeff_s, has_t, exp_s = m.group(1), m.group(2), m.group(3)
            coeff = int(coeff_s + "1") if coeff_s in ("", "+", "-") else int(coeff_s)
            exp = (int(exp_s) if exp_s else 1) if has_t else 0
            d[exp] = d.get(exp, 0) + coeff
        return cls.from_dict(d)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.coeffs]


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _interpolate_int_poly(xs: list[int], ys: list[Fraction]) -> list[int]:
    """Integer coefficients (ascending degree) of the polynomial through the points.

    Plain Lagrange interpolation over Fractions; the values must come from a
    polynomial of degree < len(xs) with integer coefficients, otherwise this
    raises InconsistencyError.
    """
    n = len(xs)
    acc = [Fraction(0)] * n
    for i in range(n):
        numer = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            new = [Fraction(0)] * (len(numer) + 1)
            for k, c in enumerate(numer):
                new[k] -= xs[j] * c
                new[k + 1] += c
            numer = new
            denom *= xs[i] - xs[j]
        scale = ys[i] / denom
        for k, c in enumerate(numer):
            acc[k] += scale * c
    out = []
    for c in acc:
        if c.denominator != 1:
            raise InconsistencyError(f"interpolated coefficient {c} is not an integer")
        out.append(int(c))
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# Goeritz matrices and the signature

def goeritz_matrix(od_or_diagram, color: int) -> GramForm:
    """Goeritz matrix of the faces of the given color (last face deleted).

    Vertices are the faces of that color; each crossing where those faces sit
    in the corner pair (0, 2) counts +1, in (1, 3) counts -1; off-diagonal
    entries are minus those counts and diagonal entries make rows sum to zero.
    The symmetric matrix on all faces is singular, so the row and column of
    the highest-index face are dropped.
    """
    d = getattr(od_or_diagram, "diagram", od_or_diagram)
    cb = checkerboard(d)
    verts = [fi for fi in range(len(cb.faces)) if cb.colors[fi] == color]
    idx = {fi: i for i, fi in enumerate(verts)}
    m = len(verts)
    full = [[0] * m for _ in range(m)]
    for ci in range(d.n):
        pair = cb.corner_pair_of_color(ci, color)
        u = idx[cb.face_at_corner[ci][pair[0]]]
        v = idx[cb.face_at_corner[ci][pair[1]]]
        eta = 1 if pair == (0, 2) else -1
        if u != v:
            full[u][v] -= eta
            full[v][u] -= eta
    for i in range(m):
        full[i][i] = -sum(full[i][j] for j in range(m) if j != i)
    reduced = tuple(tuple(row[: m - 1]) for row in full[: m - 1])
    return GramForm(reduced, provenance=f"Goeritz matrix on color-{color} faces")


def _correction_term(od: OrientedDiagram, surface_color: int) -> int:
    """Sum of signs of crossings whose smoothing disagrees with the surface color."""
    cb = checkerboard(od.diagram)
    mu = 0
    for ci in range(od.diagram.n):
        if cb.corner_pair_of_color(ci, surface_color) != smoothing_corner_pair(od.signs[ci]):
            mu += od.signs[ci]
    return mu


def gl_signature(od: OrientedDiagram) -> int:
    """Signature of the knot: sig(Goeritz of the other color) minus the correction.

    Computed for both choices of spanning-surface color; the two must agree.
    """
    if od.diagram.n == 0:
        return 0
    results = []
    for surface_color in (0, 1):
        gm = goeritz_matrix(od.diagram, 1 - surface_color)
        sig = form_signature(gm)
        results.append(sig - _correction_term(od, surface_color))
    if results[0] != results[1]:
        raise InconsistencyError(
            f"signature routes disagree: {results[0]} (white surface) vs {results[1]} (black surface)"
        )
    return results[0]


# ---------------------------------------------------------------------------
# Seifert matrix for special diagrams


@dataclass(frozen=True)
class SeifertData:
    """Seifert matrix of a special diagram plus the basis it was built on."""

    matrix: Matrix
    surface_color: int
    gram: GramForm
    tait: TaitGraph
    basis: CycleBasis


def _bipartition(g: TaitGraph) -> tuple[int, ...]:
    """Two-color the vertices across edges; raises if an odd cycle exists."""
    cls = [-1] * g.num_vertices
    cls[0] = 0
    queue = [0]
    adj: dict[int, list[int]] = {v: [] for v in range(g.num_vertices)}
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    while queue:
        u = queue.pop()
        for v in adj[u]:
            if cls[v] == -1:
                cls[v] = 1 - cls[u]
                queue.append(v)
            elif cls[v] == cls[u]:
                raise InconsistencyError(
                    "checkerboard graph of the orientable color is not bipartite"
                )
    return tuple(cls)


def _chord_cross_sign(n_slots: int, a1: int, b1: int, a2: int, b2: int) -> int:
    """0 if the chords a1->b1 and a2->b2 of a circle with n_slots marked
    points do not interleave; otherwise +1 when the counterclockwise order
    is a1, a2, b1, b2 and -1 when it is a1, b2, b1, a2."""
    rel = lambda x: (x - a1) % n_slots
    u, p, q = rel(b1), rel(a2), rel(b2)
    if (p < u) == (q < u):
        return 0
    return 1 if p < u else -1


def seifert_matrix_special(od: OrientedDiagram) -> SeifertData:
    """Seifert matrix of a special diagram on its checkerboard Seifert surface.

    The surface is the orientable checkerboard color: its faces are the disks
    and the crossings are half-twisted bands.  A basis of H_1 is the
    fundamental-cycle basis of the flow lattice of that color's graph.  For
    basis curves x_i, x_j the linking number of pushoffs decomposes into a
    band part (one term per shared band, -sign(crossing) per coincidence) and
    a disk part (chord crossings inside each disk, signed by the disk's class
    in the bipartition); V is half of (band part + disk part), which is
    integral exactly when the diagram is special.
    """
    rep = classify_special(od)
    if not rep.is_special:
        raise ClassificationError("Seifert matrix construction requires a special diagram")
    d = od.diagram
    cb = checkerboard(d)
    g = tait_graph(cb, rep.orientable_color)
    gram, basis = flow_lattice(g)
    r = len(basis.vectors)
    if r == 0:
        return SeifertData((), rep.orientable_color, gram, g, basis)

    # Being special means the orientable color occupies the smoothing corner
    # pair at every crossing, which is the same as each edge sign matching
    # the crossing sign.
    for e in range(d.n):
        expected = 1 if smoothing_corner_pair(od.signs[e]) == (0, 2) else -1
        if g.edge_signs[e] != expected:
            raise InconsistencyError(
                f"edge {e} of the orientable color has sign {g.edge_signs[e]} "
                f"but the crossing smooths along {smoothing_corner_pair(od.signs[e])}"
            )
    cls = _bipartition(g)

    # Band part: crossings shared by two basis curves.
    tau = [-od.signs[e] for e in range(d.n)]
    band = [
        [
            sum(tau[e] * basis.vectors[i][e] * basis.vectors[j][e] for e in range(d.n))
            for j in range(r)
        ]
        for i in range(r)
    ]

    # Disk part: inside each disk the basis curves appear as chords between
    # band attachment slots.  Slots are ordered by the rotation system, with
    # the curves using an edge fanned out in basis order at both ends.
    users = [
        tuple(i for i in range(r) if basis.vectors[i][e] != 0) for e in range(d.n)
    ]
    slot_pos: list[dict[tuple[int, int], int]] = []
    slot_count: list[int] = []
    for v in range(g.num_vertices):
        pos: dict[tuple[int, int], int] = {}
        k = 0
        for (e, end) in g.rotations[v]:
            for cyc in users[e]:
                pos[(e, cyc)] = k
                k += 1
        slot_pos.append(pos)
        slot_count.append(k)

    legs: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(g.num_vertices)}
    for i in range(r):
        walk = basis.walks[i]
        L = len(walk)
        for j in range(L):
            e_in, s_in = walk[j]
            e_out, _s_out = walk[(j + 1) % L]
            u, v = g.edges[e_in]
            at = v if s_in == 1 else u
            legs[at].append((i, slot_pos[at][(e_in, i)], slot_pos[at][(e_out, i)]))

    disk = [[0] * r for _ in range(r)]
    for v in range(g.num_vertices):
        eps = 1 if cls[v] == 0 else -1
        here = legs[v]
        nv = slot_count[v]
        for a in range(len(here)):
            i, a1, b1 = here[a]
            for b in range(a + 1, len(here)):
                j, a2, b2 = here[b]
                if i == j:
                    continue
                s = _chord_cross_sign(nv, a1, b1, a2, b2)
                if s:
                    disk[i][j] += eps * s
                    disk[j][i] -= eps * s

    V = []
    for i in range(r):
        row = []
        for j in range(r):
            total = band[i][j] + disk[i][j]
            if total % 2:
                raise InconsistencyError(
                    f"linking count for basis curves {i},{j} is odd ({total})"
                )
            row.append(total // 2)
        V.append(tuple(row))
    V = tuple(V)

    skew = tuple(
        tuple(V[i][j] - V[j][i] for j in range(r)) for i in range(r)
    )
    if abs(det_int(skew)) != 1:
        raise InconsistencyError(
            "Seifert pairing is not unimodularly skew: the surface basis is broken"
        )
    return SeifertData(V, rep.orientable_color, gram, g, basis)


# ---------------------------------------------------------------------------
# Alexander polynomial


def _normalize_alexander(raw: LaurentPolynomial, source: str) -> LaurentPolynomial:
    if not raw:
        raise InconsistencyError(f"{source}: Alexander polynomial vanished")
    hi, lo = raw.max_exp(), raw.min_exp()
    if (hi + lo) % 2:
        raise InconsistencyError(f"{source}: exponent range {lo}..{hi} cannot be centered")
    centered = raw.shift(-(hi + lo) // 2)
    if not centered.is_symmetric():
        raise InconsistencyError(f"{source}: {centered} is not symmetric under t -> 1/t")
    at_one = centered(1)
    if at_one == -1:
        centered = -centered
    elif at_one != 1:
        raise InconsistencyError(f"{source}: value at t=1 is {at_one}, expected a unit")
    return centered


def alexander_via_seifert(od: OrientedDiagram) -> LaurentPolynomial:
    """det(t V - V^T), centered; only available for special diagrams."""
    sd = seifert_matrix_special(od)
    r = len(sd.matrix)
    if r == 0:
        return LaurentPolynomial.one()
    xs = list(range(2, 2 + r + 1))
    ys = []
    for x in xs:
        rows = [
            [Fraction(x * sd.matrix[i][j] - sd.matrix[j][i]) for j in range(r)]
            for i in range(r)
        ]
        ys.append(_det_fraction(rows))
    coeffs = _interpolate_int_poly(xs, ys)
    raw = LaurentPolynomial.from_dict({k: c for k, c in enumerate(coeffs)})
    return _normalize_alexander(raw, "seifert backend")


def alexander_via_wirtinger(od: OrientedDiagram) -> LaurentPolynomial:
    """Fox derivative matrix of the Wirtinger presentation, one row and one
    column deleted, determinant by interpolation."""
    d = od.diagram
    n = d.n
    if n == 0:
        return LaurentPolynomial.one()

    parent = list(range(2 * n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ci in range(n):
        c = d.crossings[ci]
        a, b = find(c[1]), find(c[3])
        if a != b:
            parent[a] = b
    reps = sorted({find(a) for a in range(1, 2 * n + 1)})
    if len(reps) != n:
        raise InconsistencyError(
            f"expected {n} overstrands for a knot diagram, found {len(reps)}"
        )
    col = {rep: i for i, rep in enumerate(reps)}

    # Row for each crossing, as integer polynomials in t.  Negative-crossing
    # rows are premultiplied by t to stay polynomial (a unit, so harmless).
    rows: list[dict[int, LaurentPolynomial]] = []
    t = LaurentPolynomial.from_dict({1: 1})
    onep = LaurentPolynomial.one()
    for ci in range(n):
        c = d.crossings[ci]
        over = col[find(c[1])]
        inc = col[find(c[0])]
        out = col[find(c[2])]
        row: dict[int, LaurentPolynomial] = {}

        def add(j: int, p: LaurentPolynomial) -> None:
            row[j] = row.get(j, LaurentPolynomial(())) + p

        if od.signs[ci] == 1:
            add(over, onep - t)
            add(inc, t)
            add(out, -onep)
        else:
            add(over, t - onep)
            add(inc, onep)
            add(out, -t)
        rows.append(row)

    size = n - 1
    if size == 0:
        return LaurentPolynomial.one()
    xs = list(range(2, 2 + size + 1))
    ys = []
    for x in xs:
        fx = Fraction(x)
        mat = [
            [rows[i].get(j, LaurentPolynomial(()))(fx) for j in range(size)]
            for i in range(size)
        ]
        ys.append(_det_fraction(mat))
    coeffs = _interpolate_int_poly(xs, ys)
    raw = LaurentPolynomial.from_dict({k: c for k, c in enumerate(coeffs)})
    return _normalize_alexander(raw, "wirtinger backend")


def alexander(od: OrientedDiagram) -> LaurentPolynomial:
    """Alexander polynomial; on special diagrams both backends run and must agree."""
    rep = classify_special(od)
    aw = alexander_via_wirtinger(od)
    if rep.is_special:
        asf = alexander_via_seifert(od)
        if asf != aw:
            raise InconsistencyError(
                f"Alexander backends disagree: seifert {asf} vs wirtinger {aw}"
            )
    return aw


# ---------------------------------------------------------------------------
# bundled invariants


@dataclass(frozen=True)
class InvariantBundle:
    speciality: SpecialityReport
    signature: int
    alexander: LaurentPolynomial
    determinant: int
    genus: int
    genus_is_exact: bool
    leading_coefficient: int
    fibered: bool | None

    def to_json(self) -> dict:
        return {
            "speciality": self.speciality.to_json(),
            "signature": self.signature,
            "alexander": self.alexander.to_json(),
            "alexander_str": str(self.alexander),
            "determinant": self.determinant,
            "genus": self.genus,
            "genus_is_exact": self.genus_is_exact,
            "leading_coefficient": self.leading_coefficient,
            "fibered": self.fibered,
        }


def invariant_bundle(od: OrientedDiagram) -> InvariantBundle:
    rep = classify_special(od)
    sig = gl_signature(od)
    alex = alexander(od)

    det_val = alex(-1)
    if det_val.denominator != 1:
        raise InconsistencyError("determinant evaluation left a fraction")
    det = abs(int(det_val))
    for color in (0, 1):
        gm = goeritz_matrix(od.diagram, color)
        gdet = abs(det_int(gm.matrix))
        if gdet != det:
            raise InconsistencyError(
                f"Goeritz determinant on color {color} is {gdet}, "
                f"but the Alexander polynomial gives {det}"
            )

    _circles, surface_genus = seifert_stats(od)
    span = alex.span()
    if span % 2:
        raise InconsistencyError(f"Alexander span {span} is odd")
    if rep.is_alternating:
        genus = span // 2
        exact = True
        if genus != surface_genus:
            raise InconsistencyError(
                f"alternating diagram surface genus {surface_genus} "
                f"differs from Alexander genus {genus}"
            )
    else:
        genus = surface_genus
        exact = False
        if span // 2 > genus:
            raise InconsistencyError(
                f"Alexander span {span} exceeds twice the surface genus {surface_genus}"
            )
    if rep.is_special and not (abs(sig) == 2 * genus == span):
        raise InconsistencyError(
            f"special diagram with |signature| {abs(sig)}, genus {genus}, span {span}"
        )

    lead = alex.leading_coefficient()
    fibered = (abs(lead) == 1) if exact else None
    return InvariantBundle(
        speciality=rep,
        signature=sig,
        alexander=alex,
        determinant=det,
        genus=genus,
        genus_is_exact=exact,
        leading_coefficient=lead,
        fibered=fibered,
    )
