"""Exact arithmetic for integral quadratic forms.

Everything here works on small Gram matrices (rank <= 12 by default) with
integer entries, using `fractions.Fraction` wherever division shows up, so all
answers are exact.  The two nontrivial operations are

* `indecomposable_summands` -- split a definite lattice into its orthogonally
  indecomposable summands.  By Eichler's uniqueness theorem this decomposition
  is unique up to reordering, and it can be computed from short vectors alone:
  call a nonzero vector v *decomposable* if v = x + y with x, y nonzero and
  x.y = 0.  Decomposable vectors split into strictly shorter pieces, so the
  indecomposable vectors of norm <= B span the lattice whenever B bounds the
  norms of some basis.  Grouping indecomposable vectors by the transitive
  closure of "non-orthogonal" yields exactly the indecomposable summands.

* `isometric` -- decide whether two definite forms are equivalent over the
  integers, by backtracking over images of basis vectors among short vectors
  of matching norm.  A found witness U satisfies U^T A U = B and is
  automatically unimodular because det A = det B != 0.

Both return explicit integer basis-change witnesses that are re-verified
before being handed back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math

from .errors import (
    DegenerateFormError,
    InconsistencyError,
    RankCapExceededError,
)

DEFAULT_RANK_CAP = 12

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GramForm:
    """Symmetric integer Gram matrix plus a provenance note.

    The matrix is stored row-major as nested tuples and validated for symmetry
    on construction.  `provenance` is a free-form label ("flow lattice of ...")
    that is carried through reports but ignored by comparisons.
    """

    matrix: Matrix
    provenance: str | None = field(default=None, compare=False)

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        for row in m:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def det(self) -> int:
        return det_int(self.matrix)

    def to_json(self) -> dict:
        out = {"rank": self.rank, "matrix": [list(r) for r in self.matrix]}
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out


@dataclass(frozen=True)
class Decomposition:
    """Orthogonal splitting of a definite form.

    `witness` is a unimodular integer matrix U (rows of tuples, columns = new
    basis vectors in the original coordinates) such that U^T Q U is block
    diagonal with blocks `summands`, in order.
    """

    summands: tuple[GramForm, ...]
    witness: Matrix

    def to_json(self) -> dict:
        return {
            "summands": [s.to_json() for s in self.summands],
            "witness": [list(r) for r in self.witness],
        }


# ---------------------------------------------------------------------------
# small exact matrix helpers


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a, b) -> list[list]:
    if not a or not b:
        return []
    cols = len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for i in range(len(a))
    ]


def det_int(m) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def congruence(u_cols, gram) -> list[list[int]]:
    """U^T G U where the columns of `u_cols` are the new basis vectors."""
    ut = transpose(u_cols)
    return mat_mul(mat_mul(ut, [list(r) for r in gram]), u_cols)


# ---------------------------------------------------------------------------
# inertia / definiteness / signature


def inertia(matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix.

    Computed by congruence diagonalization over the rationals (Sylvester's law
    of inertia), never numerically.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    pos = neg = zero = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                # all remaining diagonal entries vanish; manufacture a pivot
                # from an off-diagonal entry via e_i += e_j, or conclude the
                # rest of the form is zero.
                found = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if a[i][j] != 0:
                            found = (i, j)
                            break
                    if found:
                        break
                if found is None:
                    zero += n - k
                    break
                i, j = found
                for col in range(n):
                    a[i][col] += a[j][col]
                for row in a:
                    row[i] += row[j]
                if i != k:
                    a[k], a[i] = a[i], a[k]
                    for row in a:
                        row[k], row[i] = row[i], row[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for col in range(n):
                    a[i][col] -= f * a[k][col]
                for row in a:
                    row[i] -= f * row[k]
        k += 1
    return pos, neg, zero


def definiteness(q: GramForm) -> str:
    """Classify as 'positive_definite' | 'negative_definite' | 'indefinite'
    | 'degenerate'.  The empty form counts as positive definite."""
    pos, neg, zero = inertia(q.matrix)
    if zero:
        return "degenerate"
    if neg == 0:
        return "positive_definite"
    if pos == 0:
        return "negative_definite"
    return "indefinite"


def signature(q: GramForm) -> int:
    """Signature (positive minus negative inertia); raises on a degenerate form."""
    pos, neg, zero = inertia(q.matrix)
    if zero:
        raise DegenerateFormError(
            f"form of rank {q.rank} has {zero}-dimensional kernel"
        )
    return pos - neg


# ---------------------------------------------------------------------------
# basis reduction


def greedy_reduce(gram) -> tuple[list[list[int]], list[list[int]]]:
    """Greedy pairwise size reduction of a positive definite Gram matrix.

    Repeatedly replaces b_j by b_j + t*b_i (t the nearest integer to
    -G_ij/G_ii) whenever that strictly shrinks |b_j|^2.  Returns
    (reduced_gram, u_cols) with reduced = U^T G U; U unimodular by
    construction.  Not LLL -- just enough to make the max diagonal entry a
    reasonable enumeration bound.
    """
    n = len(gram)
    g = [list(row) for row in gram]
    u = identity(n)
    guard = 0
    improved = True
    while improved:
        improved = False
        guard += 1
        if guard > 10000:  # pragma: no cover - safety net
            raise RuntimeError("greedy reduction failed to terminate")
        for i in range(n):
            for j in range(n):
                if i == j or g[i][i] == 0:
                    continue
                t = -round(Fraction(g[i][j], g[i][i]))
                if t == 0:
                    continue
                new_jj = g[j][j] + 2 * t * g[i][j] + t * t * g[i][i]
                if new_jj >= g[j][j]:
                    continue
                # b_j += t * b_i
                for r in range(n):
                    u[r][j] += t * u[r][i]
                for k in range(n):
                    g[k][j] += t * g[k][i]
                for k in range(n):
                    g[j][k] += t * g[i][k]
                improved = True
    return g, u


# ---------------------------------------------------------------------------
# short vector enumeration (Fincke-Pohst on an exact LDL^T factorization)


def _ldl(gram) -> tuple[list[list[Fraction]], list[Fraction]]:
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    L = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for k in range(n):
        d[k] = a[k][k] - sum(L[k][j] * L[k][j] * d[j] for j in range(k))
        if d[k] <= 0:
            raise ValueError("LDL^T requires a positive definite matrix")
        for i in range(k + 1, n):
            L[i][k] = (a[i][k] - sum(L[i][j] * L[k][j] * d[j] for j in range(k))) / d[k]
    return L, d


def short_vectors(gram, bound: int) -> list[tuple[tuple[int, ...], int]]:
    """All nonzero vectors x (up to sign) with x^T G x <= bound, G positive
    definite.  Returns (vector, norm) pairs sorted by (norm, vector); of every
    +-pair only the lexicographically larger representative is kept."""
    n = len(gram)
    if n == 0 or bound <= 0:
        return []
    L, d = _ldl(gram)
    out: list[tuple[tuple[int, ...], int]] = []
    x = [0] * n

    def norm_of(v) -> int:
        return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if any(x):
                v = tuple(x)
                if v > tuple(-c for c in v):
                    out.append((v, norm_of(v)))
            return
        c = sum(L[j][i] * x[j] for j in range(i + 1, n))
        # d[i] * (x_i + c)^2 <= remaining
        r2 = remaining / d[i]
        r_approx = math.sqrt(float(r2)) if r2 > 0 else 0.0
        lo = math.floor(-float(c) - r_approx) - 1
        hi = math.ceil(-float(c) + r_approx) + 1
        for xi in range(lo, hi + 1):
            term = d[i] * (xi + c) ** 2
            if term <= remaining:
                x[i] = xi
                rec(i - 1, remaining - term)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


# ---------------------------------------------------------------------------
# integer row space (Hermite-style) basis


def lattice_row_basis(vectors) -> list[list[int]]:
    """Basis of the sublattice of Z^n generated by `vectors`, as echelon rows.

    Plain integer row reduction with gcd pivoting; fine at this scale.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < n:
        # Euclid on the column until at most one nonzero entry survives.
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(n):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if nz:
            p = nz[0]
            if p[col] < 0:
                for k in range(n):
                    p[k] = -p[k]
            basis.append(p)
            rows = [r for r in rows if r is not p]
        col += 1
    return basis


# ---------------------------------------------------------------------------
# indecomposable orthogonal summands


def _check_rank_cap(rank: int, rank_cap: int):
    if rank > rank_cap:
        raise RankCapExceededError(rank, rank_cap)


def indecomposable_summands(
    q: GramForm, rank_cap: int = DEFAULT_RANK_CAP
) -> Decomposition:
    """Split a definite form into its indecomposable orthogonal summands.

    Accepts positive or negative definite input (the latter is negated
    internally and the summands are negated back).  The returned witness U is
    unimodular and satisfies: U^T Q U is block diagonal with the summand
    blocks in order.  Raises DegenerateFormError / ValueError on forms that
    are not definite and RankCapExceededError above the cap.
    """
    n = q.rank
    _check_rank_cap(n, rank_cap)
    if n == 0:
        return Decomposition(summands=(), witness=())
    kind = definiteness(q)
    if kind == "degenerate":
        raise DegenerateFormError("cannot decompose a degenerate form")
    if kind == "indefinite":
        raise ValueError("indecomposable_summands requires a definite form")
    sign = 1 if kind == "positive_definite" else -1
    g0 = [[sign * x for x in row] for row in q.matrix]

    g_red, u_red = greedy_reduce(g0)
    bound = max(g_red[i][i] for i in range(n))
    shorts = short_vectors(g_red, bound)

    def dot(a, b) -> int:
        return sum(a[i] * g_red[i][j] * b[j] for i in range(n) for j in range(n))

    # filter to indecomposable vectors: v is decomposable iff v = x + (v-x)
    # with both parts nonzero and orthogonal; then |x|^2 < |v|^2, so testing
    # x over the (sign-expanded) short list is exhaustive.
    signed = [v for v, _ in shorts] + [tuple(-c for c in v) for v, _ in shorts]
    indec: list[tuple[int, ...]] = []
    for v, nv in shorts:
        decomposable = False
        for x in signed:
            nx = dot(x, x)
            if nx >= nv:
                continue
            y = tuple(v[i] - x[i] for i in range(n))
            if any(y) and dot(x, y) == 0:
                decomposable = True
                break
        if not decomposable:
            indec.append(v)

    # union-find clustering by non-orthogonality
    parent = list(range(len(indec)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(indec)):
        for j in range(i + 1, len(indec)):
            if dot(indec[i], indec[j]) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    clusters: dict[int, list[tuple[int, ...]]] = {}
    for i, v in enumerate(indec):
        clusters.setdefault(find(i), []).append(v)
    ordered = sorted(clusters.values(), key=lambda c: min(c))

    new_rows: list[list[int]] = []
    sizes: list[int] = []
    for cluster in ordered:
        basis = lattice_row_basis(cluster)
        sizes.append(len(basis))
        new_rows.extend(basis)
    if sum(sizes) != n:  # pragma: no cover - guarded by the theory
        raise InconsistencyError(
            f"indecomposable vectors span rank {sum(sizes)} != {n}"
        )

    u_cols = mat_mul(u_red, transpose(new_rows))  # columns = final basis
    if abs(det_int(u_cols)) != 1:  # pragma: no cover - guarded by the theory
        raise InconsistencyError("decomposition witness is not unimodular")
    final = congruence(u_cols, q.matrix)

    # verify block-diagonal structure and carve out the summands
    summands = []
    offset = 0
    for size in sizes:
        block = tuple(
            tuple(final[offset + i][offset + j] for j in range(size))
            for i in range(size)
        )
        summands.append(GramForm(block, provenance=q.provenance))
        offset += size
    offset_i = 0
    for bi, si in enumerate(sizes):
        offset_j = 0
        for bj, sj in enumerate(sizes):
            if bi != bj:
                for i in range(si):
                    for j in range(sj):
                        if final[offset_i + i][offset_j + j] != 0:
                            raise InconsistencyError(
                                "summands are not orthogonal"
                            )  # pragma: no cover
            offset_j += sj
        offset_i += si

    witness = tuple(tuple(row) for row in u_cols)
    return Decomposition(summands=tuple(summands), witness=witness)


# ---------------------------------------------------------------------------
# isometry testing


def isometric(
    q1: GramForm, q2: GramForm, rank_cap: int = DEFAULT_RANK_CAP
) -> tuple[bool, Matrix | None]:
    """Decide Z-equivalence of two positive definite forms.

    Returns (True, U) with U^T Q1 U = Q2 (U unimodular, rows of tuples), or
    (False, None).  Exhaustive backtracking over short vectors of Q1 whose
    norms match diag(Q2); completeness follows because any isometry must send
    the i-th basis vector of Q2 to a vector of norm Q2[i][i].
    """
    n1, n2 = q1.rank, q2.rank
    if n1 != n2:
        return False, None
    _check_rank_cap(n1, rank_cap)
    if n1 == 0:
        return True, ()
    if definiteness(q1) != "positive_definite" or definiteness(q2) != "positive_definite":
        raise ValueError("isometric() compares positive definite forms")
    if q1.det() != q2.det():
        return False, None

    n = n1
    g1 = q1.matrix
    target = q2.matrix
    bound = max(target[i][i] for i in range(n))
    shorts = short_vectors(g1, bound)
    by_norm: dict[int, list[tuple[int, ...]]] = {}
    for v, nv in shorts:
        by_norm.setdefault(nv, []).append(v)
        by_norm[nv].append(tuple(-c for c in v))

    def dot(a, b) -> int:
        return sum(a[i] * g1[i][j] * b[j] for i in range(n) for j in range(n))

    chosen: list[tuple[int, ...]] = []

    def rec(k: int) -> bool:
        if k == n:
            return True
        for cand in by_norm.get(target[k][k], ()):
            if all(dot(cand, chosen[j]) == target[k][j] for j in range(k)):
                chosen.append(cand)
                if rec(k + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        return False, None
    u_cols = transpose(chosen)  # columns = images
    assert congruence(u_cols, g1) == [list(r) for r in target]
    assert abs(det_int(u_cols)) == 1
    return True, tuple(tuple(row) for row in u_cols)
