"""Bigraded homology tables for thin knots.

For an alternating knot the whole bigraded group is forced by the Alexander
polynomial and the signature: writing Delta = sum a_s t^s, there is rank
|a_s| at Alexander grading s and Maslov grading s + sigma/2, everything
sitting in the single delta-grading sigma/2.  Ranks are F_2 dimensions.

The construction refuses inputs that cannot come from a thin knot: the signs
of the coefficients must alternate the right way for the graded Euler
characteristic to reproduce Delta, and then the total rank automatically
equals |Delta(-1)|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistencyError
from .invariants import LaurentPolynomial


@dataclass(frozen=True)
class HfkTable:
    # (alexander grading, maslov grading) -> rank, sorted by alexander desc
    entries: tuple[tuple[int, Fraction, int], ...]
    delta_grading: Fraction

    def rank_at(self, alexander: int, maslov) -> int:
        m = Fraction(maslov)
        for a, mm, r in self.entries:
            if a == alexander and mm == m:
                return r
        return 0

    def total_rank(self) -> int:
        return sum(r for _, _, r in self.entries)

    def euler_characteristic(self) -> LaurentPolynomial:
        coeffs: dict[int, int] = {}
        for a, m, r in self.entries:
            if m.denominator != 1:
                raise InconsistencyError("half-integer Maslov grading on a knot table")
            sign = -1 if int(m) % 2 else 1
            coeffs[a] = coeffs.get(a, 0) + sign * r
        return LaurentPolynomial.from_dict(coeffs)

    def to_json(self) -> dict:
        def enc(q: Fraction):
            return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        return {
            "delta_grading": enc(self.delta_grading),
            "entries": [
                {"alexander": a, "maslov": enc(m), "rank": r}
                for a, m, r in self.entries
            ],
        }


def thin_hfk(delta: LaurentPolynomial, sigma: int) -> HfkTable:
    """Thin table for a knot with Alexander polynomial `delta`, signature `sigma`.

    Raises InconsistencyError when (delta, sigma) cannot belong to a thin
    knot: delta must be normalized (symmetric, delta(1) = 1), sigma even,
    and the coefficient signs must make the graded Euler characteristic work
    out.
    """
    if sigma % 2:
        raise InconsistencyError(f"signature {sigma} is odd")
    if not delta or delta(1) != 1 or not delta.is_symmetric():
        raise InconsistencyError(f"Alexander polynomial {delta} is not normalized")
    half = sigma // 2
    entries = []
    for s, a_s in delta.coeffs:
        maslov = Fraction(s + half)
        want_sign = -1 if (s + half) % 2 else 1
        if (1 if a_s > 0 else -1) != want_sign:
            raise InconsistencyError(
                f"coefficient {a_s} t^{s} has the wrong sign for a thin knot "
                f"with signature {sigma}"
            )
        entries.append((s, maslov, abs(a_s)))
    table = HfkTable(tuple(entries), Fraction(half))
    if table.euler_characteristic() != delta:
        raise InconsistencyError("graded Euler characteristic failed to rebuild input")
    det = delta(-1)
    if table.total_rank() != abs(int(det)):
        raise InconsistencyError(
            f"total rank {table.total_rank()} differs from determinant {abs(int(det))}"
        )
    return table


def hfk_isomorphic(a: HfkTable, b: HfkTable) -> bool:
    """Equality of the bigraded rank functions."""
    return sorted(a.entries) == sorted(b.entries)
