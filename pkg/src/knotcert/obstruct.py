"""Certificates and obstruction reports.

Three kinds of verdict come out of here:

* band_prime_certificate: for a special alternating knot diagram, factor it
  along its connected-sum structure and re-derive, per factor, everything a
  skeptical reader needs: the orientable-color graph, its flow lattice, the
  definiteness and indecomposability of that lattice (with a unimodular
  witness), and the nonzero signature.  The lattice decomposition is
  cross-checked against the graph's block structure; those two must agree,
  so any mismatch is reported as an inconsistency rather than a mere
  failure.

* minimality_evidence: the invariant package relevant to whether a knot can
  sit strictly below another in a ribbon concordance, together with the
  sufficient conditions this library can actually certify (fibered via monic
  Alexander polynomial on an alternating diagram, prime-power leading
  coefficient, or a user-supplied two-bridge assertion).

* concordance_pair_obstructions: every violated necessary condition for
  "lower sits under upper in a ribbon concordance".  An empty list never
  means a concordance exists, only that these invariants do not rule it out.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from .diagram import (
    OrientedDiagram,
    SpecialityReport,
    checkerboard,
    classify_special,
    connected_sum_factors,
    orient,
)
from .errors import InconsistencyError
from .hfk import HfkTable, hfk_isomorphic, thin_hfk
from .invariants import InvariantBundle, gl_signature, invariant_bundle
from .lattice import (
    DEFAULT_RANK_CAP,
    Decomposition,
    GramForm,
    definiteness,
    indecomposable_summands,
)
from .tait import TaitGraph, blocks, flow_lattice, tait_graph

SCHEMA = "knotcert-report/1"


def _pd_hash(pd_text: str) -> str:
    return hashlib.sha256(pd_text.encode("utf-8")).hexdigest()


def _positive_rank_blocks(g: TaitGraph) -> int:
    count = 0
    for block in blocks(g).blocks:
        verts = set()
        for ei in block:
            verts.update(g.edges[ei])
        if len(block) - len(verts) + 1 > 0:
            count += 1
    return count


# ---------------------------------------------------------------------------
# band primeness


@dataclass(frozen=True)
class FactorRecord:
    pd: str
    crossings: int
    tait_vertices: int
    tait_edges: int
    cycle_rank: int
    gram: GramForm
    lattice_definiteness: str
    decomposition: Decomposition
    signature: int
    genus: int

    def to_json(self) -> dict:
        return {
            "pd": self.pd,
            "crossings": self.crossings,
            "tait": {"vertices": self.tait_vertices, "edges": self.tait_edges,
                     "cycle_rank": self.cycle_rank},
            "gram": [list(r) for r in self.gram.matrix],
            "lattice_definiteness": self.lattice_definiteness,
            "summands": [[list(r) for r in s.matrix] for s in self.decomposition.summands],
            "witness": [list(r) for r in self.decomposition.witness],
            "signature": self.signature,
            "genus": self.genus,
        }


@dataclass(frozen=True)
class CertificateReport:
    pd_sha256: str
    speciality: SpecialityReport
    factors: tuple[FactorRecord, ...]
    trivial_factors: int
    verdict: str  # band_prime_certified / not_applicable / inconsistency
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "band_prime_certificate",
            "pd_sha256": self.pd_sha256,
            "speciality": self.speciality.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "trivial_factors": self.trivial_factors,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def band_prime_certificate(
    od: OrientedDiagram, rank_cap: int = DEFAULT_RANK_CAP
) -> CertificateReport:
    """Certify that the knot of a special alternating diagram is band prime.

    Non-special (or non-alternating) inputs get verdict not_applicable.
    A factor whose flow lattice fails definiteness, splits into several
    summands, disagrees with the block count, or has the wrong signature
    produces verdict 'inconsistency' (the underlying theory forbids all of
    those, so they indicate a bug, not a property of the knot).
    """
    d = od.diagram
    sha = _pd_hash(d.pd_text())
    rep = classify_special(od)
    if not (rep.is_special and rep.is_alternating):
        why = "not alternating" if not rep.is_alternating else "alternating but not special"
        return CertificateReport(sha, rep, (), 0, "not_applicable", (why,))

    notes: list[str] = []
    problems: list[str] = []
    factors: list[FactorRecord] = []
    trivial = 0

    for f in connected_sum_factors(d):
        fod = orient(f)
        frep = classify_special(fod)
        if not frep.is_special:
            problems.append(f"factor {f.pd_text()!r} is not special")
            continue
        if f.n and frep.uniform_sign != rep.uniform_sign:
            problems.append(
                f"factor sign {frep.uniform_sign} differs from diagram sign {rep.uniform_sign}"
            )
            continue
        g = tait_graph(checkerboard(f), frep.orientable_color)
        gram, _basis = flow_lattice(g)
        rank = gram.rank
        if rank == 0:
            trivial += 1
            continue
        if rank % 2:
            problems.append(f"factor {f.pd_text()!r} has odd flow rank {rank}")
            continue
        kind = definiteness(gram)
        dec = indecomposable_summands(gram, rank_cap=rank_cap)
        sig = gl_signature(fod)
        record = FactorRecord(
            pd=f.pd_text(),
            crossings=f.n,
            tait_vertices=g.num_vertices,
            tait_edges=g.num_edges,
            cycle_rank=g.cycle_rank(),
            gram=gram,
            lattice_definiteness=kind,
            decomposition=dec,
            signature=sig,
            genus=rank // 2,
        )
        factors.append(record)
        if kind != "positive_definite":
            problems.append(f"factor flow lattice is {kind}, expected positive definite")
        if len(dec.summands) != 1:
            problems.append(
                f"factor flow lattice split into {len(dec.summands)} summands"
            )
        nblocks = _positive_rank_blocks(g)
        if nblocks != 1:
            problems.append(
                f"factor graph has {nblocks} positive-rank blocks, expected 1"
            )
        if sig != -frep.uniform_sign * rank:
            problems.append(
                f"factor signature {sig} != {-frep.uniform_sign * rank} "
                f"(sign {frep.uniform_sign}, rank {rank})"
            )
        if sig == 0:
            problems.append("factor signature is zero")

    # whole-diagram cross-check: summands of the full flow lattice match the
    # number of nontrivial factors
    g_full = tait_graph(checkerboard(d), rep.orientable_color)
    gram_full, _ = flow_lattice(g_full)
    dec_full = indecomposable_summands(gram_full, rank_cap=rank_cap)
    if len(dec_full.summands) != len(factors):
        problems.append(
            f"whole-diagram lattice has {len(dec_full.summands)} summands "
            f"but {len(factors)} nontrivial factors"
        )
    if _positive_rank_blocks(g_full) != len(factors):
        problems.append("whole-diagram block count disagrees with factor count")

    if problems:
        return CertificateReport(
            sha, rep, tuple(factors), trivial, "inconsistency", tuple(problems)
        )
    if not factors:
        notes.append("no nontrivial factors: the knot is trivial, certificate is vacuous")
    if trivial:
        notes.append(f"{trivial} genus-zero factor(s) ignored")
    return CertificateReport(
        sha, rep, tuple(factors), trivial, "band_prime_certified", tuple(notes)
    )


# ---------------------------------------------------------------------------
# anisotropy and minimality


@dataclass(frozen=True)
class AnisotropyResult:
    holds: bool
    sigma: int
    span: int

    def to_json(self) -> dict:
        return {"holds": self.holds, "sigma": self.sigma, "span": self.span}


def anisotropy_check(bundle: InvariantBundle) -> AnisotropyResult:
    """|signature| = span(Alexander): definiteness of the middle-cover form."""
    span = bundle.alexander.span()
    return AnisotropyResult(abs(bundle.signature) == span, bundle.signature, span)


def _is_prime_power(n: int) -> bool:
    """True for 1 (a unit) and p^k; False otherwise."""
    if n < 1:
        return False
    if n == 1:
        return True
    p = None
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            p = d
            while m % d == 0:
                m //= d
            break
        d += 1
    if p is None:
        return True  # n itself prime
    return m == 1


@dataclass(frozen=True)
class MinimalityEvidence:
    pd_sha256: str
    bundle: InvariantBundle
    hfk: Optional[HfkTable]
    anisotropy: AnisotropyResult
    fibered: Optional[bool]
    prime_power_leading: bool
    two_bridge_asserted: bool
    verdict: str  # minimal_certified / evidence_only / not_applicable

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "minimality_evidence",
            "pd_sha256": self.pd_sha256,
            "bundle": self.bundle.to_json(),
            "hfk": self.hfk.to_json() if self.hfk is not None else None,
            "anisotropy": self.anisotropy.to_json(),
            "conditions": {
                "fibered": self.fibered,
                "prime_power_leading": self.prime_power_leading,
                "two_bridge_asserted": self.two_bridge_asserted,
            },
            "verdict": self.verdict,
        }


def minimality_evidence(
    od: OrientedDiagram, assert_two_bridge: bool = False
) -> MinimalityEvidence:
    """Evidence that no distinct knot sits under this one in a ribbon concordance.

    minimal_certified needs the diagram to be special alternating plus one of:
    fibered (monic Alexander polynomial, genus exact), prime-power leading
    coefficient, or the caller asserting the knot is two-bridge.  Two-bridge
    detection is deliberately not computed here.
    """
    bundle = invariant_bundle(od)
    table = (
        thin_hfk(bundle.alexander, bundle.signature)
        if bundle.speciality.is_alternating
        else None
    )
    aniso = anisotropy_check(bundle)
    ppl = _is_prime_power(abs(bundle.leading_coefficient))
    special = bundle.speciality.is_special and bundle.speciality.is_alternating
    if not special:
        verdict = "not_applicable"
    elif bundle.fibered is True or ppl or assert_two_bridge:
        verdict = "minimal_certified"
    else:
        verdict = "evidence_only"
    if special and not aniso.holds:
        raise InconsistencyError(
            f"special alternating knot with |sigma| {abs(bundle.signature)} != span {aniso.span}"
        )
    return MinimalityEvidence(
        pd_sha256=_pd_hash(od.diagram.pd_text()),
        bundle=bundle,
        hfk=table,
        anisotropy=aniso,
        fibered=bundle.fibered,
        prime_power_leading=ppl,
        two_bridge_asserted=assert_two_bridge,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# pairwise obstructions


@dataclass(frozen=True)
class Finding:
    code: str
    detail: str

    def to_json(self) -> dict:
        return {"code": self.code, "detail": self.detail}


def concordance_pair_obstructions(
    lower: InvariantBundle,
    lower_hfk: Optional[HfkTable],
    upper: InvariantBundle,
    upper_hfk: Optional[HfkTable],
    upper_is_special_alternating: bool,
) -> tuple[Finding, ...]:
    """Violated necessary conditions for `lower <= upper` under a ribbon
    concordance.  Empty output means no obstruction found, nothing more."""
    findings: list[Finding] = []
    if lower.signature != upper.signature:
        findings.append(
            Finding(
                "signature_mismatch",
                f"signature must be preserved: {lower.signature} vs {upper.signature}",
            )
        )
    if not lower.alexander.divides(upper.alexander):
        findings.append(
            Finding(
                "alexander_not_dividing",
                f"({lower.alexander}) does not divide ({upper.alexander})",
            )
        )
    lower_genus_min = lower.alexander.span() // 2
    if upper.genus_is_exact and lower_genus_min > upper.genus:
        findings.append(
            Finding(
                "genus_violation",
                f"lower genus is at least {lower_genus_min}, upper genus is {upper.genus}",
            )
        )
    if upper_is_special_alternating:
        # the bigraded groups must agree completely
        if lower.determinant != upper.determinant:
            findings.append(
                Finding(
                    "determinant_mismatch",
                    f"{lower.determinant} vs {upper.determinant}",
                )
            )
        if lower.genus_is_exact and upper.genus_is_exact and lower.genus != upper.genus:
            findings.append(
                Finding("genus_mismatch", f"{lower.genus} vs {upper.genus}")
            )
        if (
            lower_hfk is not None
            and upper_hfk is not None
            and not hfk_isomorphic(lower_hfk, upper_hfk)
        ):
            findings.append(
                Finding(
                    "hfk_mismatch",
                    "bigraded homology tables differ where equality is forced",
                )
            )
    return tuple(findings)
