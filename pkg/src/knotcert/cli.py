"""Command-line front end.

Three subcommands:

  analyze  one diagram -> speciality, invariants, HFK table, band-primeness
           certificate, minimality evidence (text or JSON)
  batch    a CSV/JSON corpus -> one report per entry (written with --out),
           verdict-count summary on stdout
  pair     two diagrams -> ribbon-concordance obstruction findings

Exit statuses (stable): 0 success, 1 inconsistency detected, 2 input error,
3 resource cap exceeded.  JSON output is byte-identical across runs for
identical inputs: keys are sorted and all report content is derived by pure
functions of the input text.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .diagram import OrientedDiagram, orient, parse_pd
from .errors import (
    ClassificationError,
    DiagramError,
    InconsistencyError,
    KnotCertError,
    PDSyntaxError,
    RankCapExceededError,
)
from .hfk import thin_hfk
from .invariants import InvariantBundle, LaurentPolynomial, invariant_bundle
from .lattice import DEFAULT_RANK_CAP
from .obstruct import (
    SCHEMA,
    band_prime_certificate,
    concordance_pair_obstructions,
    minimality_evidence,
)

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _analysis(od: OrientedDiagram, rank_cap: int, assert_two_bridge: bool) -> dict:
    bundle = invariant_bundle(od)
    table = (
        thin_hfk(bundle.alexander, bundle.signature)
        if bundle.speciality.is_alternating
        else None
    )
    cert = band_prime_certificate(od, rank_cap=rank_cap)
    ev = minimality_evidence(od, assert_two_bridge=assert_two_bridge)
    return {
        "schema": SCHEMA,
        "kind": "analysis",
        "pd": od.diagram.pd_text(),
        "pd_sha256": cert.pd_sha256,
        "speciality": bundle.speciality.to_json(),
        "invariants": bundle.to_json(),
        "hfk": table.to_json() if table is not None else None,
        "band_primeness": cert.to_json(),
        "minimality": ev.to_json(),
    }


def _yesno(v) -> str:
    if v is None:
        return "unknown"
    return "yes" if v else "no"


def _analysis_text(rep: dict) -> str:
    sp = rep["speciality"]
    inv = rep["invariants"]
    cert = rep["band_primeness"]
    ev = rep["minimality"]
    lines = [f"pd: {rep['pd'] or '(unknot, 0 crossings)'}"]
    if sp["is_special"] and sp["is_alternating"]:
        lines.append(
            f"special alternating: yes (sign {sp['uniform_sign']:+d}, "
            f"orientable color {sp['orientable_color']})"
        )
    else:
        lines.append(
            f"special alternating: no (alternating: {_yesno(sp['is_alternating'])})"
        )
    genus_tag = "exact" if inv["genus_is_exact"] else "lower bound"
    lines.append(
        f"signature: {inv['signature']}   determinant: {inv['determinant']}   "
        f"genus: {inv['genus']} ({genus_tag})"
    )
    lines.append(
        f"alexander: {inv['alexander_str']}   "
        f"(leading coefficient {inv['leading_coefficient']}, "
        f"fibered: {_yesno(inv['fibered'])})"
    )
    if rep["hfk"] is not None:
        total = sum(e["rank"] for e in rep["hfk"]["entries"])
        lines.append(
            f"hfk: thin, total rank {total}, delta grading {rep['hfk']['delta_grading']}"
        )
    else:
        lines.append("hfk: not computed (diagram is not alternating)")
    lines.append(
        f"band primeness: {cert['verdict']} "
        f"({len(cert['factors'])} substantial factor(s), "
        f"{cert['trivial_factors']} trivial)"
    )
    for i, f in enumerate(cert["factors"], 1):
        lines.append(
            f"  factor {i}: {f['crossings']} crossings, gram {f['gram']}, "
            f"{f['lattice_definiteness']}, {len(f['summands'])} summand(s), "
            f"signature {f['signature']}"
        )
    for note in cert["notes"]:
        lines.append(f"  note: {note}")
    c = ev["conditions"]
    lines.append(
        f"minimality: {ev['verdict']} (fibered={_yesno(c['fibered'])}, "
        f"prime_power_leading={_yesno(c['prime_power_leading'])}, "
        f"two_bridge_asserted={_yesno(c['two_bridge_asserted'])})"
    )
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    if args.pd_file is not None:
        pd_text = Path(args.pd_file).read_text("utf-8").strip()
    else:
        pd_text = args.pd
    od = orient(parse_pd(pd_text))
    rep = _analysis(od, args.rank_cap, args.assert_two_bridge)
    out = _json_text(rep) if args.json else _analysis_text(rep)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"analysis-{rep['pd_sha256'][:16]}.json"
        path.write_text(_json_text(rep), "utf-8")
        print(f"report written to {path}")
    else:
        sys.stdout.write(out)
    if rep["band_primeness"]["verdict"] == "inconsistency":
        return EXIT_INCONSISTENT
    return EXIT_OK


def _expected_mismatches(entry_row: dict, bundle: InvariantBundle) -> list[str]:
    out = []
    if entry_row.get("sigma") not in (None, ""):
        if bundle.signature != int(entry_row["sigma"]):
            out.append(f"sigma: stored {entry_row['sigma']}, computed {bundle.signature}")
    if entry_row.get("det") not in (None, ""):
        if bundle.determinant != int(entry_row["det"]):
            out.append(f"det: stored {entry_row['det']}, computed {bundle.determinant}")
    if entry_row.get("alexander") not in (None, ""):
        stored = LaurentPolynomial.from_string(str(entry_row["alexander"]))
        if bundle.alexander != stored:
            out.append(f"alexander: stored {stored}, computed {bundle.alexander}")
    if entry_row.get("genus") not in (None, ""):
        if bundle.genus != int(entry_row["genus"]):
            out.append(f"genus: stored {entry_row['genus']}, computed {bundle.genus}")
    return out


def cmd_batch(args) -> int:
    if args.corpus == "bundled":
        from importlib import resources

        with resources.as_file(
            resources.files("knotcert").joinpath("data/corpus.csv")
        ) as p:
            return _run_batch(Path(p), args)
    return _run_batch(Path(args.corpus), args)


def _run_batch(path: Path, args) -> int:
    if not path.exists():
        print(f"error: corpus file not found: {path}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if path.suffix.lower() == ".json":
            rows = json.loads(path.read_text("utf-8"))
        else:
            with path.open(newline="") as fh:
                rows = list(csv.DictReader(fh))
    except (OSError, ValueError, csv.Error) as ex:
        print(f"error: cannot read corpus: {ex}", file=sys.stderr)
        return EXIT_INPUT

    outdir = Path(args.out) if args.out else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)

    results = []
    counts: dict[str, int] = {}
    failures = 0
    inconsistent = 0
    for row in rows:
        name = (row.get("name") or "").strip() or f"entry{len(results)}"
        try:
            od = orient(parse_pd(row.get("pd") or ""))
            rep = _analysis(od, args.rank_cap, False)
            mism = _expected_mismatches(row, invariant_bundle(od))
            status = rep["band_primeness"]["verdict"]
            if mism:
                status = "inconsistency"
                rep["expected_mismatches"] = mism
            rep["name"] = name
            rep["status"] = status
            if status == "inconsistency":
                inconsistent += 1
            counts[status] = counts.get(status, 0) + 1
            results.append(rep)
            if outdir is not None:
                (outdir / f"{name}.json").write_text(_json_text(rep), "utf-8")
        except (PDSyntaxError, DiagramError, ClassificationError) as ex:
            failures += 1
            counts["failed"] = counts.get("failed", 0) + 1
            results.append({"name": name, "status": "failed", "error": str(ex)})
            print(f"warning: {name}: {ex}", file=sys.stderr)
        except RankCapExceededError as ex:
            failures += 1
            counts["rank_capped"] = counts.get("rank_capped", 0) + 1
            results.append({"name": name, "status": "rank_capped", "error": str(ex)})
            print(f"warning: {name}: {ex}", file=sys.stderr)
        except InconsistencyError as ex:
            inconsistent += 1
            counts["inconsistency"] = counts.get("inconsistency", 0) + 1
            results.append({"name": name, "status": "inconsistency", "error": str(ex)})
            print(f"error: {name}: {ex}", file=sys.stderr)

    summary = {
        "schema": SCHEMA,
        "kind": "batch_summary",
        "entries": len(results),
        "counts": dict(sorted(counts.items())),
        "failures": failures,
    }
    if args.json:
        sys.stdout.write(_json_text(summary))
    else:
        print(f"entries: {len(results)}")
        for k, v in sorted(counts.items()):
            print(f"  {k}: {v}")
        if outdir is not None:
            print(f"reports written to {outdir}")
    return EXIT_INCONSISTENT if inconsistent else EXIT_OK


def cmd_pair(args) -> int:
    lo_od = orient(parse_pd(args.lower))
    up_od = orient(parse_pd(args.upper))
    lo = invariant_bundle(lo_od)
    up = invariant_bundle(up_od)
    lo_h = thin_hfk(lo.alexander, lo.signature) if lo.speciality.is_alternating else None
    up_h = thin_hfk(up.alexander, up.signature) if up.speciality.is_alternating else None
    upper_special = up.speciality.is_special and up.speciality.is_alternating
    findings = concordance_pair_obstructions(lo, lo_h, up, up_h, upper_special)
    rep = {
        "schema": SCHEMA,
        "kind": "pair_obstructions",
        "lower": {"pd": lo_od.diagram.pd_text(), "invariants": lo.to_json()},
        "upper": {"pd": up_od.diagram.pd_text(), "invariants": up.to_json()},
        "upper_is_special_alternating": upper_special,
        "findings": [f.to_json() for f in findings],
        "verdict": "obstructed" if findings else "no_obstruction_found",
    }
    if args.json:
        sys.stdout.write(_json_text(rep))
    else:
        print(f"upper is special alternating: {_yesno(upper_special)}")
        if findings:
            print("obstructed:")
            for f in findings:
                print(f"  {f.code}: {f.detail}")
        else:
            print("no obstruction found (this does not certify a concordance)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="knotcert",
        description="band-primeness certificates and concordance obstructions "
        "for alternating knot diagrams",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument(
            "--rank-cap",
            type=int,
            default=DEFAULT_RANK_CAP,
            metavar="N",
            help="abort isometry searches above this lattice rank",
        )
        sp.add_argument("--out", metavar="DIR", help="directory for report files")

    a = sub.add_parser("analyze", help="analyze one PD diagram")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", help='PD text, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"')
    g.add_argument("--pd-file", help="file containing PD text")
    a.add_argument(
        "--assert-two-bridge",
        action="store_true",
        help="caller asserts the knot is two-bridge (not verified here)",
    )
    common(a)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("batch", help="process a corpus CSV/JSON file")
    b.add_argument(
        "corpus",
        help="corpus file (columns: name,pd[,sigma,det,alexander,genus]) "
        "or the literal word 'bundled' for the packaged corpus",
    )
    common(b)
    b.set_defaults(func=cmd_batch)

    q = sub.add_parser("pair", help="obstructions to 'lower under upper' concordance")
    q.add_argument("--lower", required=True, help="PD text of the candidate smaller knot")
    q.add_argument("--upper", required=True, help="PD text of the candidate larger knot")
    common(q)
    q.set_defaults(func=cmd_pair)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PDSyntaxError, DiagramError, ClassificationError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except RankCapExceededError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_RESOURCE
    except InconsistencyError as ex:
        print(f"internal inconsistency: {ex}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except KnotCertError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
