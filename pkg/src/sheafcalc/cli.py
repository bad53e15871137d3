"""Command-line surface over the engine.

Every subcommand emits a deterministic document in one of three formats
(aligned table, CSV, JSON); JSON payloads carry a ``sources`` map naming the
internal rule that produced each numeric claim, so outputs can be golden-file
tested.  Exit codes: 0 success, 2 usage error, 3 engine error (the error's
typed name is printed on stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dist, modulispec
from .chow import PRESETS, ThreefoldData, load_threefold, threefold_to_dict
from .cohomology import DimEntry, generic_dist_cohom
from .errors import DomainError, EngineError, MissingInvariant, NotComputable
from .sheafdsl import cohom_of, parse, parse_batch, pretty

PRESETS_ENV = "SHEAFCALC_PRESETS"
TWIST_WIDTH_CAP = 200


@dataclass
class OutputDocument:
    format: str
    payload: dict
    rows: list  # list of rows (list of str); first row is the header

    def render(self) -> str:
        if self.format == "json":
            return json.dumps(self.payload, indent=2) + "\n"
        if self.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerows(self.rows)
            return buf.getvalue()
        widths = [
            max(len(row[i]) for row in self.rows)
            for i in range(len(self.rows[0]))
        ]
        lines = []
        for idx, row in enumerate(self.rows):
            lines.append(
                "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            )
            if idx == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (list, tuple)):
        return json.dumps(list(value))
    return str(value)


def _flatten(payload: dict, prefix: str = "") -> list:
    rows = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, name + "."))
        else:
            rows.append([name, _scalar(value)])
    return rows


def _field_doc(payload: dict) -> tuple[dict, list]:
    return payload, [["field", "value"]] + _flatten(payload)


def _resolve_threefold(name_or_path: str) -> ThreefoldData:
    if name_or_path in PRESETS:
        return PRESETS[name_or_path]
    env_dir = os.environ.get(PRESETS_ENV)
    if env_dir:
        candidate = Path(env_dir) / f"{name_or_path}.json"
        if candidate.is_file():
            return load_threefold(candidate)
    path = Path(name_or_path)
    if path.is_file():
        return load_threefold(path)
    raise DomainError(
        f"unknown threefold '{name_or_path}': not a preset, not a file, and "
        f"not found under ${PRESETS_ENV}"
    )


def _parse_twists(text: str, parser) -> tuple[int, int]:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if not m:
        parser.error(f"--twists must look like lo..hi, got '{text}'")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        parser.error(f"--twists range {text} is empty")
    return lo, hi


def _entry_json(e: DimEntry) -> dict:
    if e.status == "known":
        return {"status": "known", "value": e.lo}
    if e.status == "bounded":
        return {"status": "bounded", "lo": e.lo, "hi": e.hi}
    return {"status": "unknown"}


def _chern_triple(c) -> list:
    return [c.c1, c.n2, c.n3]


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns (payload, rows).


def _profile_from_args(args, parser, X) -> dist.DistributionProfile:
    if args.degree is not None:
        if not X.is_p3:
            parser.error("--degree is defined on p3 only; use --c1")
        f = 2 - args.degree
    else:
        f = args.c1
    return dist.DistributionProfile(X, f, generic=args.generic)


def _cmd_invariants(args, parser):
    X = _resolve_threefold(args.threefold)
    profile = _profile_from_args(args, parser, X)
    chern = dist.dist_chern(profile)
    length = dist.singular_length(profile)
    verdict = dist.stability_classify(profile)
    payload = {
        "threefold": X.name,
        "c1_tangent": profile.f,
        "kappa": profile.kappa,
        "degree": profile.degree,
        "chern": _chern_triple(chern),
        "singular_length": length,
        "stability": {"status": verdict.status, "reason": verdict.reason},
        "hypotheses": {
            "generic": profile.generic,
            "h1_line_vanishing": X.h1_line_vanishing,
            "tx_stable": X.tx_stable,
        },
        "sources": {
            "chern": "thmD",
            "singular_length": "eqLength",
            "stability": "thmA",
        },
    }
    return _field_doc(payload)


def _cmd_moduli(args, parser):
    report = modulispec.moduli_report(args.degree)
    resolution = modulispec.global_gen_resolution(args.degree)
    normalized = modulispec.normalize_chern(report.chern, PRESETS["p3"])
    payload = {
        "degree": report.d,
        "dim_component": report.dim_component,
        "chern": _chern_triple(report.chern),
        "normalized_chern": _chern_triple(normalized),
        "ext1": report.ext1,
        "ext2": report.ext2,
        "smooth_point": report.smooth_point,
        "rational": report.rational,
        "family_dim": report.family_dim,
        "curve_family": None,
        "resolution": {
            "middle": resolution.middle,
            "kernel": resolution.kernel,
            "h0_twisted": resolution.h0_twisted,
            "chern_twisted": _chern_triple(resolution.chern_twisted),
        },
        "sources": {
            "dim_component": "thmC",
            "chern": "thmC",
            "normalized_chern": "picAction",
            "ext1": "eqExtDiff",
            "ext2": "eqKey",
            "family_dim": "thmC",
            "curve_family": "propCurves",
            "resolution": "lemmaGlobalGen",
        },
    }
    if report.d >= 1:
        family = modulispec.curve_family(report.d)
        payload["curve_family"] = {
            "degree": family.degree_C,
            "genus": family.genus,
            "points": family.points,
            "family_dim": family.family_dim,
        }
    return _field_doc(payload)


def _cohom_payload(expr, twists, X):
    lo, hi = twists
    table = cohom_of(expr, (lo, hi), X)
    chern = table.chern
    rows_json = []
    rows_txt = [["twist", "h0", "h1", "h2", "h3", "chi"]]
    for t in range(lo, hi + 1):
        col = table.column(t)
        rows_json.append(
            {
                "twist": t,
                "h0": _entry_json(col[0]),
                "h1": _entry_json(col[1]),
                "h2": _entry_json(col[2]),
                "h3": _entry_json(col[3]),
                "chi": table.chi(t),
            }
        )
        rows_txt.append(
            [str(t)] + [str(e) for e in col] + [str(table.chi(t))]
        )
    payload = {
        "expression": pretty(expr),
        "threefold": X.name,
        "rank": chern.rank,
        "chern": _chern_triple(chern),
        "twists": [lo, hi],
        "table": rows_json,
        "sources": {"chern": "dslWhitney", "table": "bottChase", "chi": "hrr"},
    }
    return payload, rows_txt


def _cmd_cohomology(args, parser):
    X = _resolve_threefold(args.threefold)
    twists = _parse_twists(args.twists, parser)
    if args.batch is None:
        if twists[1] - twists[0] + 1 > TWIST_WIDTH_CAP:
            parser.error(
                f"--twists width exceeds {TWIST_WIDTH_CAP}; use --batch mode"
            )
        return _cohom_payload(parse(args.sheaf), twists, X)
    try:
        text = Path(args.batch).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read batch file: {exc}") from exc
    results = []
    rows_txt = [["expression", "twist", "h0", "h1", "h2", "h3", "chi"]]
    for expr in parse_batch(text):
        payload, rows = _cohom_payload(expr, twists, X)
        results.append(payload)
        for row in rows[1:]:
            rows_txt.append([payload["expression"]] + row)
    return {"results": results}, rows_txt


def _cmd_spectrum(args, parser):
    X = _resolve_threefold(args.threefold)
    point = modulispec.spectrum_point(X, args.r)
    payload = {
        "threefold": X.name,
        "r": point.r,
        "chern": _chern_triple(point.triple),
    }
    sources = {"chern": "thmD"}
    if args.normalize:
        normalized = modulispec.normalize(point)
        payload["normalized"] = _chern_triple(normalized.triple)
        sources["normalized"] = "picAction"
    payload["sources"] = sources
    return _field_doc(payload)


def _cmd_subfoliation(args, parser):
    X = _resolve_threefold(args.threefold)
    generic = args.sing1f == dist.SING1_EMPTY
    profile = dist.DistributionProfile(X, args.c1, generic=generic)
    report = dist.subfoliation_analyze(profile, args.tg, args.sing1f)
    payload = {
        "threefold": X.name,
        "c1_tangent": profile.f,
        "tg": report.tG,
        "lfg_degree": report.lfg_degree,
        "y_class": report.y_class,
        "split": report.split,
        "split_degree_proof": report.split_degree_proof,
        "split_degree_statement": report.split_degree_statement,
        "sing_structure": report.sing_structure,
        "branches": list(report.branches),
        "sources": {
            "y_class": "propSub",
            "split": "thmB",
            "sing_structure": "propSub",
        },
    }
    return _field_doc(payload)


def _cmd_conncomp(args, parser):
    X = _resolve_threefold(args.threefold)
    profile = dist.DistributionProfile(X, args.c1, generic=False)
    if args.generic:
        if not X.is_p3:
            raise NotComputable(
                "generic-case h^2 substitution is only available on p3"
            )
        d = 2 - args.c1
        entry = generic_dist_cohom(d, -d - 2)[2]
        if not entry.is_known:
            raise MissingInvariant(
                f"generic-case h^2 at degree {d} is only bounded to {entry}; "
                "supply --h2 explicitly"
            )
        h2 = entry.value
        h2_origin = "generic-case"
    else:
        h2 = args.h2
        h2_origin = "user"
    report = dist.conn_components(profile, h2, args.c3)
    count = (
        {"kind": "Exact", "value": report.lo}
        if report.kind == "Exact"
        else {"kind": "Interval", "lo": report.lo, "hi": report.hi}
    )
    payload = {
        "threefold": X.name,
        "c1_tangent": profile.f,
        "h2": h2,
        "h2_origin": h2_origin,
        "c3": args.c3,
        "count": count,
        "hypotheses": {
            "h1_tangent_vanishes": report.h1_tangent_vanishes,
            "h2_tangent_vanishes": report.h2_tangent_vanishes,
            "h1_structure_vanishes": report.h1_structure_vanishes,
        },
        "sources": {
            "count": "thmE" if report.kind == "Exact" else "corP3",
            "h2": "lemmaCohomology" if args.generic else "input",
        },
    }
    return _field_doc(payload)


def _cmd_presets(args, parser):
    records = [threefold_to_dict(X) for X in PRESETS.values()]
    header = list(records[0].keys())
    rows = [header] + [[_scalar(rec[k]) for k in header] for rec in records]
    return {"presets": records}, rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheafcalc",
        description="Exact invariants of codimension-one distributions and "
        "reflexive sheaves on Picard-rank-one threefolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format",
            choices=("table", "csv", "json"),
            default="table",
            help="output format (default: table)",
        )

    p = sub.add_parser("invariants", help="Chern data, singular length and "
                       "stability of a distribution")
    p.add_argument("--threefold", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degree", type=int, help="degree d (p3 only)")
    group.add_argument("--c1", type=int, help="c1 of the tangent sheaf")
    p.add_argument("--generic", action="store_true",
                   help="assert the singular scheme has dimension <= 0")
    add_format(p)
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("moduli", help="moduli component data for degree d on p3")
    p.add_argument("--degree", type=int, required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_moduli)

    p = sub.add_parser("cohomology", help="cohomology table of a sheaf expression")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sheaf", help="sheaf expression")
    group.add_argument("--batch", help="file with one expression per line")
    p.add_argument("--twists", required=True, help="inclusive range lo..hi")
    p.add_argument("--threefold", default="p3")
    add_format(p)
    p.set_defaults(handler=_cmd_cohomology)

    p = sub.add_parser("spectrum", help="rank-2 stable-spectrum point")
    p.add_argument("--threefold", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--normalize", action="store_true")
    add_format(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("subfoliation", help="rank-1 subfoliation analysis")
    p.add_argument("--threefold", required=True)
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--tg", type=int, required=True)
    p.add_argument("--sing1f", required=True,
                   choices=(dist.SING1_EMPTY, dist.SING1_IRREDUCIBLE_REDUCED,
                            dist.SING1_OTHER))
    add_format(p)
    p.set_defaults(handler=_cmd_subfoliation)

    p = sub.add_parser("conncomp", help="connected components of the "
                       "1-dimensional singular locus")
    p.add_argument("--threefold", required=True)
    p.add_argument("--c1", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--h2", type=int,
                       help="h^2 of the twisted tangent sheaf")
    group.add_argument("--generic", action="store_true",
                       help="substitute the generic-case value (p3 only)")
    p.add_argument("--c3", type=int, required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_conncomp)

    p = sub.add_parser("presets", help="shipped threefold profiles")
    p.add_argument("action", choices=("list",))
    add_format(p)
    p.set_defaults(handler=_cmd_presets)

    return parser


def _join_twist_values(argv: list) -> list:
    # argparse mistakes a leading-dash value like -1..1 for an option flag;
    # fold it into --twists=... form so the documented syntax works
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--twists" and i + 1 < len(argv):
            out.append(f"--twists={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_twist_values(list(argv)))
    try:
        payload, rows = args.handler(args, parser)
    except EngineError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(OutputDocument(args.format, payload, rows).render())
    return 0


if __name__ == "__main__":
    sys.exit(main())
