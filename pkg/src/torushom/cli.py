"""Command-line front end.

Subcommands: resolve, ext, invariants, complex-cohomology, ab-verify, gkm,
local-duality, ses-verify.  Every run emits a versioned JSON report (stdout
or --json-out); --out-dir additionally writes the report, CSV tables and
PNG figures side by side.

Exit codes: 0 all verdicts pass, 1 a verification failed, 2 bad input or
parameters, 3 internal invariant violation (a bug, please report).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import fixtureio, report as rpt
from .atiyah_bredon import verify_bundle
from .complexes import GradedComplex, cohomology_at, exactness_positions, verify_ses
from .errors import (FixtureError, InternalInvariantError, StabilizationError)
from .invariants import (dimension, depth, ext_table, hilbert_series,
                         is_cohen_macaulay, syzygy_order,
                         local_cohomology_window, verify_local_duality)
from .module import FPModule, minimal_resolution
from .report import jsonable
from .ring import PolyParseError


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--max-degree", type=int, default=20,
                        help="degree window bound: slices run over [-N, N] (default 20)")
    parser.add_argument("--saturation-exponent", type=int, default=6,
                        help="power of the variables used for the local "
                        "cohomology colimit (default 6)")
    parser.add_argument("--iso-search-seed", type=int, default=0,
                        help="seed for the randomized isomorphism search")
    parser.add_argument("--power-bound", type=int, default=4,
                        help="largest annihilator power tried by the "
                        "localization torsion check (default 4)")
    parser.add_argument("--json-out", metavar="PATH",
                        help="write the JSON report here instead of stdout")
    parser.add_argument("--out-dir", metavar="DIR",
                        help="write report.json, CSV tables and PNG figures "
                        "into this directory")


def _window(args) -> tuple:
    return (-args.max_degree, args.max_degree)


def _dims_in_window(M: FPModule, lo: int, hi: int) -> Dict[int, int]:
    return {d: dim for d in range(lo, hi + 1)
            if (dim := M.dim_slice_bruteforce(d))}


def _load_module(path: str) -> FPModule:
    doc = fixtureio.load_json(path)
    if doc.get("schema") not in (None, fixtureio.MODULE_SCHEMA):
        raise FixtureError(f"{path}: expected a module fixture")
    return fixtureio.module_from_json(doc)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_resolve(args, out: rpt.OutputDir) -> dict:
    M = _load_module(args.input)
    res = minimal_resolution(M)
    lo, hi = _window(args)
    dims = _dims_in_window(M, lo, hi)
    payload = {
        "length": res.length,
        "betti_numbers": res.betti_numbers,
        "betti_degrees": [list(d) for d in res.betti_degrees],
        "hilbert_numerator": hilbert_series(M).numerator_str(),
        "hilbert_function": {str(d): v for d, v in dims.items()},
        "pass": True,
    }
    out.csv("betti.csv", ["step", "rank", "generator_degrees"],
            [(k, res.betti_numbers[k],
              " ".join(map(str, res.betti_degrees[k])))
             for k in range(len(res.betti_numbers))])
    out.csv("hilbert_function.csv", ["degree", "dim"], sorted(dims.items()))
    out.figure(rpt.fig_betti, "betti.png", res.betti_degrees,
               title=f"Betti table: {args.input}")
    out.figure(rpt.fig_hilbert_function, "hilbert_function.png", dims,
               title=f"Hilbert function: {args.input}")
    return payload


def cmd_ext(args, out: rpt.OutputDir) -> dict:
    M = _load_module(args.input)
    table = ext_table(M)
    lo, hi = _window(args)
    ext_dims = {p: _dims_in_window(m, lo, hi) for p, m in table.entries.items()}
    payload = {
        "ext_hilbert": {str(p): hilbert_series(m).numerator_str()
                        for p, m in table.entries.items()},
        "ext_dims": {str(p): {str(d): v for d, v in dims.items()}
                     for p, dims in ext_dims.items()},
        "pass": True,
    }
    out.csv("ext_dimensions.csv", ["p", "degree", "dim"],
            [(p, d, v) for p, dims in sorted(ext_dims.items())
             for d, v in sorted(dims.items())])
    out.figure(rpt.fig_dims_heatmap, "ext_dimensions.png", ext_dims,
               title=f"Ext module dimensions: {args.input}",
               row_label="p", lo=lo, hi=hi)
    return payload


def cmd_invariants(args, out: rpt.OutputDir) -> dict:
    M = _load_module(args.input)
    table = ext_table(M)
    cm = is_cohen_macaulay(M)
    lo, hi = _window(args)
    dims = _dims_in_window(M, lo, hi)
    payload = {
        "dim": jsonable(dimension(M)),
        "depth": jsonable(depth(M)),
        "cm": cm.passed,
        "syzygy_order": jsonable(syzygy_order(M)),
        "ext_hilbert": {str(p): hilbert_series(m).numerator_str()
                        for p, m in table.entries.items()},
        "hilbert_numerator": hilbert_series(M).numerator_str(),
        "hilbert_function": {str(d): v for d, v in dims.items()},
        "pass": True,
    }
    out.csv("hilbert_function.csv", ["degree", "dim"], sorted(dims.items()))
    out.figure(rpt.fig_hilbert_function, "hilbert_function.png", dims,
               title=f"Hilbert function: {args.input}")
    return payload


def cmd_complex_cohomology(args, out: rpt.OutputDir) -> dict:
    doc = fixtureio.load_json(args.input)
    complex_ = fixtureio.complex_from_json(doc)
    lo, hi = _window(args)
    positions = {}
    table = {}
    for i in complex_.positions():
        H = cohomology_at(complex_, i)
        dims = _dims_in_window(H, lo, hi)
        table[i] = dims
        positions[str(i)] = {
            "hilbert_numerator": hilbert_series(H).numerator_str(),
            "dims": {str(d): v for d, v in dims.items()},
            "zero": H.is_zero(),
        }
    payload = {"positions": positions, "pass": True}
    if complex_.augmentation is not None:
        report = exactness_positions(complex_)
        payload["exactness"] = {
            "per_position": {str(i): v for i, v in report.per_position.items()},
            "exact_through": report.exact_through,
        }
    out.csv("cohomology_dimensions.csv", ["position", "degree", "dim"],
            [(i, d, v) for i, dims in sorted(table.items())
             for d, v in sorted(dims.items())])
    out.figure(rpt.fig_dims_heatmap, "cohomology_dimensions.png", table,
               title=f"Cohomology dimensions: {args.input}",
               row_label="position", lo=lo, hi=hi)
    return payload


def cmd_ab_verify(args, out: rpt.OutputDir) -> dict:
    reports = []
    verdict_rows = []
    ok = True
    for path in args.inputs:
        doc = fixtureio.load_json(path)
        if doc.get("schema") != fixtureio.BUNDLE_SCHEMA:
            raise FixtureError(f"{path}: expected an orbit filtration bundle")
        data = fixtureio.bundle_from_json(doc)
        rep = verify_bundle(data, seed=args.iso_search_seed,
                            power_bound=args.power_bound)
        reports.append(rep)
        ok = ok and rep["pass"]
        for check, payload in rep["checks"].items():
            if isinstance(payload, str):
                verdict_rows.append((rep["fixture"], check, None))
            elif isinstance(payload, dict):
                verdict_rows.append((rep["fixture"], check,
                                     payload.get("passed", True)))
            elif isinstance(payload, list):
                passed = all(item.get("passed", True) for item in payload)
                verdict_rows.append((rep["fixture"], check, passed))
    payload = {"fixtures": reports, "pass": ok}
    out.csv("verdicts.csv", ["fixture", "check", "passed"],
            [(f, c, "" if v is None else v) for f, c, v in verdict_rows])
    out.figure(rpt.fig_verdict_matrix, "verdicts.png", verdict_rows,
               title="Verification verdicts")
    return payload


def cmd_gkm(args, out: rpt.OutputDir) -> dict:
    from .gkm import gkm_cohomology, gkm_to_filtration

    doc = fixtureio.load_json(args.input)
    graph = fixtureio.graph_from_json(doc)
    module, _ = gkm_cohomology(graph)
    lo, hi = _window(args)
    dims = _dims_in_window(module, lo, hi)
    payload = {
        "rank": graph.rank,
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "cohomology": {
            "generators": sorted(module.gen_degrees),
            "relations": module.presentation.source.ngens,
            "hilbert_numerator": hilbert_series(module).numerator_str(),
            "syzygy_order": jsonable(syzygy_order(module)),
        },
        "pass": True,
    }
    if args.emit_bundle:
        data = gkm_to_filtration(graph, name=doc.get("name", "gkm"))
        fixtureio.dump_json(fixtureio.bundle_to_json(data), args.emit_bundle)
        payload["bundle_written"] = args.emit_bundle
    out.csv("hilbert_function.csv", ["degree", "dim"], sorted(dims.items()))
    out.figure(rpt.fig_hilbert_function, "hilbert_function.png", dims,
               title=f"GKM cohomology Hilbert function: {args.input}")
    return payload


def cmd_local_duality(args, out: rpt.OutputDir) -> dict:
    M = _load_module(args.input)
    lo, hi = _window(args)
    verdict = verify_local_duality(M, lo, hi, exponent=args.saturation_exponent)
    payload = {
        "passed": verdict.passed,
        "window": [lo, hi],
        "saturation_exponent": args.saturation_exponent,
        "local_cohomology": {str(j): {str(d): v for d, v in t.items()}
                             for j, t in verdict.local_table.items()},
        "mismatches": [{"j": j, "degree": d, "local": a, "ext_dual": b}
                       for j, d, a, b in verdict.mismatches],
        "pass": verdict.passed,
    }
    out.csv("local_cohomology.csv", ["j", "degree", "dim"],
            [(j, d, v) for j, t in sorted(verdict.local_table.items())
             for d, v in sorted(t.items())])
    out.figure(rpt.fig_dims_heatmap, "local_cohomology.png",
               verdict.local_table,
               title=f"Local cohomology window: {args.input}",
               row_label="j", lo=lo, hi=hi)
    return payload


def cmd_ses_verify(args, out: rpt.OutputDir) -> dict:
    doc = fixtureio.load_json(args.input)
    if doc.get("schema") != fixtureio.SES_SCHEMA:
        raise FixtureError(f"{args.input}: expected a short exact sequence fixture")
    fix = fixtureio.ses_from_json(doc)
    verdict = verify_ses(fix.f, fix.g)
    lo, hi = _window(args)
    series = {
        "A": _dims_in_window(fix.f.source, lo, hi),
        "B": _dims_in_window(fix.f.target, lo, hi),
        "C": _dims_in_window(fix.g.target, lo, hi),
    }
    payload = {
        "tag": fix.tag,
        "passed": verdict.passed,
        "injective": verdict.injective,
        "middle_exact": verdict.middle_exact,
        "surjective": verdict.surjective,
        "detail": verdict.detail,
        "pass": verdict.passed,
    }
    out.csv("hilbert_functions.csv", ["module", "degree", "dim"],
            [(name, d, v) for name, dims in series.items()
             for d, v in sorted(dims.items())])
    table = {0: series["A"], 1: series["B"], 2: series["C"]}
    out.figure(rpt.fig_dims_heatmap, "hilbert_functions.png", table,
               title=f"SES Hilbert functions (0=A,1=B,2=C): {fix.tag}",
               row_label="module", lo=lo, hi=hi)
    return payload


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torushom",
        description="Graded-module computations and verification suites "
        "for torus-equivariant cohomology fixtures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, multi=False):
        p = sub.add_parser(name, help=help_)
        if multi:
            p.add_argument("inputs", nargs="+", metavar="FIXTURE")
        else:
            p.add_argument("input", metavar="FIXTURE")
        _add_common(p)
        p.set_defaults(func=func)
        return p

    add("resolve", cmd_resolve, "minimal free resolution and Betti data")
    add("ext", cmd_ext, "Ext modules against the polynomial ring")
    add("invariants", cmd_invariants,
        "dimension, depth, Cohen-Macaulayness, syzygy order")
    add("complex-cohomology", cmd_complex_cohomology,
        "cohomology of a bounded complex fixture")
    add("ab-verify", cmd_ab_verify,
        "run the verification suites on orbit filtration bundles", multi=True)
    g = add("gkm", cmd_gkm, "cohomology and filtration data of a moment graph")
    g.add_argument("--emit-bundle", metavar="PATH",
                   help="write the derived orbit filtration bundle here")
    add("local-duality", cmd_local_duality,
        "windowed local cohomology against the dual Ext modules")
    add("ses-verify", cmd_ses_verify, "check a short exact sequence fixture")
    return parser


def run(args) -> int:
    out = rpt.OutputDir(args.out_dir)
    payload = args.func(args, out)
    doc = {
        "schema": rpt.REPORT_SCHEMA,
        "command": args.command,
        "inputs": getattr(args, "inputs", None) or [args.input],
        "options": {
            "max_degree": args.max_degree,
            "saturation_exponent": args.saturation_exponent,
            "iso_search_seed": args.iso_search_seed,
            "power_bound": args.power_bound,
        },
        "result": payload,
        "pass": bool(payload.get("pass", True)),
    }
    out.report(doc)
    text = rpt.dump_report(doc, args.json_out)
    if not args.json_out:
        sys.stdout.write(text)
    return 0 if doc["pass"] else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (FixtureError, PolyParseError, StabilizationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant violation (bug): {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
