"""JSON schemas for modules, homs, complexes, moment graphs and bundles.

Schema tags:
  torushom-module/1   {"ring_rank", "generators", "relations"}
  torushom-complex/1  {"rank", "start", "positions", "differentials", ...}
  torushom-graph/1    {"rank", "vertices", "edges"}
  torushom-ses/1      {"rank", "tag", "a", "b", "c", "f", "g"}
  torushom-bundle/1   one orbit-filtration fixture per file

Relations are rows: entry k of a relation row is the coefficient of
generator k.  Hom matrices are rows over target generators, columns over
source generators.  Polynomials use the text form `c*t1^a1*...*tr^ar`
with exact rational coefficients.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Dict, List, Optional

from .atiyah_bredon import (LocalizationFixture, LocallyFreeFixture,
                            OrbitFiltrationData, PALPair, PDMetadata,
                            SegmentFixture, SESFixture)
from .complexes import GradedComplex
from .errors import FixtureError
from .gkm import Edge, MomentGraph
from .module import FPHom, FPModule, vec_degree, vec_to_polys
from .ring import GradedPoly, PolyParseError, format_poly, parse_poly

FIXTURE_PATH_ENV = "TORUSHOM_FIXTURE_PATH"

MODULE_SCHEMA = "torushom-module/1"
COMPLEX_SCHEMA = "torushom-complex/1"
GRAPH_SCHEMA = "torushom-graph/1"
SES_SCHEMA = "torushom-ses/1"
BUNDLE_SCHEMA = "torushom-bundle/1"


# --------------------------------------------------------------------------
# modules and matrices
# --------------------------------------------------------------------------

def module_to_json(M: FPModule) -> dict:
    rows = []
    for col in M.presentation.columns():
        polys = vec_to_polys(col, M.ngens, M.rank)
        rows.append([format_poly(p) for p in polys])
    return {
        "schema": MODULE_SCHEMA,
        "ring_rank": M.rank,
        "generators": list(M.gen_degrees),
        "relations": rows,
    }


def module_from_json(doc: dict) -> FPModule:
    if not isinstance(doc, dict):
        raise FixtureError("module fixture must be an object")
    try:
        rank = int(doc["ring_rank"])
        gens = [int(d) for d in doc["generators"]]
        relations = doc.get("relations", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureError(f"bad module fixture: {exc}") from exc
    cols = []
    degs = []
    for row_idx, row in enumerate(relations):
        if len(row) != len(gens):
            raise FixtureError(
                f"relation {row_idx} has {len(row)} entries, expected {len(gens)}")
        col = {}
        polys = []
        for i, text in enumerate(row):
            p = parse_poly(str(text), rank)
            polys.append(p)
            for e, c in p.terms.items():
                col[(i, e)] = c
        if not col:
            continue
        from .module import FreeModule
        deg = vec_degree(col, FreeModule(rank, tuple(gens)))
        cols.append(col)
        degs.append(deg)
    return FPModule.from_columns(rank, gens, cols, degs)


def matrix_to_json(matrix) -> List[List[str]]:
    return [[format_poly(entry) for entry in row] for row in matrix]


def hom_from_json(source: FPModule, target: FPModule, rows) -> FPHom:
    rank = source.rank
    if len(rows) != target.ngens:
        raise FixtureError(
            f"hom matrix has {len(rows)} rows, expected {target.ngens}")
    matrix = []
    for row in rows:
        if len(row) != source.ngens:
            raise FixtureError(
                f"hom matrix row has {len(row)} entries, expected {source.ngens}")
        matrix.append([parse_poly(str(x), rank) for x in row])
    if not rows and source.ngens and target.ngens == 0:
        matrix = []
    return FPHom(source, target, matrix)


def hom_to_json(h: FPHom) -> List[List[str]]:
    return matrix_to_json(h.free_hom.matrix)


# --------------------------------------------------------------------------
# moment graphs
# --------------------------------------------------------------------------

def graph_to_json(g: MomentGraph) -> dict:
    return {
        "schema": GRAPH_SCHEMA,
        "rank": g.rank,
        "vertices": list(g.vertices),
        "edges": [{"v": e.v, "w": e.w, "weight": format_poly(e.weight)}
                  for e in g.edges],
    }


def graph_from_json(doc: dict) -> MomentGraph:
    try:
        rank = int(doc["rank"])
        vertices = [str(v) for v in doc["vertices"]]
        edges = [Edge(str(e["v"]), str(e["w"]),
                      parse_poly(str(e["weight"]), rank))
                 for e in doc["edges"]]
    except (KeyError, TypeError, ValueError, PolyParseError) as exc:
        raise FixtureError(f"bad moment graph: {exc}") from exc
    return MomentGraph(rank, vertices, edges)


# --------------------------------------------------------------------------
# short exact sequences
# --------------------------------------------------------------------------

def ses_to_json(fix: SESFixture) -> dict:
    return {
        "schema": SES_SCHEMA,
        "rank": fix.f.source.rank,
        "tag": fix.tag,
        "a": module_to_json(fix.f.source),
        "b": module_to_json(fix.f.target),
        "c": module_to_json(fix.g.target),
        "f": hom_to_json(fix.f),
        "g": hom_to_json(fix.g),
    }


def ses_from_json(doc: dict) -> SESFixture:
    a = module_from_json(doc["a"])
    b = module_from_json(doc["b"])
    c = module_from_json(doc["c"])
    f = hom_from_json(a, b, doc["f"])
    g = hom_from_json(b, c, doc["g"])
    return SESFixture(tag=str(doc.get("tag", "ses")), f=f, g=g)


# --------------------------------------------------------------------------
# complexes
# --------------------------------------------------------------------------

def complex_from_json(doc: dict) -> GradedComplex:
    positions = doc.get("positions")
    if not positions:
        raise FixtureError("complex fixture needs positions")
    keys = sorted(int(k) for k in positions)
    if keys != list(range(keys[0], keys[-1] + 1)):
        raise FixtureError("complex positions must be consecutive")
    modules = [module_from_json(positions[str(k)]) for k in keys]
    diffs = []
    diff_docs = doc.get("differentials", {})
    for idx, k in enumerate(keys[:-1]):
        rows = diff_docs.get(str(k))
        if rows is None:
            diffs.append(FPHom.zero(modules[idx], modules[idx + 1]))
        else:
            diffs.append(hom_from_json(modules[idx], modules[idx + 1], rows))
    aug = None
    if "augmentation" in doc:
        aug_doc = doc["augmentation"]
        if "source" not in aug_doc:
            raise FixtureError("augmentation needs its source module")
        src = module_from_json(aug_doc["source"])
        aug = hom_from_json(src, modules[0], aug_doc["matrix"])
    return GradedComplex(keys[0], modules, diffs, augmentation=aug)


# --------------------------------------------------------------------------
# orbit filtration bundles
# --------------------------------------------------------------------------

def bundle_to_json(data: OrbitFiltrationData) -> dict:
    doc = {
        "schema": BUNDLE_SCHEMA,
        "name": data.name,
        "rank": data.rank,
        "strata": {str(i): module_to_json(m) for i, m in sorted(data.strata.items())},
        "differentials": {str(i): hom_to_json(h)
                          for i, h in sorted(data.differentials.items())},
        "total": module_to_json(data.total),
        "augmentation": hom_to_json(data.augmentation),
        "truncated": data.truncated,
    }
    if data.homology is not None:
        doc["homology"] = module_to_json(data.homology)
    if data.pd is not None:
        doc["pd"] = {"orientable": data.pd.orientable, "n": data.pd.n,
                     "coefficients": data.pd.coefficients}
    if data.ses_fixtures:
        doc["ses"] = [ses_to_json(f) for f in data.ses_fixtures]
    if data.localization is not None:
        loc = {"elements": [format_poly(e) for e in data.localization.elements]}
        if data.localization.hom is None:
            loc["map"] = "augmentation"
        else:
            loc["map"] = "explicit"
            loc["target"] = module_to_json(data.localization.hom.target)
            loc["matrix"] = hom_to_json(data.localization.hom)
        doc["localization"] = loc
    if data.locally_free is not None:
        doc["locally_free"] = {
            "p": data.locally_free.p,
            "quotient": module_to_json(data.locally_free.quotient),
        }
    if data.segments:
        doc["segments"] = [{"i": s.i, "j": s.j, "module": module_to_json(s.module)}
                           for s in data.segments]
    if data.pal_pairs:
        doc["pal_pairs"] = [{"name": p.name, "n": p.n,
                             "lhs": module_to_json(p.lhs),
                             "rhs": module_to_json(p.rhs)}
                            for p in data.pal_pairs]
    return doc


def bundle_from_json(doc: dict) -> OrbitFiltrationData:
    try:
        rank = int(doc["rank"])
        name = str(doc.get("name", "bundle"))
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureError(f"bad bundle: {exc}") from exc
    strata = {int(i): module_from_json(m)
              for i, m in doc.get("strata", {}).items()}
    for i in range(rank + 1):
        strata.setdefault(i, FPModule.zero(rank))
    total = module_from_json(doc["total"])
    diffs = {}
    for key, rows in doc.get("differentials", {}).items():
        i = int(key)
        if i + 1 not in strata:
            raise FixtureError(f"differential {i} has no target stratum")
        diffs[i] = hom_from_json(strata[i], strata[i + 1], rows)
    augmentation = hom_from_json(total, strata[0], doc["augmentation"])
    homology = module_from_json(doc["homology"]) if "homology" in doc else None
    pd = None
    if "pd" in doc:
        pd_doc = doc["pd"]
        pd = PDMetadata(orientable=bool(pd_doc["orientable"]),
                        n=int(pd_doc["n"]),
                        coefficients=str(pd_doc.get("coefficients", "constant")))
    ses = [ses_from_json(s) for s in doc.get("ses", [])]
    localization = None
    if "localization" in doc:
        loc = doc["localization"]
        elements = [parse_poly(str(e), rank) for e in loc["elements"]]
        hom = None
        if loc.get("map", "augmentation") == "explicit":
            target = module_from_json(loc["target"])
            hom = hom_from_json(total, target, loc["matrix"])
        localization = LocalizationFixture(elements=elements, hom=hom)
    locally_free = None
    if "locally_free" in doc:
        lf = doc["locally_free"]
        locally_free = LocallyFreeFixture(
            p=int(lf["p"]), quotient=module_from_json(lf["quotient"]))
    segments = [SegmentFixture(i=int(s["i"]), j=int(s["j"]),
                               module=module_from_json(s["module"]))
                for s in doc.get("segments", [])]
    pal_pairs = [PALPair(name=str(p.get("name", "pair")), n=int(p["n"]),
                         lhs=module_from_json(p["lhs"]),
                         rhs=module_from_json(p["rhs"]))
                 for p in doc.get("pal_pairs", [])]
    return OrbitFiltrationData(
        name=name, rank=rank, strata=strata, differentials=diffs,
        total=total, augmentation=augmentation, homology=homology, pd=pd,
        ses_fixtures=ses, localization=localization,
        locally_free=locally_free, segments=segments, pal_pairs=pal_pairs,
        truncated=bool(doc.get("truncated", False)))


# --------------------------------------------------------------------------
# file handling
# --------------------------------------------------------------------------

def resolve_path(path: str) -> str:
    """Resolve a fixture path, consulting the fixture search path env var."""
    if os.path.exists(path):
        return path
    if not os.path.isabs(path):
        for base in os.environ.get(FIXTURE_PATH_ENV, "").split(os.pathsep):
            if not base:
                continue
            candidate = os.path.join(base, path)
            if os.path.exists(candidate):
                return candidate
    raise FixtureError(f"fixture file not found: {path}")


def load_json(path: str) -> dict:
    with open(resolve_path(path), "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FixtureError(f"{path}: invalid JSON: {exc}") from exc


def dump_json(doc: dict, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_bundled_fixtures(directory: str) -> List[str]:
    """Write the bundled fixture library (bundles, graphs, module fixtures)."""
    from . import fixtures
    from .invariants import INFINITY  # noqa: F401 (documentation import)
    from .ring import GradedPoly

    os.makedirs(directory, exist_ok=True)
    written = []

    def emit(name, doc):
        path = os.path.join(directory, name)
        dump_json(doc, path)
        written.append(path)

    for name, build in fixtures.BUNDLED_BUILDERS.items():
        emit(f"{name}.json", bundle_to_json(build()))
    for name, build in fixtures.BUNDLED_GRAPHS.items():
        emit(f"{name}.graph.json", graph_to_json(build()))

    t1 = GradedPoly.variable(1, 0)
    r2t1 = GradedPoly.variable(2, 0)
    r2t2 = GradedPoly.variable(2, 1)
    emit("koszul-k.json", module_to_json(FPModule.cyclic(2, 0, [r2t1, r2t2])))
    emit("r1-free.json", module_to_json(FPModule.free(1, [0])))
    emit("r1-t2.json", module_to_json(FPModule.cyclic(1, 0, [t1 * t1])))
    emit("s2-duflot.ses.json",
         ses_to_json(fixtures._sphere_duflot_ses()))
    return written


def main(argv=None):
    """Regenerate the bundled fixture directory: python -m torushom.fixtureio DIR"""
    import sys
    args = sys.argv[1:] if argv is None else argv
    directory = args[0] if args else "fixtures"
    written = write_bundled_fixtures(directory)
    for path in written:
        print(path)


if __name__ == "__main__":
    main()
