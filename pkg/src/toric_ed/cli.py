"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 internal assertion, 3 cross-check
mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, TextIO

from . import __version__
from .closedform import (
    HypersimplexSpec,
    HypersurfaceSpec,
    canonical_curve,
    cayley_volume,
    curve_ged,
    curve_matrix,
    hypersimplex_cm,
    hypersimplex_matrix,
    hypersurface_ged,
    hypersurface_matrix,
    hypersurface_polars,
    surface_vertex_cm,
)
from .degrees import DegreeReport, cm_volumes_from_polar, compute_all, report_from_volumes
from .errors import InputError, InternalError, ParseError
from .intlinalg import Matrix, lattice_index
from .polytope import ToricInput, validate

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3

log = logging.getLogger("toric_ed")


def parse_matrix_file(path: str) -> Matrix:
    """Read whitespace-separated integers, one matrix row per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows: List[List[int]] = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                row = [int(tok) for tok in text.split()]
            except ValueError:
                raise ParseError(f"non-integer entry in {text!r}", lineno) from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(f"expected {width} entries, found {len(row)}", lineno)
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: no matrix rows found")
    return rows


@dataclass
class RunConfig:
    mode: str
    matrix_path: Optional[str] = None
    hypersurface: Optional[str] = None
    d: Optional[int] = None
    k: Optional[int] = None
    alpha: Optional[str] = None
    family: Optional[str] = None
    output_format: str = "text"
    emit_faces: bool = False
    emit_euler_table: bool = False
    parallel: bool = False
    generic: bool = False
    isolated_singularities: bool = False


# ---------------------------------------------------------------------------
# report rendering


def _faces_payload(inp: ToricInput, report: DegreeReport) -> List[Dict[str, Any]]:
    out = []
    for f in report.poset.faces:
        out.append({
            "dim": f.dim,
            "columns": inp.labels(f.members),
            "volume": report.table.vol[f.id],
            "eu": report.table.eu[f.id],
            "orbitIndex": report.table.orbit_index[f.id],
            "orbitEu": report.table.orbit_eu[f.id],
        })
    return out


def _euler_payload(inp: ToricInput, report: DegreeReport) -> List[Dict[str, Any]]:
    faces = report.poset.faces
    rows = []
    for (a, b), mu in report.table.mu.items():
        rows.append({"alpha": inp.labels(faces[a].members),
                     "beta": inp.labels(faces[b].members),
                     "mu": mu})
    rows.sort(key=lambda r: (len(r["beta"]), r["beta"], len(r["alpha"]), r["alpha"]))
    return rows


def _report_payload(report: DegreeReport, inp: Optional[ToricInput] = None,
                    config: Optional[RunConfig] = None) -> Dict[str, Any]:
    payload = report.to_dict()
    if inp is not None and config is not None and report.poset is not None:
        if config.emit_faces:
            payload["faces"] = _faces_payload(inp, report)
        if config.emit_euler_table:
            payload["eulerTable"] = _euler_payload(inp, report)
    return payload


def _fmt(value) -> str:
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return "[" + ", ".join("(" + ", ".join(map(str, v)) + ")" for v in value) + "]"
        return "(" + ", ".join(map(str, value)) + ")"
    return str(value)


def _write_text(doc: Dict[str, Any], out: TextIO, indent: str = "") -> None:
    for key in sorted(doc):
        value = doc[key]
        if key in ("faces", "eulerTable"):
            out.write(f"{indent}{key}:\n")
            for row in value:
                out.write(indent + "  " + "  ".join(f"{k}={_fmt(v)}" for k, v in row.items()) + "\n")
        elif isinstance(value, dict):
            out.write(f"{indent}{key}:\n")
            _write_text(value, out, indent + "  ")
        elif key == "warnings":
            for w in value:
                out.write(f"{indent}warning: {w}\n")
        else:
            out.write(f"{indent}{key}: {_fmt(value)}\n")


def emit(doc: Dict[str, Any], fmt: str, out: TextIO) -> None:
    doc = {"schemaVersion": SCHEMA_VERSION, **doc}
    if fmt == "json":
        json.dump(doc, out, sort_keys=True, indent=2)
        out.write("\n")
    else:
        _write_text(doc, out)


# ---------------------------------------------------------------------------
# modes


def _generic(config: RunConfig, out: TextIO) -> int:
    inp = validate(parse_matrix_file(config.matrix_path))
    report = compute_all(inp, parallel=config.parallel)
    emit({"mode": "generic", **_report_payload(report, inp, config)},
         config.output_format, out)
    return EXIT_OK


def _hypersimplex_closed(spec: HypersimplexSpec) -> DegreeReport:
    raw_index = spec.k  # [Z^d : ZA] for 0/1 columns with k ones
    return report_from_volumes(hypersimplex_cm(spec), spec.n, raw_index)


def _hypersurface_closed(spec: HypersurfaceSpec) -> DegreeReport:
    deltas = hypersurface_polars(spec)
    return report_from_volumes(cm_volumes_from_polar(deltas), spec.n, 1)


def _curve_closed(alpha: List[int]) -> DegreeReport:
    a = canonical_curve(alpha)
    v = [a[1] - a[0] + a[-1] - a[-2], a[-1] - a[0]]
    raw = curve_matrix(sorted(set(alpha)))
    report = report_from_volumes(v, len(a), lattice_index(raw, 2))
    if report.ged_degree != curve_ged(a):
        raise InternalError("curve report disagrees with the curve formula")
    return report


def _parse_ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _family(config: RunConfig, out: TextIO) -> int:
    if config.mode == "hypersimplex":
        spec = HypersimplexSpec(config.d, config.k)
        report = _hypersimplex_closed(spec)
        doc = {"mode": "hypersimplex", "d": spec.d, "k": spec.k}
        inp = hypersimplex_matrix(spec) if config.generic else None
    elif config.mode == "hypersurface":
        spec = HypersurfaceSpec.parse(config.hypersurface)
        report = _hypersurface_closed(spec)
        doc = {"mode": "hypersurface", "c": list(spec.c), "r": spec.r}
        inp = validate(hypersurface_matrix(spec)) if config.generic else None
    else:
        alpha = _parse_ints(config.alpha)
        report = _curve_closed(alpha)
        doc = {"mode": "curve", "alpha": canonical_curve(alpha)}
        inp = validate(curve_matrix(alpha)) if config.generic else None
    if inp is not None:
        report = compute_all(inp, parallel=config.parallel)
        doc["source"] = "generic"
    else:
        doc["source"] = "closed-form"
    doc.update(_report_payload(report, inp, config))
    emit(doc, config.output_format, out)
    return EXIT_OK


def _compare(generic: DegreeReport, closed: Dict[str, Any]) -> List[str]:
    mismatches = []
    got = generic.to_dict()
    for key, want in closed.items():
        if got.get(key) != want:
            mismatches.append(f"{key}: generic {got.get(key)} != closed form {want}")
    return mismatches


def _cross_check(config: RunConfig, out: TextIO) -> int:
    fam = config.family
    if fam == "hypersimplex":
        spec = HypersimplexSpec(config.d, config.k)
        inp = hypersimplex_matrix(spec)
        closed = _hypersimplex_closed(spec).to_dict()
        closed = {k: closed[k] for k in ("cmVolumes", "polarDegrees", "gedDegree")}
    elif fam == "hypersurface":
        spec = HypersurfaceSpec.parse(config.hypersurface)
        inp = validate(hypersurface_matrix(spec))
        closed = {"polarDegrees": hypersurface_polars(spec),
                  "gedDegree": hypersurface_ged(spec)}
    elif fam == "curve":
        alpha = canonical_curve(_parse_ints(config.alpha))
        inp = validate(curve_matrix(alpha))
        closed = {"gedDegree": curve_ged(alpha)}
    elif fam == "surface":
        inp = validate(parse_matrix_file(config.matrix_path))
        if inp.d != 3:
            raise InputError(f"surface cross-check needs rank 3, got {inp.d}")
        closed = {}
    else:
        raise InputError(f"unknown cross-check family {fam!r}")

    report = compute_all(inp, parallel=config.parallel)
    extra: Dict[str, Any] = {}
    if fam == "hypersurface":
        extra["cayleyVolume"] = cayley_volume(spec)
        closed_cayley = {"gedDegree": extra["cayleyVolume"]}
    if fam == "surface":
        v0, v1, v2 = report.cm_volumes
        closed = {"polarDegrees": [3 * v2 - 2 * v1 + v0, 3 * v2 - v1, v2],
                  "gedDegree": 7 * v2 - 3 * v1 + v0}
    mismatches = _compare(report, closed)
    if fam == "hypersurface":
        mismatches += [m.replace("closed form", "Cayley volume")
                       for m in _compare(report, closed_cayley)]
    if fam == "surface" and config.isolated_singularities:
        verts = report.poset.vertices()
        generic_cm = [report.table.vol[v.id] * report.table.eu[v.id] for v in verts]
        closed_cm = [surface_vertex_cm(inp, v, assume_isolated_singularities=True)
                     for v in verts]
        extra["vertexCm"] = {"generic": generic_cm, "closedForm": closed_cm}
        if generic_cm != closed_cm:
            mismatches.append(f"vertex CM volumes: generic {generic_cm} != closed form {closed_cm}")

    doc = {
        "mode": "cross-check",
        "family": fam,
        "generic": _report_payload(report, inp, config),
        "closedForm": closed,
        "agree": not mismatches,
        "mismatches": mismatches,
        **extra,
    }
    emit(doc, config.output_format, out)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def run(config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Execute one configuration and return the process exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if config.mode == "generic":
            return _generic(config, out)
        if config.mode in ("hypersimplex", "hypersurface", "curve"):
            return _family(config, out)
        if config.mode == "cross-check":
            return _cross_check(config, out)
        raise InputError(f"unknown mode {config.mode!r}")
    except (InputError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


# ---------------------------------------------------------------------------
# argument parsing


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    p.add_argument("--faces", dest="emit_faces", action="store_true",
                   help="list every face with volume and Euler obstruction")
    p.add_argument("--euler-table", dest="emit_euler_table", action="store_true",
                   help="list every subdiagram volume")
    p.add_argument("--parallel", action="store_true",
                   help="compute subdiagram volumes in worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-ed",
        description="Polar degrees and generic ED degree of projective toric varieties.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="generic pipeline on a matrix file")
    p.add_argument("--matrix", required=True, help="whitespace-separated integer matrix")
    _add_output_flags(p)

    p = sub.add_parser("hypersimplex", help="hypersimplex Delta_{d,k}")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--generic", action="store_true", help="run the generic pipeline instead")
    _add_output_flags(p)

    p = sub.add_parser("hypersurface", help="binomial hypersurface, e.g. --c 2,3/1,4")
    p.add_argument("--c", required=True, dest="hypersurface")
    p.add_argument("--generic", action="store_true", help="run the generic pipeline instead")
    _add_output_flags(p)

    p = sub.add_parser("curve", help="toric curve with exponents, e.g. --alpha 0,1,3")
    p.add_argument("--alpha", required=True)
    p.add_argument("--generic", action="store_true", help="run the generic pipeline instead")
    _add_output_flags(p)

    p = sub.add_parser("cross-check", help="compare the generic pipeline with a closed form")
    p.add_argument("family", choices=("hypersimplex", "hypersurface", "curve", "surface"))
    p.add_argument("-d", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--c", dest="hypersurface")
    p.add_argument("--alpha")
    p.add_argument("--matrix")
    p.add_argument("--isolated-singularities", action="store_true",
                   help="also compare vertex CM volumes with the complementary-area formula")
    _add_output_flags(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    mode = {"compute": "generic"}.get(args.command, args.command)
    cfg = RunConfig(
        mode=mode,
        matrix_path=getattr(args, "matrix", None),
        hypersurface=getattr(args, "hypersurface", None),
        d=getattr(args, "d", None),
        k=getattr(args, "k", None),
        alpha=getattr(args, "alpha", None),
        family=getattr(args, "family", None),
        output_format=args.output_format,
        emit_faces=args.emit_faces,
        emit_euler_table=args.emit_euler_table,
        parallel=args.parallel,
        generic=getattr(args, "generic", False),
        isolated_singularities=getattr(args, "isolated_singularities", False),
    )
    if mode == "cross-check":
        needed = {"hypersimplex": ("d", "k"), "hypersurface": ("hypersurface",),
                  "curve": ("alpha",), "surface": ("matrix_path",)}[cfg.family]
        missing = [n for n in needed if getattr(cfg, n) is None]
        if missing:
            raise InputError(f"cross-check {cfg.family} needs {', '.join(missing)}")
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
