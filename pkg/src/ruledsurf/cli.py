"""Command-line front end.

Subcommands: ``analyze``, ``compare``, ``reconstruct``, ``verify``,
``export``.  Exit codes: 0 success (for ``compare``: similar), 1 negative
result (dissimilar / failed checks), 2 usage or file errors, 3 geometric
precondition failures, 4 kind mismatch between compared surfaces.

Machine output is deterministic: JSON is sorted and timestamp-free (the
library version travels in its own field) and CSV/OBJ numbers are written
with 17 significant digits and LF line endings.  Default tolerances may be
overridden by the ``RULED_TOL_OVERRIDES`` environment variable
(``tol_null=...,tol_frame=...,tol_similar=...``); explicit flags win over
the environment.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import GeometryError, KindMismatchError, ParseError
from .lorentz import DEFAULT_NULL_TOL, causal_character
from .reconstruct import build_surface, integrate_frenet
from .similarity import (DEFAULT_SIMILARITY_TOL, SimilarityMode,
                         are_similar_ruled, curvature_ratio_profile,
                         total_curvature_param)
from .surfaces import (DEFAULT_FRAME_TOL, SurfaceType, classify,
                       developability, distribution_parameter, frame_field,
                       surface_point, verify_frenet)
from .surfacefile import (load_profile, load_surface, sample_surface,
                          save_sampled_surface, write_obj)
from .verify import run_builtin_suite, run_surface_checks

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_GEOMETRY = 3
EXIT_KIND_MISMATCH = 4


@dataclasses.dataclass
class Tolerances:
    tol_null: float = DEFAULT_NULL_TOL
    tol_frame: float = DEFAULT_FRAME_TOL
    tol_similar: float = DEFAULT_SIMILARITY_TOL


def _resolve_tolerances(args) -> Tolerances:
    tols = Tolerances()
    env = os.environ.get("RULED_TOL_OVERRIDES", "")
    if env:
        for item in env.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in ("tol_null", "tol_frame", "tol_similar"):
                print(f"warning: ignoring RULED_TOL_OVERRIDES entry {item!r}",
                      file=sys.stderr)
                continue
            try:
                setattr(tols, key, float(value))
            except ValueError:
                print(f"warning: ignoring non-numeric RULED_TOL_OVERRIDES "
                      f"entry {item!r}", file=sys.stderr)
    for key, flag in (("tol_null", "tol_null"), ("tol_frame", "tol_frame"),
                      ("tol_similar", "tol_similar")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(tols, key, value)
    return tols


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(row) for row in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        x = float(obj) + 0.0      # drop negative zero
        return None if not np.isfinite(x) else x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _print_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
    sys.stdout.write("\n")


def _write_table_csv(path: str, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    rows = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(names) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _add_tol_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-null", dest="tol_null", type=float, default=None,
                        help="relative null-band tolerance")
    parser.add_argument("--tol-frame", dest="tol_frame", type=float, default=None,
                        help="frame residual tolerance")
    parser.add_argument("--tol-similar", dest="tol_similar", type=float,
                        default=None, help="similarity profile tolerance")


def cmd_analyze(args) -> int:
    tols = _resolve_tolerances(args)
    spec, _ = load_surface(args.input)
    name = spec.name or os.path.basename(args.input)
    warnings: list[str] = []
    lines = [f"surface: {name}"]
    classification = classify(spec)
    lines.append(f"classification: {classification.value}")
    summary: dict = {"version": __version__, "name": name,
                     "classification": classification.value}
    mid = 0.5 * (spec.u_min + spec.u_max)
    ruling_char = causal_character(spec.direction.position(mid), tol_null=tols.tol_null)
    lines.append(f"ruling character: {ruling_char.value}")
    summary["ruling_character"] = ruling_char.value

    if classification is SurfaceType.CYLINDRICAL:
        warnings.append("constant ruling direction: frame sections omitted")
        summary["warnings"] = warnings
        lines.append("warnings: " + "; ".join(warnings))
        _emit_analysis(args, lines, summary, tables=None)
        return EXIT_OK

    u = spec.grid()
    delta = distribution_parameter(spec, u)
    frame = frame_field(spec)
    residuals = verify_frenet(frame)
    dev = developability(spec, tol=tols.tol_frame)
    phi_table = total_curvature_param(frame)
    f_profile = curvature_ratio_profile(frame)

    lines.append(f"eps: q={frame.eps_q:+d} h={frame.eps_h:+d} a={frame.eps_a:+d}")
    lines.append(f"samples: {frame.sample_count}")
    lines.append(f"striction arc length: {frame.s[-1]:.12g}")
    lines.append(f"k1 range: [{frame.k1.min() + 0.0:.12g}, {frame.k1.max() + 0.0:.12g}]")
    lines.append(f"k2 range: [{frame.k2.min() + 0.0:.12g}, {frame.k2.max() + 0.0:.12g}]")
    lines.append(f"delta range: [{delta.min() + 0.0:.12g}, {delta.max() + 0.0:.12g}]")
    lines.append(f"total curvature: {phi_table.total:.12g}")
    lines.append(f"developable: {str(dev.developable).lower()}")
    worst = max(residuals.max_ode_residual, residuals.max_identity_residual,
                residuals.max_orthonormality_residual)
    lines.append(f"frenet residuals: ode={residuals.max_ode_residual:.3e} "
                 f"identities={residuals.max_identity_residual:.3e} "
                 f"orthonormality={residuals.max_orthonormality_residual:.3e}")
    if worst > tols.tol_frame:
        warnings.append(f"frenet residuals exceed tol_frame={tols.tol_frame:g}")
    if dev.character_mismatch:
        warnings.append("striction tangent and ruling have different causal "
                        "characters: tilt-angle decomposition not applicable")
    lines.append("warnings: " + ("; ".join(warnings) if warnings else "(none)"))

    summary.update({
        "eps": {"q": frame.eps_q, "h": frame.eps_h, "a": frame.eps_a},
        "developable": dev.developable,
        "character_mismatch": dev.character_mismatch,
        "max_ruling_deviation": dev.max_ruling_deviation,
        "delta_range": [float(delta.min()), float(delta.max())],
        "k1_range": [float(frame.k1.min()), float(frame.k1.max())],
        "k2_range": [float(frame.k2.min()), float(frame.k2.max())],
        "total_curvature": phi_table.total,
        "frenet_residuals": {
            "ode": residuals.max_ode_residual,
            "identities": residuals.max_identity_residual,
            "orthonormality": residuals.max_orthonormality_residual,
        },
        "warnings": warnings,
    })
    f_on_s = frame.k2 / frame.k1
    tables = {"u": frame.u, "s": frame.s, "k1": frame.k1, "k2": frame.k2,
              "phi": phi_table.phi, "f": f_on_s}
    _emit_analysis(args, lines, summary, tables)
    return EXIT_OK


def _emit_analysis(args, lines: list[str], summary: dict,
                   tables: dict[str, np.ndarray] | None) -> None:
    sys.stdout.write("\n".join(lines) + "\n")
    out_dir = getattr(args, "out", None)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "summary.json"), "w",
                  encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(_jsonable(summary), indent=2, sort_keys=True))
            fh.write("\n")
        if tables is not None:
            _write_table_csv(os.path.join(out_dir, "tables.csv"), tables)


def cmd_compare(args) -> int:
    tols = _resolve_tolerances(args)
    tol = args.tol if args.tol is not None else tols.tol_similar
    spec_a, _ = load_surface(args.a)
    spec_b, _ = load_surface(args.b)
    mode = (SimilarityMode.BY_DEFINITION if args.mode == "definition"
            else SimilarityMode.BY_INVARIANTS)
    frame_a = frame_field(spec_a)
    frame_b = frame_field(spec_b)
    report = are_similar_ruled(frame_a, frame_b, tol=tol, mode=mode,
                               phi_offset_search=args.offset_search)
    prof_a = curvature_ratio_profile(frame_a)
    prof_b = curvature_ratio_profile(frame_b)
    payload = {
        "version": __version__,
        "a": spec_a.name or os.path.basename(args.a),
        "b": spec_b.name or os.path.basename(args.b),
        "mode": report.mode.value,
        "tol": tol,
        "is_similar": report.is_similar,
        "f_profile_deviation": report.f_profile_deviation,
        "lambda_consistency": report.lambda_consistency,
        "ruling_deviation": report.ruling_deviation,
        "central_normal_deviation": report.central_normal_deviation,
        "asymptotic_normal_sign": report.asymptotic_normal_sign,
        "lambda_table": np.asarray(report.lambda_table),
        "f_profile_a": np.column_stack([prof_a.phi, prof_a.f]),
        "f_profile_b": np.column_stack([prof_b.phi, prof_b.f]),
        "notes": report.notes,
    }
    _print_json(payload)
    return EXIT_OK if report.is_similar else EXIT_NEGATIVE


def cmd_reconstruct(args) -> int:
    profile_file = load_profile(args.profile)
    steps = args.steps if args.steps is not None else profile_file.steps
    if steps < 16:
        print(f"error: steps must be at least 16, got {steps}", file=sys.stderr)
        return EXIT_USAGE
    theta = args.theta if args.theta is not None else profile_file.theta
    if args.developable:
        theta = None
    frame = integrate_frenet(profile_file.profile, steps=steps)
    name = profile_file.profile.name or "reconstructed"
    if theta is None:
        spec = build_surface(frame, mode="developable", name=name)
    else:
        spec = build_surface(frame, mode="angle", theta=theta, name=name)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    u, k, q = sample_surface(spec)
    def_path = save_sampled_surface(out_dir, name, u, k, q)
    v = np.linspace(args.v_min, args.v_max, args.nv)
    nu = min(len(u), args.nu)
    ug = np.linspace(u[0], u[-1], nu)
    points = surface_point(spec, ug[:, None], v[None, :])
    obj_path = os.path.join(out_dir, f"{name}.obj")
    write_obj(obj_path, points)
    sys.stdout.write(f"integrated {steps} steps over phi in "
                     f"[{_fmt(frame.u[0])}, {_fmt(frame.u[-1])}]\n")
    sys.stdout.write(f"striction arc length: {_fmt(frame.s[-1])}\n")
    sys.stdout.write(f"wrote {def_path}\n")
    sys.stdout.write(f"wrote {os.path.join(out_dir, name + '.csv')}\n")
    sys.stdout.write(f"wrote {obj_path}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input is None and args.suite is None:
        args.suite = "builtin"
    if args.suite is not None:
        if args.suite != "builtin":
            print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
            return EXIT_USAGE
        checks = run_builtin_suite(corrupt_frame=args.inject_corrupt_frame)
    else:
        spec, _ = load_surface(args.input)
        checks = run_surface_checks(spec)
    width = max(len(c.name) for c in checks)
    failed = 0
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        failed += 0 if c.passed else 1
        sys.stdout.write(f"{status} {c.name.ljust(width)} "
                         f"measured={c.measured:.3e} tol={c.tolerance:g}\n")
    sys.stdout.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_NEGATIVE


def cmd_export(args) -> int:
    spec, _ = load_surface(args.input)
    v = np.linspace(args.v_min, args.v_max, args.nv)
    ug = np.linspace(spec.u_min, spec.u_max, args.nu)
    points = surface_point(spec, ug[:, None], v[None, :])
    write_obj(args.out, points)
    sys.stdout.write(f"wrote {args.out} ({args.nu}x{args.nv} grid)\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruledsurf",
        description="Analyze, compare, and reconstruct ruled surfaces in "
                    "Minkowski 3-space.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a surface and report its frame")
    p.add_argument("input", help="surface definition file")
    p.add_argument("--out", default=None, help="directory for CSV tables and "
                                               "JSON summary")
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("compare", help="similarity test for two surfaces")
    p.add_argument("a", help="first surface definition file")
    p.add_argument("b", help="second surface definition file")
    p.add_argument("--mode", choices=("invariants", "definition"),
                   default="invariants")
    p.add_argument("--tol", type=float, default=None,
                   help="profile agreement tolerance (default 1e-4)")
    p.add_argument("--offset-search", action="store_true",
                   help="search a scalar offset between the curvature clocks")
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("reconstruct", help="integrate a frame from an invariant "
                                           "profile and build the surface")
    p.add_argument("profile", help="profile definition file")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--theta", default=None,
                   help="tilt-angle expression in s for the built base curve")
    p.add_argument("--developable", action="store_true",
                   help="build along the striction curve (ignores theta)")
    p.add_argument("--out", default=None, help="output directory (default .)")
    p.add_argument("--v-min", dest="v_min", type=float, default=-1.0)
    p.add_argument("--v-max", dest="v_max", type=float, default=1.0)
    p.add_argument("--nu", type=int, default=101, help="mesh samples along s")
    p.add_argument("--nv", type=int, default=9, help="mesh samples along v")
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("input", nargs="?", default=None,
                   help="surface definition file (default: builtin corpus)")
    p.add_argument("--suite", default=None, help="named suite: builtin")
    p.add_argument("--inject-corrupt-frame", action="store_true",
                   help=argparse.SUPPRESS)
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export", help="export a surface mesh as OBJ")
    p.add_argument("input", help="surface definition file")
    p.add_argument("--out", required=True, help="output OBJ path")
    p.add_argument("--v-min", dest="v_min", type=float, default=-1.0)
    p.add_argument("--v-max", dest="v_max", type=float, default=1.0)
    p.add_argument("--nu", type=int, default=101)
    p.add_argument("--nv", type=int, default=9)
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KindMismatchError as exc:
        print(f"error: KindMismatchError: {exc}", file=sys.stderr)
        return EXIT_KIND_MISMATCH
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
