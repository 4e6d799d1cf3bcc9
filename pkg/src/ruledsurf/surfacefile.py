"""Text file formats: surface definitions, sample CSVs, profiles, OBJ meshes.

Surface definition files are flat ``key = value`` text (``#`` starts a
comment).  A worked example::

    name = H1
    kind = analytic
    base = u, 0, 0
    ruling = 0, cos(u), sin(u)
    domain = 0, 2
    samples = 512

``kind = sampled`` replaces ``base``/``ruling`` with ``sampled = table.csv``,
a path (relative to the definition file) to a CSV with header
``u,kx,ky,kz,qx,qy,qz``, at least 16 rows, strictly increasing in ``u``.

Profile files describe a frame reconstruction::

    name = demo
    kind = timelike-
    f = 0.5
    k1 = 1
    phi = 0, 2
    steps = 2000
    theta = 0.3        # optional: tilt angle for the built surface

All numeric output (CSV, OBJ) uses 17 significant digits, ``.`` decimal
separator, and LF line endings, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

from .curves import ExprCurve, SampledCurve
from .errors import ParseError
from .reconstruct import FrameKind, InvariantProfile
from .surfaces import RuledSurfaceSpec

CSV_HEADER = "u,kx,ky,kz,qx,qy,qz"


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_kv(text: str, source: str) -> tuple[dict[str, str], dict[str, int]]:
    """Parse flat key = value lines; returns values and byte offsets per key."""
    values: dict[str, str] = {}
    offsets: dict[str, int] = {}
    offset = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            if "=" not in line:
                raise ParseError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}",
                                 offset, {"key = value"})
            key, _, value = line.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if key in values:
                raise ParseError(f"{source}:{lineno}: duplicate key {key!r}", offset)
            if not value:
                raise ParseError(f"{source}:{lineno}: empty value for key {key!r}", offset)
            values[key] = value
            offsets[key] = offset
        offset += len(raw) + 1
    return values, offsets


def _split3(value: str, key: str, source: str, offset: int) -> tuple[str, str, str]:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 3:
        raise ParseError(f"{source}: key {key!r} needs 3 comma-separated entries",
                         offset)
    return parts[0], parts[1], parts[2]


def _parse_float(value: str, key: str, source: str, offset: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"{source}: key {key!r}: not a number: {value!r}",
                         offset) from None


@dataclass(frozen=True)
class SurfaceDefinition:
    """Validated contents of a surface definition file."""
    name: str
    kind: str                               # "analytic" | "sampled"
    base: tuple[str, str, str] | None       # expressions in u (analytic)
    ruling: tuple[str, str, str] | None     # expressions in u (analytic)
    sampled: str | None                     # CSV path (sampled)
    domain: tuple[float, float] | None
    samples: int


def parse_definition(text: str, source: str = "<string>") -> SurfaceDefinition:
    values, offsets = _parse_kv(text, source)
    known = {"name", "kind", "base", "ruling", "sampled", "domain", "samples"}
    for key in values:
        if key not in known:
            raise ParseError(f"{source}: unknown key {key!r} "
                             f"(expected one of {sorted(known)})", offsets[key])
    kind = values.get("kind", "")
    if kind not in ("analytic", "sampled"):
        raise ParseError(f"{source}: key 'kind' must be 'analytic' or 'sampled', "
                         f"got {kind!r}", offsets.get("kind", 0))
    has_analytic = "base" in values or "ruling" in values
    if kind == "analytic":
        if not ("base" in values and "ruling" in values):
            raise ParseError(f"{source}: analytic definition needs both "
                             f"'base' and 'ruling'", 0)
        if "sampled" in values:
            raise ParseError(f"{source}: 'sampled' not allowed with kind=analytic",
                             offsets["sampled"])
        if "domain" not in values:
            raise ParseError(f"{source}: analytic definition needs 'domain'", 0)
        base = _split3(values["base"], "base", source, offsets["base"])
        ruling = _split3(values["ruling"], "ruling", source, offsets["ruling"])
        sampled = None
    else:
        if has_analytic:
            raise ParseError(f"{source}: 'base'/'ruling' not allowed with "
                             f"kind=sampled", 0)
        if "sampled" not in values:
            raise ParseError(f"{source}: sampled definition needs 'sampled'", 0)
        base = ruling = None
        sampled = values["sampled"]

    domain = None
    if "domain" in values:
        off = offsets["domain"]
        lo_s, _, hi_s = values["domain"].partition(",")
        if not _:
            raise ParseError(f"{source}: key 'domain' needs 'u_min, u_max'", off)
        lo = _parse_float(lo_s.strip(), "domain", source, off)
        hi = _parse_float(hi_s.strip(), "domain", source, off)
        if not lo < hi:
            raise ParseError(f"{source}: degenerate domain [{lo}, {hi}]", off)
        domain = (lo, hi)

    samples = 512
    if "samples" in values:
        off = offsets["samples"]
        try:
            samples = int(values["samples"])
        except ValueError:
            raise ParseError(f"{source}: key 'samples': not an integer: "
                             f"{values['samples']!r}", off) from None
        if samples < 2:
            raise ParseError(f"{source}: 'samples' must be at least 2", off)

    return SurfaceDefinition(name=values.get("name", ""), kind=kind, base=base,
                             ruling=ruling, sampled=sampled, domain=domain,
                             samples=samples)


def read_samples_csv(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a u,kx,ky,kz,qx,qy,qz table; returns (u, k, q)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if [c.strip() for c in header.split(",")] != CSV_HEADER.split(","):
            raise ParseError(f"{path}: expected header {CSV_HEADER!r}, "
                             f"got {header!r}", 0)
        try:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as exc:
            raise ParseError(f"{path}: {exc}", 0) from None
    if data.shape[0] < 16:
        raise ParseError(f"{path}: need at least 16 rows, got {data.shape[0]}", 0)
    if data.shape[1] != 7:
        raise ParseError(f"{path}: need 7 columns, got {data.shape[1]}", 0)
    u = data[:, 0]
    if np.any(np.diff(u) <= 0):
        raise ParseError(f"{path}: u column must be strictly increasing", 0)
    return u, data[:, 1:4], data[:, 4:7]


def write_samples_csv(path: str, u: np.ndarray, k: np.ndarray, q: np.ndarray) -> None:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for i in range(len(u)):
        row = [u[i], *k[i], *q[i]]
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())


def load_surface(path: str) -> tuple[RuledSurfaceSpec, SurfaceDefinition]:
    """Read a definition file and build the surface it describes."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    defn = parse_definition(text, source=path)
    if defn.kind == "analytic":
        lo, hi = defn.domain
        try:
            base = ExprCurve(defn.base, lo, hi, defn.samples)
            ruling = ExprCurve(defn.ruling, lo, hi, defn.samples)
        except ParseError as exc:
            raise ParseError(f"{path}: {exc.message}", exc.offset,
                             exc.expected) from None
        spec = RuledSurfaceSpec(base, ruling, name=defn.name)
    else:
        csv_path = defn.sampled
        if not os.path.isabs(csv_path):
            csv_path = os.path.join(os.path.dirname(os.path.abspath(path)), csv_path)
        u, k, q = read_samples_csv(csv_path)
        if defn.domain is not None:
            lo, hi = defn.domain
            keep = (u >= lo) & (u <= hi)
            u, k, q = u[keep], k[keep], q[keep]
            if len(u) < 16:
                raise ParseError(f"{path}: domain clips the table below 16 rows", 0)
        spec = RuledSurfaceSpec(SampledCurve(u, k, defn.samples),
                                SampledCurve(u, q, defn.samples), name=defn.name)
    return spec, defn


def write_definition(defn: SurfaceDefinition, path: str) -> None:
    lines = [f"name = {defn.name}", f"kind = {defn.kind}"]
    if defn.kind == "analytic":
        lines.append("base = " + ", ".join(defn.base))
        lines.append("ruling = " + ", ".join(defn.ruling))
    else:
        lines.append(f"sampled = {defn.sampled}")
    if defn.domain is not None:
        lines.append(f"domain = {_fmt(defn.domain[0])}, {_fmt(defn.domain[1])}")
    lines.append(f"samples = {defn.samples}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def save_sampled_surface(directory: str, name: str, u: np.ndarray,
                         k: np.ndarray, q: np.ndarray,
                         samples: int | None = None) -> str:
    """Write <name>.csv plus a sampled-kind <name>.surface; returns the
    definition path."""
    csv_name = f"{name}.csv"
    write_samples_csv(os.path.join(directory, csv_name), u, k, q)
    defn = SurfaceDefinition(name=name, kind="sampled", base=None, ruling=None,
                             sampled=csv_name, domain=None,
                             samples=samples or max(len(u), 64))
    def_path = os.path.join(directory, f"{name}.surface")
    write_definition(defn, def_path)
    return def_path


def sample_surface(spec: RuledSurfaceSpec, n: int | None = None
                   ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tabulate (u, base, unit ruling) for export."""
    u = spec.grid(n)
    return u, spec.base.position(u), spec.ruling.position(u)


@dataclass(frozen=True)
class ProfileFile:
    """Validated contents of a reconstruction profile file."""
    profile: InvariantProfile
    steps: int
    theta: str | None


_KIND_NAMES = {k.value: k for k in FrameKind}


def parse_profile(text: str, source: str = "<string>") -> ProfileFile:
    values, offsets = _parse_kv(text, source)
    known = {"name", "kind", "f", "k1", "phi", "steps", "theta"}
    for key in values:
        if key not in known:
            raise ParseError(f"{source}: unknown key {key!r} "
                             f"(expected one of {sorted(known)})", offsets[key])
    for key in ("kind", "f"):
        if key not in values:
            raise ParseError(f"{source}: profile needs key {key!r}", 0)
    kind = _KIND_NAMES.get(values["kind"])
    if kind is None:
        raise ParseError(f"{source}: key 'kind' must be one of "
                         f"{sorted(_KIND_NAMES)}, got {values['kind']!r}",
                         offsets["kind"])
    phi_range = (0.0, 2.0)
    if "phi" in values:
        off = offsets["phi"]
        lo_s, sep, hi_s = values["phi"].partition(",")
        if not sep:
            raise ParseError(f"{source}: key 'phi' needs 'phi_min, phi_max'", off)
        lo = _parse_float(lo_s.strip(), "phi", source, off)
        hi = _parse_float(hi_s.strip(), "phi", source, off)
        if not lo < hi:
            raise ParseError(f"{source}: degenerate phi range [{lo}, {hi}]", off)
        phi_range = (lo, hi)
    steps = 2000
    if "steps" in values:
        try:
            steps = int(values["steps"])
        except ValueError:
            raise ParseError(f"{source}: key 'steps': not an integer: "
                             f"{values['steps']!r}", offsets["steps"]) from None
    try:
        profile = InvariantProfile(f=values["f"], kind=kind, phi_range=phi_range,
                                   k1_of_s=values.get("k1", "1"),
                                   name=values.get("name", ""))
    except ParseError as exc:
        raise ParseError(f"{source}: {exc.message}", exc.offset,
                         exc.expected) from None
    return ProfileFile(profile=profile, steps=steps, theta=values.get("theta"))


def load_profile(path: str) -> ProfileFile:
    with open(path, encoding="utf-8") as fh:
        return parse_profile(fh.read(), source=path)


def write_obj(path: str, points: np.ndarray) -> None:
    """Write an (nu, nv, 3) vertex grid as a triangulated quad strip.

    Vertices only (no normals or texture coordinates); faces are 1-indexed,
    two triangles per grid cell, deterministic ordering.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 3 or points.shape[2] != 3 or min(points.shape[:2]) < 2:
        raise ValueError("need an (nu, nv, 3) grid with nu, nv >= 2")
    nu, nv = points.shape[:2]
    buf = io.StringIO()
    for i in range(nu):
        for j in range(nv):
            x, y, z = points[i, j]
            buf.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            b = a + 1
            c = a + nv
            d = c + 1
            buf.write(f"f {a} {b} {d}\n")
            buf.write(f"f {a} {d} {c}\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())
