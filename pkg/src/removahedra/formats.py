"""Serialization: canonical JSON, counts CSV and OFF for small polytopes.

All rationals go out as ``"p/q"`` strings. OFF output is limited to polytopes
of affine dimension at most 3 whose points fit in a 3-dimensional chart.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import linalg
from .polyhedra import HPolytope, VPolytope
from .shards import Shard, ShardIdeal

FORMATS = ("json", "csv", "off")
COUNTS_HEADER = ("decoration", "rho", "chi", "phi", "simplicial")


class UnsupportedExport(ValueError):
    """Raised when a report kind cannot be written in the requested format."""


@dataclass
class Report:
    kind: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    ok: bool = True
    witnesses: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": to_jsonable(self.inputs),
            "ok": self.ok,
            "outputs": to_jsonable(self.outputs),
            "witnesses": to_jsonable(self.witnesses),
            "meta": to_jsonable(self.meta),
        }


def to_jsonable(obj):
    """Recursively convert library objects to plain JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return linalg.fmt(obj)
    if isinstance(obj, float):
        return obj
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items, key=_canonical)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _canonical(value) -> str:
    return json.dumps(value, sort_keys=True)


def dumps(obj, strip_meta: bool = False) -> str:
    data = to_jsonable(obj)
    if strip_meta and isinstance(data, dict):
        data = {k: v for k, v in data.items() if k != "meta"}
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- loaders -------------------------------------------------------------------------


def load_ideal(data) -> ShardIdeal:
    """Parse ideal JSON and re-validate upward closure."""
    from .shards import validate_ideal

    if isinstance(data, str):
        data = json.loads(data)
    return validate_ideal(int(data["n"]), [Shard.from_json(s) for s in data["shards"]])


def load_hpolytope(data) -> HPolytope:
    return HPolytope.from_json(json.loads(data) if isinstance(data, str) else data)


def load_vpolytope(data) -> VPolytope:
    return VPolytope.from_json(json.loads(data) if isinstance(data, str) else data)


# -- CSV -----------------------------------------------------------------------------


def counts_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COUNTS_HEADER)
    for r in sorted(rows, key=lambda r: (len(r["decoration"]), r["decoration"])):
        writer.writerow([r["decoration"], r["rho"], r["chi"], r["phi"], str(bool(r["simplicial"])).lower()])
    return buf.getvalue()


# -- OFF -----------------------------------------------------------------------------


def decimal_or_none(q: Fraction) -> str | None:
    """Exact decimal text when the denominator divides a power of ten."""
    q = Fraction(q)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = q * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _chart(points) -> list:
    """Drop coordinates until the points sit in R^3 without losing affine information."""
    dim = len(points[0])
    if dim <= 3:
        return [tuple(p) + (Fraction(0),) * (3 - dim) for p in points]
    diffs = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    full = linalg.rank(diffs) if diffs else 0
    if full > 3:
        raise UnsupportedExport(f"affine dimension {full} exceeds 3")
    keep = list(range(dim))
    for c in reversed(range(dim)):
        if len(keep) == 3:
            break
        trial = [k for k in keep if k != c]
        sub = [[row[k] for k in trial] for row in diffs]
        if (linalg.rank(sub) if sub else 0) == full:
            keep = trial
    if len(keep) != 3:
        raise UnsupportedExport("no coordinate chart of dimension 3 preserves the polytope")
    return [tuple(p[k] for k in keep) for p in points]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _cyclic(points, idx, normal) -> list:
    """Order coplanar convex-position points counterclockwise around ``normal``."""
    centre = [sum(points[k][c] for k in idx) / len(idx) for c in range(3)]
    nf = [float(x) for x in normal]
    # orthonormal-ish frame in the face plane
    a = [float(x) for x in _sub(points[idx[0]], centre)]
    b = [nf[1] * a[2] - nf[2] * a[1], nf[2] * a[0] - nf[0] * a[2], nf[0] * a[1] - nf[1] * a[0]]

    def angle(k):
        w = [float(x) for x in _sub(points[k], centre)]
        return math.atan2(sum(p * q for p, q in zip(w, b)), sum(p * q for p, q in zip(w, a)))

    return sorted(idx, key=angle)


def _faces(points) -> list:
    m = len(points)
    diffs = [_sub(p, points[0]) for p in points[1:]]
    dim = linalg.rank(diffs) if diffs else 0
    if dim < 2:
        raise UnsupportedExport("OFF needs a polygon or a 3-polytope")
    if dim == 2:
        normal = None
        for a, b in itertools.combinations(diffs, 2):
            normal = _cross(a, b)
            if any(normal):
                break
        return [_cyclic(points, list(range(m)), normal)]
    faces = {}
    centre = [sum(p[c] for p in points) / m for c in range(3)]
    for a, b, c in itertools.combinations(range(m), 3):
        normal = _cross(_sub(points[b], points[a]), _sub(points[c], points[a]))
        if not any(normal):
            continue
        side = [linalg.dot(normal, _sub(p, points[a])) for p in points]
        if any(s < 0 for s in side) and any(s > 0 for s in side):
            continue
        on = tuple(k for k, s in enumerate(side) if s == 0)
        if on not in faces:
            if linalg.dot(normal, _sub(centre, points[a])) > 0:
                normal = tuple(-x for x in normal)
            faces[on] = _cyclic(points, list(on), normal)
    return sorted(faces.values(), key=lambda f: sorted(f))


def off_text(poly: VPolytope) -> str:
    points = _chart(list(poly.vertices))
    faces = _faces(points)
    coords = [[decimal_or_none(c) for c in p] for p in points]
    display_only = any(c is None for p in coords for c in p)
    lines = ["OFF"]
    if display_only:
        lines.append('# "display_only": true')
    edges = len({frozenset(e) for f in faces for e in zip(f, f[1:] + f[:1])})
    lines.append(f"{len(points)} {len(faces)} {edges}")
    for p, exact in zip(points, coords):
        if display_only:
            lines.append(" ".join(f"{float(c):.9g}" for c in p))
        else:
            lines.append(" ".join(exact))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f), *f]))
    return "\n".join(lines) + "\n"


# -- dispatch ------------------------------------------------------------------------


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    if fmt == "csv":
        rows = report.outputs.get("rows")
        if rows is None or report.kind not in ("typecone", "counts"):
            raise UnsupportedExport(f"csv is not available for {report.kind!r} reports")
        return counts_csv(rows)
    if fmt == "off":
        poly = report.outputs.get("vertices")
        if not isinstance(poly, VPolytope):
            raise UnsupportedExport(f"off is not available for {report.kind!r} reports")
        return off_text(poly)
    raise UnsupportedExport(f"unknown format {fmt!r}")


def export(report: Report, fmt: str, path=None) -> str:
    """Render ``report`` and write it to ``path`` when given; returns the text."""
    text = render(report, fmt)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


__all__ = [
    "COUNTS_HEADER",
    "FORMATS",
    "Report",
    "UnsupportedExport",
    "counts_csv",
    "decimal_or_none",
    "dumps",
    "export",
    "load_hpolytope",
    "load_ideal",
    "load_vpolytope",
    "off_text",
    "render",
    "to_jsonable",
]
