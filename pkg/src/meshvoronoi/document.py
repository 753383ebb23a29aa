"""Point files and result documents.

A point file holds one point per line as two decimal numbers; ``#`` starts a
comment line.  Result documents are JSON with sorted keys; floats are written
as shortest round-tripping decimals, so serialization is byte-stable.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import __version__

FORMAT = "meshvoronoi-result/1"


class PointFileError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def parse_points(text: str) -> list[tuple[float, float]]:
    pts = []
    seen = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PointFileError(no, f"expected two numbers, got {len(fields)} fields")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise PointFileError(no, f"not a number: {line!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise PointFileError(no, "coordinates must be finite")
        # -0.0 and 0.0 are the same point
        p = (x + 0.0, y + 0.0)
        if p in seen:
            raise PointFileError(no, f"duplicate of the point on line {seen[p]}")
        seen[p] = no
        pts.append(p)
    if not pts:
        raise PointFileError(0, "no points")
    return pts


def format_points(points, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{float(x)!r} {float(y)!r}" for x, y in points]
    return "\n".join(lines) + "\n"


@dataclass
class ResultDocument:
    vertices: list[tuple[int, float, float, str]]
    edges: list[tuple[int, int]]
    triangles: list[tuple[int, int, int]]
    stats: dict
    config: dict
    version: str = __version__
    format: str = FORMAT
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "format": self.format,
            "version": self.version,
            "config": self.config,
            "stats": self.stats,
            "vertices": [{"id": i, "x": x, "y": y, "kind": k} for i, x, y, k in self.vertices],
            "edges": [list(e) for e in self.edges],
            "triangles": [list(t) for t in self.triangles],
            "extra": self.extra,
        }

    def dumps(self, include_time: bool = True) -> str:
        d = self.to_dict()
        if not include_time:
            d["stats"] = {k: v for k, v in d["stats"].items() if k != "wall_time"}
        return json.dumps(d, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "ResultDocument":
        if d.get("format") != FORMAT:
            raise ValueError(f"unsupported document format {d.get('format')!r}")
        return cls(
            vertices=[(int(v["id"]), float(v["x"]), float(v["y"]), str(v["kind"])) for v in d["vertices"]],
            edges=[(int(a), int(b)) for a, b in d["edges"]],
            triangles=[(int(a), int(b), int(c)) for a, b, c in d["triangles"]],
            stats=dict(d["stats"]),
            config=dict(d["config"]),
            version=d["version"],
            format=d["format"],
            extra=dict(d.get("extra", {})),
        )

    @classmethod
    def loads(cls, text: str) -> "ResultDocument":
        return cls.from_dict(json.loads(text))


def document_from_result(result) -> ResultDocument:
    """Document for a :class:`~meshvoronoi.pipeline.PipelineResult`."""
    final = result.final
    stats = result.stats.as_dict()
    stats.update(result.report.as_dict())
    stats["boundary_splits"] = result.mesh.boundary_splits
    return ResultDocument(
        vertices=[(i, x, y, "input") for i, (x, y) in enumerate(result.points)],
        edges=sorted(final.edges),
        triangles=sorted(final.triangles),
        stats=stats,
        config=result.config.echo(),
        extra={"box": [list(c) for c in result.mesh.corners]},
    )
