"""Face-closed sets of planar simplices over integer vertex labels."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


def canonical_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def canonical_triangle(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Rotate a ccw triple so its smallest label comes first (orientation kept)."""
    if a < b and a < c:
        return (a, b, c)
    if b < c:
        return (b, c, a)
    return (c, a, b)


@dataclass(frozen=True)
class SimplexSet:
    vertices: frozenset = field(default_factory=frozenset)
    edges: frozenset = field(default_factory=frozenset)
    triangles: frozenset = field(default_factory=frozenset)

    @classmethod
    def build(cls, triangles: Iterable = (), edges: Iterable = (), vertices: Iterable = ()) -> "SimplexSet":
        """Close the given simplices under taking faces."""
        tris = {canonical_triangle(*t) for t in triangles}
        es = {canonical_edge(*e) for e in edges}
        vs = set(vertices)
        for a, b, c in tris:
            es.update((canonical_edge(a, b), canonical_edge(b, c), canonical_edge(c, a)))
        for a, b in es:
            vs.update((a, b))
        return cls(frozenset(vs), frozenset(es), frozenset(tris))

    def __len__(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.triangles)

    def relabel(self, mapping: Mapping[int, int]) -> "SimplexSet":
        """Rename vertices; triangles stay ccw because only labels change."""
        return SimplexSet.build(
            (tuple(mapping[v] for v in t) for t in self.triangles),
            (tuple(mapping[v] for v in e) for e in self.edges),
            (mapping[v] for v in self.vertices),
        )

    def induced(self, keep) -> "SimplexSet":
        """Subcomplex of simplices whose vertices all lie in ``keep``."""
        keep = set(keep)
        return SimplexSet(
            frozenset(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
            frozenset(t for t in self.triangles if t[0] in keep and t[1] in keep and t[2] in keep),
        )

    def difference(self, other: "SimplexSet") -> "SimplexSet":
        return SimplexSet(self.vertices - other.vertices, self.edges - other.edges, self.triangles - other.triangles)

    def is_empty(self) -> bool:
        return not (self.vertices or self.edges or self.triangles)

    def sorted_lists(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": sorted(self.edges),
            "triangles": sorted(self.triangles),
        }
