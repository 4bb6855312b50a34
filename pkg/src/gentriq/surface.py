"""Marked triangulated surfaces and their translation into glued quivers.

A surface triangulation is described combinatorially by its edges and
triangles only (``.surf`` format):

    edge <id> [boundary]
    triangle <a> <b> <c>            # ordered coherently with the orientation
    selffolded <folded> <enclosing> [marked]

Every edge has two sides, and the description must account for exactly two:
membership in an ordinary triangle or an enclosure takes one side, a
boundary flag takes one, and being the folded edge of a self-folded triangle
takes both.  Orientation lives solely in the order of the ordinary triples
(the side-count bookkeeping cannot see it), so coherent input order is the
caller's responsibility.

Translation rules, applied with the grouped cases taking precedence:

1. three marked self-folded triangles around one ordinary triangle dissolve
   into four unmarked triangles (a sphere made of four blocks of kind II);
2. two marked self-folded triangles around one ordinary triangle become one
   block of kind V whose outlet is the third edge;
3. one marked self-folded triangle plus its neighbouring triangle become a
   block of kind IV;
4. an unmarked self-folded triangle becomes a block of kind III;
5. every remaining ordinary triangle becomes a block of kind II;
6. every boundary edge contributes a loop (kind I).

Vertices of the resulting quiver are the edges of the triangulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError, StructureError
from .quiver import GenTriQuiver, PlacedBlock, placed_block


@dataclass(frozen=True)
class SelfFolded:
    folded: str
    enclosing: str
    marked: bool


@dataclass(frozen=True)
class MarkedTriangulatedSurface:
    edges: tuple[str, ...]
    boundary: frozenset[str]
    triangles: tuple[tuple[str, str, str], ...]
    selffolded: tuple[SelfFolded, ...]


def parse_surface(text: str) -> MarkedTriangulatedSurface:
    """Parse and validate a ``.surf`` description."""
    edges: list[str] = []
    boundary: set[str] = set()
    triangles: list[tuple[str, str, str]] = []
    selffolded: list[SelfFolded] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "edge":
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "boundary"):
                raise FormatError(f"line {lineno}: expected 'edge <id> [boundary]'")
            if parts[1] in edges:
                raise FormatError(f"line {lineno}: duplicate edge {parts[1]!r}")
            edges.append(parts[1])
            if len(parts) == 3:
                boundary.add(parts[1])
        elif parts[0] == "triangle":
            if len(parts) != 4:
                raise FormatError(f"line {lineno}: expected 'triangle <a> <b> <c>'")
            tri = tuple(parts[1:])
            if len(set(tri)) != 3:
                raise FormatError(f"line {lineno}: ordinary triangle edges must be distinct")
            triangles.append(tri)
        elif parts[0] == "selffolded":
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "marked"):
                raise FormatError(
                    f"line {lineno}: expected 'selffolded <folded> <enclosing> [marked]'")
            if parts[1] == parts[2]:
                raise FormatError(f"line {lineno}: folded and enclosing edge must differ")
            selffolded.append(SelfFolded(parts[1], parts[2], len(parts) == 4))
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")

    surf = MarkedTriangulatedSurface(
        tuple(edges), frozenset(boundary), tuple(triangles), tuple(selffolded))
    problems = surface_diagnostics(surf)
    if problems:
        raise FormatError("; ".join(problems))
    return surf


def surface_diagnostics(s: MarkedTriangulatedSurface) -> list[str]:
    out: list[str] = []
    if len(s.edges) < 2:
        out.append("a triangulation has at least two edges")
    known = set(s.edges)
    sides: dict[str, int] = {e: 0 for e in s.edges}

    def use(e: str, k: int, what: str):
        if e not in known:
            out.append(f"{what} references unknown edge {e!r}")
        else:
            sides[e] += k

    for e in s.boundary:
        sides[e] += 1
    for tri in s.triangles:
        for e in tri:
            use(e, 1, "triangle")
    for sf in s.selffolded:
        use(sf.folded, 2, "self-folded triangle")
        use(sf.enclosing, 1, "self-folded triangle")
        if sf.marked and sf.enclosing in s.boundary:
            out.append(f"marked self-folded triangle has boundary enclosing edge {sf.enclosing}")
    for e in s.edges:
        if sides[e] != 2:
            out.append(f"edge {e} accounts for {sides[e]} side(s), expected 2")
    return out


def _adjacent_triangle(s: MarkedTriangulatedSurface, sf: SelfFolded) -> int | None:
    """Index of the ordinary triangle on the outer side of the enclosing edge."""
    for i, tri in enumerate(s.triangles):
        if sf.enclosing in tri:
            return i
    return None


def _rotate(tri: tuple[str, str, str], last: str) -> tuple[str, str, str]:
    i = tri.index(last)
    return (tri[(i + 1) % 3], tri[(i + 2) % 3], tri[i])


def surface_to_quiver(s: MarkedTriangulatedSurface) -> GenTriQuiver:
    """Apply the translation rules; vertices are named after the edges."""
    placed: list[PlacedBlock] = []
    consumed: set[int] = set()

    groups: dict[int, list[SelfFolded]] = {}
    for sf in s.selffolded:
        if not sf.marked:
            continue
        i = _adjacent_triangle(s, sf)
        if i is None:
            raise StructureError(
                f"marked self-folded triangle at edge {sf.enclosing} has no "
                "ordinary triangle neighbour")
        groups.setdefault(i, []).append(sf)

    seq = 0
    for i in sorted(groups):
        seq += 1
        tri = s.triangles[i]
        consumed.add(i)
        group = sorted(groups[i], key=lambda sf: tri.index(sf.enclosing))
        folded_by = {sf.enclosing: sf.folded for sf in group}
        if len(group) == 1:
            a, b, c = _rotate(tri, group[0].enclosing)
            placed.append(placed_block(
                f"m{seq}", "IV", {"a": a, "b": b, "c": c, "d": group[0].folded}))
        elif len(group) == 2:
            (z,) = [e for e in tri if e not in folded_by]
            x1, _, x2 = _rotate(tri, _x2_of(tri, z))
            placed.append(placed_block(f"m{seq}", "V", {
                "z": z, "x1": x1, "x2": x2,
                "y1": folded_by[x1], "y2": folded_by[x2]}))
        else:
            e1, e2, e3 = tri
            f1, f2, f3 = folded_by[e1], folded_by[e2], folded_by[e3]
            cycles = [tri, (f3, f1, e2), (f1, f2, e3), (f2, f3, e1)]
            for k, (a, b, c) in enumerate(cycles):
                placed.append(placed_block(f"m{seq}{'abcd'[k]}", "II",
                                           {"a": a, "b": b, "c": c}))

    for j, sf in enumerate(s.selffolded, start=1):
        if not sf.marked:
            placed.append(placed_block(f"s{j}", "III", {"d": sf.folded, "c": sf.enclosing}))
    for i, tri in enumerate(s.triangles):
        if i not in consumed:
            placed.append(placed_block(f"t{i + 1}", "II",
                                       {"a": tri[0], "b": tri[1], "c": tri[2]}))
    for e in s.edges:
        if e in s.boundary:
            placed.append(placed_block(f"b{e}", "I", {"v": e}))

    q = GenTriQuiver(placed)
    problems = q.validate()
    if problems:
        raise StructureError("translated quiver is invalid: " + "; ".join(problems))
    return q


def _x2_of(tri: tuple[str, str, str], z: str) -> str:
    """In cyclic order (x1 z x2), the edge following z."""
    return tri[(tri.index(z) + 1) % 3]
