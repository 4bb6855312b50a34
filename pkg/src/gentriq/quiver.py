"""Block-decomposed quivers: gluing, validation, isomorphism and export.

A :class:`GenTriQuiver` is a quiver assembled from named copies of the five
block shapes by identifying outlets in pairs.  The block decomposition is
kept as part of the data; vertices remember the block-local names they were
merged from, and each arrow knows its block and role.  Marked triangles are
implied by the decomposition (the canonical triangle of every block of kind
IV or V).

The textual ``.gtq`` format describes a quiver by its blocks and gluing:

    # comment
    block <name> type <I|II|III|IV|V>
    glue <name>.<outlet-index> <name>.<outlet-index>

Outlet indices are 1-based in canonical block order (kind II uses the cyclic
order a, b, c; kind IV the order a, b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .blocks import BLOCK_SPECS, BlockSpec
from .errors import ConnectivityError, FormatError, GluingError


@dataclass(frozen=True)
class Vertex:
    id: str
    color: str                    # "white" (from outlets) or "black"
    aliases: frozenset[str]       # pre-gluing block-local names


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str
    block: str
    role: str


@dataclass(frozen=True)
class PlacedBlock:
    """A block of the decomposition, with its roles resolved to global names."""

    name: str
    kind: str
    vertex_of: tuple[tuple[str, str], ...]   # (role, vertex id) pairs
    arrow_ids: tuple[tuple[str, str], ...]   # (role, arrow id) pairs

    @property
    def spec(self) -> BlockSpec:
        return BLOCK_SPECS[self.kind]

    def vertex(self, role: str) -> str:
        return dict(self.vertex_of)[role]

    def arrow(self, role: str) -> str:
        return dict(self.arrow_ids)[role]


def placed_block(name: str, kind: str, vertex_of: dict[str, str],
                 arrow_ids: dict[str, str] | None = None) -> PlacedBlock:
    spec = BLOCK_SPECS[kind]
    ids = {a.role: f"{name}.{a.role}" for a in spec.arrows}
    if arrow_ids:
        ids.update(arrow_ids)
    return PlacedBlock(
        name=name,
        kind=kind,
        vertex_of=tuple((v, vertex_of[v]) for v in spec.vertices),
        arrow_ids=tuple((a.role, ids[a.role]) for a in spec.arrows),
    )


class GenTriQuiver:
    """A quiver with block decomposition and canonical marking."""

    def __init__(self, blocks: Iterable[PlacedBlock],
                 aliases: dict[str, frozenset[str]] | None = None):
        self.blocks: dict[str, PlacedBlock] = {}
        for pb in blocks:
            if pb.name in self.blocks:
                raise GluingError(f"duplicate block name {pb.name!r}")
            self.blocks[pb.name] = pb
        self.blocks = dict(sorted(self.blocks.items()))

        # outlet claims: vertex -> [(block, role)] for every outlet placed there
        claims: dict[str, list[tuple[str, str]]] = {}
        colors: dict[str, str] = {}
        arrows: dict[str, Arrow] = {}
        for pb in self.blocks.values():
            spec = pb.spec
            vmap = dict(pb.vertex_of)
            for role, vid in pb.vertex_of:
                if role in spec.outlets:
                    claims.setdefault(vid, []).append((pb.name, role))
                    colors[vid] = "white"
                else:
                    colors.setdefault(vid, "black")
            for role, aid in pb.arrow_ids:
                aspec = spec.arrow(role)
                if aid in arrows:
                    raise GluingError(f"duplicate arrow id {aid!r}")
                arrows[aid] = Arrow(aid, vmap[aspec.source], vmap[aspec.target], pb.name, role)

        aliases = aliases or {}
        self.vertices: dict[str, Vertex] = {}
        for vid in sorted(colors):
            self.vertices[vid] = Vertex(vid, colors[vid], aliases.get(vid, frozenset({vid})))
        self.arrows: dict[str, Arrow] = dict(sorted(arrows.items()))
        self.outlet_claims: dict[str, tuple[tuple[str, str], ...]] = {
            v: tuple(sorted(c)) for v, c in sorted(claims.items())
        }

        self._out: dict[str, list[str]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows.values():
            self._out[a.source].append(a.id)
            self._in[a.target].append(a.id)
        for v in self.vertices:
            self._out[v].sort()
            self._in[v].sort()

    # -- basic accessors --------------------------------------------------

    def out_arrows(self, v: str) -> tuple[str, ...]:
        return tuple(self._out[v])

    def in_arrows(self, v: str) -> tuple[str, ...]:
        return tuple(self._in[v])

    @property
    def marking(self) -> tuple[tuple[str, ...], ...]:
        """Marked triangles, one per block of kind IV or V, as arrow id triples."""
        tris = []
        for pb in self.blocks.values():
            if pb.spec.marked is not None:
                aid = dict(pb.arrow_ids)
                tris.append(tuple(aid[r] for r in pb.spec.marked))
        return tuple(sorted(tris))

    def marked_arrows(self) -> frozenset[str]:
        return frozenset(a for tri in self.marking for a in tri)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows.values():
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        start = next(iter(self.vertices))
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    # -- star-quiver structure (used by validation; the full star quiver
    #    machinery lives in gentriq.star) ---------------------------------

    def star_removed(self) -> tuple[frozenset[str], frozenset[str]]:
        """Vertices and arrows deleted when passing to the reduced quiver."""
        verts: set[str] = set()
        arrs: set[str] = set()
        for pb in self.blocks.values():
            vmap = dict(pb.vertex_of)
            amap = dict(pb.arrow_ids)
            verts.update(vmap[r] for r in pb.spec.star_removed_vertices)
            arrs.update(amap[r] for r in pb.spec.star_removed_arrows)
        return frozenset(verts), frozenset(arrs)

    def validate(self) -> list[str]:
        """Return structural diagnostics; the empty list means the quiver is valid."""
        diags: list[str] = []
        if not self.is_connected():
            diags.append("not connected")
        for v, claims in self.outlet_claims.items():
            if len(claims) == 1:
                diags.append(f"unpaired outlet {v} ({claims[0][0]}.{claims[0][1]})")
            elif len(claims) > 2:
                diags.append(f"outlet {v} merged from {len(claims)} blocks (expected 2)")
        rm_verts, rm_arrs = self.star_removed()
        star_out: dict[str, int] = {v: 0 for v in self.vertices}
        star_in: dict[str, int] = {v: 0 for v in self.vertices}
        for a in self.arrows.values():
            if a.id in rm_arrs:
                continue
            star_out[a.source] += 1
            star_in[a.target] += 1
        for v, vert in self.vertices.items():
            if v in rm_verts:
                continue
            if vert.color == "white":
                if star_out[v] != 2 or star_in[v] != 2:
                    diags.append(
                        f"white vertex {v} not 2-regular in the reduced quiver "
                        f"(in={star_in[v]}, out={star_out[v]})")
            else:
                pb = self._unique_block_of(v)
                expected = 2 if pb is not None and pb.kind == "III" else 1
                if star_out[v] != expected or star_in[v] != expected:
                    diags.append(
                        f"black vertex {v} not {expected}-regular in the reduced quiver "
                        f"(in={star_in[v]}, out={star_out[v]})")
        return diags

    def _unique_block_of(self, v: str) -> Optional[PlacedBlock]:
        owner = None
        for pb in self.blocks.values():
            if v in dict(pb.vertex_of).values():
                if owner is not None:
                    return None
                owner = pb
        return owner

    # -- export ------------------------------------------------------------

    def canonical_text(self) -> str:
        """Deterministic full serialization, used for equality and diffing."""
        lines = []
        for v in self.vertices.values():
            lines.append(f"vertex {v.id} {v.color} aliases={','.join(sorted(v.aliases))}")
        for a in self.arrows.values():
            lines.append(f"arrow {a.id} {a.source} -> {a.target} block={a.block} role={a.role}")
        for tri in self.marking:
            lines.append("marked " + " ".join(tri))
        return "\n".join(lines) + "\n"

    def to_gtq_text(self) -> str:
        """Emit block/glue lines reconstructing this quiver up to renaming."""
        lines = ["# generated by gentriq"]
        for pb in self.blocks.values():
            lines.append(f"block {pb.name} type {pb.kind}")
        for v, claims in self.outlet_claims.items():
            if len(claims) != 2:
                continue
            refs = []
            for bname, role in claims:
                idx = self.blocks[bname].spec.outlets.index(role) + 1
                refs.append(f"{bname}.{idx}")
            lines.append(f"glue {refs[0]} {refs[1]}")
            lines.append(f"# vertex {v} = " + " = ".join(f"{b}.{r}" for b, r in claims))
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        """Valid DOT digraph: white vertices circles, black filled, marking starred."""
        lines = ["digraph quiver {"]
        for v in self.vertices.values():
            if v.color == "white":
                style = "shape=circle"
            else:
                style = "shape=circle, style=filled, fillcolor=black, fontcolor=white"
            lines.append(f'  "{v.id}" [{style}];')
        starred = {tri[0] for tri in self.marking}
        for a in self.arrows.values():
            label = f"{a.id} *" if a.id in starred else a.id
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def export_dot(q: GenTriQuiver) -> str:
    return q.to_dot()


# -- gluing -----------------------------------------------------------------

OutletRef = tuple[str, int]        # (block name, 1-based outlet index)


@dataclass(frozen=True)
class GluingSpec:
    blocks: tuple[tuple[str, str], ...]                    # (name, kind)
    pairing: tuple[tuple[OutletRef, OutletRef], ...]


def glue(spec: GluingSpec, check_connectivity: bool = True) -> GenTriQuiver:
    """Identify paired outlets and return the glued quiver.

    The merged vertex keeps the lexicographically least of its block-local
    names, so the result is reproducible.  Raises :class:`GluingError` when
    the pairing is not a fixed-point-free cross-block involution and
    :class:`ConnectivityError` when the result falls apart.
    """
    kinds = dict(spec.blocks)
    if len(kinds) != len(spec.blocks):
        raise GluingError("duplicate block name in gluing data")
    for name, kind in spec.blocks:
        if kind not in BLOCK_SPECS:
            raise GluingError(f"unknown block kind {kind!r} for block {name!r}")

    def resolve(ref: OutletRef) -> str:
        name, idx = ref
        if name not in kinds:
            raise GluingError(f"glue line references unknown block {name!r}")
        outlets = BLOCK_SPECS[kinds[name]].outlets
        if not 1 <= idx <= len(outlets):
            raise GluingError(
                f"block {name!r} (kind {kinds[name]}) has no outlet {idx}")
        return f"{name}.{outlets[idx - 1]}"

    seen: set[str] = set()
    merge: dict[str, str] = {}
    for left, right in spec.pairing:
        lv, rv = resolve(left), resolve(right)
        if lv == rv:
            raise GluingError(f"gluing has a fixed point at {lv}")
        if left[0] == right[0]:
            raise GluingError(f"gluing pairs two outlets of block {left[0]!r}")
        for v in (lv, rv):
            if v in seen:
                raise GluingError(f"outlet {v} appears in more than one pair")
            seen.add(v)
        merged = min(lv, rv)
        merge[lv] = merged
        merge[rv] = merged

    aliases: dict[str, set[str]] = {}
    placed = []
    for name, kind in sorted(spec.blocks):
        spec_ = BLOCK_SPECS[kind]
        vmap = {}
        for role in spec_.vertices:
            local = f"{name}.{role}"
            vid = merge.get(local, local)
            vmap[role] = vid
            aliases.setdefault(vid, set()).add(local)
        placed.append(placed_block(name, kind, vmap))

    q = GenTriQuiver(placed, {v: frozenset(s) for v, s in aliases.items()})
    if check_connectivity and not q.is_connected():
        raise ConnectivityError("glued quiver is not connected")
    return q


def validate(q: GenTriQuiver) -> list[str]:
    return q.validate()


# -- .gtq parsing -----------------------------------------------------------

def parse_gtq(text: str) -> GluingSpec:
    blocks: list[tuple[str, str]] = []
    pairing: list[tuple[OutletRef, OutletRef]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "block":
            if len(parts) != 4 or parts[2] != "type":
                raise FormatError(f"line {lineno}: expected 'block <name> type <kind>'")
            blocks.append((parts[1], parts[3]))
        elif parts[0] == "glue":
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'glue <name>.<i> <name>.<j>'")
            refs = []
            for token in parts[1:]:
                name, dot, idx = token.rpartition(".")
                if not dot or not idx.isdigit():
                    raise FormatError(f"line {lineno}: bad outlet reference {token!r}")
                refs.append((name, int(idx)))
            pairing.append((refs[0], refs[1]))
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    return GluingSpec(tuple(blocks), tuple(pairing))


def load_gtq(text: str, check_connectivity: bool = True) -> GenTriQuiver:
    return glue(parse_gtq(text), check_connectivity=check_connectivity)


# -- isomorphism ------------------------------------------------------------

def _vertex_signature(q: GenTriQuiver, v: str) -> tuple:
    marked = q.marked_arrows()
    loops = sum(1 for a in q.out_arrows(v) if q.arrows[a].target == v)
    mout = sum(1 for a in q.out_arrows(v) if a in marked)
    min_ = sum(1 for a in q.in_arrows(v) if a in marked)
    return (q.vertices[v].color, len(q.out_arrows(v)), len(q.in_arrows(v)),
            loops, mout, min_)


def quiver_isomorphic(q1: GenTriQuiver, q2: GenTriQuiver) -> Optional[dict]:
    """Search for a bijection preserving sources, targets, colours and marking.

    Returns ``{"vertices": {...}, "arrows": {...}}`` for the first witness in
    canonical search order, or ``None``.  Backtracking over
    colour/degree-compatible vertex candidates; intended for the block-scale
    quivers of this package (tens of vertices).
    """
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return None
    sig1 = {v: _vertex_signature(q1, v) for v in q1.vertices}
    sig2 = {v: _vertex_signature(q2, v) for v in q2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    marked1, marked2 = q1.marked_arrows(), q2.marked_arrows()

    # rarest signatures first, then lexicographic, to cut the search early
    freq: dict[tuple, int] = {}
    for s in sig1.values():
        freq[s] = freq.get(s, 0) + 1
    order = sorted(q1.vertices, key=lambda v: (freq[sig1[v]], sig1[v], v))
    candidates = {
        v: tuple(sorted(w for w in q2.vertices if sig2[w] == sig1[v])) for v in order
    }

    def parallel(q: GenTriQuiver, s: str, t: str) -> tuple[str, ...]:
        return tuple(a for a in q.out_arrows(s) if q.arrows[a].target == t)

    def class_profile(q: GenTriQuiver, marked: frozenset[str], s: str, t: str) -> tuple[int, int]:
        arrows = parallel(q, s, t)
        return (len(arrows), sum(1 for a in arrows if a in marked))

    vmap: dict[str, str] = {}
    used: set[str] = set()

    def vertex_maps(i: int):
        if i == len(order):
            yield dict(vmap)
            return
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            pairs = [(v, w)] + [(u, vmap[u]) for u in vmap]
            ok = all(
                class_profile(q1, marked1, v, u) == class_profile(q2, marked2, w, x)
                and class_profile(q1, marked1, u, v) == class_profile(q2, marked2, x, w)
                for u, x in pairs
            )
            if ok:
                vmap[v] = w
                used.add(w)
                yield from vertex_maps(i + 1)
                del vmap[v]
                used.remove(w)

    target_marking = {frozenset(tri) for tri in q2.marking}

    for vm in vertex_maps(0):
        # match arrows within each parallel class; permutations only matter
        # for classes of size >= 2, which are rare and tiny
        classes: dict[tuple[str, str], list[str]] = {}
        for a in q1.arrows.values():
            classes.setdefault((a.source, a.target), []).append(a.id)
        per_class: list[tuple[list[str], list[tuple[str, ...]]]] = []
        feasible = True
        for (s, t), arrows1 in sorted(classes.items()):
            arrows1 = sorted(arrows1)
            arrows2 = sorted(a for a in q2.out_arrows(vm[s]) if q2.arrows[a].target == vm[t])
            options = [
                perm for perm in itertools.permutations(arrows2)
                if all((a in marked1) == (b in marked2) for a, b in zip(arrows1, perm))
            ]
            if not options:
                feasible = False
                break
            per_class.append((arrows1, options))
        if not feasible:
            continue
        for combo in itertools.product(*(opts for _, opts in per_class)):
            amap: dict[str, str] = {}
            for (arrows1, _), perm in zip(per_class, combo):
                amap.update(zip(arrows1, perm))
            image = {frozenset(amap[a] for a in tri) for tri in q1.marking}
            if image == target_marking:
                return {"vertices": vm, "arrows": amap}
    return None
