"""The reduced quiver, its arrow permutations, orbits, and weight data.

Deleting the black vertices of every marked triangle (and all arrows touching
them) from a valid glued quiver leaves the reduced quiver.  Three
permutations act on its arrows:

* ``f`` fixes the loop of every kind-I block and rotates the surviving
  triangle of every other block; ``t(a) = s(f(a))`` and ``f^3 = id``.
* ``bar`` swaps the two outgoing arrows at every 2-regular vertex of the
  reduced quiver and fixes the single outgoing arrow of 1-regular vertices.
  (2-regular vertices are the merged outlets and the black loop vertices of
  kind-III blocks; treating the latter like outlets is what reproduces the
  worked orbit computations, so do not "simplify" this to a white-only rule.)
* ``g = bar o f``; its orbits drive all weight bookkeeping.  Because ``bar``
  preserves sources, consecutive arrows of a ``g``-orbit compose, so each
  orbit is a cycle in the quiver.

Weight data attaches to the ``g``-orbits: a positive integer (or a positive
integer symbol with a declared lower bound) ``m`` per orbit, a nonzero
parameter ``c`` per orbit, and a border value ``b`` per border vertex.  An
arrow is virtual when ``m * n = 2`` for its orbit of length ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import FormatError, IndeterminateError, WeightError
from .quiver import GenTriQuiver


@dataclass(frozen=True)
class StarQuiver:
    base: GenTriQuiver
    vertices: tuple[str, ...]
    arrows: tuple[str, ...]
    f: dict[str, str]
    bar: dict[str, str]
    g: dict[str, str]

    def f_inv(self, a: str) -> str:
        return self.f[self.f[a]]            # f^3 = id

    def out_arrows(self, v: str) -> tuple[str, ...]:
        kept = set(self.arrows)
        return tuple(a for a in self.base.out_arrows(v) if a in kept)

    def in_arrows(self, v: str) -> tuple[str, ...]:
        kept = set(self.arrows)
        return tuple(a for a in self.base.in_arrows(v) if a in kept)


def star_quiver(q: GenTriQuiver) -> StarQuiver:
    """Build the reduced quiver of ``q`` together with ``f``, ``bar`` and ``g``."""
    rm_verts, rm_arrs = q.star_removed()
    vertices = tuple(v for v in q.vertices if v not in rm_verts)
    arrows = tuple(a for a in q.arrows if a not in rm_arrs)
    kept = set(arrows)

    f: dict[str, str] = {}
    for pb in q.blocks.values():
        amap = dict(pb.arrow_ids)
        for cycle in pb.spec.f_cycles:
            ids = [amap[r] for r in cycle]
            for i, a in enumerate(ids):
                f[a] = ids[(i + 1) % len(ids)]
    assert set(f) == kept

    bar: dict[str, str] = {}
    for v in vertices:
        out = [a for a in q.out_arrows(v) if a in kept]
        if len(out) == 2:
            bar[out[0]], bar[out[1]] = out[1], out[0]
        elif len(out) == 1:
            bar[out[0]] = out[0]
        else:
            raise WeightError(f"vertex {v} has {len(out)} outgoing reduced arrows")

    g = {a: bar[f[a]] for a in arrows}
    return StarQuiver(q, vertices, arrows, f, bar, g)


def _cycles(domain: Iterable[str], perm: dict[str, str]) -> tuple[tuple[str, ...], ...]:
    """Cycles of ``perm``, each starting at its least element, sorted by that element."""
    seen: set[str] = set()
    cycles = []
    for a in sorted(domain):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = perm[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = perm[b]
        start = cyc.index(min(cyc))
        cycles.append(tuple(cyc[start:] + cyc[:start]))
    return tuple(sorted(cycles))


@dataclass(frozen=True)
class OrbitData:
    star: StarQuiver
    f_orbits: tuple[tuple[str, ...], ...]
    g_orbits: tuple[tuple[str, ...], ...]
    orbit_rep: dict[str, str]               # arrow -> least arrow of its g-orbit
    n: dict[str, int]                       # orbit rep -> orbit length
    border: frozenset[str]                  # sources of f-fixed loops
    border_loops: dict[str, tuple[str, ...]]
    nu_count: dict[str, int]                # orbit rep -> #{kind-IV blocks with nu there}
    phi_count: dict[str, int]               # orbit rep -> #{kind-V blocks with phi there}

    def rep(self, arrow: str) -> str:
        return self.orbit_rep[arrow]

    def orbit_cycle(self, arrow: str) -> tuple[str, ...]:
        rep = self.orbit_rep[arrow]
        for cyc in self.g_orbits:
            if cyc[0] == rep:
                return cyc
        raise KeyError(arrow)


def orbit_data(sq: StarQuiver) -> OrbitData:
    f_orbits = _cycles(sq.arrows, sq.f)
    g_orbits = _cycles(sq.arrows, sq.g)
    orbit_rep: dict[str, str] = {}
    n: dict[str, int] = {}
    for cyc in g_orbits:
        for a in cyc:
            orbit_rep[a] = cyc[0]
        n[cyc[0]] = len(cyc)

    border_loops: dict[str, list[str]] = {}
    for a in sq.arrows:
        arrow = sq.base.arrows[a]
        if sq.f[a] == a and arrow.source == arrow.target:
            border_loops.setdefault(arrow.source, []).append(a)

    nu_count: dict[str, int] = {rep: 0 for rep in n}
    phi_count: dict[str, int] = {rep: 0 for rep in n}
    for pb in sq.base.blocks.values():
        amap = dict(pb.arrow_ids)
        if pb.kind == "IV":
            nu_count[orbit_rep[amap["nu"]]] += 1
        elif pb.kind == "V":
            phi_count[orbit_rep[amap["phi"]]] += 1

    return OrbitData(
        star=sq,
        f_orbits=f_orbits,
        g_orbits=g_orbits,
        orbit_rep=orbit_rep,
        n=n,
        border=frozenset(border_loops),
        border_loops={v: tuple(sorted(ls)) for v, ls in sorted(border_loops.items())},
        nu_count=nu_count,
        phi_count=phi_count,
    )


# -- weight data --------------------------------------------------------------

@dataclass(frozen=True)
class WeightSymbol:
    """A positive integer unknown with a declared lower bound (default 1)."""

    name: str
    lower: int = 1

    def __str__(self) -> str:
        return self.name


MWeight = Union[int, WeightSymbol]
Scalar = Union[Fraction, str]               # exact rational or opaque nonzero symbol


@dataclass
class WeightData:
    """Orbit weights ``m``, orbit parameters ``c`` and border values ``b``."""

    orbits: OrbitData
    m: dict[str, MWeight] = field(default_factory=dict)
    c: dict[str, Scalar] = field(default_factory=dict)
    b: dict[str, Scalar] = field(default_factory=dict)

    def m_of(self, arrow: str) -> MWeight:
        return self.m[self.orbits.rep(arrow)]

    def c_of(self, arrow: str) -> Scalar:
        return self.c[self.orbits.rep(arrow)]

    def b_of(self, vertex: str) -> Scalar:
        return self.b.get(vertex, Fraction(0))

    def all_m_concrete(self) -> bool:
        return all(isinstance(v, int) for v in self.m.values())

    def mn(self, arrow: str) -> int:
        """Concrete ``m * n`` for the orbit of ``arrow``."""
        m = self.m_of(arrow)
        if not isinstance(m, int):
            raise IndeterminateError(
                f"weight of orbit ({self.orbits.rep(arrow)} ...) is symbolic ({m})")
        return m * self.orbits.n[self.orbits.rep(arrow)]

    def virtuality(self, arrow: str) -> Optional[bool]:
        """True/False when decidable from the declared data, None otherwise."""
        rep = self.orbits.rep(arrow)
        n = self.orbits.n[rep]
        m = self.m[rep]
        if isinstance(m, int):
            return m * n == 2
        if m.lower * n > 2:
            return False
        return None

    def is_virtual(self, arrow: str) -> bool:
        v = self.virtuality(arrow)
        if v is None:
            rep = self.orbits.rep(arrow)
            raise IndeterminateError(
                f"cannot decide whether {arrow} is virtual: orbit length "
                f"{self.orbits.n[rep]} with symbolic weight {self.m[rep]}")
        return v


def default_weights(od: OrbitData,
                    m: dict[str, MWeight] | None = None,
                    c: dict[str, Scalar] | None = None,
                    b: dict[str, Scalar] | None = None) -> WeightData:
    """Weight data with fresh symbols wherever no value is supplied.

    The ``m``/``c``/``b`` overrides are keyed by any arrow of the intended
    orbit (respectively by border vertex).
    """
    w = WeightData(od)
    m = m or {}
    c = c or {}
    b = b or {}
    for arrow, value in m.items():
        _assign(w.m, od, arrow, value, "m")
    for arrow, value in c.items():
        if value == 0:
            raise WeightError(f"parameter of orbit ({arrow} ...) must be nonzero")
        _assign(w.c, od, arrow, value, "c")
    for rep in sorted(od.n):
        w.m.setdefault(rep, WeightSymbol(f"m_{rep}"))
        w.c.setdefault(rep, f"c_{rep}")
    for vertex, value in b.items():
        if vertex not in od.border:
            raise WeightError(f"{vertex} is not a border vertex")
        w.b[vertex] = value
    return w


def _assign(target: dict, od: OrbitData, arrow: str, value, what: str) -> None:
    if arrow not in od.orbit_rep:
        raise WeightError(f"{arrow} is not an arrow of the reduced quiver")
    rep = od.orbit_rep[arrow]
    if rep in target:
        raise WeightError(f"duplicate {what} assignment for orbit ({rep} ...)")
    target[rep] = value


def validate_weights(od: OrbitData, w: WeightData) -> list[str]:
    """Check the admissibility restrictions on ``m`` against orbit lengths.

    Every orbit needs ``m * n >= 2``; arrows whose ``bar`` partner is virtual
    need ``m * n >= 3``, or ``>= 4`` when that partner is a virtual loop.
    Symbolic weights are judged by their declared lower bounds; when the
    bounds cannot settle a requirement, a "cannot verify" diagnostic is
    emitted instead of a guess.
    """
    sq = od.star
    diags: list[str] = []

    def lower_mn(rep: str) -> int:
        m = w.m[rep]
        low = m if isinstance(m, int) else m.lower
        return low * od.n[rep]

    def exact(rep: str) -> Optional[int]:
        m = w.m[rep]
        return m * od.n[rep] if isinstance(m, int) else None

    for rep in sorted(od.n):
        mn = exact(rep)
        if mn is not None and mn < 2:
            diags.append(f"orbit ({rep} ...): m*n = {mn} < 2 (needs m >= {(2 + od.n[rep] - 1)//od.n[rep]})")
        elif mn is None and lower_mn(rep) < 2:
            diags.append(f"orbit ({rep} ...): cannot verify m*n >= 2 "
                         f"(lower bound gives {lower_mn(rep)})")

    for a in sorted(sq.arrows):
        partner = sq.bar[a]
        if partner == a:
            continue
        arr = sq.base.arrows[partner]
        is_loop = arr.source == arr.target
        need = 4 if is_loop else 3
        virt = w.virtuality(partner)
        if virt is False:
            continue
        rep = od.orbit_rep[a]
        mn = exact(rep)
        satisfied_anyway = lower_mn(rep) >= need
        if satisfied_anyway:
            continue
        kind = "virtual loop" if is_loop else "virtual"
        if virt is True:
            if mn is not None and mn < need:
                diags.append(f"arrow {a}: m*n = {mn} < {need} while bar({a}) = {partner} is {kind}")
            elif mn is None:
                diags.append(f"arrow {a}: cannot verify m*n >= {need} "
                             f"(bar({a}) = {partner} is {kind})")
        else:
            diags.append(f"arrow {a}: cannot verify restriction; bar({a}) = {partner} "
                         f"may be virtual and m*n >= {need} is not implied by the bounds")

    for rep, value in sorted(w.c.items()):
        if isinstance(value, Fraction) and value == 0:
            diags.append(f"orbit ({rep} ...): parameter c must be nonzero")
    return diags


@dataclass(frozen=True)
class VirtualSet:
    arrows: frozenset[str]


def virtual_arrows(od: OrbitData, w: WeightData) -> VirtualSet:
    """The set of arrows with ``m * n = 2``; raises when symbols leave it open."""
    result = set()
    for a in od.orbit_rep:
        if w.is_virtual(a):
            result.add(a)
    return VirtualSet(frozenset(result))


def is_triangulation(q: GenTriQuiver) -> bool:
    """True when the quiver equals its reduced quiver (no kind IV/V blocks)."""
    return all(pb.kind in ("I", "II", "III") for pb in q.blocks.values())


# -- .wts parsing --------------------------------------------------------------

def _parse_scalar(token: str) -> Scalar:
    """A rational like ``-3/2`` or an opaque symbol name."""
    txt = token[1:] if token.startswith("-") else token
    num, _, den = txt.partition("/")
    if num.isdigit() and (not den or den.isdigit()):
        if den and int(den) == 0:
            raise FormatError(f"zero denominator in {token!r}")
        return Fraction(token)
    return token


def parse_wts(text: str) -> dict:
    """Parse weight entries; returns {"m": ..., "c": ..., "b": ...} keyed as written."""
    m: dict[str, MWeight] = {}
    c: dict[str, Scalar] = {}
    b: dict[str, Scalar] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("m", "c", "b"):
            raise FormatError(f"line {lineno}: expected 'm|c|b <id> <value>'")
        kind, key, value = parts
        if key in (m if kind == "m" else c if kind == "c" else b):
            raise FormatError(f"line {lineno}: duplicate {kind} entry for {key}")
        if kind == "m":
            name, _, bound = value.partition(">=")
            if name.isdigit():
                if bound:
                    raise FormatError(f"line {lineno}: bound on a concrete weight")
                iv = int(name)
                if iv < 1:
                    raise FormatError(f"line {lineno}: weight must be a positive integer")
                m[key] = iv
            else:
                low = 1
                if bound:
                    if not bound.isdigit():
                        raise FormatError(f"line {lineno}: bad lower bound {bound!r}")
                    low = int(bound)
                m[key] = WeightSymbol(name, low)
        elif kind == "c":
            val = _parse_scalar(value)
            if isinstance(val, Fraction) and val == 0:
                raise FormatError(f"line {lineno}: parameter c must be nonzero")
            c[key] = val
        else:
            b[key] = _parse_scalar(value)
    return {"m": m, "c": c, "b": b}


def weights_from_text(od: OrbitData, text: str) -> WeightData:
    entries = parse_wts(text)
    return default_weights(od, entries["m"], entries["c"], entries["b"])
