"""Catalogue of the five block shapes and their canonical labelling.

Every quiver handled by this package is assembled from copies of five fixed
building blocks (kinds I, II, III, IV, V).  Each block carries:

* local vertex names with a colour (outlets are white, interior vertices
  black),
* arrows with fixed role names, so that an arrow inside any copy of a block
  can be addressed as ``<block name>.<role>``,
* an ordered outlet list used by the 1-based outlet references of the
  ``.gtq`` file format,
* the rotation cycles that define the permutation ``f`` on the arrows kept
  when passing to the reduced (star) quiver,
* for kinds IV and V the canonically marked triangle, together with the
  vertices and arrows that the marking removes from the star quiver.

The marking is canonicalised: kind IV always marks ``(tau beta alpha)`` and
kind V always marks ``(sigma omega gamma)``.  The internal symmetry of the
two kinds makes the alternative choice equivalent up to relabelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GluingError

BLOCK_KINDS = ("I", "II", "III", "IV", "V")


@dataclass(frozen=True)
class ArrowSpec:
    role: str
    source: str
    target: str


@dataclass(frozen=True)
class BlockSpec:
    kind: str
    vertices: tuple[str, ...]
    black: frozenset[str]
    arrows: tuple[ArrowSpec, ...]
    outlets: tuple[str, ...]
    f_cycles: tuple[tuple[str, ...], ...]
    marked: tuple[str, ...] | None
    star_removed_vertices: tuple[str, ...]
    star_removed_arrows: tuple[str, ...]

    def arrow(self, role: str) -> ArrowSpec:
        for a in self.arrows:
            if a.role == role:
                return a
        raise KeyError(role)


BLOCK_SPECS: dict[str, BlockSpec] = {
    "I": BlockSpec(
        kind="I",
        vertices=("v",),
        black=frozenset(),
        arrows=(ArrowSpec("loop", "v", "v"),),
        outlets=("v",),
        f_cycles=(("loop",),),
        marked=None,
        star_removed_vertices=(),
        star_removed_arrows=(),
    ),
    "II": BlockSpec(
        kind="II",
        vertices=("a", "b", "c"),
        black=frozenset(),
        arrows=(
            ArrowSpec("alpha", "a", "b"),
            ArrowSpec("beta", "b", "c"),
            ArrowSpec("gamma", "c", "a"),
        ),
        outlets=("a", "b", "c"),
        f_cycles=(("alpha", "beta", "gamma"),),
        marked=None,
        star_removed_vertices=(),
        star_removed_arrows=(),
    ),
    "III": BlockSpec(
        kind="III",
        vertices=("d", "c"),
        black=frozenset({"d"}),
        arrows=(
            ArrowSpec("loop", "d", "d"),
            ArrowSpec("alpha", "d", "c"),
            ArrowSpec("beta", "c", "d"),
        ),
        outlets=("c",),
        f_cycles=(("alpha", "beta", "loop"),),
        marked=None,
        star_removed_vertices=(),
        star_removed_arrows=(),
    ),
    "IV": BlockSpec(
        kind="IV",
        vertices=("a", "b", "c", "d"),
        black=frozenset({"c", "d"}),
        arrows=(
            ArrowSpec("alpha", "c", "a"),
            ArrowSpec("tau", "a", "b"),
            ArrowSpec("beta", "b", "c"),
            ArrowSpec("nu", "b", "d"),
            ArrowSpec("delta", "d", "a"),
        ),
        outlets=("a", "b"),
        f_cycles=(("nu", "delta", "tau"),),
        marked=("tau", "beta", "alpha"),
        star_removed_vertices=("c",),
        star_removed_arrows=("alpha", "beta"),
    ),
    "V": BlockSpec(
        kind="V",
        vertices=("z", "x1", "x2", "y1", "y2"),
        black=frozenset({"x1", "x2", "y1", "y2"}),
        arrows=(
            ArrowSpec("epsilon", "y2", "y1"),
            ArrowSpec("rho", "y2", "x1"),
            ArrowSpec("sigma", "x2", "x1"),
            ArrowSpec("eta", "x2", "y1"),
            ArrowSpec("psi", "y1", "z"),
            ArrowSpec("omega", "x1", "z"),
            ArrowSpec("gamma", "z", "x2"),
            ArrowSpec("phi", "z", "y2"),
        ),
        outlets=("z",),
        f_cycles=(("phi", "epsilon", "psi"),),
        marked=("sigma", "omega", "gamma"),
        star_removed_vertices=("x1", "x2"),
        star_removed_arrows=("rho", "sigma", "eta", "omega", "gamma"),
    ),
}


@dataclass(frozen=True)
class BlockVertex:
    id: str
    color: str


@dataclass(frozen=True)
class BlockArrow:
    id: str
    source: str
    target: str
    role: str


@dataclass(frozen=True)
class Block:
    """A named, free-standing copy of one of the five block shapes."""

    name: str
    kind: str
    vertices: tuple[BlockVertex, ...] = field(compare=False)
    arrows: tuple[BlockArrow, ...] = field(compare=False)
    outlets: tuple[str, ...] = field(compare=False)
    marked_triangle: tuple[str, ...] | None = field(compare=False)


def build_block(kind: str, name: str) -> Block:
    """Return the canonical block of the given kind with prefixed labels.

    Vertices are named ``<name>.<local vertex>`` and arrows
    ``<name>.<role>``.  Raises :class:`GluingError` for an unknown kind.
    """
    if kind not in BLOCK_SPECS:
        raise GluingError(f"unknown block kind {kind!r} (expected one of {', '.join(BLOCK_KINDS)})")
    spec = BLOCK_SPECS[kind]
    vertices = tuple(
        BlockVertex(f"{name}.{v}", "black" if v in spec.black else "white")
        for v in spec.vertices
    )
    arrows = tuple(
        BlockArrow(f"{name}.{a.role}", f"{name}.{a.source}", f"{name}.{a.target}", a.role)
        for a in spec.arrows
    )
    marked = None
    if spec.marked is not None:
        marked = tuple(f"{name}.{r}" for r in spec.marked)
    return Block(
        name=name,
        kind=kind,
        vertices=vertices,
        arrows=arrows,
        outlets=tuple(f"{name}.{v}" for v in spec.outlets),
        marked_triangle=marked,
    )
