"""Basis enumeration per vertex, closed-form counts, and dimension formulas.

Each vertex of a valid glued quiver gets an explicit monomial basis of its
projective module, assembled from prefixes of the distinguished ``B`` cycles
plus detour paths into the deleted black vertices:

* prefixes ``u`` of ``B(eta)`` whose next arrow is the ``nu`` of a kind-IV
  block contribute ``u . beta`` (landing at the deleted ``c`` vertex),
* prefixes whose next arrow is the ``phi`` of a kind-V block contribute
  ``u . gamma`` and ``u . gamma . sigma`` (landing at ``x2`` and ``x1``),
  except that the ``sigma`` variant is dropped when ``u . phi`` equals the
  distinguished ``A`` path at ``y1`` or ``x1`` of that block.

Enumeration is the oracle of record here: closed-form counts are computed
independently and any mismatch is reported as a discrepancy by the callers,
never reconciled silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import IndeterminateError, NotTriangulationError
from .quiver import GenTriQuiver
from .relations import Path, SpecialCycles, make_path, path_A, path_B, special_cycles, stationary
from .star import MWeight, OrbitData, WeightData, is_triangulation


@dataclass(frozen=True)
class LinPoly:
    """A linear polynomial over the rationals in the symbolic weights."""

    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[str, Fraction], ...] = ()

    def __add__(self, other: "LinPoly") -> "LinPoly":
        acc = dict(self.coeffs)
        for name, c in other.coeffs:
            acc[name] = acc.get(name, Fraction(0)) + c
        acc = {k: v for k, v in acc.items() if v != 0}
        return LinPoly(self.const + other.const, tuple(sorted(acc.items())))

    def scale(self, k: int) -> "LinPoly":
        return LinPoly(self.const * k, tuple((n, c * k) for n, c in self.coeffs))

    def value(self) -> Optional[int]:
        if self.coeffs:
            return None
        assert self.const.denominator == 1
        return int(self.const)

    def evaluate(self, assignment: dict[str, int]) -> int:
        total = self.const
        for name, c in self.coeffs:
            if name not in assignment:
                raise IndeterminateError(f"no value for symbol {name}")
            total += c * assignment[name]
        assert total.denominator == 1
        return int(total)

    def render(self) -> str:
        parts = []
        for name, c in self.coeffs:
            if c == 1:
                parts.append(name)
            else:
                parts.append(f"{c}*{name}")
        if self.const != 0 or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)


def _weight_poly(m: MWeight) -> LinPoly:
    if isinstance(m, int):
        return LinPoly(Fraction(m))
    return LinPoly(Fraction(0), ((m.name, Fraction(1)),))


def orbit_stat(od: OrbitData, arrow: str) -> int:
    """``n + n_nu + 2 n_phi`` for the orbit of ``arrow``."""
    rep = od.rep(arrow)
    return od.n[rep] + od.nu_count[rep] + 2 * od.phi_count[rep]


def arrow_contribution(od: OrbitData, w: WeightData, arrow: str) -> LinPoly:
    """``m * (n + n_nu + 2 n_phi)`` for the orbit of ``arrow``."""
    return _weight_poly(w.m_of(arrow)).scale(orbit_stat(od, arrow))


@dataclass(frozen=True)
class BasisSet:
    vertex: str
    elements: frozenset[Path]
    case_tag: str

    def __len__(self) -> int:
        return len(self.elements)


# -- vertex classification -----------------------------------------------------

def _classify(q: GenTriQuiver, x: str) -> tuple[str, Optional[object], Optional[str]]:
    """(case tag, owning block, distinguished role) for the vertex ``x``."""
    for pb in q.blocks.values():
        vm = dict(pb.vertex_of)
        if pb.kind == "IV":
            if x == vm["c"]:
                return "iv-top", pb, "alpha"
            if x == vm["d"]:
                return "iv-bottom", pb, "delta"
        elif pb.kind == "V":
            if x == vm["x1"]:
                return "v-x1", pb, "omega"
            if x == vm["x2"]:
                return "v-x2", pb, "eta"
            if x == vm["y1"]:
                return "v-y1", pb, "psi"
            if x == vm["y2"]:
                return "v-y2", pb, "epsilon"
    return "two-arrows", None, None


def _detours(q: GenTriQuiver) -> tuple[dict[str, str], dict[str, tuple[str, str]]]:
    """Maps nu -> beta and phi -> (gamma, sigma) across all blocks."""
    nu_beta: dict[str, str] = {}
    phi_gs: dict[str, tuple[str, str]] = {}
    for pb in q.blocks.values():
        am = dict(pb.arrow_ids)
        if pb.kind == "IV":
            nu_beta[am["nu"]] = am["beta"]
        elif pb.kind == "V":
            phi_gs[am["phi"]] = (am["gamma"], am["sigma"])
    return nu_beta, phi_gs


def _sigma_exceptions(q: GenTriQuiver, od: OrbitData, w: WeightData,
                      cycles: SpecialCycles) -> frozenset[tuple[str, ...]]:
    """Arrow tuples ``u . phi`` whose ``gamma sigma`` detour is not counted."""
    out = set()
    for pb in q.blocks.values():
        if pb.kind != "V":
            continue
        am = dict(pb.arrow_ids)
        out.add(path_A(od, w, am["psi"]).arrows)
        out.add(cycles.A[am["omega"]].arrows)
    return frozenset(out)


def _tilde_set(q: GenTriQuiver, od: OrbitData, w: WeightData, b_path: Path,
               nu_beta, phi_gs, sigma_skip) -> set[Path]:
    """Proper prefixes of ``b_path`` plus all detour paths hanging off them."""
    out: set[Path] = set()
    arrows = b_path.arrows
    for cut in range(len(arrows)):
        if cut >= 1:
            out.add(make_path(q, arrows[:cut]))
        if cut > len(arrows) - 2:
            continue                      # u.next would be the full cycle, not proper
        nxt = arrows[cut]
        prefix = list(arrows[:cut])
        if nxt in nu_beta:
            out.add(make_path(q, prefix + [nu_beta[nxt]]))
        if nxt in phi_gs:
            gamma, sigma = phi_gs[nxt]
            out.add(make_path(q, prefix + [gamma]))
            if tuple(prefix + [nxt]) not in sigma_skip:
                out.add(make_path(q, prefix + [gamma, sigma]))
    return out


def basis_at_vertex(q: GenTriQuiver, sq, od: OrbitData, w: WeightData, x: str) -> BasisSet:
    """The per-vertex basis of the generalized weighted algebra at ``x``."""
    if not w.all_m_concrete():
        raise IndeterminateError("basis enumeration needs concrete weights m")
    cycles = special_cycles(q, sq, w, od)
    nu_beta, phi_gs = _detours(q)
    sigma_skip = _sigma_exceptions(q, od, w, cycles)

    def tilde(b: Path) -> set[Path]:
        return _tilde_set(q, od, w, b, nu_beta, phi_gs, sigma_skip)

    case, pb, role = _classify(q, x)
    if case == "two-arrows":
        out = [a for a in q.out_arrows(x) if a in set(sq.arrows)]
        assert len(out) == 2, f"vertex {x} is not 2-regular in the reduced quiver"
        virt = [a for a in out if w.is_virtual(a)]
        if virt:
            assert len(virt) == 1, "both arrows at a vertex cannot be virtual"
            other = out[0] if out[1] == virt[0] else out[1]
            b = path_B(od, w, other)
            elems = tilde(b) | {stationary(x), b, make_path(q, [other, sq.f[other]])}
            return BasisSet(x, frozenset(elems), "virtual-partner")
        eta = min(out)
        b_eta = path_B(od, w, eta)
        b_bar = path_B(od, w, sq.bar[eta])
        elems = tilde(b_eta) | tilde(b_bar) | {stationary(x), b_eta}
        return BasisSet(x, frozenset(elems), "two-arrows")

    am = dict(pb.arrow_ids)
    arrow = am[role]
    if case in ("iv-top", "v-x1", "v-x2"):
        b = cycles.B[arrow]
    else:
        b = path_B(od, w, arrow)
    elems = tilde(b) | {stationary(x), b}
    if case == "v-x2":
        elems.add(make_path(q, [am["sigma"]]))
    elif case == "v-y2":
        elems.add(make_path(q, [am["rho"]]))
    return BasisSet(x, frozenset(elems), case)


def basis_counts_closed(od: OrbitData, w: WeightData, x: str) -> LinPoly:
    """Closed-form cardinality of the basis at ``x`` (symbolic weights allowed)."""
    q = od.star.base
    case, pb, role = _classify(q, x)
    if case == "two-arrows":
        kept = set(od.star.arrows)
        out = [a for a in q.out_arrows(x) if a in kept]
        assert len(out) == 2
        return arrow_contribution(od, w, out[0]) + arrow_contribution(od, w, out[1])
    am = dict(pb.arrow_ids)
    if case in ("iv-top", "iv-bottom"):
        return arrow_contribution(od, w, am["delta"])
    return arrow_contribution(od, w, am["psi"])


def dimension_generalized(q: GenTriQuiver, od: OrbitData, w: WeightData) -> LinPoly:
    """Total dimension: arrows of the reduced quiver, plus one extra ``delta``
    share per kind-IV block and two extra ``psi`` shares per kind-V block."""
    total = LinPoly()
    for a in od.star.arrows:
        total = total + arrow_contribution(od, w, a)
    for pb in q.blocks.values():
        am = dict(pb.arrow_ids)
        if pb.kind == "IV":
            total = total + arrow_contribution(od, w, am["delta"])
        elif pb.kind == "V":
            total = total + arrow_contribution(od, w, am["psi"]).scale(2)
    return total


def enumerate_dimension(q: GenTriQuiver, sq, od: OrbitData, w: WeightData) -> int:
    return sum(len(basis_at_vertex(q, sq, od, w, x)) for x in q.vertices)


# -- plain triangulation quivers ------------------------------------------------

def dimension_triangulation(q: GenTriQuiver, od: OrbitData, w: WeightData) -> LinPoly:
    """Sum of ``m * n^2`` over the g-orbits of a plain triangulation quiver."""
    if not is_triangulation(q):
        raise NotTriangulationError("quiver has blocks of kind IV or V")
    total = LinPoly()
    for rep, n in sorted(od.n.items()):
        total = total + _weight_poly(w.m[rep]).scale(n * n)
    return total


def basis_triangulation(q: GenTriQuiver, od: OrbitData, w: WeightData, x: str) -> BasisSet:
    """Per-vertex basis of a weighted triangulation algebra.

    At a vertex with a virtual arrow the basis is every prefix of the other
    arrow's ``B`` cycle (including the full cycle) together with the
    stationary path and the length-2 path ``a . f(a)``; otherwise the proper
    prefixes of both ``B`` cycles, the stationary path and one full cycle.
    """
    if not is_triangulation(q):
        raise NotTriangulationError("quiver has blocks of kind IV or V")
    if not w.all_m_concrete():
        raise IndeterminateError("basis enumeration needs concrete weights m")
    sq = od.star
    out = sorted(q.out_arrows(x))
    assert len(out) == 2, f"vertex {x} of a triangulation quiver must have two out-arrows"
    virt = [a for a in out if w.is_virtual(a)]
    if virt:
        assert len(virt) == 1, "both arrows at a vertex cannot be virtual"
        other = out[0] if out[1] == virt[0] else out[1]
        b = path_B(od, w, other)
        elems = {stationary(x), make_path(q, [other, sq.f[other]])}
        elems.update(make_path(q, b.arrows[:k]) for k in range(1, len(b.arrows) + 1))
        return BasisSet(x, frozenset(elems), "virtual")
    lead = out[0]
    elems = {stationary(x), path_B(od, w, lead)}
    for a in out:
        b = path_B(od, w, a)
        elems.update(make_path(q, b.arrows[:k]) for k in range(1, len(b.arrows)))
    return BasisSet(x, frozenset(elems), "generic")
