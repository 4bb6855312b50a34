"""Distinguished paths and the defining relations of the weighted algebras.

For an arrow ``a`` in a ``g``-orbit of length ``n`` with orbit weight ``m``,
the paths ``A(a)``, ``B(a)`` and ``A'(a)`` run along the orbit cycle from
``a`` for ``m*n - 1``, ``m*n`` and ``m*n - 2`` arrows; ``B(a)`` is a cycle at
the source of ``a``.  Blocks of kinds IV and V additionally contribute
cycles through their deleted black vertices: with ``C(a)`` the tail of
``A(a)`` (so that ``a . C(a) = A(a)``),

* ``B_alpha(i) = alpha_i . C(delta_i) . beta_i`` at the vertex ``c`` of a
  kind-IV block, of length ``m * n`` for delta's orbit, and
* ``B_eta(j) = eta_j . C(epsilon_j) . gamma_j`` at ``x2`` and
  ``B_omega(j) = omega_j . C(psi_j) . rho_j`` at ``x1`` of a kind-V block,
  both of length ``m * n`` for psi's orbit.

Relations are stored as normalized linear combinations of parallel paths
(sum of terms = 0); the leading term always has rational coefficient +1.
Coefficients are exact rationals times a multiset of opaque parameter
symbols, so no floating point enters anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import NotTriangulationError, WeightError
from .quiver import GenTriQuiver
from .star import (OrbitData, Scalar, StarQuiver, WeightData, is_triangulation,
                   validate_weights)


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.arrows)

    def render(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return ".".join(self.arrows)


def stationary(x: str) -> Path:
    return Path(x, x, ())


def make_path(q: GenTriQuiver, arrows: Sequence[str]) -> Path:
    if not arrows:
        raise ValueError("use stationary() for empty paths")
    for left, right in zip(arrows, arrows[1:]):
        if q.arrows[left].target != q.arrows[right].source:
            raise ValueError(f"arrows {left} and {right} do not compose")
    return Path(q.arrows[arrows[0]].source, q.arrows[arrows[-1]].target, tuple(arrows))


def concat(q: GenTriQuiver, *pieces: Union[Path, str]) -> Path:
    arrows: list[str] = []
    for p in pieces:
        arrows.extend([p] if isinstance(p, str) else p.arrows)
    return make_path(q, arrows)


@dataclass(frozen=True)
class Coefficient:
    rational: Fraction
    symbols: tuple[str, ...] = ()

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.rational, self.symbols)

    def render(self) -> str:
        parts = [str(self.rational)]
        parts.extend(self.symbols)
        return "*".join(parts)


def coefficient(value: Scalar, sign: int = 1) -> Coefficient:
    if isinstance(value, Fraction):
        return Coefficient(sign * value)
    return Coefficient(Fraction(sign), (value,))


ONE = Coefficient(Fraction(1))
MINUS_ONE = Coefficient(Fraction(-1))


@dataclass(frozen=True)
class Relation:
    """A normalized combination of parallel paths, read as `sum = 0`."""

    terms: tuple[tuple[Coefficient, Path], ...]
    family: str
    block: Optional[str] = None

    def __post_init__(self):
        assert self.terms, "empty relation"
        lead = self.terms[0]
        assert lead[0].rational == 1, "leading coefficient must be +1"
        src, tgt = lead[1].source, lead[1].target
        paths = [p for _, p in self.terms]
        assert all(p.source == src and p.target == tgt for p in paths), \
            f"terms of a relation must be parallel: {[p.render() for p in paths]}"
        assert len({p.arrows for p in paths}) == len(paths), "duplicate path in relation"
        assert all(c.rational != 0 for c, _ in self.terms)

    @property
    def lead(self) -> Path:
        return self.terms[0][1]

    def render(self) -> str:
        body = " + ".join(f"{c.render()}*{p.render()}" for c, p in self.terms)
        return f"family={self.family} : {body} = 0"


@dataclass(frozen=True)
class RelationSet:
    relations: tuple[Relation, ...]

    def render(self) -> str:
        return "\n".join(r.render() for r in self.relations) + "\n"

    def by_family(self, family: str) -> tuple[Relation, ...]:
        return tuple(r for r in self.relations if r.family == family)

    def find(self, arrows: Sequence[str]) -> Optional[Relation]:
        """The relation whose leading path is exactly ``arrows``, if any."""
        key = tuple(arrows)
        for r in self.relations:
            if r.lead.arrows == key:
                return r
        return None

    def zero_paths(self) -> frozenset[tuple[str, ...]]:
        """Leading paths of single-term relations (monomials equal to zero)."""
        return frozenset(r.lead.arrows for r in self.relations if len(r.terms) == 1)


# -- distinguished paths ------------------------------------------------------

def g_power_path(od: OrbitData, arrow: str, length: int) -> list[str]:
    """The first ``length`` arrows of the g-orbit cycle starting at ``arrow``."""
    cyc = od.orbit_cycle(arrow)
    i = cyc.index(arrow)
    return [cyc[(i + k) % len(cyc)] for k in range(length)]


def standard_paths(sq: StarQuiver, w: WeightData, arrow: str,
                   od: OrbitData | None = None) -> tuple[Path, Path, Optional[Path]]:
    """``(A, B, A')`` along the g-orbit of ``arrow``; ``A'`` only when m*n >= 3."""
    od = od or w.orbits
    mn = w.mn(arrow)
    q = sq.base
    a_path = make_path(q, g_power_path(od, arrow, mn - 1))
    b_path = make_path(q, g_power_path(od, arrow, mn))
    assert b_path.source == b_path.target, "B must be a cycle"
    aprime = make_path(q, g_power_path(od, arrow, mn - 2)) if mn >= 3 else None
    return a_path, b_path, aprime


def path_A(od: OrbitData, w: WeightData, arrow: str) -> Path:
    return make_path(od.star.base, g_power_path(od, arrow, w.mn(arrow) - 1))


def path_B(od: OrbitData, w: WeightData, arrow: str) -> Path:
    return make_path(od.star.base, g_power_path(od, arrow, w.mn(arrow)))


def _c_tail(od: OrbitData, w: WeightData, arrow: str) -> list[str]:
    """Arrows of C(arrow): A(arrow) with the leading ``arrow`` dropped."""
    return g_power_path(od, arrow, w.mn(arrow) - 1)[1:]


@dataclass(frozen=True)
class SpecialCycles:
    """Per-block cycles through the deleted black vertices, plus their A-parts."""

    A: dict[str, Path]       # keyed by arrow id of alpha_i / eta_j / omega_j
    B: dict[str, Path]


def special_cycles(q: GenTriQuiver, sq: StarQuiver, w: WeightData,
                   od: OrbitData | None = None) -> SpecialCycles:
    od = od or w.orbits
    A: dict[str, Path] = {}
    B: dict[str, Path] = {}
    for pb in q.blocks.values():
        amap = dict(pb.arrow_ids)
        if pb.kind == "IV":
            alpha, beta, delta = amap["alpha"], amap["beta"], amap["delta"]
            A[alpha] = make_path(q, [alpha] + _c_tail(od, w, delta))
            B[alpha] = concat(q, A[alpha], beta)
        elif pb.kind == "V":
            eta, gamma, eps = amap["eta"], amap["gamma"], amap["epsilon"]
            omega, rho, psi = amap["omega"], amap["rho"], amap["psi"]
            A[eta] = make_path(q, [eta] + _c_tail(od, w, eps))
            B[eta] = concat(q, A[eta], gamma)
            A[omega] = make_path(q, [omega] + _c_tail(od, w, psi))
            B[omega] = concat(q, A[omega], rho)
    return SpecialCycles(A, B)


# -- relation generation --------------------------------------------------------

def _zero(q: GenTriQuiver, arrows: Sequence[str], family: str, block: str | None) -> Relation:
    return Relation(((ONE, make_path(q, arrows)),), family, block)


def _eq(q: GenTriQuiver, lead: Sequence[str], rest: Sequence[tuple[Coefficient, Path]],
        family: str, block: str | None) -> Relation:
    terms = [(ONE, make_path(q, lead))]
    terms.extend((c, p) for c, p in rest if c.rational != 0)
    return Relation(tuple(terms), family, block)


def _sorted_blocks(q: GenTriQuiver, kind: str) -> list:
    return [pb for name, pb in sorted(q.blocks.items()) if pb.kind == kind]


def relations_generalized(q: GenTriQuiver, sq: StarQuiver, od: OrbitData,
                          w: WeightData) -> RelationSet:
    """The full defining relation set of the weighted algebra of ``(q, *)``.

    Six families: border-loop squares (1); triangle relations of kind II/III
    arrows (2); the kind-IV family (3) and kind-V family (4) with their
    exception clauses; and the two zero-relation families (5), (6) on arrows
    of kinds I-III, skipped near virtual arrows exactly as the exception
    clauses prescribe.
    """
    bad = validate_weights(od, w)
    if bad:
        raise WeightError("; ".join(bad))
    if not w.all_m_concrete():
        raise WeightError("relation generation needs concrete weights m")

    nu_set = {dict(pb.arrow_ids)["nu"] for pb in q.blocks.values() if pb.kind == "IV"}
    phi_set = {dict(pb.arrow_ids)["phi"] for pb in q.blocks.values() if pb.kind == "V"}
    return RelationSet(tuple(
        _family1(q, sq, od, w)
        + _family2(q, sq, od, w)
        + _family3(q, sq, od, w, nu_set, phi_set)
        + _family4(q, sq, od, w, nu_set, phi_set)
        + _family56(q, sq, od, w, nu_set, phi_set)
    ))


def _A_term(od: OrbitData, w: WeightData, arrow: str, sign: int = -1) -> tuple[Coefficient, Path]:
    return (coefficient(w.c_of(arrow), sign), path_A(od, w, arrow))


def _family1(q, sq, od, w) -> list[Relation]:
    out = []
    for pb in _sorted_blocks(q, "I"):
        loop = dict(pb.arrow_ids)["loop"]
        bar = sq.bar[loop]
        rest = [_A_term(od, w, bar)]
        bval = w.b_of(q.arrows[loop].source)
        if not (isinstance(bval, Fraction) and bval == 0):
            rest.append((coefficient(bval, -1), path_B(od, w, loop)))
        out.append(_eq(q, [loop, loop], rest, "1", pb.name))
    return out


def _family2(q, sq, od, w) -> list[Relation]:
    out = []
    for kind in ("II", "III"):
        for pb in _sorted_blocks(q, kind):
            for role, a in pb.arrow_ids:
                out.append(_eq(q, [a, sq.f[a]], [_A_term(od, w, sq.bar[a])], "2", pb.name))
    return out


def _family3(q, sq, od, w, nu_set, phi_set) -> list[Relation]:
    out = []
    for pb in _sorted_blocks(q, "IV"):
        am = dict(pb.arrow_ids)
        alpha, tau, beta, nu, delta = am["alpha"], am["tau"], am["beta"], am["nu"], am["delta"]
        name = pb.name
        out.append(_eq(q, [nu, delta],
                       [(MINUS_ONE, make_path(q, [beta, alpha])), _A_term(od, w, sq.bar[nu])],
                       "3", name))
        out.append(_eq(q, [delta, tau], [_A_term(od, w, sq.bar[delta])], "3", name))
        out.append(_eq(q, [tau, nu], [_A_term(od, w, sq.bar[tau])], "3", name))
        out.append(_zero(q, [alpha, tau], "3", name))
        out.append(_zero(q, [tau, beta], "3", name))
        out.append(_zero(q, [delta, tau, sq.g[tau]], "3", name))
        g_delta = sq.g[delta]
        if not (w.is_virtual(tau) or g_delta in nu_set or g_delta in phi_set):
            out.append(_zero(q, [delta, g_delta, sq.f[g_delta]], "3", name))
        g_tau = sq.g[tau]
        nu_small = w.m_of(nu) == 1 and od.n[od.rep(nu)] == 3
        if not (nu_small or g_tau in nu_set or g_tau in phi_set):
            out.append(_zero(q, [tau, g_tau, sq.f[g_tau]], "3", name))
    return out


def _family4(q, sq, od, w, nu_set, phi_set) -> list[Relation]:
    out = []
    for pb in _sorted_blocks(q, "V"):
        am = dict(pb.arrow_ids)
        eps, rho, sigma, eta = am["epsilon"], am["rho"], am["sigma"], am["eta"]
        psi, omega, gamma, phi = am["psi"], am["omega"], am["gamma"], am["phi"]
        name = pb.name
        out.append(_eq(q, [phi, eps],
                       [(MINUS_ONE, make_path(q, [gamma, eta])), _A_term(od, w, sq.bar[phi])],
                       "4", name))
        out.append(_eq(q, [eps, psi],
                       [(MINUS_ONE, make_path(q, [rho, omega])), _A_term(od, w, sq.bar[eps])],
                       "4", name))
        out.append(_eq(q, [psi, phi], [_A_term(od, w, sq.bar[psi])], "4", name))
        out.append(_eq(q, [gamma, sigma], [(MINUS_ONE, make_path(q, [phi, rho]))], "4", name))
        out.append(_eq(q, [sigma, omega], [(MINUS_ONE, make_path(q, [eta, psi]))], "4", name))
        out.append(_zero(q, [omega, gamma], "4", name))
        out.append(_zero(q, [omega, phi], "4", name))
        out.append(_zero(q, [psi, gamma], "4", name))
        out.append(_zero(q, [phi, eps, psi, phi], "4", name))
        out.append(_zero(q, [eps, psi, phi, eps], "4", name))
        out.append(_zero(q, [psi, phi, eps, psi], "4", name))
        out.append(Relation(((ONE, concat(q, path_B(od, w, phi), sq.bar[phi])),), "4", name))
        g_psi = sq.g[psi]
        if g_psi not in nu_set and g_psi not in phi_set:
            out.append(_zero(q, [psi, g_psi, sq.f[g_psi]], "4", name))
    return out


def _family56(q, sq, od, w, nu_set, phi_set) -> list[Relation]:
    out5, out6 = [], []
    for kind in ("I", "II", "III"):
        for pb in _sorted_blocks(q, kind):
            for role, a in pb.arrow_ids:
                fa, ga = sq.f[a], sq.g[a]
                f2a = sq.f[fa]
                bar_a = sq.bar[a]
                skip5 = w.is_virtual(f2a) or (
                    w.is_virtual(sq.f[bar_a])
                    and w.m_of(bar_a) == 1 and od.n[od.rep(bar_a)] == 3)
                if not skip5:
                    out5.append(_zero(q, [a, fa, sq.g[fa]], "5", pb.name))
                if ga in nu_set or ga in phi_set:
                    continue
                skip6 = w.is_virtual(fa) or (
                    w.is_virtual(f2a)
                    and w.m_of(fa) == 1 and od.n[od.rep(fa)] == 3)
                if not skip6:
                    out6.append(_zero(q, [a, ga, sq.f[ga]], "6", pb.name))
    return out5 + out6


def relations_lambda_dblprime(m1, w: WeightData | None = None) -> RelationSet:
    """Presentation on the reduced mutation quiver (``pi`` and ``kappa`` removed).

    ``m1`` is a stage-1 mutation result.  In the stage-1 algebra the arrow
    ``pi`` equals the composite ``psi . zeta`` and ``kappa`` equals
    ``lambda . epsilon - theta . eta``; substituting these and simplifying
    turns each pi-marked region into an explicit j-indexed relation list,
    while blocks inherited from the input keep their usual families (the
    kind-V family is empty here since no kind-V block survives stage 1).

    Relations are emitted on the arrows that survive the removal; with no
    kind-V blocks in the original quiver this is exactly the generalized
    relation set of the stage-1 quiver.
    """
    from .errors import GentriqError
    if getattr(m1, "stage", None) != 1:
        raise GentriqError("the reduced presentation needs a stage-1 mutation result")
    q, sq, od = m1.quiver, m1.star, m1.orbits
    w = w or m1.weights
    bad = validate_weights(od, w)
    if bad:
        raise WeightError("; ".join(bad))
    if not w.all_m_concrete():
        raise WeightError("relation generation needs concrete weights m")

    removed = {f"{n}.pi" for n in m1.v_blocks} | {f"{n}.kappa" for n in m1.v_blocks}
    region_blocks = {f"{n}_ii" for n in m1.v_blocks} | {f"{n}_iv" for n in m1.v_blocks}
    nu_set = {dict(pb.arrow_ids)["nu"] for pb in q.blocks.values() if pb.kind == "IV"}
    nu_original = {dict(pb.arrow_ids)["nu"] for name, pb in q.blocks.items()
                   if pb.kind == "IV" and name not in region_blocks}

    out: list[Relation] = []
    for name in m1.v_blocks:
        lam, eps, psi = f"{name}.lambda", f"{name}.epsilon", f"{name}.psi"
        zeta, theta, eta = f"{name}.zeta", f"{name}.theta", f"{name}.eta"
        bar_zeta = sq.bar[zeta]
        tag = "lambda-dblprime"
        out.append(_eq(q, [lam, eps, psi],
                       [(MINUS_ONE, make_path(q, [theta, eta, psi])),
                        _A_term(od, w, lam)], tag, name))
        out.append(_eq(q, [zeta, lam, eps],
                       [(MINUS_ONE, make_path(q, [zeta, theta, eta])),
                        _A_term(od, w, bar_zeta)], tag, name))
        out.append(_eq(q, [eps, psi, zeta], [_A_term(od, w, eps)], tag, name))
        out.append(_eq(q, [psi, zeta, lam], [_A_term(od, w, psi)], tag, name))
        out.append(_zero(q, [psi, zeta, theta], tag, name))
        out.append(_zero(q, [eta, psi, zeta], tag, name))
        out.append(_zero(q, [lam, eps, psi, zeta, lam], tag, name))
        out.append(_zero(q, [eps, psi, zeta, lam, eps], tag, name))
        out.append(_zero(q, [psi, zeta, lam, eps, psi], tag, name))
        out.append(_zero(q, [zeta, lam, eps, psi, zeta], tag, name))
        out.append(Relation(((ONE, concat(q, path_A(od, w, lam), bar_zeta)),), tag, name))
        g_psi = sq.g[psi]
        tail = sq.f[g_psi]
        if g_psi not in nu_original and g_psi not in removed and tail not in removed:
            out.append(_zero(q, [psi, g_psi, tail], tag, name))

    for pb in _sorted_blocks(q, "I"):
        loop = dict(pb.arrow_ids)["loop"]
        bar = sq.bar[loop]
        rest = [_A_term(od, w, bar)]
        bval = w.b_of(q.arrows[loop].source)
        if not (isinstance(bval, Fraction) and bval == 0):
            rest.append((coefficient(bval, -1), path_B(od, w, loop)))
        out.append(_eq(q, [loop, loop], rest, "1", pb.name))
    for kind in ("II", "III"):
        for pb in _sorted_blocks(q, kind):
            if pb.name in region_blocks:
                continue
            for role, a in pb.arrow_ids:
                out.append(_eq(q, [a, sq.f[a]], [_A_term(od, w, sq.bar[a])], "2", pb.name))
    iv_rels = _family3(q, sq, od, w, nu_set, set())
    out.extend(r for r in iv_rels if r.block not in region_blocks)
    for r in _family56(q, sq, od, w, nu_set, set()):
        if r.block in region_blocks:
            continue
        if any(a in removed for a in r.lead.arrows):
            continue
        out.append(r)
    return RelationSet(tuple(out))


def relations_triangulation(q: GenTriQuiver, od: OrbitData, w: WeightData) -> RelationSet:
    """Defining relations of the weighted algebra of a plain triangulation quiver."""
    if not is_triangulation(q):
        raise NotTriangulationError("quiver has blocks of kind IV or V")
    bad = validate_weights(od, w)
    if bad:
        raise WeightError("; ".join(bad))
    if not w.all_m_concrete():
        raise WeightError("relation generation needs concrete weights m")
    sq = od.star
    border_loops = {loop for loops in od.border_loops.values() for loop in loops}

    out: list[Relation] = []
    for a in sorted(sq.arrows):
        block = q.arrows[a].block
        if a in border_loops:
            rest = [_A_term(od, w, sq.bar[a])]
            bval = w.b_of(q.arrows[a].source)
            if not (isinstance(bval, Fraction) and bval == 0):
                rest.append((coefficient(bval, -1), path_B(od, w, a)))
            out.append(_eq(q, [a, a], rest, "1", block))
        else:
            out.append(_eq(q, [a, sq.f[a]], [_A_term(od, w, sq.bar[a])], "2", block))
    for a in sorted(sq.arrows):
        block = q.arrows[a].block
        fa = sq.f[a]
        f2a = sq.f[fa]
        bar_a = sq.bar[a]
        skip3 = w.is_virtual(f2a) or (
            w.is_virtual(sq.f[bar_a]) and w.m_of(bar_a) == 1 and od.n[od.rep(bar_a)] == 3)
        if not skip3:
            out.append(_zero(q, [a, fa, sq.g[fa]], "3", block))
    for a in sorted(sq.arrows):
        block = q.arrows[a].block
        fa = sq.f[a]
        ga = sq.g[a]
        skip4 = w.is_virtual(fa) or (
            w.is_virtual(sq.f[fa]) and w.m_of(fa) == 1 and od.n[od.rep(fa)] == 3)
        if not skip4:
            out.append(_zero(q, [a, ga, sq.f[ga]], "4", block))
    return RelationSet(tuple(out))
