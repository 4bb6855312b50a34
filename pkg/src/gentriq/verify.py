"""Built-in verification suite over the bundled examples.

Each check recomputes published or independently derived values from
scratch: orbit censuses of the bundled quivers, dimension counts obtained
three ways (explicit basis enumeration, per-vertex closed forms, global
formula), relation spot checks, the full replacement/mutation round trip,
the surface translations, and a seeded batch of random gluings for the
structural invariants.  All comparisons are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import example_text
from .enumeration import (basis_at_vertex, basis_counts_closed,
                          basis_triangulation, dimension_generalized,
                          dimension_triangulation)
from .quiver import GluingSpec, glue, load_gtq, quiver_isomorphic
from .relations import relations_generalized
from .sampling import random_gluing_spec
from .star import default_weights, orbit_data, star_quiver, weights_from_text
from .surface import parse_surface, surface_to_quiver
from .transforms import delta_construction, roundtrip_check
from .verifydata import (EX23_F_ORBITS, EX23_G_ORBITS, EX33_BIG_CYCLE)


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str

    def render(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"check {self.number} ({self.name}): {status} [{self.detail}]"


def _load(name: str):
    q = load_gtq(example_text(name))
    sq = star_quiver(q)
    od = orbit_data(sq)
    return q, sq, od


def _canonical_cycles(cycles) -> frozenset[tuple[str, ...]]:
    out = []
    for cyc in cycles:
        i = cyc.index(min(cyc))
        out.append(tuple(cyc[i:] + cyc[:i]))
    return frozenset(out)


def check_orbit_census_thirteen_blocks() -> CheckResult:
    q, sq, od = _load("ex23.gtq")
    ok = True
    notes = []
    lengths = sorted((len(c) for c in od.g_orbits), reverse=True)
    if lengths != [17, 15, 2, 2, 1]:
        ok, notes = False, [f"g-orbit lengths {lengths}"]
    if _canonical_cycles(od.g_orbits) != _canonical_cycles(EX23_G_ORBITS):
        ok = False
        notes.append("g-orbit cycles differ")
    if _canonical_cycles(od.f_orbits) != _canonical_cycles(EX23_F_ORBITS):
        ok = False
        notes.append("f-orbit cycles differ")
    detail = "; ".join(notes) if notes else \
        "5 g-orbits (17,15,2,2,1) and 13 f-orbits match the published cycles"
    return CheckResult(1, "thirteen-block orbit census", ok, detail)


def check_border_and_virtual_loop() -> CheckResult:
    q, sq, od = _load("ex33.gtq")
    ok = True
    notes = []
    lengths = sorted((len(c) for c in od.g_orbits), reverse=True)
    if lengths != [11, 7, 1]:
        ok, notes = False, [f"g-orbit lengths {lengths}"]
    if set(od.border) != {"B.b"}:
        ok = False
        notes.append(f"border {sorted(od.border)}")
    from .star import virtual_arrows
    w2 = default_weights(od, m={"T.loop": 2})
    w3 = default_weights(od, m={"T.loop": 3})
    if virtual_arrows(od, w2).arrows != frozenset({"T.loop"}):
        ok = False
        notes.append("loop not flagged virtual at weight 2")
    if virtual_arrows(od, w3).arrows:
        ok = False
        notes.append("virtual arrows reported at weight 3")
    detail = "; ".join(notes) if notes else \
        "lengths (11,7,1), border {B.b}, loop virtual exactly at weight 2"
    return CheckResult(2, "border vertex and virtual loop", ok, detail)


def check_replacement_dimension() -> CheckResult:
    q, sq, od = _load("ex32.gtq")
    w = weights_from_text(od, example_text("ex32.wts"))
    d = delta_construction(q, sq, od, w)
    ok = True
    notes = []
    poly = dimension_triangulation(d.quiver, d.orbits, d.weights)
    if poly.render() != "36*m + n + 13":
        ok = False
        notes.append(f"dimension polynomial {poly.render()}")
    expected = frozenset([
        ("V.mup", "V.xip"),
        ("V.eta", "V.theta", "V.kappa"),
        ("T.alpha", "V.zeta", "V.lambda", "V.epsilon", "V.psi", "T.beta"),
        ("T.loop",),
    ])
    if _canonical_cycles(d.orbits.g_orbits) != _canonical_cycles(expected):
        ok = False
        notes.append("replacement g-orbits differ")
    detail = "; ".join(notes) if notes else \
        "dimension 36*m + n + 13 and the four expected orbits"
    return CheckResult(3, "replacement quiver dimension", ok, detail)


def check_dimension_three_ways() -> CheckResult:
    q, sq, od = _load("ex32.gtq")
    w_sym = weights_from_text(od, example_text("ex32.wts"))
    poly = dimension_generalized(q, od, w_sym)
    ok = poly.render() == "49*m + n"
    notes = [] if ok else [f"symbolic dimension {poly.render()}"]
    for m in (1, 2, 3):
        for n in (2, 3, 4):
            w = default_weights(od, m={"V.phi": m, "T.loop": n},
                                c={"V.phi": "c", "T.loop": "d"})
            enumerated = sum(len(basis_at_vertex(q, sq, od, w, x)) for x in q.vertices)
            closed = sum(basis_counts_closed(od, w, x).value() for x in q.vertices)
            formula = dimension_generalized(q, od, w).value()
            value = poly.evaluate({"m": m, "n": n})
            if not (enumerated == closed == formula == value):
                ok = False
                notes.append(f"(m,n)=({m},{n}): {enumerated}/{closed}/{formula}/{value}")
    detail = "; ".join(notes) if notes else \
        "enumeration = closed forms = formula (= 49m+n) on {1,2,3}x{2,3,4}"
    return CheckResult(4, "dimension cross-check three ways", ok, detail)


def check_triangulation_dimension_cross() -> CheckResult:
    ok = True
    notes = []
    q, sq, od = _load("ex32.gtq")
    for m, n in ((1, 2), (2, 3)):
        w = default_weights(od, m={"V.phi": m, "T.loop": n})
        d = delta_construction(q, sq, od, w)
        enumerated = sum(
            len(basis_triangulation(d.quiver, d.orbits, d.weights, x))
            for x in d.quiver.vertices)
        formula = dimension_triangulation(d.quiver, d.orbits, d.weights).value()
        if enumerated != formula or formula != 36 * m + n + 13:
            ok = False
            notes.append(f"replacement (m,n)=({m},{n}): {enumerated} vs {formula}")
    q2 = load_gtq(example_text("twoloop.gtq"))
    od2 = orbit_data(star_quiver(q2))
    w2 = weights_from_text(od2, example_text("twoloop.wts"))
    enumerated = sum(len(basis_triangulation(q2, od2, w2, x)) for x in q2.vertices)
    formula = dimension_triangulation(q2, od2, w2).value()
    if enumerated != formula or formula != 8:
        ok = False
        notes.append(f"two-loop quiver: {enumerated} vs {formula}")
    detail = "; ".join(notes) if notes else \
        "basis count equals sum of m*n^2 on the replacement quiver and the two-loop quiver"
    return CheckResult(5, "triangulation dimension cross-check", ok, detail)


def check_relation_spot_checks() -> CheckResult:
    ok = True
    notes = []
    q, sq, od = _load("ex32.gtq")
    for n in (2, 3):
        w = default_weights(od, m={"V.phi": 1, "T.loop": n},
                            c={"V.phi": "c", "T.loop": "d"})
        rels = relations_generalized(q, sq, od, w)
        r = rels.find(["T.alpha", "T.beta"])
        if r is None or len(r.terms) != 2:
            ok = False
            notes.append(f"n={n}: loop-power relation missing")
        else:
            coeff, path = r.terms[1]
            if (coeff.rational, coeff.symbols) != (Fraction(-1), ("d",)) \
                    or path.arrows != ("T.loop",) * (n - 1):
                ok = False
                notes.append(f"n={n}: loop-power relation malformed")
        zeros = rels.zero_paths()
        for pair in (("V.omega", "V.gamma"), ("V.omega", "V.phi"), ("V.psi", "V.gamma")):
            if pair not in zeros:
                ok = False
                notes.append(f"n={n}: missing zero relation {'.'.join(pair)}")
        has_aba = ("T.alpha", "T.beta", "T.alpha") in zeros
        has_bab = ("T.beta", "T.alpha", "T.beta") in zeros
        if has_aba != (n >= 3) or has_bab != (n >= 3):
            ok = False
            notes.append(f"n={n}: length-3 zero relations wrong")

    q, sq, od = _load("ex33.gtq")
    w = default_weights(od, m={"V.phi": 1, "A.beta": 1, "T.loop": 2},
                        c={"V.phi": "a", "A.beta": "c", "T.loop": "d"},
                        b={"B.b": "b"})
    rels = relations_generalized(q, sq, od, w)
    r = rels.find(["I1.loop", "I1.loop"])
    cycle = EX33_BIG_CYCLE
    if r is None or len(r.terms) != 3:
        ok = False
        notes.append("border relation missing")
    else:
        (c1, p1), (c2, p2) = r.terms[1], r.terms[2]
        if (c1.rational, c1.symbols) != (Fraction(-1), ("a",)) or p1.arrows != cycle[1:]:
            ok = False
            notes.append("border relation first tail wrong")
        if (c2.rational, c2.symbols) != (Fraction(-1), ("b",)) or p2.arrows != cycle:
            ok = False
            notes.append("border relation second tail wrong")
    detail = "; ".join(notes) if notes else \
        "loop-power, zero, virtual-exception and border relations as published"
    return CheckResult(6, "relation spot checks", ok, detail)


def check_roundtrip() -> CheckResult:
    ok = True
    notes = []
    for name, wname in (("ex32.gtq", "ex32.wts"), ("ex33.gtq", "ex33.wts"),
                        ("spherical.gtq", "spherical.wts")):
        q, sq, od = _load(name)
        w = weights_from_text(od, example_text(wname))
        report = roundtrip_check(q, w)
        if not report.ok:
            ok = False
            notes.append(f"{name}: {'; '.join(report.lines)}")
    detail = "; ".join(notes) if notes else \
        "replacement + two mutation stages return each input with its weights"
    return CheckResult(7, "mutation round trip", ok, detail)


def check_surface_pipeline() -> CheckResult:
    ok = True
    notes = []
    q32 = load_gtq(example_text("ex32.gtq"))
    q53 = surface_to_quiver(parse_surface(example_text("ex53.surf")))
    if quiver_isomorphic(q53, q32) is None:
        ok = False
        notes.append("marked-sphere surface does not give the six-vertex quiver")

    tetra = surface_to_quiver(parse_surface(example_text("tetra.surf")))
    expected = glue(GluingSpec(
        (("W1", "II"), ("W2", "II"), ("W3", "II"), ("W4", "II")),
        ((("W1", 1), ("W4", 1)), (("W2", 1), ("W3", 1)), (("W3", 2), ("W4", 2)),
         (("W1", 2), ("W2", 2)), (("W1", 3), ("W3", 3)), (("W2", 3), ("W4", 3)))))
    if len(tetra.vertices) != 6 or quiver_isomorphic(tetra, expected) is None:
        ok = False
        notes.append("tetrahedral sphere translation wrong")

    disc = surface_to_quiver(parse_surface(example_text("disc.surf")))
    loops = [a for a in disc.arrows.values() if a.source == a.target]
    others = [a for a in disc.arrows.values() if a.source != a.target]
    if not (len(disc.vertices) == 3 and len(loops) == 3 and len(others) == 3):
        ok = False
        notes.append("disc translation wrong")
    detail = "; ".join(notes) if notes else \
        "marked sphere, tetrahedral sphere and disc translate correctly"
    return CheckResult(8, "surface pipeline", ok, detail)


def check_random_invariants(samples: int = 50) -> CheckResult:
    rng = random.Random(20240)
    ok = True
    notes = []
    for k in range(samples):
        spec = random_gluing_spec(rng, max_blocks=10)
        q = glue(spec)
        if q.validate():
            ok = False
            notes.append(f"sample {k}: invalid gluing")
            continue
        sq = star_quiver(q)
        od = orbit_data(sq)
        for a in sq.arrows:
            if sq.f[sq.f[sq.f[a]]] != a or sq.bar[sq.bar[a]] != a:
                ok = False
                notes.append(f"sample {k}: permutation axioms fail")
                break
        if sorted(x for cyc in od.g_orbits for x in cyc) != sorted(sq.arrows):
            ok = False
            notes.append(f"sample {k}: orbits do not partition the arrows")
        kept = set(sq.arrows)
        for v, vert in q.vertices.items():
            if vert.color == "white":
                outs = sum(1 for a in q.out_arrows(v) if a in kept)
                ins = sum(1 for a in q.in_arrows(v) if a in kept)
                if outs != 2 or ins != 2:
                    ok = False
                    notes.append(f"sample {k}: white vertex {v} not 2-regular")
                    break
        w = default_weights(od, m={cyc[0]: 3 for cyc in od.g_orbits})
        d = delta_construction(q, sq, od, w)
        if d.orbits.border != od.border:
            ok = False
            notes.append(f"sample {k}: border not preserved")
        q_again = glue(spec)
        if q_again.canonical_text() != q.canonical_text():
            ok = False
            notes.append(f"sample {k}: gluing not deterministic")
        od_again = orbit_data(star_quiver(q_again))
        if od_again.g_orbits != od.g_orbits or od_again.f_orbits != od.f_orbits:
            ok = False
            notes.append(f"sample {k}: orbit output not deterministic")
        if len(notes) > 4:
            break
    detail = "; ".join(notes) if notes else \
        f"{samples} random gluings satisfy the structural invariants deterministically"
    return CheckResult(9, "random structural invariants", ok, detail)


ALL_CHECKS = (
    check_orbit_census_thirteen_blocks,
    check_border_and_virtual_loop,
    check_replacement_dimension,
    check_dimension_three_ways,
    check_triangulation_dimension_cross,
    check_relation_spot_checks,
    check_roundtrip,
    check_surface_pipeline,
    check_random_invariants,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
