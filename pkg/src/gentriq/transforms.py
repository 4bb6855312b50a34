"""Block replacement into a plain triangulation quiver and its two-stage undo.

``delta_construction`` replaces every kind-IV block by two kind-II blocks
(new arrows ``xi: c -> d`` and ``mu: d -> c``, with ``alpha`` and ``beta``
reversed) and every kind-V block by three kind-II blocks (new arrows ``xip``,
``mup``, ``theta``, ``lambda``, ``kappa``, ``zeta``, with ``eta`` reversed;
``rho sigma omega gamma phi`` disappear).  The result has the same vertices,
is 2-regular, and its border equals the border of the input.

``mutate_stage1`` deletes the virtual-orbit arrows ``xi/mu`` and ``xip/mup``,
reverses ``alpha/beta`` and ``eta/theta`` back, and adds the connecting
arrows ``tau: a -> b`` and ``pi: y1 -> x1``.  This restores the kind-IV
blocks exactly and turns every former kind-V block into a glued pair
(kind II on ``y1, z, x1``; kind IV on ``y1, x1, x2, y2`` marked at its
``pi`` triangle).

``mutate_stage2`` deletes ``pi`` and ``kappa`` from each such region,
reverses ``theta``, ``lambda`` and ``zeta`` into ``sigma``, ``rho`` and
``omega``, and adds ``gamma: z -> x2`` and ``phi: z -> y2``, which is a
kind-V block again.  The composite of the three steps returns a quiver
isomorphic to the input (on gluing-built quivers it is literally equal).

Weights ride along by orbit: freshly created 2- and 3-orbits get weight 1
and parameter 1; every other orbit inherits its value from any member that
survives the rewrite, with ``tau`` reading the orbit of ``alpha``, ``pi``
the orbit of ``eta``, and ``phi`` the orbit of ``zeta``.  All transported
assignments are cross-checked for consistency inside each orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GentriqError, WeightError
from .quiver import GenTriQuiver, PlacedBlock, placed_block, quiver_isomorphic
from .star import (OrbitData, StarQuiver, WeightData, orbit_data, star_quiver)


@dataclass(frozen=True)
class DeltaResult:
    source: GenTriQuiver
    quiver: GenTriQuiver
    star: StarQuiver
    orbits: OrbitData
    weights: WeightData
    arrow_origin: dict[str, tuple[str, str]]    # new arrow -> (role tag, source block)
    iv_blocks: tuple[str, ...]
    v_blocks: tuple[str, ...]


@dataclass(frozen=True)
class MutationResult:
    stage: int
    quiver: GenTriQuiver
    star: StarQuiver
    orbits: OrbitData
    weights: WeightData
    virtual_sequence: tuple[str, ...]
    iv_blocks: tuple[str, ...]
    v_blocks: tuple[str, ...]
    source: GenTriQuiver


def _transport(new_od: OrbitData, old_od: OrbitData, old_w: WeightData,
               carriers: dict[str, str]) -> WeightData:
    """Move m and c to the orbits of a rewritten quiver.

    ``carriers`` maps a new arrow to an arrow of the old reduced quiver whose
    orbit value it inherits.  Arrows present in both reduced quivers carry
    their own old value.  Orbits without any carrier are freshly created and
    get m = 1, c = 1.
    """
    w = WeightData(new_od)
    for cyc in new_od.g_orbits:
        m_vals = []
        c_vals = []
        for a in cyc:
            old = a if a in old_od.orbit_rep else carriers.get(a)
            if old is None:
                continue
            rep = old_od.orbit_rep[old]
            m_vals.append(old_w.m[rep])
            c_vals.append(old_w.c[rep])
        if m_vals:
            if any(v != m_vals[0] for v in m_vals) or any(v != c_vals[0] for v in c_vals):
                raise WeightError(f"inconsistent weight transport on orbit ({cyc[0]} ...)")
            w.m[cyc[0]] = m_vals[0]
            w.c[cyc[0]] = c_vals[0]
        else:
            w.m[cyc[0]] = 1
            w.c[cyc[0]] = Fraction(1)
    w.b.update(old_w.b)
    return w


def _finish(source: GenTriQuiver, placed: list[PlacedBlock],
            old_od: OrbitData, old_w: WeightData, carriers: dict[str, str]):
    aliases = {v: vert.aliases for v, vert in source.vertices.items()}
    q = GenTriQuiver(placed, aliases)
    assert set(q.vertices) == set(source.vertices), "vertex set must be preserved"
    sq = star_quiver(q)
    od = orbit_data(sq)
    w = _transport(od, old_od, old_w, carriers)
    return q, sq, od, w


def delta_construction(q: GenTriQuiver, sq: StarQuiver, od: OrbitData,
                       w: WeightData) -> DeltaResult:
    """The canonically associated plain triangulation quiver with weights."""
    placed: list[PlacedBlock] = []
    origin: dict[str, tuple[str, str]] = {}
    carriers: dict[str, str] = {}
    iv, vv = [], []
    for name, pb in q.blocks.items():
        vm = dict(pb.vertex_of)
        if pb.kind in ("I", "II", "III"):
            placed.append(pb)
        elif pb.kind == "IV":
            iv.append(name)
            placed.append(placed_block(
                f"{name}_d1", "II",
                {"a": vm["a"], "b": vm["c"], "c": vm["d"]},
                {"alpha": f"{name}.alpha", "beta": f"{name}.xi", "gamma": f"{name}.delta"}))
            placed.append(placed_block(
                f"{name}_d2", "II",
                {"a": vm["c"], "b": vm["b"], "c": vm["d"]},
                {"alpha": f"{name}.beta", "beta": f"{name}.nu", "gamma": f"{name}.mu"}))
            origin[f"{name}.xi"] = ("xi", name)
            origin[f"{name}.mu"] = ("mu", name)
            origin[f"{name}.alpha"] = ("alpha-reversed", name)
            origin[f"{name}.beta"] = ("beta-reversed", name)
            carriers[f"{name}.alpha"] = f"{name}.tau"
            carriers[f"{name}.beta"] = f"{name}.tau"
        else:
            vv.append(name)
            placed.append(placed_block(
                f"{name}_d1", "II",
                {"a": vm["y1"], "b": vm["x2"], "c": vm["y2"]},
                {"alpha": f"{name}.eta", "beta": f"{name}.xip", "gamma": f"{name}.epsilon"}))
            placed.append(placed_block(
                f"{name}_d2", "II",
                {"a": vm["x2"], "b": vm["x1"], "c": vm["y2"]},
                {"alpha": f"{name}.theta", "beta": f"{name}.lambda", "gamma": f"{name}.mup"}))
            placed.append(placed_block(
                f"{name}_d3", "II",
                {"a": vm["y1"], "b": vm["z"], "c": vm["x1"]},
                {"alpha": f"{name}.psi", "beta": f"{name}.zeta", "gamma": f"{name}.kappa"}))
            for tag in ("xip", "mup", "theta", "lambda", "kappa", "zeta"):
                origin[f"{name}.{tag}"] = (tag, name)
            origin[f"{name}.eta"] = ("eta-reversed", name)
            carriers[f"{name}.zeta"] = f"{name}.phi"
            carriers[f"{name}.lambda"] = f"{name}.phi"

    new_q, new_sq, new_od, new_w = _finish(q, placed, od, w, carriers)
    assert not new_q.marking, "the replacement quiver must carry no marking"
    assert new_od.border == od.border, "border must be preserved"
    for v in new_q.vertices:
        assert len(new_q.out_arrows(v)) == 2 and len(new_q.in_arrows(v)) == 2, \
            f"replacement quiver must be 2-regular (fails at {v})"
    return DeltaResult(q, new_q, new_sq, new_od, new_w, origin, tuple(iv), tuple(vv))


def virtual_sequence(d: DeltaResult) -> tuple[str, ...]:
    """The canonical sequence of virtual arrows, kind-IV blocks first."""
    return tuple([f"{n}.xi" for n in d.iv_blocks] + [f"{n}.xip" for n in d.v_blocks])


def detect_exceptional(d: DeltaResult) -> list[str]:
    """Warnings about exceptional shapes of the replacement quiver.

    The only shape detected structurally is the two-kind-IV gluing with
    opposed middle arrows (a sphere); it is reported unless the weights rule
    the singular case out.  The remaining singular families are defined by
    data not modelled here and are reported as unchecked when the quiver is
    small enough to possibly be one of them.
    """
    q = d.source
    warnings: list[str] = []
    blocks = list(q.blocks.values())
    spherical = False
    if len(blocks) == 2 and all(pb.kind == "IV" for pb in blocks):
        b1, b2 = blocks
        vm1, vm2 = dict(b1.vertex_of), dict(b2.vertex_of)
        opposed = vm1["a"] == vm2["b"] and vm1["b"] == vm2["a"]
        if opposed:
            spherical = True
            rep_alpha = d.orbits.rep(f"{b1.name}.alpha")
            m_tau = d.weights.m[rep_alpha]
            weight_one_possible = m_tau == 1 if isinstance(m_tau, int) else m_tau.lower < 2
            c_tau = d.weights.c[rep_alpha]
            c_delta = d.weights.c[d.orbits.rep(f"{b1.name}.delta")]
            concrete = isinstance(c_tau, Fraction) and isinstance(c_delta, Fraction)
            if not weight_one_possible or (concrete and c_tau * c_delta != -1):
                pass                       # provably not singular
            elif not concrete:
                warnings.append(
                    "spherical shape: singularity condition "
                    "c_delta*c_tau != -1 unverifiable with symbolic parameters")
            elif isinstance(m_tau, int):
                warnings.append(
                    "spherical shape: singular (middle weight 1 and "
                    "parameter product -1)")
            else:
                warnings.append(
                    "spherical shape: singular if the middle weight is 1 "
                    "(parameter product is -1)")
    if not spherical and len(d.quiver.vertices) <= 6:
        warnings.append(
            "small triangulation quiver: singular disc/triangle/tetrahedral "
            "shapes not checked")
    return warnings


def mutate_stage1(d: DeltaResult) -> MutationResult:
    """Mutation along the canonical virtual sequence, at the quiver level."""
    placed: list[PlacedBlock] = []
    carriers: dict[str, str] = {}
    region = {f"{n}_d{i}" for n in d.iv_blocks + d.v_blocks for i in (1, 2, 3)}
    for name, pb in d.quiver.blocks.items():
        if name not in region:
            placed.append(pb)
    for name in d.iv_blocks:
        vm = dict(d.source.blocks[name].vertex_of)
        placed.append(placed_block(name, "IV", vm))
        carriers[f"{name}.tau"] = f"{name}.alpha"
    for name in d.v_blocks:
        vm = dict(d.source.blocks[name].vertex_of)
        placed.append(placed_block(
            f"{name}_ii", "II",
            {"a": vm["y1"], "b": vm["z"], "c": vm["x1"]},
            {"alpha": f"{name}.psi", "beta": f"{name}.zeta", "gamma": f"{name}.kappa"}))
        placed.append(placed_block(
            f"{name}_iv", "IV",
            {"a": vm["y1"], "b": vm["x1"], "c": vm["x2"], "d": vm["y2"]},
            {"alpha": f"{name}.eta", "tau": f"{name}.pi", "beta": f"{name}.theta",
             "nu": f"{name}.lambda", "delta": f"{name}.epsilon"}))
        carriers[f"{name}.pi"] = f"{name}.eta"

    q1, sq1, od1, w1 = _finish(d.source, placed, d.orbits, d.weights, carriers)
    assert od1.border == d.orbits.border
    return MutationResult(1, q1, sq1, od1, w1, virtual_sequence(d),
                          d.iv_blocks, d.v_blocks, d.source)


def mutate_stage2(m1: MutationResult) -> MutationResult:
    """Rewrite every pi-marked region back into a kind-V block."""
    if m1.stage != 1:
        raise GentriqError(f"stage-2 mutation needs a stage-1 result, got stage {m1.stage}")
    if not m1.v_blocks:
        return MutationResult(2, m1.quiver, m1.star, m1.orbits, m1.weights,
                              m1.virtual_sequence, m1.iv_blocks, m1.v_blocks, m1.source)
    placed: list[PlacedBlock] = []
    carriers: dict[str, str] = {}
    region = {f"{n}_ii" for n in m1.v_blocks} | {f"{n}_iv" for n in m1.v_blocks}
    for name, pb in m1.quiver.blocks.items():
        if name not in region:
            placed.append(pb)
    for name in m1.v_blocks:
        vm = dict(m1.source.blocks[name].vertex_of)
        placed.append(placed_block(name, "V", {
            "z": vm["z"], "x1": vm["x1"], "x2": vm["x2"], "y1": vm["y1"], "y2": vm["y2"]}))
        carriers[f"{name}.phi"] = f"{name}.zeta"

    q2, sq2, od2, w2 = _finish(m1.source, placed, m1.orbits, m1.weights, carriers)
    assert od2.border == m1.orbits.border
    return MutationResult(2, q2, sq2, od2, w2, m1.virtual_sequence,
                          m1.iv_blocks, m1.v_blocks, m1.source)


@dataclass
class RoundtripReport:
    ok: bool
    lines: list[str] = field(default_factory=list)
    witness: dict | None = None

    def render(self) -> str:
        head = "PASS: isomorphism found" if self.ok else "FAIL"
        return "\n".join([head] + self.lines) + "\n"


def roundtrip_check(q: GenTriQuiver, w: WeightData) -> RoundtripReport:
    """Run replacement, stage 1 and stage 2, then compare with the input.

    Checks quiver isomorphism (with witness), border preservation at every
    stage, marking transport, and orbit-by-orbit equality of the transported
    weights under the witness.
    """
    od = w.orbits
    sq = od.star
    report = RoundtripReport(True)
    d = delta_construction(q, sq, od, w)
    report.lines.append(f"replacement quiver: {len(d.quiver.vertices)} vertices, "
                        f"{len(d.quiver.arrows)} arrows, border preserved")
    m1 = mutate_stage1(d)
    report.lines.append(f"stage 1: {len(m1.quiver.arrows)} arrows, "
                        f"virtual sequence ({' '.join(m1.virtual_sequence) or 'empty'})")
    m2 = mutate_stage2(m1)
    wit = quiver_isomorphic(m2.quiver, q)
    if wit is None:
        report.ok = False
        report.lines.append("stage 2 quiver is NOT isomorphic to the input")
        return report
    report.witness = wit
    ident = all(k == v for k, v in wit["vertices"].items())
    report.lines.append("stage 2 quiver isomorphic to input"
                        + (" (identity witness)" if ident else ""))

    if m2.orbits.border != od.border:
        report.ok = False
        report.lines.append(f"border mismatch: {sorted(m2.orbits.border)} vs {sorted(od.border)}")
    image_marking = {frozenset(wit["arrows"][a] for a in tri) for tri in m2.quiver.marking}
    if image_marking != {frozenset(t) for t in q.marking}:
        report.ok = False
        report.lines.append("marking not preserved under the witness")

    for cyc in m2.orbits.g_orbits:
        rep = cyc[0]
        image_reps = {od.rep(wit["arrows"][a]) for a in cyc}
        if len(image_reps) != 1:
            report.ok = False
            report.lines.append(f"orbit ({rep} ...) does not map onto one orbit")
            continue
        img = image_reps.pop()
        if m2.weights.m[rep] != w.m[img] or m2.weights.c[rep] != w.c[img]:
            report.ok = False
            report.lines.append(
                f"weights differ on orbit ({rep} ...): "
                f"m {m2.weights.m[rep]} vs {w.m[img]}, c {m2.weights.c[rep]} vs {w.c[img]}")
    for v in sorted(od.border):
        img = wit["vertices"].get(v, v)
        if m2.weights.b_of(v) != w.b_of(img):
            report.ok = False
            report.lines.append(f"border values differ at {v}")
    if report.ok:
        report.lines.append("weights and border values transported identically")
    return report
