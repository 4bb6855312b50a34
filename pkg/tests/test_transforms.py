import random
from fractions import Fraction

import pytest

import gentriq as G
from gentriq.quiver import GluingSpec, glue
from gentriq.sampling import random_gluing_spec
from gentriq.star import WeightSymbol
from gentriq.transforms import (delta_construction, detect_exceptional,
                                mutate_stage1, mutate_stage2, roundtrip_check,
                                virtual_sequence)

from conftest import canon_cycles, load_example


def pipeline(q, **wkw):
    sq = G.star_quiver(q)
    od = G.orbit_data(sq)
    w = G.default_weights(od, **wkw)
    return sq, od, w


class TestDelta:
    def test_six_vertex_replacement(self, ex32):
        q, sq, od = ex32
        w = G.weights_from_text(od, G.example_text("ex32.wts"))
        d = delta_construction(q, sq, od, w)
        assert len(d.quiver.vertices) == 6
        assert set(d.quiver.vertices) == set(q.vertices)
        assert d.quiver.marking == ()
        assert G.is_triangulation(d.quiver)
        expected = [("V.mup", "V.xip"),
                    ("V.eta", "V.theta", "V.kappa"),
                    ("T.alpha", "V.zeta", "V.lambda", "V.epsilon", "V.psi", "T.beta"),
                    ("T.loop",)]
        assert canon_cycles(d.orbits.g_orbits) == canon_cycles(expected)

    def test_weight_transport(self, ex32):
        q, sq, od = ex32
        w = G.weights_from_text(od, G.example_text("ex32.wts"))
        d = delta_construction(q, sq, od, w)
        m = {cyc: d.weights.m[d.orbits.rep(cyc)] for cyc in
             ("V.xip", "V.theta", "T.alpha", "T.loop")}
        assert m == {"V.xip": 1, "V.theta": 1,
                     "T.alpha": WeightSymbol("m"), "T.loop": WeightSymbol("n", 2)}
        assert d.weights.c[d.orbits.rep("V.xip")] == Fraction(1)
        assert d.weights.c[d.orbits.rep("T.alpha")] == "c"

    def test_low_kinds_identity(self):
        q, _, _ = load_example("twoloop.gtq")
        sq, od, w = pipeline(q, m={"L1.loop": 2})
        d = delta_construction(q, sq, od, w)
        assert d.quiver.canonical_text() == q.canonical_text()
        assert d.iv_blocks == () and d.v_blocks == ()

    def test_new_orbit_weight_is_one(self, spherical):
        q, sq, od = spherical
        w = G.default_weights(od)
        d = delta_construction(q, sq, od, w)
        for name in ("F1", "F2"):
            rep = d.orbits.rep(f"{name}.xi")
            assert d.weights.m[rep] == 1
            assert d.weights.c[rep] == Fraction(1)
        assert canon_cycles([d.orbits.orbit_cycle("F1.xi")]) == \
            canon_cycles([("F1.mu", "F1.xi")])

    def test_substituted_orbit(self, ex33):
        q, sq, od = ex33
        w = G.weights_from_text(od, G.example_text("ex33.wts"))
        d = delta_construction(q, sq, od, w)
        # tau and phi are replaced by two-arrow detours: the 11-cycle holds one
        # phi (-> 12) and the 7-cycle one tau (-> 8)
        lengths = sorted(d.orbits.n.values(), reverse=True)
        assert lengths == [12, 8, 3, 2, 2, 1]
        assert sum(lengths) == len(d.quiver.arrows)
        assert d.orbits.border == frozenset({"B.b"})

    def test_border_preserved(self, ex33):
        q, sq, od = ex33
        w = G.weights_from_text(od, G.example_text("ex33.wts"))
        d = delta_construction(q, sq, od, w)
        assert d.orbits.border == od.border
        assert d.weights.b == w.b

    def test_thirteen_block_orbit_census(self, ex23):
        # three fresh xi/mu pairs, one xip/mup pair, one theta/kappa/eta
        # triple; both big cycles grow by their tau/phi substitutions
        q, sq, od = ex23
        d = delta_construction(q, sq, od, G.default_weights(od))
        lengths = sorted(d.orbits.n.values(), reverse=True)
        assert lengths == [18, 18, 3, 2, 2, 2, 2, 2, 2, 1]
        pair_reps = {d.orbits.rep(f"IV{i}.xi") for i in (1, 2, 3)}
        assert len(pair_reps) == 3
        assert all(d.orbits.n[rep] == 2 for rep in pair_reps)
        assert d.orbits.n[d.orbits.rep("V.xip")] == 2
        assert d.orbits.n[d.orbits.rep("V.theta")] == 3

    def test_replacement_virtual_arrows(self, ex32):
        q, sq, od = ex32
        for n in (2, 3):
            w = G.default_weights(od, m={"V.phi": 2, "T.loop": n})
            d = delta_construction(q, sq, od, w)
            virt = G.virtual_arrows(d.orbits, d.weights).arrows
            expected = {"V.xip", "V.mup"} | ({"T.loop"} if n == 2 else set())
            assert virt == expected


class TestVirtualSequence:
    def test_one_kind_five(self, ex32):
        q, sq, od = ex32
        d = delta_construction(q, sq, od, G.default_weights(od))
        assert virtual_sequence(d) == ("V.xip",)

    def test_mixed(self, ex33):
        q, sq, od = ex33
        d = delta_construction(q, sq, od, G.default_weights(od))
        assert virtual_sequence(d) == ("F.xi", "V.xip")

    def test_low_kinds_empty(self, twoloop):
        q, sq, od = twoloop
        d = delta_construction(q, sq, od, G.default_weights(od, m={"L1.loop": 2}))
        assert virtual_sequence(d) == ()


class TestDetectExceptional:
    def test_spherical_warning(self, spherical):
        q, sq, od = spherical
        d = delta_construction(q, sq, od, G.default_weights(od))
        warnings = detect_exceptional(d)
        assert any("spherical" in w for w in warnings)
        assert any("unverifiable" in w for w in warnings)

    def test_spherical_suppressed_for_large_weight(self, spherical):
        q, sq, od = spherical
        w = G.default_weights(od, m={"F1.tau": 2})
        d = delta_construction(q, sq, od, w)
        assert detect_exceptional(d) == []

    def test_spherical_singular_concrete(self, spherical):
        q, sq, od = spherical
        # delta lies in nu's orbit, so its parameter is set through that orbit
        w = G.default_weights(od, m={"F1.tau": 1, "F1.nu": 2},
                              c={"F1.tau": Fraction(-1), "F1.nu": Fraction(1)})
        warnings = detect_exceptional(delta_construction(q, sq, od, w))
        assert any("singular" in w for w in warnings)
        w2 = G.default_weights(od, m={"F1.tau": 1, "F1.nu": 2},
                               c={"F1.tau": Fraction(2), "F1.nu": Fraction(1)})
        assert detect_exceptional(delta_construction(q, sq, od, w2)) == []

    def test_many_blocks_no_warning(self, ex33):
        q, sq, od = ex33
        d = delta_construction(q, sq, od, G.default_weights(od))
        assert detect_exceptional(d) == []

    def test_parallel_gluing_not_spherical(self):
        q = glue(GluingSpec((("F1", "IV"), ("F2", "IV")),
                            ((("F1", 1), ("F2", 1)), (("F1", 2), ("F2", 2)))))
        sq = G.star_quiver(q)
        od = G.orbit_data(sq)
        d = delta_construction(q, sq, od, G.default_weights(od))
        assert not any("spherical" in w for w in detect_exceptional(d))


class TestMutations:
    def test_stage1_restores_kind_four(self, spherical):
        q, sq, od = spherical
        d = delta_construction(q, sq, od, G.default_weights(od))
        m1 = mutate_stage1(d)
        assert m1.quiver.canonical_text() == q.canonical_text()
        m2 = mutate_stage2(m1)
        assert m2.quiver.canonical_text() == q.canonical_text()

    def test_stage1_region_shape(self, ex32):
        q, sq, od = ex32
        d = delta_construction(q, sq, od, G.default_weights(od))
        m1 = mutate_stage1(d)
        kinds = {name: pb.kind for name, pb in m1.quiver.blocks.items()}
        assert kinds == {"T": "III", "V_ii": "II", "V_iv": "IV"}
        pi = m1.quiver.arrows["V.pi"]
        assert (pi.source, pi.target) == ("V.y1", "V.x1")
        kappa = m1.quiver.arrows["V.kappa"]
        assert (kappa.source, kappa.target) == ("V.x1", "V.y1")
        assert ("V.pi", "V.theta", "V.eta") in m1.quiver.marking
        # the new connecting arrows form a virtual 2-orbit of weight one
        rep = m1.orbits.rep("V.pi")
        assert m1.orbits.n[rep] == 2 and m1.weights.m[rep] == 1

    def test_stage1_weight_rules(self, ex33):
        q, sq, od = ex33
        w = G.weights_from_text(od, G.example_text("ex33.wts"))
        d = delta_construction(q, sq, od, w)
        m1 = mutate_stage1(d)
        assert m1.weights.m[m1.orbits.rep("F.tau")] == \
            d.weights.m[d.orbits.rep("F.alpha")]
        assert m1.weights.m[m1.orbits.rep("V.pi")] == 1
        assert m1.weights.c[m1.orbits.rep("F.tau")] == \
            d.weights.c[d.orbits.rep("F.alpha")]

    def test_stage2_restores_input(self, ex32, ex33):
        for q, sq, od in (ex32, ex33):
            w = G.default_weights(od)
            m2 = mutate_stage2(mutate_stage1(delta_construction(q, sq, od, w)))
            assert m2.quiver.canonical_text() == q.canonical_text()

    def test_stage_mismatch(self, ex32):
        q, sq, od = ex32
        d = delta_construction(q, sq, od, G.default_weights(od))
        m2 = mutate_stage2(mutate_stage1(d))
        with pytest.raises(G.GentriqError):
            mutate_stage2(m2)


class TestRoundtrip:
    def test_bundled_examples(self):
        for name, wname in (("ex32.gtq", "ex32.wts"), ("ex33.gtq", "ex33.wts"),
                            ("spherical.gtq", "spherical.wts"),
                            ("twoloop.gtq", "twoloop.wts")):
            q, sq, od = load_example(name)
            w = G.weights_from_text(od, G.example_text(wname))
            report = roundtrip_check(q, w)
            assert report.ok, (name, report.lines)

    def test_report_mentions_weights(self, ex32):
        q, sq, od = ex32
        report = roundtrip_check(q, G.default_weights(od))
        assert report.ok
        assert any("transported identically" in line for line in report.lines)
        assert report.witness is not None

    def test_thirteen_block_pipeline(self, ex23):
        q, sq, od = ex23
        report = roundtrip_check(q, G.default_weights(od))
        assert report.ok, report.lines
        d = delta_construction(q, sq, od, G.default_weights(od))
        assert virtual_sequence(d) == ("IV1.xi", "IV2.xi", "IV3.xi", "V.xip")
        m1 = mutate_stage1(d)
        kinds = sorted(pb.kind for pb in m1.quiver.blocks.values())
        assert kinds.count("IV") == 4 and kinds.count("V") == 0
        m2 = mutate_stage2(m1)
        assert m2.quiver.canonical_text() == q.canonical_text()

    def test_thirteen_block_reduced_presentation(self, ex23):
        from gentriq.relations import relations_lambda_dblprime
        q, sq, od = ex23
        w = G.default_weights(od, m={cyc[0]: 2 for cyc in od.g_orbits})
        m1 = mutate_stage1(delta_construction(q, sq, od, w))
        rels = relations_lambda_dblprime(m1)
        removed = {"V.pi", "V.kappa"}
        for r in rels.relations:
            for _, p in r.terms:
                assert not removed & set(p.arrows)
        # the three original kind-IV blocks keep their relation family
        assert {r.block for r in rels.by_family("3")} == {"IV1", "IV2", "IV3"}
        assert len(rels.by_family("lambda-dblprime")) == 12

    def test_random_quivers(self):
        rng = random.Random(7)
        for _ in range(10):
            q = glue(random_gluing_spec(rng, max_blocks=8))
            od = G.orbit_data(G.star_quiver(q))
            w = G.default_weights(od)
            report = roundtrip_check(q, w)
            assert report.ok, report.lines
