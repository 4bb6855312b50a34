import pytest

import gentriq as G
from gentriq.cli import main


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("ex32.gtq", "ex32.wts", "ex33.gtq", "ex33.wts", "ex23.gtq",
                 "twoloop.gtq", "twoloop.wts", "ex53.surf", "disc.surf",
                 "spherical.gtq"):
        p = tmp_path / name
        p.write_text(G.example_text(name))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_valid(self, files, capsys):
        code, out, _ = run(capsys, "validate", files["ex23.gtq"])
        assert code == 0
        assert out.startswith("OK: 26 vertices, 48 arrows, 13 blocks")

    def test_invalid_exit_one(self, files, capsys, tmp_path):
        bad = tmp_path / "bad.gtq"
        bad.write_text("block A type II\nblock B type I\nglue A.1 B.1\n")
        code, out, _ = run(capsys, "validate", str(bad))
        assert code == 1
        assert "unpaired outlet" in out

    def test_parse_error_exit_two(self, capsys, tmp_path):
        bad = tmp_path / "bad.gtq"
        bad.write_text("blob A\n")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "line 1" in err

    def test_missing_file_exit_two(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "nope.gtq"))
        assert code == 2


class TestOrbits:
    def test_census_lines(self, files, capsys):
        code, out, _ = run(capsys, "orbits", files["ex23.gtq"])
        assert code == 0
        assert "f-orbits (13):" in out
        assert "g-orbits (5):" in out
        lengths = sorted((int(line.split()[0][2:])
                          for line in out.splitlines() if line.strip().startswith("n=")),
                         reverse=True)
        assert lengths == [17, 15, 2, 2, 1]
        assert "(T.loop)" in out

    def test_border_line(self, files, capsys):
        _, out, _ = run(capsys, "orbits", files["ex33.gtq"])
        assert "border: B.b" in out

    def test_deterministic(self, files, capsys):
        _, out1, _ = run(capsys, "orbits", files["ex23.gtq"])
        _, out2, _ = run(capsys, "orbits", files["ex23.gtq"])
        assert out1 == out2


class TestWeights:
    def test_admissible(self, files, capsys):
        code, out, _ = run(capsys, "weights", files["ex33.gtq"], "-w", files["ex33.wts"])
        assert code == 0
        assert "weights admissible" in out
        assert "b=b" in out

    def test_default_symbolic(self, files, capsys):
        code, out, _ = run(capsys, "weights", files["ex33.gtq"])
        assert code == 1 or "cannot verify" in out

    def test_virtual_report(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm A.beta 1\nm T.loop 2\n")
        code, out, _ = run(capsys, "weights", files["ex33.gtq"], "-w", str(wts))
        assert code == 0
        assert "virtual arrows: T.loop" in out


class TestRelationsAndDim:
    def test_relations_output(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm T.loop 2\nc V.phi c\nc T.loop d\n")
        code, out, _ = run(capsys, "relations", files["ex32.gtq"], "-w", str(wts))
        assert code == 0
        assert "family=2 : 1*T.alpha.T.beta + -1*d*T.loop = 0" in out
        assert "family=4 : 1*V.omega.V.gamma = 0" in out

    def test_relations_triangulation_flag(self, files, capsys):
        code, out, _ = run(capsys, "relations", files["twoloop.gtq"],
                           "-w", files["twoloop.wts"], "--triangulation")
        assert code == 0
        assert "family=1" in out

    def test_relations_dblprime(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm T.loop 2\nc V.phi c\nc T.loop d\n")
        code, out, _ = run(capsys, "relations", files["ex32.gtq"], "-w", str(wts),
                           "--dblprime")
        assert code == 0
        assert "family=lambda-dblprime" in out

    def test_dim_symbolic(self, files, capsys):
        code, out, _ = run(capsys, "dim", files["ex32.gtq"], "-w", files["ex32.wts"])
        assert code == 0
        assert out.strip() == "dim = 49*m + n"

    def test_dim_bundled_replacement(self, capsys, tmp_path):
        for name in ("ex44.gtq", "ex44.wts"):
            (tmp_path / name).write_text(G.example_text(name))
        code, out, _ = run(capsys, "dim", str(tmp_path / "ex44.gtq"),
                           "-w", str(tmp_path / "ex44.wts"), "--triangulation")
        assert code == 0
        assert out.strip() == "dim = 36*m + n + 13"

    def test_dim_triangulation_replacement(self, files, capsys, tmp_path):
        code, out, _ = run(capsys, "delta", files["ex32.gtq"], "-w", files["ex32.wts"],
                           "-o", str(tmp_path / "d.gtq"))
        assert code == 0
        # dimension of the emitted quiver with fresh symbols per orbit
        code, out, _ = run(capsys, "dim", str(tmp_path / "d.gtq"), "--triangulation")
        assert code == 0
        assert out.startswith("dim = ")


class TestBasis:
    def test_table(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm T.loop 2\n")
        code, out, _ = run(capsys, "basis", files["ex32.gtq"], "-w", str(wts))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "vertex\tcase\tenumerated\tclosed"
        assert "T.c\ttwo-arrows\t14\t14" in lines
        assert any(line.startswith("total\t\t51\t") for line in lines)
        assert "dim = 51" in out

    def test_symbolic_table(self, files, capsys):
        code, out, _ = run(capsys, "basis", files["ex32.gtq"], "-w", files["ex32.wts"])
        assert code == 0
        assert "T.c\t-\t-\t14*m" in out
        assert "dim = 49*m + n" in out

    def test_single_vertex(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm T.loop 2\n")
        code, out, _ = run(capsys, "basis", files["ex32.gtq"], "-w", str(wts),
                           "--vertex", "V.x2")
        assert code == 0
        assert "V.x2\tv-x2\t7\t7" in out

    def test_figure(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm T.loop 2\n")
        png = tmp_path / "basis.png"
        code, out, _ = run(capsys, "basis", files["ex32.gtq"], "-w", str(wts),
                           "--figure", str(png))
        assert code == 0
        assert png.exists() and png.stat().st_size > 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


class TestTransformsCli:
    def test_delta_emits_gtq(self, files, capsys, tmp_path):
        out_path = tmp_path / "delta.gtq"
        code, out, _ = run(capsys, "delta", files["ex32.gtq"], "-w", files["ex32.wts"],
                           "-o", str(out_path))
        assert code == 0
        assert "replacement quiver: 6 vertices, 12 arrows" in out
        q = G.load_gtq(out_path.read_text())
        assert len(q.vertices) == 6 and G.is_triangulation(q)

    def test_delta_warning(self, files, capsys):
        code, out, _ = run(capsys, "delta", files["spherical.gtq"])
        assert code == 0
        assert "warning: spherical shape" in out

    def test_mutate_stages(self, files, capsys):
        code, out, _ = run(capsys, "mutate", files["ex32.gtq"], "-w", files["ex32.wts"])
        assert code == 0
        assert "stage 1; virtual sequence: V.xip" in out
        code, out, _ = run(capsys, "mutate", files["ex32.gtq"], "-w", files["ex32.wts"],
                           "--stage", "2")
        assert code == 0
        assert "stage 2" in out
        assert "block V type V" in out

    def test_roundtrip_pass(self, files, capsys):
        code, out, _ = run(capsys, "roundtrip", files["ex33.gtq"], "-w", files["ex33.wts"])
        assert code == 0
        assert out.startswith("PASS: isomorphism found")
        assert "vertex A.a -> A.a" in out


class TestSurfaceIsoDot:
    def test_surface_command(self, files, capsys, tmp_path):
        out_path = tmp_path / "s.gtq"
        code, out, _ = run(capsys, "surface", files["ex53.surf"], "-o", str(out_path))
        assert code == 0
        assert "6 vertices, 11 arrows, 2 blocks" in out
        code, out, _ = run(capsys, "iso", str(out_path), files["ex32.gtq"])
        assert code == 0
        assert out.startswith("ISOMORPHIC")

    def test_iso_failure_exit(self, files, capsys):
        code, out, _ = run(capsys, "iso", files["ex32.gtq"], files["ex33.gtq"])
        assert code == 1
        assert out.strip() == "NOT ISOMORPHIC"

    def test_dot(self, files, capsys, tmp_path):
        out_path = tmp_path / "q.dot"
        code, _, _ = run(capsys, "dot", files["ex32.gtq"], "-o", str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert text.startswith("digraph") and text.count("->") == 11


class TestVerify:
    def test_all_checks_pass(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert "9/9 checks passed" in out
        assert out.count("PASS") == 9


class TestDeterminism:
    def test_reports_are_byte_identical(self, files, capsys, tmp_path):
        wts = tmp_path / "w.wts"
        wts.write_text("m V.phi 1\nm A.beta 1\nm T.loop 2\nb B.b b\n")
        commands = [
            ("orbits", files["ex33.gtq"]),
            ("weights", files["ex33.gtq"], "-w", str(wts)),
            ("relations", files["ex33.gtq"], "-w", str(wts)),
            ("basis", files["ex33.gtq"], "-w", str(wts)),
            ("dim", files["ex33.gtq"], "-w", str(wts)),
            ("delta", files["ex33.gtq"], "-w", str(wts)),
            ("mutate", files["ex33.gtq"], "-w", str(wts), "--stage", "2"),
            ("roundtrip", files["ex33.gtq"], "-w", str(wts)),
            ("dot", files["ex33.gtq"]),
            ("surface", files["ex53.surf"]),
        ]
        for argv in commands:
            first = run(capsys, *argv)
            second = run(capsys, *argv)
            assert first == second, argv
