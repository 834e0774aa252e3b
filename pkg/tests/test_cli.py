"""End-to-end CLI behaviour: subcommands, exit codes, output formats."""

import json
import os
from fractions import Fraction

import pytest

from blichfeldt import cli, counting as ct, polytope as pt, witnesses as wt
from blichfeldt.counting import Body


@pytest.fixture()
def cube_body(tmp_path):
    poly = pt.hull([(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)])
    path = str(tmp_path / "cube.json")
    wt.save_body(Body.from_polytope(poly), path)
    return path


def _run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    def test_cube(self, capsys, cube_body):
        code, out, _ = _run(capsys, ["count", "--body", cube_body])
        assert code == 0
        assert out.strip() == "count: 27"

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = _run(capsys, ["count", "--body", str(tmp_path / "nope.json")])
        assert code == cli.EXIT_USAGE
        assert "error:" in err

    def test_malformed_body(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"schema": 1}')
        code, _, err = _run(capsys, ["count", "--body", str(path)])
        assert code == cli.EXIT_USAGE
        assert "lattice.basis" in err

    def test_out_file(self, capsys, cube_body, tmp_path):
        target = str(tmp_path / "result.txt")
        code, out, _ = _run(capsys, ["count", "--body", cube_body, "--out", target])
        assert code == 0 and out == ""
        assert open(target).read().strip() == "count: 27"


class TestMeasure:
    def test_cube(self, capsys, cube_body):
        code, out, _ = _run(capsys, ["measure", "--body", cube_body])
        assert code == 0
        fields = dict(
            line.split(": ", 1) for line in out.strip().splitlines()
        )
        assert fields["dimension"] == "3"
        assert fields["volume"] == "8/1"
        assert fields["surface_area"] == "24/1"
        assert fields["V1"] == "6/1"
        assert fields["V2"] == "12/1"
        assert fields["V3"] == "8/1"


class TestCheck:
    def test_holds(self, capsys, cube_body):
        code, out, _ = _run(
            capsys, ["check", "--id", "MAIN_THM_1_1", "--body", cube_body]
        )
        assert code == 0
        assert "verdict: Holds" in out

    def test_equality_exit_zero(self, capsys, tmp_path):
        body = wt.half_translate(wt.reeve_Tm(3, 5), (Fraction(1, 2),) * 3)
        path = str(tmp_path / "t.json")
        wt.save_body(body, path)
        code, out, _ = _run(
            capsys, ["check", "--id", "TRANSLATE_LEMMA_1_3", "--body", path]
        )
        assert code == 0
        assert "verdict: HoldsWithEquality" in out
        assert "lhs: 5/1" in out and "rhs: 5/1" in out

    def test_unknown_id_rejected(self, capsys, cube_body):
        code, *_ = _run(capsys, ["check", "--id", "NOPE", "--body", cube_body])
        assert code == cli.EXIT_USAGE


class TestAudit:
    def test_cube(self, capsys, cube_body):
        code, out, _ = _run(capsys, ["audit", "--body", cube_body])
        assert code == 0
        assert "points: 27" in out
        assert "interior_layer: 1" in out
        assert "all_ok: True" in out

    def test_requires_untranslated(self, capsys, tmp_path):
        body = wt.half_translate(wt.simplex_Sk(3, 1), (Fraction(1, 2), 0, 0))
        path = str(tmp_path / "t.json")
        wt.save_body(body, path)
        code, *_ = _run(capsys, ["audit", "--body", path])
        assert code == cli.EXIT_USAGE


class TestWitness:
    def test_simplex_roundtrip(self, capsys, tmp_path):
        path = str(tmp_path / "w.json")
        code, *_ = _run(
            capsys,
            ["witness", "--family", "simplex_Sk", "--n", "3", "--k", "4",
             "--out", path],
        )
        assert code == 0
        body = wt.load_body(path)
        assert body.kind == "polytope"
        assert ct.count(body).count == 7

    def test_translated_reeve(self, capsys, tmp_path):
        path = str(tmp_path / "w.json")
        code, *_ = _run(
            capsys,
            ["witness", "--family", "reeve_Tm", "--n", "3", "--m", "4",
             "--translate", "--out", path],
        )
        assert code == 0
        body = wt.load_body(path)
        assert body.kind == "translated_polytope"
        assert ct.count(body).count == 4

    def test_missing_parameter(self, capsys):
        code, *_ = _run(capsys, ["witness", "--family", "simplex_Sk", "--n", "3"])
        assert code == cli.EXIT_USAGE


class TestCorpus:
    def _spec_file(self, tmp_path, **overrides):
        doc = {
            "seed": 5,
            "dimensions": [2],
            "num_random_hulls": 2,
            "points_per_hull": 8,
            "coord_bound": 4,
            "k_values": [1, 2],
            "m_values": [1],
            "num_random_lattices": 0,
        }
        doc.update(overrides)
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(doc))
        return str(path)

    def test_human_format(self, capsys, tmp_path):
        spec = self._spec_file(tmp_path)
        code, out, _ = _run(
            capsys, ["corpus", "--spec", spec, "--ids", "BLICHFELDT_1_1"]
        )
        assert code == 0
        assert "violations: 0" in out

    def test_json_format_deterministic(self, capsys, tmp_path):
        spec = self._spec_file(tmp_path)
        argv = ["corpus", "--spec", spec, "--ids", "BLICHFELDT_1_1",
                "--format", "json"]
        code_a, out_a, _ = _run(capsys, argv)
        code_b, out_b, _ = _run(capsys, argv)
        assert code_a == code_b == 0
        assert out_a == out_b
        doc = json.loads(out_a)
        assert doc["violations"] == []

    def test_csv_to_file(self, capsys, tmp_path):
        spec = self._spec_file(tmp_path)
        target = str(tmp_path / "report.csv")
        code, *_ = _run(
            capsys,
            ["corpus", "--spec", spec, "--ids", "BLICHFELDT_1_1",
             "--format", "csv", "--out", target],
        )
        assert code == 0
        lines = open(target).read().strip().splitlines()
        assert lines[0].startswith("index,body,id,verdict")
        assert len(lines) > 1

    def test_seed_flag_overrides(self, capsys, tmp_path):
        spec = self._spec_file(tmp_path)
        argv = ["corpus", "--spec", spec, "--ids", "BLICHFELDT_1_1",
                "--format", "csv"]
        _, base, _ = _run(capsys, argv)
        _, other, _ = _run(capsys, argv + ["--seed", "77"])
        assert base != other

    def test_unknown_field_rejected(self, capsys, tmp_path):
        spec = self._spec_file(tmp_path, extra_knob=1)
        code, _, err = _run(
            capsys, ["corpus", "--spec", spec, "--ids", "BLICHFELDT_1_1"]
        )
        assert code == cli.EXIT_USAGE
        assert "extra_knob" in err


class TestBudgetPlumbing:
    def test_flag(self, capsys, cube_body):
        code, _, err = _run(
            capsys, ["count", "--body", cube_body, "--budget", "2"]
        )
        assert code == cli.EXIT_USAGE
        assert "budget" in err

    def test_env_fallback(self, capsys, cube_body, monkeypatch):
        monkeypatch.setenv("BLICH_BUDGET", "2")
        code, _, err = _run(capsys, ["count", "--body", cube_body])
        assert code == cli.EXIT_USAGE
        assert "budget=2" in err

    def test_flag_beats_env(self, capsys, cube_body, monkeypatch):
        monkeypatch.setenv("BLICH_BUDGET", "2")
        code, out, _ = _run(
            capsys, ["count", "--body", cube_body, "--budget", "100000"]
        )
        assert code == 0
        assert out.strip() == "count: 27"

    def test_bad_env_value(self, capsys, cube_body, monkeypatch):
        monkeypatch.setenv("BLICH_BUDGET", "lots")
        code, _, err = _run(capsys, ["count", "--body", cube_body])
        assert code == cli.EXIT_USAGE
        assert "BLICH_BUDGET" in err


class TestUsage:
    def test_no_command(self, capsys):
        assert cli.main([]) == cli.EXIT_USAGE
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert cli.main(["--help"]) == 0
        capsys.readouterr()
