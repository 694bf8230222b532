import json

import pytest
from click.testing import CliRunner

from gpdlab import groups, io as gio
from gpdlab.cli import main
from gpdlab.fixtures import fixture
from gpdlab.groupoids import (GroupoidFunctor, arrow_name, codiscrete,
                              delooping, discrete, pair_mor, pair_obj, product)


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


BZ2 = delooping(groups.cyclic(2))
B1 = discrete(["*"])
C2 = codiscrete(["a", "b"])


class TestValidateCommand:
    def test_valid_file_exits_zero(self, runner, tmp_path):
        path = write(tmp_path, "c2.json", gio.groupoid_to_dict(fixture("C2")))
        result = runner.invoke(main, ["validate", path])
        assert result.exit_code == 0

    def test_missing_inverse_exits_one_and_names_morphism(self, runner, tmp_path):
        payload = gio.groupoid_to_dict(fixture("C2"))
        payload["inverses"].pop("a>b")
        path = write(tmp_path, "bad.json", payload)
        result = runner.invoke(main, ["validate", path])
        assert result.exit_code == 1
        assert "a>b" in result.output

    def test_malformed_json_exits_two(self, runner, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 2


class TestFactorCommand:
    def test_z2_collapse(self, runner, tmp_path):
        F = GroupoidFunctor(BZ2, B1, {"*": "*"},
                            {m: arrow_name("*", "*") for m in BZ2.morphism_ids})
        path = write(tmp_path, "f.json", gio.functor_to_dict(F))
        result = runner.invoke(main, ["factor", path])
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert len(report["middle"]["objects"]) == 2

    def test_tiny_bound_warns_but_exits_zero(self, runner, tmp_path):
        F = GroupoidFunctor(BZ2, B1, {"*": "*"},
                            {m: arrow_name("*", "*") for m in BZ2.morphism_ids})
        path = write(tmp_path, "f.json", gio.functor_to_dict(F))
        result = runner.invoke(main, ["factor", path, "--bound", "1"])
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["warnings"]
        assert report["checks"]["second_equivalence"] == "unverified"


class TestMoritaCommand:
    def test_acyclic_cofibration_exits_zero(self, runner, tmp_path):
        Z2xC2 = product(BZ2, C2)
        inc = GroupoidFunctor(BZ2, Z2xC2, {"*": pair_obj("*", "a")},
                              {m: pair_mor(m, "a>a") for m in BZ2.morphism_ids})
        path = write(tmp_path, "inc.json", gio.functor_to_dict(inc))
        result = runner.invoke(main, ["morita", path])
        assert result.exit_code == 0
        assert json.loads(result.output)["k0_iso"]

    def test_non_acyclic_exits_one(self, runner, tmp_path):
        D2 = discrete(["a", "b"])
        inc = GroupoidFunctor(D2, C2, {"a": "a", "b": "b"},
                              {arrow_name("a", "a"): arrow_name("a", "a"),
                               arrow_name("b", "b"): arrow_name("b", "b")})
        path = write(tmp_path, "inc.json", gio.functor_to_dict(inc))
        result = runner.invoke(main, ["morita", path])
        assert result.exit_code == 1
        assert json.loads(result.output)["k0_iso"] is False

    def test_non_cofibration_exits_one_with_error(self, runner, tmp_path):
        F = GroupoidFunctor(C2, B1, {"a": "*", "b": "*"},
                            {m: arrow_name("*", "*") for m in C2.morphism_ids})
        path = write(tmp_path, "f.json", gio.functor_to_dict(F))
        result = runner.invoke(main, ["morita", path])
        assert result.exit_code == 1
        assert json.loads(result.output)["error_kind"] == "functoriality"


class TestNerveSuiteCommand:
    def test_point_passes(self, runner):
        result = runner.invoke(main, ["nerve-suite", "B1"])
        assert result.exit_code == 0

    def test_three_fixture_verdicts_per_level(self, runner):
        result = runner.invoke(main, ["nerve-suite", "B1", "BZ2", "C2",
                                      "--max-k", "1"])
        report = json.loads(result.output)
        assert [lv["k"] for lv in report["levels"]] == [0, 1]
        level0, level1 = report["levels"]
        assert level0["h0_isomorphic"] and not level0["h1_isomorphic"]
        assert level1["h0_isomorphic"] and level1["h1_isomorphic"]
        assert result.exit_code == 1

    def test_budget_overflow_exits_one_with_estimate(self, runner):
        result = runner.invoke(main, ["nerve-suite", "B1", "BZ2", "C2",
                                      "--budget", "10"])
        assert result.exit_code == 1
        report = json.loads(result.output)
        assert report["error_kind"] == "budget"
        assert report["estimate"] > 10

    def test_unknown_fixture_exits_two(self, runner):
        result = runner.invoke(main, ["nerve-suite", "nonsense"])
        assert result.exit_code == 2

    def test_dot_emission(self, runner, tmp_path):
        prefix = str(tmp_path / "skel")
        result = runner.invoke(main, ["nerve-suite", "B1", "C2",
                                      "--max-k", "0", "--dot", prefix])
        for label in ("w", "wc"):
            text = (tmp_path / ("skel-%s.dot" % label)).read_text()
            assert text.startswith("digraph")


class TestDeterminism:
    def test_identical_config_gives_identical_bytes(self, runner, tmp_path):
        Z2xC2 = product(BZ2, C2)
        inc = GroupoidFunctor(BZ2, Z2xC2, {"*": pair_obj("*", "a")},
                              {m: pair_mor(m, "a>a") for m in BZ2.morphism_ids})
        path = write(tmp_path, "inc.json", gio.functor_to_dict(inc))
        a = runner.invoke(main, ["morita", path, "--seed", "3"])
        b = runner.invoke(main, ["morita", path, "--seed", "3"])
        assert a.output == b.output
        c = runner.invoke(main, ["nerve-suite", "B1", "--seed", "1"])
        d = runner.invoke(main, ["nerve-suite", "B1", "--seed", "1"])
        assert c.output == d.output

    def test_out_file_matches_stdout(self, runner, tmp_path):
        path = write(tmp_path, "c2.json", gio.groupoid_to_dict(fixture("C2")))
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["validate", path, "--out", str(out)])
        assert result.output == out.read_text()
