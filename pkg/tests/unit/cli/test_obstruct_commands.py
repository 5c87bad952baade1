"""Tests for witness, block, threshold, factor, plan and obstruct commands."""

import json

import pytest

from flatembed.cli.main import cli
from flatembed.obstruction import VERDICT_CERTIFIED, VERDICT_NOT_CERTIFIED

SKEW3 = {
    "kind": "skew",
    "m": 3,
    "q": 3,
    "components": [{"idx": [1, 2, 3], "value": "1"}],
}

# e1 -> e2 on span(e1)
SHIFT = {"m": 3, "U_basis": [["1", "0", "0"]], "phi": [["0"], ["1"], ["0"]]}

IDENTITY_LINE = {"m": 3, "U_basis": [["1", "0", "0"]], "phi": [["1"], ["0"], ["0"]]}

# quarter turn of span(e1, e2)
ROTATION = {
    "m": 3,
    "U_basis": [["1", "0", "0"], ["0", "1", "0"]],
    "phi": [["0", "-1"], ["1", "0"], ["0", "0"]],
}


@pytest.fixture
def skew_file(write_json):
    return write_json("F.json", SKEW3)


def _report(result):
    return json.loads(result.output)


class TestCheckWitness:
    """Test check-witness command."""

    def test_valid_witness(self, runner, skew_file, write_json):
        witness = write_json("W.json", SHIFT)

        result = runner.invoke(cli, ["check-witness", skew_file, witness, "--json"])

        assert result.exit_code == 0
        report = _report(result)
        assert report["results"]["valid"] is True
        assert report["results"]["failed_clause"] is None
        assert report["verdicts"][0]["name"] == "special_witness"

    def test_fixed_point(self, runner, skew_file, write_json):
        witness = write_json("W.json", IDENTITY_LINE)

        result = runner.invoke(cli, ["check-witness", skew_file, witness, "--json"])

        assert result.exit_code == 1
        assert _report(result)["results"]["failed_clause"] == "fixed_point"

    def test_wrong_ambient_dimension(self, runner, skew_file, write_json):
        witness = write_json(
            "W.json", {"m": 2, "U_basis": [["1", "0"]], "phi": [["0"], ["1"]]}
        )

        result = runner.invoke(cli, ["check-witness", skew_file, witness])

        assert result.exit_code == 2

    def test_dependent_basis(self, runner, skew_file, write_json):
        witness = write_json(
            "W.json",
            {
                "m": 3,
                "U_basis": [["1", "0", "0"], ["2", "0", "0"]],
                "phi": [["0", "0"], ["1", "2"], ["0", "0"]],
            },
        )

        result = runner.invoke(cli, ["check-witness", skew_file, witness])

        assert result.exit_code == 2


class TestBuildBlock:
    """Test build-block command."""

    def test_jordan_block(self, runner, write_json, tmp_path):
        block = write_json("B.json", {"type": 5, "k": 3, "a": "1/2"})
        out = tmp_path / "J.json"

        result = runner.invoke(cli, ["build-block", block, "--out", str(out)])

        assert result.exit_code == 0
        written = json.loads(out.read_text(encoding="utf-8"))
        assert written["matrix"] == [
            ["1/2", "1", "0"],
            ["0", "1/2", "1"],
            ["0", "0", "1/2"],
        ]

    def test_rotation_block(self, runner, write_json):
        block = write_json("B.json", {"type": 6, "l": 2, "a": "0", "b": "1"})

        result = runner.invoke(cli, ["build-block", block, "--json"])

        assert result.exit_code == 0
        assert _report(result)["results"]["matrix"] == [
            ["0", "1", "1", "0"],
            ["-1", "0", "0", "1"],
            ["0", "0", "0", "1"],
            ["0", "0", "-1", "0"],
        ]

    def test_invalid_block(self, runner, write_json):
        block = write_json("B.json", {"type": 3, "a": "1/2"})

        result = runner.invoke(cli, ["build-block", block])

        assert result.exit_code == 2


class TestBlockSubspace:
    """Test block-subspace command."""

    def test_nilpotent_block_passes(self, runner, write_json, tmp_path):
        blocks = write_json("L.json", {"blocks": [{"type": 5, "k": 2, "a": "0"}]})
        out = tmp_path / "V.json"

        result = runner.invoke(
            cli, ["block-subspace", blocks, "--m", "2", "--out", str(out), "--json"]
        )

        assert result.exit_code == 0
        report = _report(result)
        assert report["results"]["dim_V_prime"] == 1
        assert [v["passed"] for v in report["verdicts"]] == [True, True, True]
        assert json.loads(out.read_text(encoding="utf-8")) == {
            "m": 2,
            "U_basis": [["0", "1"]],
            "phi": [["1"], ["0"]],
        }

    def test_lemma32_alias(self, runner, write_json):
        blocks = write_json("L.json", {"blocks": [{"type": 5, "k": 2, "a": "0"}]})

        result = runner.invoke(cli, ["lemma32", blocks, "--m", "2", "--json"])

        assert result.exit_code == 0
        report = _report(result)
        assert report["subcommand"] == "lemma32"
        assert report["results"]["dim_V_prime"] == 1

    def test_identity_blocks_are_not_disjoint(self, runner, write_json):
        blocks = write_json("L.json", {"m": 5, "blocks": [{"type": 1}] * 3})

        result = runner.invoke(cli, ["block-subspace", blocks, "--json"])

        assert result.exit_code == 1
        verdicts = {v["name"]: v["passed"] for v in _report(result)["verdicts"]}
        assert verdicts["disjoint"] is False

    def test_mixed_types(self, runner, write_json):
        blocks = write_json(
            "L.json",
            {"m": 4, "blocks": [{"type": 1}, {"type": 5, "k": 2, "a": "0"}]},
        )

        result = runner.invoke(cli, ["block-subspace", blocks])

        assert result.exit_code == 2


class TestThreshold:
    """Test threshold command."""

    def test_case_one_not_satisfied(self, runner):
        args = ["--kind", "skew", "--q", "3", "--m", "1000", "--case", "1"]
        result = runner.invoke(cli, ["threshold", *args, "--json"])

        assert result.exit_code == 0
        report = _report(result)
        assert report["results"]["m1"] == 18
        assert report["results"]["verdict"] == "not satisfied"
        assert report["results"]["satisfied"] is False

    def test_find_min(self, runner):
        result = runner.invoke(
            cli, ["threshold", "--kind", "skew", "--q", "3", "--find-min", "--json"]
        )

        assert result.exit_code == 0
        results = _report(result)["results"]
        assert all(entry["satisfied"] for entry in results["at_min"])
        assert not all(entry["satisfied"] for entry in results["below_min"])

    def test_needs_m_and_case(self, runner):
        result = runner.invoke(cli, ["threshold", "--kind", "skew", "--q", "3"])

        assert result.exit_code == 2

    def test_even_q(self, runner):
        result = runner.invoke(
            cli,
            ["threshold", "--kind", "skew", "--q", "4", "--m", "100", "--case", "2"],
        )

        assert result.exit_code == 2

    def test_max_m_from_config(self, runner, tmp_path):
        config = tmp_path / "small.yaml"
        config.write_text("threshold:\n  max_m: 1000\n", encoding="utf-8")

        args = ["threshold", "--kind", "skew", "--q", "3", "--find-min"]
        result = runner.invoke(cli, ["--config", str(config), *args])

        assert result.exit_code == 2
        assert "No threshold" in result.output


class TestFactor:
    """Test factor command."""

    def test_twelve(self, runner):
        result = runner.invoke(cli, ["factor", "12", "--json"])

        assert result.exit_code == 0
        assert _report(result)["results"] == {"p": 4, "q": 3}

    def test_smallest_odd_prime(self, runner):
        result = runner.invoke(cli, ["factor", "45", "--json"])

        assert _report(result)["results"] == {"p": 15, "q": 3}

    @pytest.mark.parametrize("n", ["16", "7"])
    def test_rejected(self, runner, n):
        result = runner.invoke(cli, ["factor", n])

        assert result.exit_code == 2


class TestPlan:
    """Test plan command."""

    def test_plan_for_twelve(self, runner):
        result = runner.invoke(cli, ["plan", "12", "--beta-w", "5", "--json"])

        assert result.exit_code == 0
        results = _report(result)["results"]
        assert (results["p"], results["q"], results["kind"]) == (4, 3, "symmetric")
        assert results["m"] == max(15, results["threshold"])

    def test_prime(self, runner):
        result = runner.invoke(cli, ["plan", "13"])

        assert result.exit_code == 2


class TestObstruct:
    """Test obstruct command."""

    def test_certified(self, runner, skew_file, write_json):
        shift = write_json("shift.json", SHIFT)
        rotation = write_json("rotation.json", ROTATION)

        result = runner.invoke(cli, ["obstruct", skew_file, shift, rotation, "--json"])

        assert result.exit_code == 0
        results = _report(result)["results"]
        assert results["required_min_dim"] == 2
        assert [w["valid"] for w in results["witness_results"]] == [False, True]
        assert results["witness_results"][0]["failed_clause"] == "dimension"
        assert results["witness_results"][0]["label"] == shift
        assert results["verdict"] == VERDICT_CERTIFIED

    def test_beta_w_lowers_requirement(self, runner, skew_file, write_json):
        shift = write_json("shift.json", SHIFT)

        result = runner.invoke(
            cli, ["obstruct", skew_file, shift, "--beta-w", "2", "--json"]
        )

        assert result.exit_code == 0
        assert _report(result)["results"]["required_min_dim"] == 1

    def test_not_certified(self, runner, skew_file, write_json):
        line = write_json("line.json", IDENTITY_LINE)

        result = runner.invoke(cli, ["obstruct", skew_file, line, "--json"])

        assert result.exit_code == 1
        assert _report(result)["results"]["verdict"] == VERDICT_NOT_CERTIFIED

    def test_no_witnesses(self, runner, skew_file):
        result = runner.invoke(cli, ["obstruct", skew_file, "--json"])

        assert result.exit_code == 1
        assert _report(result)["results"]["witness_results"] == []

    def test_report_written(self, runner, skew_file, write_json, tmp_path):
        rotation = write_json("rotation.json", ROTATION)
        out = tmp_path / "report.json"

        result = runner.invoke(
            cli, ["obstruct", skew_file, rotation, "--out", str(out), "--json"]
        )

        assert result.exit_code == 0
        assert json.loads(out.read_text(encoding="utf-8")) == _report(result)
