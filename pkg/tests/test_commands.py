import json

import pytest

import commands
from checks import CheckReport
from commands import (
    cmd_abelianize,
    cmd_characters,
    cmd_check,
    cmd_dual,
    cmd_generate,
    cmd_quotient,
    cmd_validate,
)
from constants import EXIT_INPUT_ERROR, EXIT_OK, EXIT_SEMANTIC_FAILURE
from convolution_algebra import abelianization_dim
from documents import decode, encode, save
from groupoid_core import FiniteGroupoid
from main import main


@pytest.fixture
def write(tmp_path):
    def _write(G: FiniteGroupoid, name: str = "doc") -> str:
        path = tmp_path / f"{name}.json"
        save(G, str(path))
        return str(path)
    return _write


@pytest.fixture
def broken_path(tmp_path, z2):
    data = encode(z2)
    data["inv"]["a"] = "e"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def garbage_path(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{ this is not json")
    return str(path)


class TestValidate:
    def test_valid(self, write, cross):
        code, payload = cmd_validate(write(cross))
        assert code == EXIT_OK
        assert payload["elements"] == 20 and payload["units"] == 5

    def test_invalid(self, broken_path):
        code, payload = cmd_validate(broken_path)
        assert code == EXIT_SEMANTIC_FAILURE
        assert payload["violations"][0]["witness"] == ["a"]

    def test_unreadable(self, garbage_path, tmp_path):
        assert cmd_validate(garbage_path)[0] == EXIT_INPUT_ERROR
        assert cmd_validate(str(tmp_path / "missing.json"))[0] == EXIT_INPUT_ERROR


class TestGenerate:
    def test_named(self, cross):
        code, payload = cmd_generate("klein-cross")
        assert code == EXIT_OK
        assert decode(payload) == cross

    def test_pair_size(self):
        code, payload = cmd_generate("pair", size=3)
        assert code == EXIT_OK and len(payload["elements"]) == 9

    def test_unknown(self):
        code, payload = cmd_generate("hyperbolic")
        assert code == EXIT_INPUT_ERROR
        assert "klein-cross" in payload["witness"]


class TestQuotient:
    def test_normal(self, write, s3):
        code, payload = cmd_quotient(write(s3), ["s", "s^2"])
        assert code == EXIT_OK
        assert payload["quotient"]["elements"] == ["e", "t"]
        assert payload["class_map"]["ts"] == "t"
        assert payload["exact"] is True

    def test_units_only(self, write, cross):
        code, payload = cmd_quotient(write(cross), [])
        assert code == EXIT_OK
        assert len(payload["quotient"]["elements"]) == 20

    def test_not_normal(self, write, s3):
        code, payload = cmd_quotient(write(s3), ["t"])
        assert code == EXIT_SEMANTIC_FAILURE
        assert payload["witness"] == ["s", "t"]

    def test_unknown_label(self, write, s3):
        code, payload = cmd_quotient(write(s3), ["zz"])
        assert code == EXIT_INPUT_ERROR
        assert payload["witness"] == ["zz"]

    def test_invalid_input(self, broken_path):
        assert cmd_quotient(broken_path, [])[0] == EXIT_SEMANTIC_FAILURE


class TestAbelianDual:
    def test_abelianize_cross(self, write, cross):
        code, payload = cmd_abelianize(write(cross))
        assert code == EXIT_OK
        assert payload["g_fix"]["units"] == ["c"]
        assert len(payload["g_ab"]["elements"]) == 4
        assert payload["abelianization_dim"] == 4

    def test_abelianize_s3_a3(self, write, s3_a3):
        code, payload = cmd_abelianize(write(s3_a3))
        assert code == EXIT_OK
        assert payload["abelianization_dim"] == 5
        assert payload["dual_bundle"]["size"] == 5

    def test_abelianize_without_fixed_points(self, write, pair2, s3):
        code, payload = cmd_abelianize(write(pair2, "pair"))
        assert code == EXIT_OK
        assert payload["abelianization_dim"] == 0
        assert payload["dual_bundle"]["fibers"] == {}
        assert cmd_abelianize(write(s3, "s3"))[1]["abelianization_dim"] == 2

    def test_abelianize_reports_the_ideal_rank(self, monkeypatch, write, s3, s3_a3, pair2):
        seen = []

        def oracle(G):
            seen.append(G.name)
            return abelianization_dim(G)

        monkeypatch.setattr(commands, "abelianization_dim", oracle)
        dims = [cmd_abelianize(write(G, name))[1]["abelianization_dim"]
                for G, name in ((s3, "s3"), (s3_a3, "s3a3"), (pair2, "pair"))]
        assert dims == [2, 5, 0]
        assert len(seen) == 3

    def test_abelianize_dimension_mismatch(self, monkeypatch, write, s3):
        monkeypatch.setattr(commands, "abelianization_dim", lambda G: 99)
        code, payload = cmd_abelianize(write(s3))
        assert code == EXIT_SEMANTIC_FAILURE
        assert payload["error"] == "DimensionMismatchError"
        assert payload["witness"] == {"abelianization_dim": 99, "dual_bundle_size": 2}

    def test_dual(self, write, abelian_bundle):
        code, payload = cmd_dual(write(abelian_bundle))
        assert code == EXIT_OK
        assert payload["dual_bundle"]["size"] == 9
        assert len(payload["dual_groupoid"]["units"]) == 3

    def test_dual_rejections(self, write, s3, pair2):
        code, payload = cmd_dual(write(s3))
        assert code == EXIT_SEMANTIC_FAILURE
        assert payload["error"] == "NotAbelianError"
        code, payload = cmd_dual(write(pair2, "pair"))
        assert code == EXIT_SEMANTIC_FAILURE
        assert payload["error"] == "NotGroupBundleError"

    def test_characters(self, write, cross, pair2):
        code, payload = cmd_characters(write(cross))
        assert code == EXIT_OK
        assert payload["count"] == payload["abelianization_dim"] == 4
        assert {c["unit"] for c in payload["characters"]} == {"c"}
        code, payload = cmd_characters(write(pair2, "pair"))
        assert payload["count"] == 0


class TestCheck:
    def test_document(self, write, s3_a3):
        code, report = cmd_check(write(s3_a3))
        assert code == EXIT_OK
        assert isinstance(report, CheckReport) and report.ok

    def test_broken_document(self, broken_path):
        code, report = cmd_check(broken_path)
        assert code == EXIT_SEMANTIC_FAILURE
        assert report.failures()[0].check == "axioms"

    def test_unreadable_document(self, garbage_path):
        assert cmd_check(garbage_path)[0] == EXIT_INPUT_ERROR


class TestMain:
    def test_generate_prints_a_document(self, capsys):
        assert main(["generate", "s3-a3"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert len(data["elements"]) == 9

    def test_output_file(self, tmp_path, write, cross):
        target = tmp_path / "out.json"
        assert main(["--output-file", str(target), "characters", write(cross)]) == EXIT_OK
        assert json.loads(target.read_text())["count"] == 4

    def test_check_csv(self, capsys, write, trivial3):
        assert main(["--output", "csv", "check", write(trivial3)]) == EXIT_OK
        assert capsys.readouterr().out.startswith("check,subject,status")

    def test_check_needs_a_subject(self):
        assert main(["check"]) == EXIT_INPUT_ERROR

    def test_exit_codes_pass_through(self, broken_path, garbage_path):
        assert main(["validate", broken_path]) == EXIT_SEMANTIC_FAILURE
        assert main(["validate", garbage_path]) == EXIT_INPUT_ERROR
