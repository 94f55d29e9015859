import json

import pytest

from mpkcheck.cli.app import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParser:
    def test_command_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_repeated_only(self):
        args = build_parser().parse_args(["verify", "--only", "ekk,proj_E", "--only", "mpull"])
        assert args.only == ["ekk,proj_E", "mpull"]


class TestListAndEval:
    def test_list_checks(self, capsys):
        code, out, _ = run(capsys, "list-checks")
        assert code == 0
        assert "toeplitz_laws: " in out
        assert "fault_sink_handling [fault]" in out

    def test_eval_canonical_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "(1 - t@0*t@0)", "--sig", "T")
        assert code == 0
        assert out.strip() == "0"

    def test_eval_sphere_quotient(self, capsys):
        code, out, _ = run(capsys, "eval", "(1 - t@0 * t@0*) * (1 - t@1 * t@1*)", "--sig", "S2")
        assert (code, out.strip()) == (0, "0")

    def test_eval_adjoint(self, capsys):
        _, plain, _ = run(capsys, "eval", "t@0*", "--sig", "T")
        _, adj, _ = run(capsys, "eval", "t@0", "--sig", "T", "--adjoint")
        assert plain == adj

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "eval", "t@0 +", "--sig", "T")
        assert code == 2
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["error"]["code_name"] == "PARSE_ERROR"
        assert payload["error"]["details"]["column"] == 6

    def test_bad_signature(self, capsys):
        code, _, _ = run(capsys, "eval", "1", "--sig", "T,X")
        assert code == 2


class TestKClass:
    def test_line_bundle(self, capsys):
        code, out, _ = run(capsys, "kclass", "--n", "2", "--k", "2")
        assert code == 0
        assert json.loads(out) == [1, -2, 1]

    def test_projection_class(self, capsys):
        code, out, _ = run(capsys, "kclass", "--n", "2", "--k", "1", "--j", "0")
        assert json.loads(out) == [1, -1, 0]

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, "kclass", "--n", "2", "--k", "0", "--j", "4")
        assert code == 2
        assert "INDEX_OUT_OF_RANGE" in err


class TestDumpMatrix:
    def test_shift(self, capsys):
        code, out, _ = run(capsys, "dump-matrix", "t@0", "--sig", "T", "--trunc-N", "3")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# shape 3x3 N=3")
        assert lines[1:] == ["1 0 1.0 0.0", "2 1 1.0 0.0"]

    def test_sphere_needs_lift(self, capsys):
        code, _, err = run(capsys, "dump-matrix", "t@0", "--sig", "S2", "--trunc-N", "3")
        assert code == 2
        assert "SPHERE_BLOCK_NOT_LIFTED" in err

    def test_lifted_sphere(self, capsys):
        code, out, _ = run(capsys, "dump-matrix", "t@0", "--sig", "S2", "--trunc-N", "3", "--lift")
        assert code == 0
        assert out.startswith("# shape 9x9")


class TestVerify:
    def test_json_on_stdout(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "alt_binom", "--n", "1")
        assert code == 0
        document = json.loads(out)
        assert document["summary"]["failed"] == 0
        assert document["config"]["n_max"] == 1

    def test_report_file(self, capsys, tmp_path):
        target = tmp_path / "reports" / "run.json"
        code, out, _ = run(capsys, "verify", "--only", "sphere_relations", "--n", "1", "--json", str(target))
        assert code == 0
        assert "2 passed, 0 failed" in out
        assert json.loads(target.read_text(encoding="utf-8"))["summary"]["total"] == 2

    def test_fault_fails_the_run(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "fault_literal_eq_ss", "--json", "out.json")
        assert code == 1
        assert "FAIL fault_literal_eq_ss" in out

    def test_expected_fault(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "fault_literal_eq_ss",
                           "--expect-fail", "fault_literal_eq_ss", "--json", "out.json")
        assert code == 0
        assert "FAIL (expected) fault_literal_eq_ss" in out

    def test_unknown_check(self, capsys):
        code, _, err = run(capsys, "verify", "--only", "bogus")
        assert code == 2
        assert "UNKNOWN_CHECK" in err

    def test_invalid_flag_value(self, capsys):
        code, _, _ = run(capsys, "verify", "--only", "ekk", "--n", "0")
        assert code == 2
