import json
import re

import numpy as np
import pytest

from folia import cli
from folia.cli import fmt, main, run_report
from folia.document import carriere, heisenberg, hrw7, parse_input

GENERATORS = {"carriere": carriere(3), "hrw7": hrw7(1.5, 1.0, 1.0), "heisenberg": heisenberg()}


def _payload(doc, **kw):
    text, code = run_report(doc, "json", **kw)
    return json.loads(text), code


@pytest.mark.parametrize("name", GENERATORS)
def test_generators_exit_zero(name):
    for fmt_name in ("text", "json"):
        _, code = run_report(GENERATORS[name], fmt_name)
        assert code == 0


def test_carriere_report_json():
    out, code = _payload(carriere(3))
    assert code == 0 and out["status"] == "ok" and out["index_base"] == 1
    assert out["report"]["taut"] is False
    assert out["report"]["jacobi_eigenvalue"] == pytest.approx(1.852519, abs=5e-7)
    assert out["tensors"]["kappa_b"]["indices"] == [2, 3]


def test_heisenberg_report_all_zero():
    out, code = _payload(heisenberg())
    assert code == 0 and out["report"]["taut"] is True
    for name, tensor in out["tensors"].items():
        assert not np.any(tensor["entries"]), name


def test_not_riemannian_exits_one():
    doc = carriere(3)
    doc.leaf = [3]
    text, code = run_report(doc, "text")
    assert code == 1 and "NotRiemannian" in text
    out, code = _payload(doc)
    assert code == 1 and out["status"] == "validation_failure"
    assert out["error"]["error"] == "NotRiemannian" and out["error"]["index"] == [3, 1, 1]


def test_jacobi_failure_exits_one():
    doc = parse_input(
        json.dumps(
            {
                "dimension": 3,
                "brackets": [{"i": 1, "j": 2, "k": 2, "c": 1}, {"i": 1, "j": 3, "k": 3, "c": 1}, {"i": 2, "j": 3, "k": 1, "c": 1}],
                "leaf": [1],
            }
        )
    )
    out, code = _payload(doc)
    assert code == 1 and out["error"]["error"] == "JacobiViolation"


def test_standing_assumption_failure_exits_one():
    doc = parse_input(json.dumps({"dimension": 3, "brackets": [{"i": 1, "j": 3, "k": 1, "c": -1}, {"i": 2, "j": 3, "k": 2, "c": -1}], "leaf": [1]}))
    out, code = _payload(doc)
    assert code == 1 and out["error"]["error"] == "StandingAssumptionViolation"


def test_tight_tolerance_exits_two():
    # round-off in one identity exceeds a 1e-17 tolerance
    text, code = run_report(carriere(3), "text", tolerance=1e-17)
    assert code == 2 and "FAIL" in text
    out, code = _payload(carriere(3), tolerance=1e-17)
    assert code == 2 and out["status"] == "identity_failure" and out["report"]["failed_identities"]


def test_inconsistent_criteria_exits_two(monkeypatch):
    monkeypatch.setattr("folia.diagnostics.jacobi_operator", lambda alg, fol, eta: np.zeros_like(eta))
    out, code = _payload(carriere(3))
    assert code == 2 and out["error"]["error"] == "InconsistentCriteria"


@pytest.mark.parametrize("name", GENERATORS)
def test_json_rerun_is_identical(name):
    text, _ = run_report(GENERATORS[name], "json")
    out = json.loads(text)
    again, _ = run_report(parse_input(json.dumps(out["input"])), "json")
    assert again == text


@pytest.mark.parametrize("name", GENERATORS)
def test_json_tensors_reproduce_scalars(name):
    out, _ = _payload(GENERATORS[name])
    t = {k: np.array(v["entries"]) for k, v in out["tensors"].items()}
    q = out["foliation"]["q"]
    scalar = out["scalars"]["scalar_q"]
    assert float(np.trace(t["ricci_q"])) == scalar
    assert float(np.linalg.norm(t["ricci_q"] + t["t_kappa"] - scalar / q * np.eye(q))) == out["report"]["critical_residual_norm"]
    assert float(np.linalg.norm(t["kappa_b"])) == out["report"]["kappa_norm"]
    assert float(np.linalg.norm(t["t_kappa"])) == out["report"]["t_kappa_norm"]
    assert float(t["kappa_b"] @ t["ricci_q"] @ t["kappa_b"]) == out["report"]["ric_tau_tau"]
    for key in ("ricci_q", "t_kappa", "nabla_kappa"):
        assert t[key].shape == (q, q)
    assert t["riemann_q"].shape == (q,) * 4


@pytest.mark.parametrize("name", GENERATORS)
def test_text_and_json_agree(name):
    text, _ = run_report(GENERATORS[name], "text")
    out, _ = _payload(GENERATORS[name])
    printed = dict(re.findall(r"^(\w+) = (\S+)$", text, re.M))
    merged = {**out["report"], **out["scalars"]}
    for key in ("kappa_norm", "t_kappa_norm", "ric_tau_tau", "jacobi_kappa_norm", "jacobi_eigenvalue", "lambda_q",
                "critical_residual_norm", "critical_lambda", "ricci_tautness_pairing", "div_b_kappa", "scalar_q"):
        value = merged[key]
        assert printed[key] == ("none" if value is None else fmt(value)), key
    for key, value in out["report"]["identity_residuals"].items():
        assert re.search(rf"(PASS|FAIL) {key} = {re.escape(fmt(value))}$", text, re.M), key


def test_fmt_twelve_digits():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333333"


# command-line verbs


def test_example_and_report_verbs(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert main(["example", "carriere", "--trace", "3", "--emit", str(path)]) == 0
    assert parse_input(path.read_text(encoding="utf-8")) == carriere(3)
    assert main(["report", str(path)]) == 0
    out = capsys.readouterr().out
    assert "verdict: nontaut" in out and out.rstrip().endswith("exit code 0")
    assert main(["report", str(path), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["exit_code"] == 0


def test_example_to_stdout(capsys):
    assert main(["example", "hrw7", "--coshk", "2", "--n1", "2", "--n2", "-1"]) == 0
    assert parse_input(capsys.readouterr().out) == hrw7(2.0, 2.0, -1.0)


def test_example_bad_parameter(capsys):
    assert main(["example", "carriere", "--trace", "2"]) == 1
    assert "InvalidParameter" in capsys.readouterr().err


def test_check_verb(tmp_path, capsys):
    good, bad = tmp_path / "good.json", tmp_path / "bad.json"
    good.write_text(heisenberg().to_json(), encoding="utf-8")
    doc = heisenberg()
    doc.leaf = [1, 2]
    bad.write_text(doc.to_json(), encoding="utf-8")
    assert main(["check", str(good)]) == 0
    assert capsys.readouterr().out == "OK\n"
    assert main(["check", str(bad), "--format", "json"]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["error"] == "NotIntegrable"


def test_missing_file_exits_three(tmp_path, capsys):
    assert main(["report", str(tmp_path / "absent.json")]) == 3
    assert "ParseError" in capsys.readouterr().err
    assert main(["report", str(tmp_path / "absent.json"), "--format", "json"]) == 3
    assert json.loads(capsys.readouterr().out)["status"] == "parse_failure"


def test_malformed_file_exits_three(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"dimension": 3,', encoding="utf-8")
    assert main(["report", str(path), "--format", "json"]) == 3
    err = json.loads(capsys.readouterr().out)["error"]
    assert err["error"] == "ParseError" and err["line"] == 1


def test_env_tolerance(tmp_path, capsys, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(carriere(3).to_json(), encoding="utf-8")
    monkeypatch.setenv(cli.ENV_TOLERANCE, "1e-17")
    assert main(["report", str(path)]) == 2
    assert "tolerance = 1e-17" in capsys.readouterr().out
    # explicit flag beats the environment
    assert main(["report", str(path), "--tolerance", "1e-9"]) == 0
    capsys.readouterr()
    monkeypatch.setenv(cli.ENV_TOLERANCE, "abc")
    assert main(["report", str(path)]) == 3


def test_document_tolerance_beats_environment(monkeypatch):
    doc = carriere(3)
    doc.tolerance = 1e-9
    monkeypatch.setenv(cli.ENV_TOLERANCE, "1e-17")
    assert run_report(doc, "text")[1] == 0


def test_rescale_verb(tmp_path, capsys):
    src, dst = tmp_path / "c.json", tmp_path / "c4.json"
    src.write_text(carriere(3).to_json(), encoding="utf-8")
    assert main(["rescale", str(src), "--factor", "4", "--emit", str(dst)]) == 0
    out, code = _payload(parse_input(dst.read_text(encoding="utf-8")))
    assert code == 0
    assert out["scalars"]["scalar_q"] == pytest.approx(-0.25 * 1.852518564624, abs=1e-11)
    assert main(["rescale", str(src), "--factor", "-1", "--emit", str(dst)]) == 1
    assert "InvalidFactor" in capsys.readouterr().err


def test_rescale_rejects_invalid_foliation(tmp_path, capsys):
    doc = carriere(3)
    doc.leaf = [3]
    src = tmp_path / "c.json"
    src.write_text(doc.to_json(), encoding="utf-8")
    assert main(["rescale", str(src), "--factor", "2", "--emit", str(tmp_path / "o.json")]) == 1
    assert "NotRiemannian" in capsys.readouterr().err


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(heisenberg().to_json()))
    assert main(["report", "-"]) == 0
    assert "verdict: taut" in capsys.readouterr().out


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "folia", "example", "heisenberg"], capture_output=True, text=True)
    assert proc.returncode == 0 and parse_input(proc.stdout) == heisenberg()
