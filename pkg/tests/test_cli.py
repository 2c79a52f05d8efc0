"""
命令行测试
"""
import json
import math

import pytest

from app import cli

SCHWARZ = {"data": {"points": [[0.0], [0.5]], "values": [0.0, 0.5]}}


@pytest.fixture(autouse=True)
def _settings(monkeypatch, settings):
    monkeypatch.setattr(cli, "get_settings", lambda: settings)


@pytest.fixture
def run(tmp_path, capsys):
    """写入问题文件并执行命令，返回 (退出码, 标准输出文本)"""
    def invoke(command, problem, *flags):
        path = tmp_path / "problem.json"
        path.write_text(problem if isinstance(problem, str) else json.dumps(problem), encoding="utf-8")
        code = cli.main([command, str(path), *flags])
        return code, capsys.readouterr().out

    return invoke


def test_pick_schwarz_example(run):
    code, out = run("pick", SCHWARZ)
    result = json.loads(out)
    assert code == 0
    assert result["command"] == "pick"
    assert result["feasible"] is True
    assert result["pick_constant"] == pytest.approx(1.0, abs=1e-8)
    assert len(result["matrix"]) == 2


def test_poly_lift_test_scaled_coordinate(run):
    problem = {"polynomial": {"terms": [{"exponents": [1, 0], "coeff": math.sqrt(2)}]}, "m": 1}
    code, out = run("poly-lift-test", problem, "--samples", "200000")
    result = json.loads(out)
    assert code == 0
    assert result["verdict"] == "NoLift"
    assert result["l1"]["value"] == pytest.approx(2 * math.sqrt(2) / 3, abs=0.005)


def test_integrate_monomial(run):
    code, out = run("integrate", {"monomial": {"alpha": [1, 0], "beta": [1, 0]}})
    result = json.loads(out)
    assert code == 0
    assert result["value"] == 0.5
    assert result["exact"] == "1/2"
    assert result["method"] == "Exact"


def test_integrate_polynomial_norm(run):
    problem = {"polynomial": {"terms": [{"exponents": [1, 1], "coeff": [0.0, 2.0]}]}, "norm": "L2"}
    code, out = run("integrate", problem)
    result = json.loads(out)
    assert code == 0
    assert result["norm"] == "L2"
    assert result["value"] == pytest.approx(2 / math.sqrt(6))


def test_compress_shift(run):
    problem = {"polynomial": {"terms": [{"exponents": [1], "coeff": 1.0}]}, "m": 1}
    code, out = run("compress", problem)
    result = json.loads(out)
    assert code == 0
    assert result["dimension"] == 2
    assert result["basis"] == [[0], [1]]
    assert result["matrix"] == [[[0, 0], [0, 0]], [[1, 0], [0, 0]]]
    assert result["opnorm"] == pytest.approx(1.0)


def test_lift_check_zero_data_reports_infinite_bracket(run):
    problem = {"data": {"points": [[0.0, 0.0], [0.5, 0.0]], "values": [0.0, 0.0]}}
    code, out = run("lift-check", problem, "--degree", "2")
    result = json.loads(out)
    assert code == 0
    assert result["distance_bracket"] == ["inf", "inf"]
    assert result["verdict"] == "Feasible"


def test_interpolate_reports_schur_witness(run):
    problem = {"data": {"points": [[0.0], [0.5]], "values": [0.0, 0.4]}}
    code, out = run("interpolate", problem)
    result = json.loads(out)
    assert code == 0
    assert result["residual"] <= 1e-10
    assert result["schur_witness"]["residual"] <= 1e-8

    code, out = run("interpolate", SCHWARZ)
    assert code == 0
    assert json.loads(out)["schur_status"] == "degenerate_pick"


def test_invalid_json_exits_with_invalid_input(run):
    code, out = run("pick", "{not json")
    assert code == 2
    assert json.loads(out)["error"]["reason"] == "invalid_input"


def test_point_outside_ball_exits_with_invalid_input(run):
    code, out = run("pick", {"data": {"points": [[1.2]], "values": [0.0]}})
    assert code == 2
    assert json.loads(out)["error"]["reason"] == "invalid_input"


def test_unknown_field_exits_with_invalid_input(run):
    code, out = run("pick", {**SCHWARZ, "bogus": 1})
    assert code == 2
    assert json.loads(out)["error"]["errors"]


def test_missing_file_exits_with_invalid_input(tmp_path, capsys):
    code = cli.main(["pick", str(tmp_path / "missing.json")])
    assert code == 2
    assert json.loads(capsys.readouterr().out)["error"]["reason"] == "invalid_input"


def test_nearly_coincident_nodes_exit_with_numerical_failure(run):
    problem = {"data": {"points": [[0.0, 0.0], [0.3, 0.1], [0.3 + 1e-9, 0.1]], "values": [0.0, 0.1, 0.1]}}
    code, out = run("lift-check", problem, "--degree", "2")
    assert code == 3
    assert json.loads(out)["error"]["reason"] == "ill_conditioned"


def test_output_is_deterministic_across_runs_and_workers(run):
    problem = {
        "polynomial": {"terms": [{"exponents": [1, 0], "coeff": 1.0}, {"exponents": [0, 2], "coeff": [0.0, 0.5]}]},
        "norm": "L1",
        "config": {"workers": 1},
    }
    first = run("integrate", problem, "--seed", "7", "--samples", "150000")
    second = run("integrate", problem, "--seed", "7", "--samples", "150000")
    threaded = run("integrate", {**problem, "config": {"workers": 4}}, "--seed", "7", "--samples", "150000")
    assert first == second == threaded
    assert first[0] == 0


def test_flags_take_precedence_over_file_config(run):
    problem = {
        "polynomial": {"terms": [{"exponents": [1, 0], "coeff": 1.0}]},
        "norm": "L1",
        "config": {"seed": 1, "mc_samples": 100000},
    }
    _, from_flag = run("integrate", problem, "--seed", "2")
    _, from_file = run("integrate", {**problem, "config": {"seed": 2, "mc_samples": 100000}})
    _, other_seed = run("integrate", problem)
    assert from_flag == from_file
    assert from_flag != other_seed
    assert json.loads(from_flag)["samples"] == 100000
