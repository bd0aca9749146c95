import json

from liecoh.cli import EX_NOINPUT, EX_OK, EX_USAGE, EX_VALIDATION, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- exit codes ----------------------------------------------------------------


def test_validate_builtin_ok(capsys):
    code, out, _ = run(capsys, "validate", "builtin:su2")
    assert code == EX_OK
    assert "Jacobi" in out


def test_validate_perturbed_file(tmp_path, capsys):
    bad = {
        "name": "perturbed-su2",
        "basis": ["T", "X", "Y"],
        "brackets": [
            {"on": ["T", "X"], "result": {"T": "1", "Y": "2"}},
            {"on": ["T", "Y"], "result": {"X": "-2"}},
            {"on": ["X", "Y"], "result": {"T": "2"}},
        ],
    }
    path = tmp_path / "perturbed-su2.json"
    path.write_text(json.dumps(bad))
    code, out, err = run(capsys, "validate", str(path))
    assert code == EX_VALIDATION
    assert "(T, X, Y)" in out
    assert "E_VALIDATION" in err


def test_unknown_flag_is_usage_error(capsys):
    code, _, err = run(capsys, "cohomology", "--bogus")
    assert code == EX_USAGE
    assert "E_USAGE" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/algebra.json")
    assert code == EX_NOINPUT
    assert "E_NOINPUT" in err


def test_unknown_builtin_is_validation_error(capsys):
    code, _, err = run(capsys, "validate", "builtin:e8")
    assert code == EX_VALIDATION


def test_malformed_json_is_validation_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", str(path))
    assert code == EX_VALIDATION


# -- command outputs -----------------------------------------------------------


def test_classify_span_output(capsys):
    code, out, _ = run(
        capsys, "classify", "--algebra", "builtin:su2", "--subalgebra", "span{X-iY}"
    )
    assert code == EX_OK
    assert "cr" in out and "inconclusive" in out
    assert "[['2']]" in out


def test_classify_json_structure(capsys):
    code, out, _ = run(
        capsys,
        "classify", "--algebra", "builtin:su2", "--subalgebra", "span{X-iY}", "--json",
    )
    data = json.loads(out)
    assert data["classification"]["flags"]["cr"] is True
    assert data["bct"]["verdict"] == "inconclusive"
    assert data["levi_matrix"] == [["2"]]


def test_cohomology_bigraded_table(capsys):
    code, out, _ = run(
        capsys,
        "cohomology", "--algebra", "builtin:su2", "--subalgebra", "span{T, X-iY}",
    )
    assert code == EX_OK
    assert "1  1  0" in out and "0  1  1" in out


def test_cohomology_plain_and_adjoint(capsys):
    code, out, _ = run(capsys, "cohomology", "--algebra", "builtin:su2")
    assert code == EX_OK and "(1, 0, 0, 1)" in out
    code, out, _ = run(
        capsys, "cohomology", "--algebra", "builtin:su2", "--module", "adjoint"
    )
    assert code == EX_OK and "(0, 0, 0, 0)" in out


def test_cohomology_relative(capsys):
    code, out, _ = run(
        capsys,
        "cohomology", "--algebra", "builtin:su2",
        "--subalgebra", "span{T, X-iY}", "--relative", "span{T}",
    )
    assert code == EX_OK
    assert "(1, 0)" in out


def test_cohomology_module_file(tmp_path, capsys):
    # one-dimensional module with T-weight 2i over the acting span{T, L}
    module = {"dim": 1, "actions": [[["2i"]], [["0"]]]}
    path = tmp_path / "weight.json"
    path.write_text(json.dumps(module))
    code, out, _ = run(
        capsys,
        "cohomology", "--algebra", "builtin:su2",
        "--subalgebra", "span{T, X-iY}", "--relative", "span{T}",
        "--module", str(path),
    )
    assert code == EX_OK and "(0, 1)" in out


def test_roots_with_standard(capsys):
    code, out, _ = run(
        capsys,
        "roots", "--algebra", "builtin:su3", "--torus", "span{T1, T2}",
        "--standard", "2", "0", "--json",
    )
    data = json.loads(out)
    assert len(data["root_datum"]["roots"]) == 6
    assert data["standard_structure"]["prediction_matches"] is True


def test_roots_positive_override(capsys):
    code, out, _ = run(
        capsys,
        "roots", "--algebra", "builtin:su3", "--torus", "span{T1, T2}",
        "--positive", "2i,0;i,3i;-i,3i", "--json",
    )
    data = json.loads(out)
    assert data["positive_system"]["positive_roots"] == [
        ["-i", "3i"], ["i", "3i"], ["2i", "0"],
    ]


def test_decompose_reports_disagreement(capsys):
    code, out, _ = run(
        capsys,
        "decompose", "--algebra", "builtin:su2", "--subalgebra", "span{T, X-iY}",
    )
    assert code == EX_OK
    assert "disagreement at (p,q)=(1,1)" in out


def test_torus_solve_rhs(tmp_path, capsys):
    rhs = {
        "cutoff": 5,
        "coefficients": [
            {"xi": 1, "eta": 1, "value": "1"},
            {"xi": 2, "eta": 3, "value": "1"},
        ],
    }
    path = tmp_path / "f.json"
    path.write_text(json.dumps(rhs))
    code, out, _ = run(capsys, "torus-solve", "--mu", "2/3", "--rhs", str(path), "--json")
    data = json.loads(out)
    assert data["solve"]["solution"]["coefficients"] == [
        {"xi": 1, "eta": 1, "value": "-3i"}
    ]
    assert data["solve"]["obstructions"] == [[2, 3]]


def test_torus_solve_requires_slope(capsys):
    code, _, err = run(capsys, "torus-solve")
    assert code == EX_USAGE


def test_torus_solve_cf_report(capsys):
    code, out, _ = run(
        capsys, "torus-solve", "--cf", ",".join(["1"] * 12), "--depth", "8", "--json"
    )
    data = json.loads(out)
    assert data["divisor_report"]["verdict"] == "diophantine_evidence"


def test_subalgebra_file_with_inline_algebra(tmp_path, capsys):
    sub = {
        "algebra": {
            "name": "su2",
            "basis": ["T", "X", "Y"],
            "brackets": [
                {"on": ["T", "X"], "result": {"Y": "2"}},
                {"on": ["T", "Y"], "result": {"X": "-2"}},
                {"on": ["X", "Y"], "result": {"T": "2"}},
            ],
        },
        "vectors": [{"X": "1", "Y": "-i"}],
    }
    path = tmp_path / "h.json"
    path.write_text(json.dumps(sub))
    code, out, _ = run(capsys, "classify", "--subalgebra", str(path), "--json")
    assert code == EX_OK
    assert json.loads(out)["classification"]["flags"]["cr"] is True


def test_json_output_is_deterministic(capsys):
    args = [
        "cohomology", "--algebra", "builtin:su2", "--subalgebra", "span{T, X-iY}", "--json",
    ]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EX_OK
    assert main(["cohomology", "--help"]) == EX_OK


def test_cohomology_representatives_output(capsys):
    code, out, _ = run(
        capsys,
        "cohomology", "--algebra", "builtin:su2", "--subalgebra", "span{T, X-iY}",
        "--representatives", "--json",
    )
    data = json.loads(out)
    reps = data["table"]["representatives"]
    assert reps["0,1"] == [{"τ1": "1"}]
    assert reps["1,2"] == [{"ζ1∧τ1∧τ2": "1"}]


def test_thread_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("LIECOH_THREADS", "3")
    code, out, _ = run(
        capsys, "cohomology", "--algebra", "builtin:su2", "--subalgebra", "span{T, X-iY}"
    )
    assert code == EX_OK and "1  1  0" in out
    monkeypatch.setenv("LIECOH_THREADS", "zero")
    code, _, err = run(
        capsys, "cohomology", "--algebra", "builtin:su2", "--subalgebra", "span{T, X-iY}"
    )
    assert code == EX_USAGE
