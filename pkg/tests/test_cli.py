import json

import pytest

from pathlib import Path

from dergraph.run import run, EXIT_OK, EXIT_VERIFICATION_FAILED, EXIT_USAGE
from dergraph.utils.argparsers import global_parser


TEST_DIR = Path(__file__).parent
SUITES_PATH = TEST_DIR / "fake-data" / "suites"


def run_cli(*argv: str) -> int:
    return run(global_parser().parse_args(list(argv)))


def test_dn(capsys) -> None:
    assert run_cli("dn", "5") == EXIT_OK
    assert capsys.readouterr().out.strip() == "44"


def test_dn_check_json(capsys) -> None:
    assert run_cli("dn", "20", "--check", "--json") == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["dn"] == "895014631192902121"
    assert out["violations"] == []
    assert out["nearest_integer"] is True


def test_poly(capsys) -> None:
    assert run_cli("poly", "4") == EXIT_OK
    assert capsys.readouterr().out.strip() == "(q-37)(q-1)^10(q+3)^9(q+5)^4"


def test_poly_unsupported_degree(capsys) -> None:
    assert run_cli("poly", "3") == EXIT_USAGE
    assert "n >= 4" in capsys.readouterr().err


def test_spectrum_json(capsys) -> None:
    assert run_cli("spectrum", "4", "--json") == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert [e["gamma"] for e in out["entries"]] == ["37", "1", "-5", "-3", "1"]


def test_extremal(capsys) -> None:
    assert run_cli("extremal", "7") == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_factorize_json(capsys) -> None:
    assert run_cli("factorize", "(2 3 4 5 6)", "--n", "6", "--json") == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out == {
        "w": "(2 3 4 5 6)",
        "sigma": "(1 2)(3 6 5 4)",
        "tau": "(1 2 4 6)(3 5)",
        "method": "single-cycle-construction",
        "verified": True,
        "sign": 1,
        "one_line": {
            "w": "[1,3,4,5,6,2]",
            "sigma": "[2,1,6,3,4,5]",
            "tau": "[2,4,5,6,3,1]",
        },
    }


def test_factorize_with_p(capsys) -> None:
    assert run_cli("factorize", "(2 3 4 5 6)", "--p", "2") == EXIT_OK
    assert "sigma: (1 2)(3 5)(4 6)" in capsys.readouterr().out


def test_factorize_rejects(capsys) -> None:
    assert run_cli("factorize", "()", "--n", "4") == EXIT_USAGE
    assert run_cli("factorize", "(1 2)(3 4)") == EXIT_USAGE
    assert run_cli("factorize", "(1 2 2)") == EXIT_USAGE
    # --p only applies to (2 3 ... n)
    assert run_cli("factorize", "(2 3)", "--n", "6", "--p", "1") == EXIT_USAGE
    assert run_cli("factorize", "(2 3 4 5 6)", "--p", "4") == EXIT_USAGE
    capsys.readouterr()


def test_verify(capsys) -> None:
    assert run_cli("verify", "5", "--k", "3", "--certify", "--json") == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["ok"]
    assert {c["check"] for c in out["checks"]} >= {"diameter", "tr(d^3)", "certificates"}


def test_verify_out_of_range(capsys) -> None:
    assert run_cli("verify", "9") == EXIT_USAGE
    assert run_cli("verify", "3") == EXIT_USAGE
    assert run_cli("verify", "5", "--k", "9") == EXIT_USAGE
    capsys.readouterr()


def test_verify_builds_graph_once(monkeypatch, capsys) -> None:
    from dergraph import oracle

    calls = {"build_graph": 0, "distance_matrix": 0}

    def counting(name):
        original = getattr(oracle, name)

        def wrapped(*args, **kwargs):
            calls[name] += 1
            return original(*args, **kwargs)

        return wrapped

    for name in calls:
        monkeypatch.setattr(oracle, name, counting(name))

    assert run_cli("verify", "5", "--k", "3", "--numeric", "--json") == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["ok"]
    assert out["numeric_ok"] is True
    assert {c["check"] for c in out["checks"]} >= {"d = 2J - A", "vertex transitivity"}
    assert calls == {"build_graph": 1, "distance_matrix": 1}


@pytest.mark.slow
def test_verify_n8_runs_bfs_checks_only(capsys) -> None:
    assert run_cli("verify", "8", "--samples", "1", "--json") == EXIT_OK
    captured = capsys.readouterr()
    out = json.loads(captured.out)
    assert [c["check"] for c in out["checks"]] == ["diameter", "vertex transitivity"]
    assert out["checks"][0]["value"] == "2"
    assert out["numeric_ok"] is None
    assert "only the BFS checks" in captured.err


def test_verify_parse_error() -> None:
    with pytest.raises(SystemExit) as e:
        global_parser().parse_args(["verify", "five"])
    assert e.value.code == 2


def test_sweep(capsys) -> None:
    assert run_cli("sweep", "--from", "6", "--to", "10") == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out
    assert run_cli("sweep", "--from", "5") == EXIT_USAGE


def test_sign(capsys) -> None:
    assert run_cli("sign", "--max", "6") == EXIT_OK
    assert capsys.readouterr().out.startswith("28 partitions checked")


def test_chars(tmp_path, capsys) -> None:
    assert run_cli("chars", "4", "--cache-dir", str(tmp_path), "--json") == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["n"] == 4
    assert (tmp_path / "character_table_4.json").exists()


def test_chars_text(capsys) -> None:
    assert run_cli("chars", "3", "--no-cache") == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["λ", "\\", "μ", "(3)", "(2,1)", "(1^3)"]
    assert [line.split() for line in lines[2:]] == [
        ["(3)", "1", "1", "1"],
        ["(2,1)", "-1", "0", "2"],
        ["(1^3)", "1", "-1", "1"],
    ]


def test_suite(capsys) -> None:
    assert run_cli("suite", str(SUITES_PATH / "small.yml")) == EXIT_OK
    captured = capsys.readouterr()
    assert "FAIL" not in captured.out
    assert captured.err == ""
    header = captured.out.splitlines()[0].split()
    assert header == ["check", "n", "result", "seconds"]
    for line in captured.out.splitlines()[2:]:
        assert float(line.split()[-1]) >= 0


def test_suite_time_flag(capsys) -> None:
    assert run_cli("suite", str(SUITES_PATH / "small.yml"), "--time") == EXIT_OK
    captured = capsys.readouterr()
    rows = captured.out.splitlines()[2:]
    timings = [line for line in captured.err.splitlines() if line.endswith(" s")]
    assert len(timings) == len(rows) > 0


def test_suite_invalid(capsys) -> None:
    assert run_cli("suite", str(SUITES_PATH / "cycle_1.yml")) == EXIT_USAGE
    assert run_cli("suite", str(SUITES_PATH / "does_not_exist.yml")) == EXIT_USAGE
    capsys.readouterr()


@pytest.mark.parametrize(
    "bad_file", ["scalar_degrees.yml", "non_integer_degrees.yml", "string_range.yml"]
)
def test_suite_non_integer_degrees(bad_file, capsys) -> None:
    assert run_cli("suite", str(SUITES_PATH / bad_file)) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "should" in captured.err


def test_exit_codes_are_distinct() -> None:
    assert len({EXIT_OK, EXIT_VERIFICATION_FAILED, EXIT_USAGE}) == 3
