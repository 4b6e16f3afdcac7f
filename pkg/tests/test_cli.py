"""Command-line interface: exit codes, formats, determinism."""

import json
import subprocess
import sys

import pytest

from hopfcalc import cli

UB_PRES = "gens: a b\nrel: [a,b]^2\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_text_exact(capsys):
    code, out, _ = run(capsys, "compute", "--corpus", "SL2_F2", "--prime", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "h1 = 1, h2 = 1 (exact)"
    assert lines[1] == "dim A = 2 (exact), image rank = 1"


def test_compute_text_upper_bound(tmp_path, capsys):
    pres = tmp_path / "csq.pres"
    pres.write_text(UB_PRES, encoding="utf-8")
    code, out, _ = run(capsys, "compute", "--pres", str(pres), "--prime", "2")
    assert code == 0
    assert out.splitlines()[0] == "h1 = 2, h2 ≤ 1"


def test_compute_json(capsys):
    code, out, _ = run(
        capsys, "compute", "--corpus", "SL2_F2", "--prime", "2", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["group"] == "SL2_F2"
    assert data["h2_value"] == 1
    assert data["h2_kind"] == "exact"
    assert data["candidates"] == [{"coeffs": [0, 1], "word": "a*b*a*b"}]


def test_compute_csv_and_markdown(capsys):
    code, out, _ = run(
        capsys, "compute", "--corpus", "SL2_ZI", "--prime", "2", "--format", "csv"
    )
    assert code == 0
    head, row = out.splitlines()
    assert head.startswith("group,prime,n_generators,h1_dim,dim_A")
    assert row.startswith("SL2_ZI,2,")
    code, out, _ = run(
        capsys, "compute", "--corpus", "SL2_ZI", "--prime", "2", "--format", "markdown"
    )
    assert code == 0
    assert out.splitlines()[0] == "| field | value |"


def test_compute_candidate_listing(capsys):
    code, out, _ = run(
        capsys, "compute", "--corpus", "SL2_F2", "--prime", "2", "--generators"
    )
    assert code == 0
    assert "candidates (1):" in out
    assert "  a*b*a*b  coeffs=0,1" in out


def test_compute_dump_files(tmp_path, capsys):
    rules = tmp_path / "rules.txt"
    matrix = tmp_path / "matrix.txt"
    code, _, _ = run(
        capsys,
        "compute", "--corpus", "SL2_F2", "--prime", "2",
        "--dump-rules", str(rules), "--dump-matrix", str(matrix),
    )
    assert code == 0
    assert rules.read_text(encoding="utf-8").startswith("# confluent: true")
    mat_lines = matrix.read_text(encoding="utf-8").splitlines()
    assert mat_lines[0] == "# rows: 2  cols: 2  prime: 2"
    assert len(mat_lines) == 3


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "compute", "--prime", "2")[0] == 1  # no source
    assert (
        run(
            capsys,
            "compute", "--pres", "x", "--corpus", "SL2_F2", "--prime", "2",
        )[0]
        == 1
    )  # two sources
    assert run(capsys, "table", "--corpus", "SL2_ZI", "--primes", "")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "compute", "--corpus", "SL2_F2")[0] == 1  # argparse: no prime


def test_validation_errors_exit_2(tmp_path, capsys):
    assert run(capsys, "compute", "--corpus", "NOPE", "--prime", "2")[0] == 2
    assert run(capsys, "compute", "--corpus", "SL2_F2", "--prime", "4")[0] == 2
    missing = tmp_path / "missing.pres"
    assert run(capsys, "compute", "--pres", str(missing), "--prime", "2")[0] == 2
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: a\nrel: a^^2\n", encoding="utf-8")
    code, _, err = run(capsys, "compute", "--pres", str(bad), "--prime", "2")
    assert code == 2
    assert "parse error" in err


def test_oracle_unavailable_exits_3(tmp_path, capsys):
    pres = tmp_path / "free.pres"
    pres.write_text("gens: a\n", encoding="utf-8")
    code, _, err = run(capsys, "oracle-check", "--pres", str(pres), "--prime", "2")
    assert code == 3
    assert "oracle unavailable" in err


def test_oracle_check_pass(capsys):
    code, out, _ = run(
        capsys, "oracle-check", "--corpus", "SL2_F2", "--primes", "2,3"
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert all(line.endswith("pass") for line in lines)


def test_oracle_check_failure_exits_1(monkeypatch, capsys):
    def fake_check(pres, p, budget=None, cap=None):
        return {
            "group": pres.name, "prime": p,
            "pipeline_h1": 0, "pipeline_h2": 0, "pipeline_kind": "exact",
            "oracle_h1": 1, "oracle_h2": 0, "verdict": "fail",
        }

    monkeypatch.setattr(cli.oracle, "check", fake_check)
    code, out, _ = run(capsys, "oracle-check", "--corpus", "SL2_F2", "--prime", "2")
    assert code == 1
    assert out.splitlines()[0].endswith("fail")


def test_table_markdown_and_bounds(capsys):
    code, out, _ = run(
        capsys,
        "table", "--corpus", "SL2_ZI,SL2_ZOMEGA", "--primes", "2,3",
    )
    assert code == 0
    assert "## h1" in out and "## h2" in out
    assert "| SL2_ZI | 1 | 0 |" in out
    code, out, _ = run(
        capsys, "table", "--corpus", "SL2_ZSQRTM5", "--primes", "2"
    )
    assert code == 0
    assert "≤" in out  # budget-limited cells carry the bound marker


def test_table_csv_and_json(capsys):
    code, out, _ = run(
        capsys,
        "table", "--corpus", "SL2_ZI", "--primes", "2,3", "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "group,prime,h1,h2,h2_kind"
    assert lines[1] == "SL2_ZI,2,1,1,exact"
    code, out, _ = run(
        capsys,
        "table", "--corpus", "SL2_ZI", "--primes", "2", "--format", "json",
    )
    assert code == 0
    assert json.loads(out) == [
        {"group": "SL2_ZI", "prime": 2, "h1_dim": 1, "h2_value": 1, "h2_kind": "exact"}
    ]


def test_table_is_deterministic_across_thread_counts(monkeypatch, capsys):
    argv = ("table", "--corpus", "SL2_ZI,SL2_ZOMEGA", "--primes", "2,3")
    monkeypatch.setenv("HOPFCALC_THREADS", "1")
    first = run(capsys, *argv)
    monkeypatch.setenv("HOPFCALC_THREADS", "3")
    second = run(capsys, *argv)
    assert first == second
    monkeypatch.setenv("HOPFCALC_THREADS", "zero")
    assert run(capsys, *argv)[0] == 1


def test_simplify_with_map(tmp_path, capsys):
    pres = tmp_path / "p.pres"
    pres.write_text("gens: a b\nrel: a*b\nrel: b^2\n", encoding="utf-8")
    mapfile = tmp_path / "m.sub"
    mapfile.write_text("targets: x y\nmap: a -> x*y\nmap: b -> y^-1\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "simplify", "--pres", str(pres), "--map", str(mapfile)
    )
    assert code == 0
    assert out == "gens: x y\nrel: x\nrel: y^-2\n"


def test_simplify_identity_map_keeps_the_presentation(capsys):
    code, out, _ = run(capsys, "simplify", "--corpus", "SL2_F2")
    assert code == 0
    assert out == "gens: a b\nrel: a^2\nrel: b^3\nrel: a*b*a*b\n"


def test_simplify_map_mismatch_exits_2(tmp_path, capsys):
    mapfile = tmp_path / "m.sub"
    mapfile.write_text("targets: x\nmap: q -> x\n", encoding="utf-8")
    code, _, _ = run(capsys, "simplify", "--corpus", "SL2_F2", "--map", str(mapfile))
    assert code == 2


def test_simplify_json(capsys):
    code, out, _ = run(
        capsys, "simplify", "--corpus", "SL2_F2", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["generators"] == ["a", "b"]
    assert data["relators"] == ["a^2", "b^3", "a*b*a*b"]


def test_compute_output_is_byte_identical_across_runs(capsys):
    argv = ("compute", "--corpus", "SL2_F3", "--prime", "3", "--format", "json")
    assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hopfcalc", "compute", "--corpus", "SL2_ZI", "--prime", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "h1 = 1, h2 = 1 (exact)"
