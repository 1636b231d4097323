import json
import subprocess
import sys

import pytest

from eqslice.cli import EXIT_ERROR, EXIT_OBSTRUCTED, EXIT_OK, KnotRecord, load_table, main
from reference_data import TABLE


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


@pytest.mark.parametrize("name", ["12a1105", "figure8.json"])
def test_validate_bundled(capsys, name):
    code, report, _ = run_json(capsys, "validate", name)
    assert code == EXIT_OK and report["ok"]


def test_validate_corrupted(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "n": 2, "edges_plus": [[1, 2]], "edges_minus": []}')
    code, out, err = run(capsys, "validate", str(bad))
    assert code == EXIT_ERROR
    assert "edges_plus" in err


def test_validate_failing_checks(capsys, tmp_path):
    from eqslice.cli import data_path

    d = json.loads(data_path("12a1105.json").read_text())
    d["edges_minus"][3] = d["edges_minus"][3][::-1]
    f = tmp_path / "flip.json"
    f.write_text(json.dumps(d))
    code, out, _ = run(capsys, "validate", str(f))
    assert code == EXIT_ERROR and "FAIL" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "no/such/file.json")
    assert code == EXIT_ERROR and "no such file" in err


def test_obstruct_12a1105(capsys):
    code, report, _ = run_json(capsys, "obstruct", "12a1105")
    assert code == EXIT_OBSTRUCTED
    v = report["verdict"]
    assert v["level"] == "NotEquivariantlySlice"
    assert [e["metabolizer_size"] for e in v["evidence"]["embeddings"]] == [17, 17]


def test_obstruct_text(capsys):
    code, out, _ = run(capsys, "obstruct", "12a1105")
    assert code == EXIT_OBSTRUCTED
    assert "verdict: NotEquivariantlySlice" in out and "leaves S" in out


def test_obstruct_figure8(capsys):
    code, report, _ = run_json(capsys, "obstruct", "figure8")
    assert code == EXIT_OBSTRUCTED and report["verdict"]["level"] == "NotSlice"


@pytest.mark.parametrize("d, level, code", [(121, "DetObstructed", 2), (289, "Inconclusive", 0), (5, "NotSlice", 2)])
def test_obstruct_det_only(capsys, d, level, code):
    got, report, _ = run_json(capsys, "obstruct", "--det", str(d))
    assert got == code and report["verdict"]["level"] == level


def test_obstruct_even_det_is_error(capsys):
    code, _, err = run(capsys, "obstruct", "--det", "10")
    assert code == EXIT_ERROR and "odd" in err


def test_table(capsys):
    code, report, _ = run_json(capsys, "table")
    assert code == EXIT_OK and report["all_agree"]
    obstructed = {r["name"] for r in report["records"] if r["determinant_stage"] == "DetObstructed"}
    assert obstructed == {"10_123", "12a_435", "12a_990", "12a_1019", "12a_1225", "12n_706"}
    assert report["summary"] == {"DetObstructed": 6, "Inconclusive": 10}
    rec = {r["name"]: r for r in report["records"]}
    assert rec["12a_1105"]["pipeline"] == "NotEquivariantlySlice"
    assert rec["8_9"]["determinant_stage"] == "Inconclusive"


def test_bundled_table_matches_transcription():
    assert [(r.name, r.determinant, r.category) for r in load_table()] == list(TABLE)


def test_knot_record_validation():
    with pytest.raises(ValueError):
        KnotRecord("x", 24, "Det")
    with pytest.raises(ValueError):
        KnotRecord("x", 25, "Maybe")


def test_embeddings_command(capsys):
    code, report, _ = run_json(capsys, "embeddings", "12a1105")
    assert code == EXIT_OK and len(report["embeddings"]) == 2
    code, report, _ = run_json(capsys, "embeddings", "figure8")
    assert code == EXIT_OBSTRUCTED and report["embeddings"] == []


def test_sigma_orbits(capsys):
    code, report, _ = run_json(capsys, "sigma-orbits", "12a1105")
    assert code == EXIT_OK
    assert report["classes"] == 289 and report["cycle_type"] == {"1": 1, "4": 72}
    code, out, _ = run(capsys, "sigma-orbits", "figure8", "-v")
    assert "1 orbit(s) of size 4" in out and "->" in out


def test_lens(capsys):
    code, report, _ = run_json(capsys, "lens", "5", "2")
    assert code == EXIT_OK and report["orbit_check"]
    assert sorted(report["d_invariants"]) == sorted(["0", "2/5", "-2/5", "2/5", "-2/5"])
    code, report, _ = run_json(capsys, "lens", "9", "2")
    assert code == EXIT_OBSTRUCTED and not report["orbit_check"]


def test_lens_invalid(capsys):
    code, _, err = run(capsys, "lens", "9", "3")
    assert code == EXIT_ERROR


def test_scan(capsys):
    code, report, _ = run_json(capsys, "scan", "200")
    assert code == EXIT_OK
    assert report["counterexamples"] == [] and report["proven_direction_violations"] == []


def test_scan_all_rows(capsys):
    code, out, _ = run(capsys, "scan", "7", "--all")
    assert "5 2 orbit=1 qsq=1" in out


@pytest.mark.parametrize(
    "argv",
    [["obstruct", "12a1105"], ["table"], ["sigma-orbits", "figure8"], ["scan", "31"], ["lens", "13", "5"]],
)
def test_json_deterministic_and_lossless(capsys, argv):
    _, first, text1 = run_json(capsys, *argv)
    _, second, text2 = run_json(capsys, *argv)
    assert text1 == text2
    assert json.dumps(first, sort_keys=True, indent=2) + "\n" == text1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "eqslice", "lens", "5", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "2/5" in res.stdout
