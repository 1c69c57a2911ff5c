import json
import subprocess
import sys

import pytest

from chenap.cli import EXIT_INVALID, EXIT_OK, EXIT_RESOURCE, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_runtime(text):
    d = json.loads(text)
    d.pop("runtime")
    return d


def test_constants_json(capsys):
    code, out, _ = call(capsys, "constants", "--tolerance", "1e-8", "--output-format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["report"] == "constants" and d["schema_version"] == 1
    assert round(d["result"]["c_A1"], 3) == 4.394
    assert d["result"]["net"] > 0.08
    assert d["provenance"]["config"]["tolerance"] == 1e-8
    assert "wall_time_s" in d["runtime"]


def test_verify_lemma_text(capsys):
    code, out, _ = call(capsys, "verify-lemma", "--x", "100000", "--output-format", "text")
    assert code == EXIT_OK
    assert "0 violations" in out


def test_count_valid_class(capsys):
    code, out, _ = call(capsys, "count", "--x", "1e5", "--q", "3", "--a", "2")
    assert code == EXIT_OK
    r = json.loads(out)["result"]
    assert r["count"] == r["twin"] + r["qualified_semiprime"] > 0
    assert r["normalized_density"] > 0


def test_count_rejects_invalid_class(capsys):
    code, _, err = call(capsys, "count", "--x", "1e5", "--q", "3", "--a", "1")
    assert code == EXIT_INVALID
    assert "gcd(a, q) = gcd(a + 2, q) = 1" in err


def test_twin_count_cli(capsys):
    code, out, _ = call(capsys, "count", "--x", "100")
    assert json.loads(out)["result"]["twin"] == 8


def test_decompose_shard_independent(capsys):
    runs = []
    for shards in ("1", "4"):
        code, out, _ = call(capsys, "decompose", "--x", "1e6", "--q", "5", "--a", "2",
                            "--shards", shards)
        assert code == EXIT_OK
        runs.append(strip_runtime(out))
    assert runs[0] == runs[1]
    r = runs[0]["result"]
    assert r["lemma_holds"] is True
    assert r["lhs_theorem"] >= r["combination"]


def test_discrepancy_csv(capsys):
    code, out, _ = call(capsys, "discrepancy", "--x", "1e4", "--weight", "b",
                        "--output-format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "d,worst_a,delta_abs" and len(lines) == 1 + 100


def test_discrepancy_json(capsys):
    code, out, _ = call(capsys, "discrepancy", "--x", "1e4", "--D", "20")
    r = json.loads(out)["result"]
    assert r["moduli"] == 20 and len(r["rows"]) == 20 and "sw_residuals" in r


def test_classify(capsys):
    code, out, _ = call(capsys, "classify", "--n", "7")
    r = json.loads(out)["result"]
    assert r["kind"] == "prime" and r["chen"]["branch"] == "qualified_semiprime"
    code, out, _ = call(capsys, "classify", "--n", "902", "--output-format", "csv")
    assert "kind,triple_product" in out


def test_condition31(capsys):
    code, out, _ = call(capsys, "condition31", "--u", "10", "--z", "1000", "--epsilon", "0.004",
                        "--k", "3")
    r = json.loads(out)["result"]
    assert code == EXIT_OK and r["excluded_primes"] == [2, 3, 5]
    assert r["holds"] == (r["product"] < r["bound"])


def test_resource_and_input_errors(capsys):
    assert call(capsys, "verify-lemma", "--x", "1e6", "--max-n", "1000")[0] == EXIT_RESOURCE
    assert call(capsys, "classify")[0] == EXIT_INVALID
    assert call(capsys, "decompose", "--x", "1e4", "--shards", "0")[0] == EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        run(["count", "--x", "abc"])
    assert exc.value.code == EXIT_INVALID


def test_output_file(tmp_path, capsys):
    target = tmp_path / "c.json"
    code, out, _ = call(capsys, "constants", "--output", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["report"] == "constants"


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "chenap", "classify", "--n", "35",
                        "--output-format", "text"], capture_output=True, text=True)
    assert p.returncode == 0 and "kind: semiprime" in p.stdout
