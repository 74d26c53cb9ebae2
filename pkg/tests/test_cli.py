import json

import pytest

from removahedra import cli, formats, typecone


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_typecone_report(capsys):
    code, out, _ = run(capsys, "typecone", "--decoration", "oxuo")
    assert code == 0
    data = json.loads(out)
    assert (data["outputs"]["rho"], data["outputs"]["chi"], data["outputs"]["phi"]) == (7, 6, 4)
    assert data["outputs"]["facets"] == ["{1, 234}", "{12, 4}", "{123, 124}", "{124, 34}"]
    assert "runtime_s" in data["meta"]


def test_typecone_oracle_flag(capsys):
    code, out, _ = run(capsys, "typecone", "--decoration", "oodo", "--oracle")
    assert code == 0 and json.loads(out)["outputs"]["oracle_agrees"]


def test_verify_removahedral(capsys):
    code, out, _ = run(capsys, "verify", "removahedral", "--n", "4")
    assert code == 0
    summary = json.loads(out)["outputs"]["suites"][0]["summary"]
    assert summary["removahedral"] == 16
    assert summary["removahedral_decorations"] == sorted("o" + a + b + "o" for a in "odux" for b in "odux")


def test_polytope_both(capsys):
    code, out, _ = run(capsys, "polytope", "--decoration", "ddd", "--form", "both")
    data = json.loads(out)
    assert code == 0 and data["outputs"]["agreement"] and data["outputs"]["vertex_count"] == 5


def test_polytope_off(capsys, tmp_path):
    path = tmp_path / "asso.off"
    code, out, _ = run(capsys, "polytope", "--decoration", "ddd", "--format", "off", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text(encoding="utf-8").splitlines()[1].startswith("5 1")


def test_counts_csv(capsys):
    code, out, _ = run(capsys, "typecone", "--n", "4", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(formats.COUNTS_HEADER) and len(lines) == 257


@pytest.mark.parametrize("argv", [
    ["typecone", "--decoration", "oqo"],
    ["verify", "removahedral", "--n", "5"],
    ["typecone", "--decoration", "oxuo", "--format", "off"],
    ["permutree"],
    ["frobnicate"],
    ["congruence", "--decoration", "oxuo", "--n", "3"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_congruence_from_file(capsys, tmp_path):
    path = tmp_path / "ideal.json"
    code, out, _ = run(capsys, "congruence", "--decoration", "dddd")
    ideal = json.loads(out)["outputs"]["ideal"]
    path.write_text(json.dumps(ideal), encoding="utf-8")
    code, out, _ = run(capsys, "congruence", "--ideal", str(path))
    data = json.loads(out)
    assert code == 0 and data["outputs"]["classes"] == 14 and data["outputs"]["decoration"] == "oddo"


def test_non_permutree_congruence(capsys, tmp_path):
    from removahedra import shards

    ideal = shards.remove_shards(4, [shards.Shard(1, 4, frozenset({2}))])
    path = tmp_path / "ideal.json"
    path.write_text(formats.dumps(ideal), encoding="utf-8")
    code, out, _ = run(capsys, "congruence", "--ideal", str(path))
    data = json.loads(out)["outputs"]
    assert code == 0 and not data["permutree"]
    assert data["non_permutree_generator"] == {"i": 1, "j": 4, "s": [2]}


def test_shards_and_permutree(capsys):
    code, out, _ = run(capsys, "shards", "--n", "4")
    data = json.loads(out)["outputs"]
    assert code == 0 and data["count"] == 11 and data["upper_ideals"] == 60
    code, out, _ = run(capsys, "permutree", "--decoration", "ddd")
    data = json.loads(out)["outputs"]
    assert code == 0 and data["count"] == 5 and data["is_lattice"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(typecone, "phi", lambda d: -1)
    code, out, _ = run(capsys, "verify", "counts", "--n", "3")
    data = json.loads(out)
    assert code == 1 and not data["ok"] and data["witnesses"]


def test_verify_deterministic(capsys):
    reports = []
    for _ in range(2):
        code, out, _ = run(capsys, "verify", "kinematic", "--n", "4", "--seed", "7")
        assert code == 0
        reports.append(formats.dumps(json.loads(out), strip_meta=True))
    assert reports[0] == reports[1]


def test_jobs_do_not_change_report(capsys):
    outs = []
    for jobs in ("1", "2"):
        code, out, _ = run(capsys, "verify", "rays", "--n", "4", "--jobs", jobs)
        assert code == 0
        outs.append(formats.dumps(json.loads(out), strip_meta=True))
    assert outs[0] == outs[1]
