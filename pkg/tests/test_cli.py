import json

import pytest

from covgen.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "--d", "8", "--max-degree", "3")
    assert code == 0
    lines = [ln.split() for ln in out.splitlines()[2:]]
    assert lines == [["1", "1", "0", "0", "1"], ["2", "5", "1", "0", "4"],
                     ["3", "13", "5", "0", "8"]]


def test_dims_json_small_d(capsys):
    code, out, _ = run(capsys, "dims", "--d", "1", "--max-degree", "2", "--json")
    assert code == 0
    assert [r["delta"] for r in json.loads(out)] == [1, 0]
    code, out, _ = run(capsys, "dims", "--d", "8", "--max-degree", "1", "--json")
    assert json.loads(out) == [{"i": 1, "dim_C": 1, "sigma": 0, "dim_S": 0, "delta": 1}]


def test_run_degree_two(capsys, tmp_path):
    ck = tmp_path / "r.json"
    code, out, err = run(capsys, "run", "--d", "8", "--max-degree", "2", "--mode", "paper",
                         "--out", str(ck))
    assert code == 0
    for name, order in (("dv1", 12), ("dv2", 8), ("dv3", 4), ("dv4", 0)):
        assert any(ln.split()[:4] == [name, "degree", "2", "order"] and
                   ln.split()[4] == str(order) for ln in out.splitlines())
    assert "elapsed" in err and "elapsed" not in out
    data = json.loads(ck.read_text())
    assert data["schema"] == "covgen/1"


def test_run_d2(capsys):
    code, out, _ = run(capsys, "run", "--d", "2", "--max-degree", "2", "--json")
    assert code == 0
    assert len(json.loads(out)["generators"]) == 2


def test_stdout_deterministic(capsys):
    a = run(capsys, "run", "--d", "8", "--max-degree", "4", "--json")[1]
    b = run(capsys, "run", "--d", "8", "--max-degree", "4", "--json", "--threads", "2")[1]
    assert a == b


def test_resume(capsys, tmp_path):
    ck = tmp_path / "c.json"
    assert run(capsys, "run", "--d", "8", "--max-degree", "3", "--out", str(ck))[0] == 0
    _, resumed, _ = run(capsys, "run", "--d", "8", "--max-degree", "5", "--resume", str(ck),
                        "--json")
    _, direct, _ = run(capsys, "run", "--d", "8", "--max-degree", "5", "--json")
    assert resumed == direct
    code, _, err = run(capsys, "run", "--d", "7", "--max-degree", "5", "--resume", str(ck))
    assert code == 2 and "d=8" in err


def test_verify_completeness_small(capsys):
    code, out, _ = run(capsys, "run", "--d", "4", "--max-degree", "6", "--verify-completeness")
    assert code == 0
    assert "completeness check: delta_7=0, delta_8=0 (ok)" in out


def test_corrupt_checkpoint_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "nope"}')
    code, _, err = run(capsys, "run", "--d", "8", "--max-degree", "3", "--resume", str(bad))
    assert code == 4 and "schema" in err


def test_transvect(capsys):
    code, out, _ = run(capsys, "transvect", "t", "t", "2")
    assert code == 0 and "Z-form: z2" in out
    code, out, _ = run(capsys, "transvect", "t", "t", "4", "--d", "8")
    assert "Z-form: (3*z2^2 + z4)/t^2" in out
    code, out, _ = run(capsys, "transvect", "t", "t", "3")
    assert code == 0 and "identically zero" in out
    code, out, _ = run(capsys, "transvect", "t", "dv1", "1", "--json")
    data = json.loads(out)
    assert (data["degree"], data["order"]) == (3, 18)


def test_transvect_errors(capsys):
    code, _, err = run(capsys, "transvect", "t", "t", "9")
    assert code == 2
    code, _, err = run(capsys, "transvect", "t", "nosuch", "1", "--d", "3")
    assert code == 2 and "unknown generator" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dims", "--d", "0", "--max-degree", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["run", "--d", "8"])
    code, _, err = run(capsys, "errata", "--d", "7", "--max-degree", "2")
    assert code == 2


def test_errata_cli(capsys):
    code, out, _ = run(capsys, "errata", "--max-degree", "5", "--json")
    assert code == 0
    entries = {e["location"]: e for e in json.loads(out)}
    assert entries["operator D, image of t"]["status"] == "mismatch"
    assert entries["degree 5: delta"]["status"] == "match"
    assert entries["degree 9: delta"]["status"] == "not-computed"
