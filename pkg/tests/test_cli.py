import json

import pytest

from rumple import core
from rumple.cli import main
from tests.conftest import X41_ROWS, X42_ROWS


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, X in (("x41", core.magma(X41_ROWS)), ("x42", core.magma(X42_ROWS)),
                    ("z3", core.cyclic_group(3))):
        p = tmp_path / f"{name}.mag"
        p.write_text(core.dumps_mag(X))
        paths[name] = str(p)
    bad = tmp_path / "bad.mag"
    bad.write_text("magma 3\n0 1 2\n")
    paths["bad"] = str(bad)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify(files, capsys):
    code, out = run(capsys, "verify", files["x41"], "--json")
    rep = json.loads(out)
    P = rep["predicates"]
    assert code == 0
    assert P["rumple"] and P["latin"] and P["both_sided"] and P["affine"]
    assert rep["groups"]["dis"]["order"] == 4
    code, out = run(capsys, "verify", files["z3"])
    assert code == 1 and "rumple: false" in out
    assert main(["verify", files["bad"]]) == 2
    assert main(["verify", str(files["dir"] / "missing.mag")]) == 2


def test_enumerate(capsys, tmp_path):
    code, out = run(capsys, "enumerate", "--order", "4", "--count-only")
    assert code == 0 and out.strip() == "23"
    code, out = run(capsys, "enumerate", "--order", "4", "--count-only", "--json")
    assert json.loads(out) == {"order": 4, "latin": False, "count": 23}
    dest = tmp_path / "four.jsonl"
    assert main(["enumerate", "--order", "4", "--latin", "--out", str(dest)]) == 0
    recs = [json.loads(l) for l in dest.read_text().splitlines()]
    assert len(recs) == 2 and all(r["latin"] and r["affine"] for r in recs)
    assert main(["enumerate"]) == 2
    assert main(["enumerate", "--order", "9"]) == 1


def test_affine_commands(files, capsys, tmp_path):
    code, out = run(capsys, "affine", "enumerate", "--group", "3,3,3", "--count-only")
    assert code == 0 and out.strip() == "6"
    code, out = run(capsys, "affine", "enumerate", "--group", "2,2")
    data = [json.loads(l) for l in out.splitlines()]
    assert len(data) == 2
    for i, d in enumerate(data):
        (tmp_path / f"d{i}.json").write_text(json.dumps(d))
    assert main(["affine", "check", str(tmp_path / "d0.json")]) == 0
    assert main(["affine", "isomorphic", str(tmp_path / "d0.json"), str(tmp_path / "d0.json")]) == 0
    assert main(["affine", "isomorphic", str(tmp_path / "d0.json"), str(tmp_path / "d1.json")]) == 1
    singular = tmp_path / "s.json"
    singular.write_text(json.dumps({"factors": [2, 2], "phi": [[1, 1], [1, 1]],
                                    "psi": [[1, 0], [0, 1]], "c": [1, 0]}))
    assert main(["affine", "check", str(singular)]) == 1
    assert main(["affine", "enumerate"]) == 2


def test_affinize(files, capsys):
    code, out = run(capsys, "affinize", files["x42"])
    assert code == 0 and json.loads(out)["factors"]
    code, _ = run(capsys, "affinize", files["z3"])
    assert code == 1


def test_dual_round_trip(files, capsys, tmp_path):
    dest = tmp_path / "dual.mag"
    assert main(["dual", files["x42"], "--out", str(dest)]) == 0
    D = core.loads_mag(dest.read_text())
    assert core.find_isomorphism(D, core.magma(X42_ROWS)) is not None
    assert main(["verify", str(dest)]) == 0
    assert main(["dual", files["z3"]]) == 1


def test_opposite_and_isotope(files, capsys):
    code, out = run(capsys, "opposite", files["x41"], "--json")
    assert code == 0 and core.magma(json.loads(out)["table"]) == core.opposite(core.magma(X41_ROWS))
    code, out = run(capsys, "isotope", files["x41"], "--e", "0", "--f", "0")
    L = core.loads_mag(out)
    assert all(L(x, x) == 0 for x in range(4))
    assert main(["isotope", files["x41"], "--e", "7"]) == 2


def test_yb(files, capsys, tmp_path):
    sol = tmp_path / "s.json"
    assert main(["yb", "from", files["x41"], "--out", str(sol)]) == 0
    code, out = run(capsys, "yb", "check", str(sol))
    assert code == 0 and "yang_baxter: true" in out
    code, out = run(capsys, "yb", "to", str(sol))
    assert core.loads_mag(out) == core.magma(X41_ROWS)
    broken = tmp_path / "b.json"
    broken.write_text(json.dumps({"n": 2, "r1": [[0, 0], [0, 0]], "r2": [[0, 0], [0, 0]]}))
    assert main(["yb", "check", str(broken)]) == 1
    assert main(["yb", "to", str(broken)]) == 2
    (tmp_path / "junk.json").write_text("{")
    assert main(["yb", "check", str(tmp_path / "junk.json")]) == 2


def test_extend(files, capsys):
    code, out = run(capsys, "extend", "klein", files["x41"])
    X = core.loads_mag(out)
    assert code == 0 and X.order == 16 and core.is_latin_rumple(X)
    code, out = run(capsys, "extend", "klein", files["x41"], "--json")
    assert set(json.loads(out)) == {"factors", "phi", "psi", "base", "theta"}
    assert main(["extend", "klein", files["z3"]]) == 1
    code, out = run(capsys, "extend", "solve", "--group", "2,2", "--base", files["x41"],
                    "--phi", "0,1,1,0", "--psi", "1,0,1,1")
    assert code == 0 and json.loads(out)["dimension"] >= 2
    assert main(["extend", "solve", "--group", "2,2", "--base", files["x41"],
                 "--phi", "0,1,1", "--psi", "1,0,1,1"]) == 2
    code, out = run(capsys, "extend", "search-witness", "--group", "2,2", "--base", files["x41"],
                    "--phi", "0,1,1,0", "--psi", "1,0,1,1", "--limit", "4")
    assert json.loads(out)["scanned"] <= 4


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["enumerate", "--order", "3", "--workers", "0"]) == 2


def test_written_mag_reparses(files, tmp_path):
    dest = tmp_path / "o.mag"
    main(["opposite", files["x42"], "--out", str(dest)])
    assert core.loads_mag(dest.read_text()) == core.opposite(core.magma(X42_ROWS))
