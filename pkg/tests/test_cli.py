import json

from gcjohnson import __version__
from gcjohnson.cache import Cache, cache_key
from gcjohnson.cli import main
from gcjohnson.partitions import MultiplicityVector
from gcjohnson.tables import COKERNEL, table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coker_bracket_format(capsys, tmp_path):
    code, out, _ = run(capsys, "coker", "--weight", "3", "--format", "paper", "--cache-dir", str(tmp_path))
    assert code == 0 and out == "[3]\n"
    code, out, _ = run(capsys, "coker", "--weight", "7", "--format", "paper", "--cache-dir", str(tmp_path))
    assert code == 0 and MultiplicityVector.parse(out) == table(COKERNEL[7])


def test_basis_examples(capsys):
    code, out, _ = run(capsys, "basis", "--family", "plain", "--g", "2", "--weight", "1", "--loops", "=0")
    assert code == 0 and out.strip() == "W=1 l=0 k=0: 4"
    code, out, _ = run(capsys, "basis", "--family", "hairy", "--hairs", "3", "--loops", "=1", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "W,l,k,dim" and lines[1].startswith("3,1,1,") and int(lines[1].split(",")[-1]) > 0
    code, out, _ = run(capsys, "basis", "--family", "plain", "--g", "1", "--weight", "0", "--loops", "=3")
    assert code == 0 and out.strip() == ""


def test_json_provenance(capsys, tmp_path):
    code, out, _ = run(capsys, "cohomology", "--stable", "--weight", "4", "--loops", "=2", "--format", "json",
                       "--cache-dir", str(tmp_path))
    doc = json.loads(out)
    assert code == 0 and doc["version"] == __version__
    assert doc["job"]["command"] == "cohomology" and doc["cache_keys"]
    mv = MultiplicityVector.from_json([r for r in doc["rows"] if r["k"] == 2])
    assert mv == table("[1^2] + [0]")


def test_output_independent_of_cache_and_threads(capsys, tmp_path):
    args = ["coker", "--weight", "4..5", "--method", "both", "--format", "json"]
    outs = []
    for extra in ([], ["--cache-dir", str(tmp_path)], ["--cache-dir", str(tmp_path)],
                  ["--cache-dir", str(tmp_path / "b"), "--threads", "2"]):
        code, out, _ = run(capsys, *(args + extra))
        assert code == 0
        outs.append(out)
    assert len(set(outs)) == 1


def test_exit_codes(capsys):
    assert run(capsys, "coker", "--weight", "1")[0] == 2
    assert run(capsys, "cohomology", "--weight", "3")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    code, _, err = run(capsys, "coker", "--weight", "12")
    assert code == 3 and "--allow-long" in err
    assert run(capsys, "t", "--weight", "4", "--variant", "closed")[0] == 2


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--max-weight", "4")
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.strip().splitlines())


def test_other_commands(capsys):
    code, out, _ = run(capsys, "branch", "--partition", "1^2")
    assert code == 0 and MultiplicityVector.parse(out) == table("[1^2] + [0]")
    code, out, _ = run(capsys, "t", "--weight", "2")
    assert MultiplicityVector.parse(out) == table("[2^2] + [1^2] + [0]")
    # H^1 of the one-loop three-hair complex is [3], so chi_{1,[1^3]} = -1
    code, out, _ = run(capsys, "chi", "--h", "1", "--n", "3", "--format", "json")
    rows = {tuple(r["partition"]): r["mult"] for r in json.loads(out)["rows"]}
    assert code == 0 and rows == {(3,): 0, (2, 1): 0, (1, 1, 1): -1}
    code, out, _ = run(capsys, "es", "--g", "3", "--weight", "3", "--max-loop", "1")
    assert code == 0 and out.splitlines() == ["W=3 l=0 k=0: 336", "W=3 l=1 k=0: 280"]
    code, out, _ = run(capsys, "cohomology", "--family", "hairy", "--hairs", "3", "--loops", "=1")
    assert code == 0 and "H^1" in out


def test_cache_roundtrip_and_corruption(tmp_path):
    c = Cache(tmp_path)
    calls = []
    f = lambda: calls.append(1) or {"x": [1, 2]}
    assert c.fetch("k", {"a": 1}, f) == {"x": [1, 2]}
    assert c.fetch("k", {"a": 1}, f) == {"x": [1, 2]}
    assert len(calls) == 1 and c.hits == 1
    key = cache_key("k", {"a": 1})
    assert c.keys_used == [key]
    p = c.path(key)
    doc = json.loads(p.read_text())
    doc["body"] = {"x": [9]}
    p.write_text(json.dumps(doc))
    c2 = Cache(tmp_path)
    assert c2.fetch("k", {"a": 1}, f) == {"x": [1, 2]}
    assert c2.corrupt == 1 and len(calls) == 2
    assert cache_key("k", {"a": 1}) != cache_key("k", {"a": 2})


def test_cache_env(monkeypatch, tmp_path):
    monkeypatch.setenv("GC_CACHE_DIR", str(tmp_path))
    assert Cache().root == tmp_path
    monkeypatch.delenv("GC_CACHE_DIR")
    assert not Cache().enabled
