import csv
import io
import json

import pytest

from annulus.cli import main

RING8 = "###\n#.#\n###\n"
TWO_HOLES = "#####\n#.#.#\n#####\n"
LADDERISH = "####\n#..#\n####\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("ring8", RING8), ("bad", TWO_HOLES), ("ring10", LADDERISH), ("disk", "##\n##\n")]:
        f = tmp_path / f"{name}.txt"
        f.write_text(text)
        out[name] = str(f)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_load(files, capsys):
    code, out, _ = run(capsys, "load", files["ring8"], "--gluing")
    data = json.loads(out)
    assert code == 0
    assert data["squares"] == 8 and data["balanced"] and data["cut_length"] == 1
    assert sorted(data["component_curvature"]) == [-4, 4]
    assert "gluing" in data


def test_phi_ring8(files, capsys):
    code, out, _ = run(capsys, "phi", files["ring8"])
    assert code == 0
    assert json.loads(out)["phi"]["canonical"] == "p + 1"
    code, out, _ = run(capsys, "phi", files["ring8"], "--engine", "interp", "--cover", "2")
    assert code == 0 and json.loads(out)["cover"] == 2


def test_bad_topology_exit_code(files, capsys):
    code, _, err = run(capsys, "phi", files["bad"])
    assert code == 2 and "BadTopology" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "load", str(tmp_path / "nope.txt"))
    assert code == 2 and err.startswith("error")


def test_not_an_annulus(files, capsys):
    code, _, err = run(capsys, "phi", files["disk"])
    assert code == 2 and "not an annulus" in err


def test_verify_ring8(files, capsys):
    code, out, _ = run(capsys, "verify", files["ring8"], "--all")
    assert code == 0
    statuses = {v["name"]: v["status"] for v in json.loads(out)["verdicts"]}
    assert "fail" not in statuses.values()
    assert statuses["oracle"] == "pass"


def test_verify_only(files, capsys):
    code, out, _ = run(capsys, "verify", files["ring10"], "--only", "trace")
    assert code == 0
    assert [v["name"] for v in json.loads(out)["verdicts"]] == ["trace"]


def test_verify_unknown_check(files):
    with pytest.raises(SystemExit):
        main(["verify", files["ring8"], "--only", "bogus"])


def test_enumerate(files, capsys):
    code, out, _ = run(capsys, "enumerate", files["ring8"])
    data = json.loads(out)
    assert code == 0 and data["count"] == 2
    assert {abs(t["flux"]) for t in data["tilings"]} == {0, 1}
    code, out, _ = run(capsys, "enumerate", files["ring10"], "--limit", "1")
    assert json.loads(out)["count"] == 1


def test_enumerate_cap(files, capsys):
    code, _, err = run(capsys, "--cap", "4", "enumerate", files["ring8"])
    assert code == 2 and "--cap" in err


def test_transfer(files, capsys):
    code, out, _ = run(capsys, "transfer", files["ring8"])
    data = json.loads(out)
    assert code == 0 and len(data["blocks"]) == 2
    code, out, _ = run(capsys, "transfer", files["ring10"], "--q", "1/2")
    data = json.loads(out)
    assert all(b["q"] == "1/2" for b in data["blocks"].values())
    code, _, err = run(capsys, "transfer", files["ring8"], "--flux", "7")
    assert code == 2


def test_flips(files, capsys):
    code, out, _ = run(capsys, "flips", files["ring10"])
    data = json.loads(out)["flux_classes"]
    assert code == 0
    assert all(v["components"] == 1 for v in data.values())


def test_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "--json", "--out", str(tmp_path / "c"))
    rows = json.loads(out)
    assert code == 0 and len(rows) >= 20
    assert len(list((tmp_path / "c").glob("*.glu"))) == len(rows)


def test_bench(capsys, tmp_path):
    out_file = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--max", "2", "--engines", "det", "transfer", "--out", str(out_file))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_file.read_text())))
    assert rows and {r["engine"] for r in rows} == {"det", "transfer"}
    by_name = {}
    for r in rows:
        by_name.setdefault(r["name"], set()).add(r["terms"])
    assert all(len(v) == 1 for v in by_name.values())
