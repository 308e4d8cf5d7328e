import json

from automaton_frames.harness.cli import main


def test_verify(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "examples", "--json", str(out)]) == 0
    assert "scenario examples: PASS" in capsys.readouterr().out
    assert json.loads(out.read_text())["status"] == "pass"


def test_frames(capsys):
    assert main(["frames", "examples", "--pair", "A2,A1"]) == 0
    out = capsys.readouterr().out
    assert "v = 1/3  w = 2/3" in out
    assert main(["frames", "examples", "--pair", "A1,O"]) == 0


def test_isocheck(capsys):
    assert main(["isocheck", "examples", "--pair", "A1,A2"]) == 0
    assert main(["isocheck", "examples", "--pair", "A1,A2p"]) == 1
    assert "no affine isomorphism" in capsys.readouterr().out


def test_observe(capsys):
    assert main(["observe", "example2", "--body", "A2", "--horizon", "3"]) == 0
    out = capsys.readouterr().out
    assert "tau_B" in out and "note:" in out


def test_simulate_and_diagram(tmp_path, capsys):
    csv_path = tmp_path / "t.csv"
    assert main(["simulate", "example1", "--horizon", "2", "--out", str(csv_path)]) == 0
    assert csv_path.read_text().splitlines()[1] == "0,0,1,0,+1,1,0,0"
    txt = tmp_path / "d.txt"
    assert main(["diagram", "free", "--format", "text", "--out", str(txt), "--window", "0:4"]) == 0
    assert ">" in txt.read_text()


def test_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": 1}')
    assert main(["verify", str(bad)]) == 2
    assert main(["frames", "free", "--pair", "B,O"]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
