import csv
from collections import defaultdict

from automaton_frames.harness.emit import (
    CSV_COLUMNS, default_window, emit_diagram, emit_trace_csv, render_svg, render_text,
)
from automaton_frames.kinematics import simulate
from automaton_frames.lattice import Configuration

from helpers import EXAMPLE1, EXAMPLE2, lone


def read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_csv_example1(tmp_path):
    rows = read(emit_trace_csv(simulate(EXAMPLE1, 2), tmp_path / "t.csv"))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1] == ["0", "0", "1", "0", "+1", "1", "0", "0"]
    assert rows[2] == ["0", "1", "1", "1", "-1", "1", "0", "0"]
    assert rows[-1][:1] == ["2"]
    assert len(rows) == 1 + 3 * 2


def test_csv_empty_world(tmp_path):
    rows = read(emit_trace_csv(simulate(Configuration.build([], colors=1), 3), tmp_path / "e.csv"))
    assert rows == [list(CSV_COLUMNS)]


def test_csv_reparsed_budget(tmp_path):
    rows = read(emit_trace_csv(simulate(EXAMPLE2, 9), tmp_path / "b.csv"))[1:]
    by_id = defaultdict(list)
    for r in rows:
        by_id[r[1]].append(r)
    for series in by_id.values():
        for a, b in zip(series, series[1:]):
            turned = int(a[5])
            assert turned + abs(int(b[3]) - int(a[3])) == 1
            assert int(a[6]) + int(a[7]) == int(a[0])


def test_text_diagram():
    text = render_text(simulate(lone(), 2), (0, 3))
    lines = text.splitlines()
    assert lines[0] == "2 |..>.|"
    assert lines[2] == "0 |>...|"


def test_text_periodic_default_window():
    tr = simulate(EXAMPLE1, 1)
    assert default_window(tr) == (0, 5)
    assert render_text(tr).splitlines()[-2] == "0 |><><><|"


def test_svg(tmp_path):
    tr = simulate(EXAMPLE2, 6)
    svg = render_svg([("ex2", tr)])
    assert svg.startswith("<?xml")
    assert svg.count("<polyline") >= 3
    assert "clipPath" in svg
    path = emit_diagram(tr, tmp_path / "d.svg")
    assert path.read_text().endswith("</svg>\n")


def test_single_event_is_a_dot():
    assert "<circle" in render_svg([("", simulate(lone(), 0))])
