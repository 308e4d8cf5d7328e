import json

import pytest

from automaton_frames.errors import ScenarioError
from automaton_frames.harness.bundled import BUNDLED
from automaton_frames.harness.scenario import (
    format_rational, load_scenario, loads, parse_rational, scenario_from_dict,
)
from automaton_frames.lattice import Part


def base(**over):
    raw = {
        "name": "pair", "colors": 1, "rules": {"1": "standard"},
        "topology": "periodic", "period": 2,
        "placements": [{"id": 0, "color": 1, "x": 0, "dir": 1},
                       {"id": 1, "color": 1, "x": 1, "dir": -1}],
        "bodies": {"A": [0, 1, "0@1"]}, "horizon": 12,
    }
    raw.update(over)
    return raw


def test_rationals():
    assert format_rational(parse_rational("-3/6", "x")) == "-1/2"
    assert format_rational(4, full=False) == "4"
    with pytest.raises(ScenarioError):
        parse_rational(True, "x")
    with pytest.raises(ScenarioError):
        parse_rational("1/0", "x")


def test_minimal():
    s = scenario_from_dict(base())
    assert s.body("A") == (Part(0, 0), Part(0, 1), Part(1, 0))
    assert s.world_of("A").topology == "periodic"
    assert s.configuration(s.worlds[0]).period == 2


@pytest.mark.parametrize("name", sorted(BUNDLED))
def test_bundled_round_trip(name):
    s = load_scenario(name)
    again = loads(s.dumps())
    assert again == s


def test_examples_contents():
    s = load_scenario("examples")
    assert [w.name for w in s.worlds] == ["example1", "example2", "example2-pitch8"]
    assert s.body_names() == ("A1", "A1c", "A2", "A2c", "A2p")


def test_file_round_trip(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(base()))
    assert load_scenario(path) == scenario_from_dict(base())


@pytest.mark.parametrize("over,field", [
    ({"placements": [{"id": 0, "color": 1, "x": 0, "dir": 2}]}, "placements[0].dir"),
    ({"placements": [{"id": 0, "x": 0}]}, "placements[0]"),
    ({"bodies": {"A": [7]}}, "bodies.A"),
    ({"bodies": {"O": [0]}}, "bodies.O"),
    ({"rules": {"1": [["p1 >= 1"]]}}, "rules.1"),
    ({"topology": "torus"}, "topology"),
    ({"colour": 2}, ""),
])
def test_validation_names_field(over, field):
    with pytest.raises(ScenarioError) as info:
        scenario_from_dict(base(**over))
    assert field in str(info.value)


def test_copy_in_finite_world():
    raw = base(topology="finite", bodies={"A": ["0@1"]})
    raw.pop("period")
    with pytest.raises(ScenarioError, match="bodies.A"):
        scenario_from_dict(raw)


def test_ids_unique_across_worlds():
    world = {"topology": "finite", "placements": [[0, 1, 0, 1]]}
    raw = {"name": "w", "colors": 1, "worlds": [dict(world, name="a"), dict(world, name="b")],
           "bodies": {}}
    with pytest.raises(ScenarioError, match="0"):
        scenario_from_dict(raw)


def test_json_syntax_error_has_position():
    with pytest.raises(ScenarioError) as info:
        loads('{"name": "x",\n  "colors": }')
    assert info.value.line == 2
    assert "line 2" in str(info.value)


def test_threshold_rule_round_trip():
    s = scenario_from_dict(base(rules={"1": [["q1 >= 1"]]}))
    assert loads(s.dumps()) == s
