"""Built-in scenarios reproducing the two worked examples.

Example 1: body ``n`` sits on ``n^+1`` for even ``n`` and on ``n^-1`` for
odd ``n``.  Example 2: body ``n`` sits at ``4*floor(n/3) + (n mod 3)``,
pointing left iff ``n = 1 (mod 3)``.  Both fill the whole line and are
stored as one spatial period.
"""

from __future__ import annotations

from .scenario import Scenario, scenario_from_dict


def example1_placements(first_id: int = 0) -> list[dict]:
    return [{"id": first_id + n, "color": 1, "x": n, "dir": 1 if n % 2 == 0 else -1}
            for n in range(2)]


def example2_placements(first_id: int = 0, pitch: int = 4) -> list[dict]:
    """One period of Example 2; ``pitch`` is the distance between successive triples."""
    return [{"id": first_id + n, "color": 1, "x": pitch * (n // 3) + n % 3,
             "dir": -1 if n % 3 == 1 else 1}
            for n in range(3)]


def example1() -> Scenario:
    return scenario_from_dict({
        "name": "example1",
        "colors": 1,
        "rules": {"1": "standard"},
        "topology": "periodic",
        "period": 2,
        "placements": example1_placements(),
        "bodies": {"A1": [0, 1, "0@1"]},
        "horizon": 12,
        "expect": {"inertial": {"A1": {"period": 2, "displacement": 0}}},
    })


def example2() -> Scenario:
    return scenario_from_dict({
        "name": "example2",
        "colors": 1,
        "rules": {"1": "standard"},
        "topology": "periodic",
        "period": 4,
        "placements": example2_placements(),
        "bodies": {"A2": [0, 1, 2]},
        "horizon": 12,
        "expect": {"inertial": {"A2": {"period": 3, "displacement": 1}}},
    })


def examples() -> Scenario:
    """Both examples side by side, plus co-moving copies and a pitch-doubled variant.

    ``A1c`` and ``A2c`` are translated copies of ``A1`` and ``A2`` in the same
    world; ``A2p`` is Example 2 with the distance between triples doubled
    (4 -> 8), which moves differently and is not isomorphic to ``A1``.
    """
    return scenario_from_dict({
        "name": "examples",
        "colors": 1,
        "rules": {"1": "standard"},
        "worlds": [
            {"name": "example1", "topology": "periodic", "period": 2,
             "placements": example1_placements(0)},
            {"name": "example2", "topology": "periodic", "period": 4,
             "placements": example2_placements(10)},
            {"name": "example2-pitch8", "topology": "periodic", "period": 8,
             "placements": example2_placements(20, pitch=8)},
        ],
        "bodies": {
            "A1": [0, 1, "0@1"],
            "A1c": ["0@2", "1@2", "0@3"],
            "A2": [10, 11, 12],
            "A2c": ["10@1", "11@1", "12@1"],
            "A2p": [20, 21, 22],
        },
        "horizon": 24,
        "expect": {
            "inertial": {
                "A1": {"period": 2, "displacement": 0},
                "A2": {"period": 3, "displacement": 1},
            },
            "kinematics": [
                {"body": "A2", "frame": "A1", "v": "1/3", "w": "2/3",
                 "matrix": [["3/2", "1/2"], ["1/2", "3/2"]]},
                {"body": "A1", "frame": "A2", "v": "-1/3", "w": "4/3",
                 "matrix": [["3/4", "-1/4"], ["-1/4", "3/4"]]},
            ],
            "isomorphic": [["A1", "A2"]],
            "not_isomorphic": [["A1", "A2p"]],
        },
    })


def free() -> Scenario:
    """A single body on ``0^+`` streaming freely."""
    return scenario_from_dict({
        "name": "free",
        "colors": 1,
        "rules": {"1": "standard"},
        "topology": "finite",
        "placements": [{"id": 0, "color": 1, "x": 0, "dir": 1}],
        "bodies": {"B": [0]},
        "horizon": 8,
        "expect": {"inertial": {"B": {"period": 1, "displacement": 1}}},
    })


BUNDLED = {
    "example1": example1,
    "example2": example2,
    "examples": examples,
    "free": free,
}
