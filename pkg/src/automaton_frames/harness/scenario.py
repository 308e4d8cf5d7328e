"""Scenario files: JSON documents describing worlds, rules, bodies and expectations.

A scenario holds one or more *worlds*.  Each world is an independent
configuration (finite or spatially periodic); all worlds share the absolute
frame, so bodies from different worlds can be compared.  Body ids are unique
across the whole scenario.  A member reference ``"3@1"`` names copy 1 of body
3 in a periodic world.

Minimal single-world file::

    {
      "name": "pair",
      "colors": 1,
      "rules": {"1": "standard"},
      "topology": "periodic", "period": 2,
      "placements": [{"id": 0, "color": 1, "x": 0, "dir": 1},
                     {"id": 1, "color": 1, "x": 1, "dir": -1}],
      "bodies": {"A": [0, 1, "0@1"]},
      "horizon": 12
    }

Rules are ``"standard"`` (turn iff the opposite edge is occupied) or a list
of clauses, each a list of comparisons such as ``"q1 >= 1"``; a clause is a
conjunction and the rule fires when any clause holds.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..errors import RuleError, ScenarioError
from ..frames import FrameMap
from ..kinematics import DEFAULT_P_MAX
from ..lattice import Configuration, Part, TurnRule, as_part, standard_rule, threshold_rule

ABSOLUTE_NAME = "O"


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ScenarioError(f"expected a rational, got {value!r}", where)
    try:
        if isinstance(value, (int, str)):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise ScenarioError(f"expected an integer or 'p/q' string, got {value!r}", where)


def format_rational(q: Fraction | int, full: bool = True) -> str:
    """``p/q`` in lowest terms; ``full=False`` drops a ``/1`` denominator."""
    q = Fraction(q)
    if q.denominator == 1 and not full:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class WorldSpec:
    name: str
    period: int | None
    placements: tuple[tuple[int, int, int, int], ...]  # (id, color, x, dir)

    @property
    def topology(self) -> str:
        return "finite" if self.period is None else "periodic"


@dataclass(frozen=True)
class KinematicsExpectation:
    body: str
    frame: str
    v: Fraction | None = None
    w: Fraction | None = None
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None = None


@dataclass(frozen=True)
class Expectations:
    inertial: tuple[tuple[str, int, int], ...] = ()  # (body, period, displacement)
    kinematics: tuple[KinematicsExpectation, ...] = ()
    isomorphic: tuple[tuple[str, str], ...] = ()
    not_isomorphic: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Scenario:
    name: str
    colors: int
    rules: tuple[tuple[int, Any], ...]
    worlds: tuple[WorldSpec, ...]
    bodies: tuple[tuple[str, tuple[Part, ...]], ...]
    horizon: int
    p_max: int = DEFAULT_P_MAX
    expect: Expectations = field(default_factory=Expectations)

    def turn_rules(self) -> tuple[TurnRule, ...]:
        return tuple(_build_rule(c, spec) for c, spec in self.rules)

    def configuration(self, world: WorldSpec | str) -> Configuration:
        if isinstance(world, str):
            world = self.world(world)
        return Configuration.build(world.placements, self.turn_rules(), world.period, self.colors)

    def world(self, name: str) -> WorldSpec:
        for w in self.worlds:
            if w.name == name:
                return w
        raise KeyError(name)

    def body(self, name: str) -> tuple[Part, ...]:
        for n, members in self.bodies:
            if n == name:
                return members
        raise KeyError(f"no body named {name!r}")

    def world_of(self, name: str) -> WorldSpec:
        first = self.body(name)[0].body_id
        for w in self.worlds:
            if any(pl[0] == first for pl in w.placements):
                return w
        raise KeyError(name)

    def body_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.bodies)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "colors": self.colors,
            "rules": {str(c): _rule_to_json(spec) for c, spec in self.rules},
            "worlds": [
                {
                    "name": w.name,
                    "topology": w.topology,
                    **({"period": w.period} if w.period is not None else {}),
                    "placements": [
                        {"id": i, "color": c, "x": x, "dir": d} for i, c, x, d in w.placements
                    ],
                }
                for w in self.worlds
            ],
            "bodies": {n: [str(p) if p.copy else p.body_id for p in m] for n, m in self.bodies},
            "horizon": self.horizon,
            "p_max": self.p_max,
            "expect": _expect_to_json(self.expect),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _rule_to_json(spec: Any) -> Any:
    return spec if isinstance(spec, str) else [list(clause) for clause in spec]


def _expect_to_json(e: Expectations) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if e.inertial:
        out["inertial"] = {b: {"period": p, "displacement": d} for b, p, d in e.inertial}
    if e.kinematics:
        ks = []
        for k in e.kinematics:
            item: dict[str, Any] = {"body": k.body, "frame": k.frame}
            if k.v is not None:
                item["v"] = format_rational(k.v)
            if k.w is not None:
                item["w"] = format_rational(k.w)
            if k.matrix is not None:
                item["matrix"] = [[format_rational(a) for a in row] for row in k.matrix]
            ks.append(item)
        out["kinematics"] = ks
    if e.isomorphic:
        out["isomorphic"] = [list(p) for p in e.isomorphic]
    if e.not_isomorphic:
        out["not_isomorphic"] = [list(p) for p in e.not_isomorphic]
    return out


def _build_rule(color: int, spec: Any) -> TurnRule:
    if spec == "standard":
        return standard_rule(color)
    return threshold_rule(color, spec)


# -- parsing ---------------------------------------------------------------


def _int(value: Any, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"expected an integer, got {value!r}", where)
    if minimum is not None and value < minimum:
        raise ScenarioError(f"must be >= {minimum}, got {value}", where)
    return value


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise ScenarioError(f"expected a non-empty string, got {value!r}", where)
    return value


def _mapping(value: Any, where: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise ScenarioError(f"expected an object, got {type(value).__name__}", where)
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ScenarioError(f"expected a list, got {type(value).__name__}", where)
    return value


def _placement(raw: Any, where: str) -> tuple[int, int, int, int]:
    if isinstance(raw, Mapping):
        unknown = set(raw) - {"id", "color", "x", "dir"}
        if unknown:
            raise ScenarioError(f"unknown keys {sorted(unknown)}", where)
        missing = {"id", "x", "dir"} - set(raw)
        if missing:
            raise ScenarioError(f"missing keys {sorted(missing)}", where)
        vals = (raw["id"], raw.get("color", 1), raw["x"], raw["dir"])
    elif isinstance(raw, list) and len(raw) == 4:
        vals = tuple(raw)
    else:
        raise ScenarioError("expected {id, color, x, dir} or [id, color, x, dir]", where)
    names = ("id", "color", "x", "dir")
    bid, color, x, d = (_int(v, f"{where}.{n}") for v, n in zip(vals, names))
    if d not in (-1, 1):
        raise ScenarioError(f"must be -1 or +1, got {d}", f"{where}.dir")
    return bid, color, x, d


def _world(raw: Mapping, prefix: str, default_name: str) -> WorldSpec:
    name = _str(raw.get("name", default_name), f"{prefix}name")
    topology = raw.get("topology", "finite")
    if topology == "finite":
        if raw.get("period") is not None:
            raise ScenarioError("a finite world takes no period", f"{prefix}period")
        period = None
    elif topology == "periodic":
        if "period" not in raw:
            raise ScenarioError("a periodic world needs a period", f"{prefix}period")
        period = _int(raw["period"], f"{prefix}period", 1)
    else:
        raise ScenarioError(f"must be 'finite' or 'periodic', got {topology!r}", f"{prefix}topology")
    pls = _list(raw.get("placements", []), f"{prefix}placements")
    placements = tuple(_placement(p, f"{prefix}placements[{i}]") for i, p in enumerate(pls))
    return WorldSpec(name, period, placements)


def _rules(raw: Any, colors: int) -> tuple[tuple[int, Any], ...]:
    raw = _mapping(raw if raw is not None else {}, "rules")
    specs: dict[int, Any] = {}
    for key, spec in raw.items():
        where = f"rules.{key}"
        try:
            color = int(key)
        except ValueError:
            raise ScenarioError("rule keys are color numbers", where) from None
        if not 1 <= color <= colors:
            raise ScenarioError(f"color must be in 1..{colors}", where)
        if spec != "standard":
            clauses = _list(spec, where)
            spec = tuple(tuple(str(c) for c in _list(clause, f"{where}[{i}]"))
                         for i, clause in enumerate(clauses))
            if not spec:
                raise ScenarioError("a rule needs at least one clause", where)
            try:
                _build_rule(color, spec)
            except RuleError as exc:
                raise ScenarioError(str(exc), where) from None
        specs[color] = spec
    return tuple((c, specs.get(c, "standard")) for c in range(1, colors + 1))


def _pair(raw: Any, where: str) -> tuple[str, str]:
    if isinstance(raw, str):
        raw = raw.split(",")
    if not isinstance(raw, list) or len(raw) != 2:
        raise ScenarioError("expected a pair of body names", where)
    return (_str(raw[0].strip(), where), _str(raw[1].strip(), where))


def _matrix(raw: Any, where: str):
    rows = _list(raw, where)
    if len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
        raise ScenarioError("expected a 2x2 matrix", where)
    return tuple(tuple(parse_rational(a, f"{where}[{i}][{j}]") for j, a in enumerate(r))
                 for i, r in enumerate(rows))


def _expect(raw: Any) -> Expectations:
    raw = _mapping(raw if raw is not None else {}, "expect")
    unknown = set(raw) - {"inertial", "kinematics", "isomorphic", "not_isomorphic"}
    if unknown:
        raise ScenarioError(f"unknown keys {sorted(unknown)}", "expect")
    inertial = tuple(
        (_str(b, "expect.inertial"),
         _int(_mapping(v, f"expect.inertial.{b}").get("period"), f"expect.inertial.{b}.period", 1),
         _int(v.get("displacement"), f"expect.inertial.{b}.displacement"))
        for b, v in _mapping(raw.get("inertial", {}), "expect.inertial").items()
    )
    kin = []
    for i, item in enumerate(_list(raw.get("kinematics", []), "expect.kinematics")):
        where = f"expect.kinematics[{i}]"
        item = _mapping(item, where)
        kin.append(KinematicsExpectation(
            _str(item.get("body"), f"{where}.body"),
            _str(item.get("frame"), f"{where}.frame"),
            parse_rational(item["v"], f"{where}.v") if "v" in item else None,
            parse_rational(item["w"], f"{where}.w") if "w" in item else None,
            _matrix(item["matrix"], f"{where}.matrix") if "matrix" in item else None,
        ))
    iso = tuple(_pair(p, f"expect.isomorphic[{i}]")
                for i, p in enumerate(_list(raw.get("isomorphic", []), "expect.isomorphic")))
    non = tuple(_pair(p, f"expect.not_isomorphic[{i}]")
                for i, p in enumerate(_list(raw.get("not_isomorphic", []), "expect.not_isomorphic")))
    return Expectations(inertial, tuple(kin), iso, non)


def scenario_from_dict(raw: Any) -> Scenario:
    raw = _mapping(raw, "<root>")
    known = {"name", "colors", "rules", "worlds", "topology", "period", "placements",
             "bodies", "horizon", "p_max", "expect"}
    unknown = set(raw) - known
    if unknown:
        raise ScenarioError(f"unknown keys {sorted(unknown)}", "<root>")
    name = _str(raw.get("name", "scenario"), "name")
    colors = _int(raw.get("colors", 1), "colors", 1)
    rules = _rules(raw.get("rules"), colors)

    if "worlds" in raw:
        if any(k in raw for k in ("topology", "period", "placements")):
            raise ScenarioError("give either 'worlds' or top-level placements, not both", "worlds")
        worlds = []
        for i, w in enumerate(_list(raw["worlds"], "worlds")):
            w = _mapping(w, f"worlds[{i}]")
            unknown = set(w) - {"name", "topology", "period", "placements"}
            if unknown:
                raise ScenarioError(f"unknown keys {sorted(unknown)}", f"worlds[{i}]")
            worlds.append(_world(w, f"worlds[{i}].", f"world{i}"))
        worlds = tuple(worlds)
    else:
        worlds = (_world(raw, "", name),)
    if len({w.name for w in worlds}) != len(worlds):
        raise ScenarioError("world names must be unique", "worlds")

    owner: dict[int, WorldSpec] = {}
    for wi, w in enumerate(worlds):
        for pi, (bid, color, _, _) in enumerate(w.placements):
            where = f"worlds[{wi}].placements[{pi}]" if "worlds" in raw else f"placements[{pi}]"
            if bid in owner:
                raise ScenarioError(f"duplicate body id {bid}", f"{where}.id")
            if not 1 <= color <= colors:
                raise ScenarioError(f"color must be in 1..{colors}, got {color}", f"{where}.color")
            owner[bid] = w

    bodies = []
    for bname, refs in _mapping(raw.get("bodies", {}), "bodies").items():
        where = f"bodies.{bname}"
        if bname == ABSOLUTE_NAME:
            raise ScenarioError(f"{ABSOLUTE_NAME!r} is reserved for the absolute frame", where)
        refs = _list(refs, where)
        if not refs:
            raise ScenarioError("a body needs at least one member", where)
        parts = []
        for ref in refs:
            try:
                part = as_part(ref)
            except (TypeError, ValueError) as exc:
                raise ScenarioError(str(exc), where) from None
            if part.body_id not in owner:
                raise ScenarioError(f"member {ref!r} names no placed body", where)
            if part.copy and owner[part.body_id].period is None:
                raise ScenarioError(f"member {ref!r}: copies exist only in periodic worlds", where)
            parts.append(part)
        if len({owner[p.body_id].name for p in parts}) > 1:
            raise ScenarioError("members must all belong to one world", where)
        if len(set(parts)) != len(parts):
            raise ScenarioError("duplicate members", where)
        bodies.append((bname, tuple(sorted(parts))))

    names = {n for n, _ in bodies} | {ABSOLUTE_NAME}
    expect = _expect(raw.get("expect"))
    for kind, pairs in (("isomorphic", expect.isomorphic), ("not_isomorphic", expect.not_isomorphic)):
        for a, b in pairs:
            if a not in names or b not in names:
                raise ScenarioError(f"unknown body in pair ({a}, {b})", f"expect.{kind}")
    for b, _, _ in expect.inertial:
        if b not in names:
            raise ScenarioError(f"unknown body {b!r}", "expect.inertial")
    for k in expect.kinematics:
        if k.body not in names or k.frame not in names:
            raise ScenarioError(f"unknown body in ({k.body}, {k.frame})", "expect.kinematics")
        if k.matrix is not None:
            try:
                FrameMap(k.matrix[0][0], k.matrix[0][1], k.matrix[1][0], k.matrix[1][1])
            except ValueError as exc:
                raise ScenarioError(str(exc), "expect.kinematics") from None

    return Scenario(
        name=name,
        colors=colors,
        rules=rules,
        worlds=worlds,
        bodies=tuple(bodies),
        horizon=_int(raw.get("horizon", 12), "horizon", 0),
        p_max=_int(raw.get("p_max", DEFAULT_P_MAX), "p_max", 1),
        expect=expect,
    )


def loads(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return scenario_from_dict(raw)


def load_scenario(path: str | Path) -> Scenario:
    """Load a scenario file, or a bundled scenario by name (see ``BUNDLED``)."""
    from .bundled import BUNDLED

    if isinstance(path, str) and path in BUNDLED:
        return BUNDLED[path]()
    text = Path(path).read_text()
    return loads(text)
