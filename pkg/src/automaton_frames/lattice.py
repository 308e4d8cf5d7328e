"""The directed-edge lattice, elementary bodies and the synchronous update.

Edges ``x^i`` carry an integer coordinate and a direction in {-1, +1}.  An
elementary body on ``x^i`` reads the per-color counts on its own edge (``p``)
and on the opposite edge ``(x+i)^-i`` (``q``) and either turns (``x^-i``) or
moves straight on (``(x+i)^i``).

Configurations are immutable.  A spatially periodic configuration stores one
period of placements; copy ``m`` of body ``j`` sits ``m * period`` to the
right of the stored representative.
"""

from __future__ import annotations

import operator
import re
from collections import Counter
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Union

from .errors import RuleError, UnknownBodyError


@dataclass(frozen=True, order=True)
class Edge:
    x: int
    dir: int

    def __post_init__(self):
        if self.dir not in (-1, 1):
            raise ValueError(f"edge direction must be -1 or +1, got {self.dir!r}")

    def opposite(self) -> Edge:
        return Edge(self.x + self.dir, -self.dir)

    def contrary(self) -> Edge:
        return Edge(self.x, -self.dir)

    def shifted(self, k: int) -> Edge:
        return Edge(self.x + k, self.dir)

    def __str__(self) -> str:
        return f"{self.x}{'+' if self.dir > 0 else '-'}"


class Part(NamedTuple):
    """Reference to an elementary body: a stored id plus a periodic copy index."""

    body_id: int
    copy: int = 0

    def __str__(self) -> str:
        return str(self.body_id) if self.copy == 0 else f"{self.body_id}@{self.copy}"


PartLike = Union[Part, int, str, Sequence[int]]

_PART_RE = re.compile(r"^\s*(-?\d+)\s*(?:@\s*(-?\d+))?\s*$")


def as_part(ref: PartLike) -> Part:
    """Normalise ``3``, ``"3@1"``, ``(3, 1)`` or a ``Part`` to a ``Part``."""
    if isinstance(ref, Part):
        return ref
    if isinstance(ref, bool):
        raise TypeError(f"not a body reference: {ref!r}")
    if isinstance(ref, int):
        return Part(ref, 0)
    if isinstance(ref, str):
        m = _PART_RE.match(ref)
        if not m:
            raise ValueError(f"malformed body reference {ref!r} (expected 'id' or 'id@copy')")
        return Part(int(m.group(1)), int(m.group(2) or 0))
    body_id, copy = ref
    return Part(int(body_id), int(copy))


def as_members(refs: Iterable[PartLike]) -> tuple[Part, ...]:
    """Sorted, de-duplicated tuple of parts."""
    return tuple(sorted({as_part(r) for r in refs}))


@dataclass(frozen=True)
class NeighborhoodState:
    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise ValueError("p and q must have one entry per color")
        if any(c < 0 for c in self.p + self.q):
            raise ValueError("neighborhood counts must be non-negative")

    @property
    def colors(self) -> int:
        return len(self.p)

    def as_symbol(self) -> tuple[int, ...]:
        """The flat input symbol ``(p_1..p_r, q_1..q_r)``."""
        return self.p + self.q


Predicate = Callable[[NeighborhoodState], bool]


@dataclass(frozen=True)
class TurnRule:
    """Turn decision for one color.

    The predicate is masked: whatever it returns, a body whose opposite edge
    is empty never turns.  ``spec`` holds the serialisable form (``"standard"``
    or a clause list) when the rule came from a scenario file.
    """

    color: int
    predicate: Predicate = field(compare=False)
    spec: object = None

    def turns(self, state: NeighborhoodState) -> bool:
        if not any(state.q):
            return False
        return bool(self.predicate(state))


def standard_rule(color: int = 1) -> TurnRule:
    """Turn iff the opposite edge holds at least one body of any color."""
    return TurnRule(color, lambda ns: sum(ns.q) >= 1, "standard")


_OPS = {
    ">=": operator.ge, "<=": operator.le, "==": operator.eq,
    "!=": operator.ne, ">": operator.gt, "<": operator.lt,
}
_CMP_RE = re.compile(r"^\s*([pq])(\d*)\s*(>=|<=|==|!=|>|<)\s*(\d+)\s*$")


@dataclass(frozen=True)
class Comparison:
    """``p3 >= 1`` style test; ``color`` None means the sum over colors."""

    side: str
    color: int | None
    op: str
    value: int

    @classmethod
    def parse(cls, text: str) -> Comparison:
        m = _CMP_RE.match(text)
        if not m:
            raise RuleError(f"malformed comparison {text!r} (expected e.g. 'q1 >= 1')")
        side, color, op, value = m.groups()
        return cls(side, int(color) if color else None, op, int(value))

    def count(self, state: NeighborhoodState) -> int:
        counts = state.p if self.side == "p" else state.q
        if self.color is None:
            return sum(counts)
        if not 1 <= self.color <= len(counts):
            return 0
        return counts[self.color - 1]

    def holds(self, state: NeighborhoodState) -> bool:
        return _OPS[self.op](self.count(state), self.value)

    def holds_at_zero(self) -> bool:
        return _OPS[self.op](0, self.value)

    def __str__(self) -> str:
        return f"{self.side}{self.color or ''} {self.op} {self.value}"


def threshold_rule(color: int, clauses: Sequence[Sequence[str | Comparison]]) -> TurnRule:
    """Rule firing when any clause holds; a clause is a conjunction of comparisons.

    Clauses that could hold with every ``q`` count at zero are rejected.
    """
    parsed: list[tuple[Comparison, ...]] = []
    for i, clause in enumerate(clauses):
        comps = tuple(c if isinstance(c, Comparison) else Comparison.parse(c) for c in clause)
        if not comps:
            raise RuleError(f"clause {i} is empty")
        q_tests = [c for c in comps if c.side == "q"]
        if all(c.holds_at_zero() for c in q_tests):
            raise RuleError(
                f"clause {i} ({' and '.join(map(str, comps))}) can fire with an empty opposite edge"
            )
        parsed.append(comps)
    frozen = tuple(parsed)

    def predicate(state: NeighborhoodState) -> bool:
        return any(all(c.holds(state) for c in clause) for clause in frozen)

    spec = [[str(c) for c in clause] for clause in frozen]
    return TurnRule(color, predicate, spec)


@dataclass(frozen=True)
class Placement:
    body_id: int
    color: int
    edge: Edge


@dataclass(frozen=True)
class Configuration:
    """A finite list of placements plus one turn rule per color.

    ``period`` is None for a finite configuration on the empty infinite line,
    or the spatial period for a periodic one.
    """

    placements: tuple[Placement, ...]
    rules: tuple[TurnRule, ...]
    period: int | None = None
    colors: int = 0

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))
        rules = tuple(sorted(self.rules, key=lambda r: r.color))
        object.__setattr__(self, "rules", rules)
        if self.period is not None and self.period < 1:
            raise ValueError(f"spatial period must be positive, got {self.period}")
        ids = [pl.body_id for pl in self.placements]
        if len(set(ids)) != len(ids):
            raise ValueError("body ids must be unique")
        ruled = {r.color for r in rules}
        if len(ruled) != len(rules):
            raise ValueError("at most one turn rule per color")
        r = max([self.colors, *ruled, *(pl.color for pl in self.placements)], default=0)
        object.__setattr__(self, "colors", r)
        for pl in self.placements:
            if pl.color < 1:
                raise ValueError(f"colors are numbered from 1, got {pl.color}")
            if pl.color not in ruled:
                raise ValueError(f"no turn rule for color {pl.color}")

    @classmethod
    def build(
        cls,
        placements: Iterable[tuple[int, int, int, int] | Placement],
        rules: Mapping[int, TurnRule] | Iterable[TurnRule] | None = None,
        period: int | None = None,
        colors: int = 0,
    ) -> Configuration:
        """Convenience constructor from ``(id, color, x, dir)`` tuples.

        Without explicit rules every color used gets the standard rule.
        """
        pls = tuple(
            p if isinstance(p, Placement) else Placement(p[0], p[1], Edge(p[2], p[3]))
            for p in placements
        )
        if rules is None:
            used = {p.color for p in pls} | set(range(1, colors + 1))
            rule_list = [standard_rule(c) for c in sorted(used)]
        elif isinstance(rules, Mapping):
            rule_list = list(rules.values())
        else:
            rule_list = list(rules)
        return cls(pls, tuple(rule_list), period, colors)

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def rule_for(self, color: int) -> TurnRule:
        for r in self.rules:
            if r.color == color:
                return r
        raise KeyError(color)

    def ids(self) -> tuple[int, ...]:
        return tuple(pl.body_id for pl in self.placements)

    def placement(self, body_id: int) -> Placement:
        for pl in self.placements:
            if pl.body_id == body_id:
                return pl
        raise UnknownBodyError(f"no body with id {body_id}")

    def edge_of(self, part: PartLike) -> Edge:
        part = as_part(part)
        edge = self.placement(part.body_id).edge
        if part.copy == 0:
            return edge
        if self.period is None:
            raise UnknownBodyError(f"periodic copy {part} requested in a finite configuration")
        return edge.shifted(part.copy * self.period)

    def color_of(self, part: PartLike) -> int:
        return self.placement(as_part(part).body_id).color

    def _key(self, edge: Edge) -> tuple[int, int]:
        if self.period is None:
            return (edge.x, edge.dir)
        return (edge.x % self.period, edge.dir)

    def occupancy(self) -> Counter:
        """Counts keyed by ``((x or x mod period), dir, color)``."""
        return Counter((*self._key(pl.edge), pl.color) for pl in self.placements)

    def _state(self, occ: Counter, edge: Edge) -> NeighborhoodState:
        own, opp = self._key(edge), self._key(edge.opposite())
        rng = range(1, self.colors + 1)
        return NeighborhoodState(
            tuple(occ[(*own, c)] for c in rng),
            tuple(occ[(*opp, c)] for c in rng),
        )

    def turning(self) -> tuple[bool, ...]:
        """Per placement (in storage order): does the body turn this step?"""
        occ = self.occupancy()
        rules = {r.color: r for r in self.rules}
        return tuple(rules[pl.color].turns(self._state(occ, pl.edge)) for pl in self.placements)


def neighborhood_state(config: Configuration, e: Edge) -> NeighborhoodState:
    """Per-color counts on ``e`` and on its opposite edge."""
    return config._state(config.occupancy(), e)


def step(config: Configuration) -> Configuration:
    """One synchronous update; every decision reads the pre-step configuration."""
    moved = tuple(
        replace(pl, edge=pl.edge.contrary() if turn else pl.edge.shifted(pl.edge.dir))
        for pl, turn in zip(config.placements, config.turning())
    )
    return replace(config, placements=moved)


def shift(config: Configuration, k: int) -> Configuration:
    """Translate every placement by ``k``; directions unchanged."""
    if k == 0:
        return config
    return replace(config, placements=tuple(
        replace(pl, edge=pl.edge.shifted(k)) for pl in config.placements
    ))


def mirror(config: Configuration) -> Configuration:
    """Reflect ``x -> -x``.  Edge ``x^i`` becomes ``(-x)^-i``; opposite pairs map to opposite pairs."""
    return replace(config, placements=tuple(
        replace(pl, edge=Edge(-pl.edge.x, -pl.edge.dir)) for pl in config.placements
    ))


def same_placements(a: Configuration, b: Configuration) -> bool:
    """Equality of body placements (ids, colors, edges), ignoring rule objects."""
    return (a.period == b.period
            and sorted(a.placements, key=lambda p: p.body_id)
            == sorted(b.placements, key=lambda p: p.body_id))
