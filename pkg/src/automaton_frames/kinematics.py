"""Traces and the observables derived from them.

Every quantity is an exact ``Fraction``.  An elementary body spends each unit
of absolute time either on one coordinate step or on one turn, so
``w_b(t) + |x_b(t+1) - x_b(t)| = 1`` and ``t = tau_b(t) + s_b(t)`` hold
identically.  Collective observables average over the members; the
proper-time velocity of a collective on a step where only some members turn
is the fraction that turn.
"""

from __future__ import annotations

import math
import os
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import RangeError, ResourceLimitError, UnknownBodyError
from .lattice import Configuration, Edge, Part, PartLike, as_members, as_part, step

MAX_STEPS_ENV = "AUTOMATON_FRAMES_MAX_STEPS"
DEFAULT_MAX_STEPS = 100_000
DEFAULT_P_MAX = 64

HALF = Fraction(1, 2)


def max_steps() -> int:
    """Cap on horizons and period searches, overridable via the environment."""
    raw = os.environ.get(MAX_STEPS_ENV)
    return int(raw) if raw else DEFAULT_MAX_STEPS


def _check_budget(n: int, what: str) -> None:
    cap = max_steps()
    if n > cap:
        raise ResourceLimitError(f"{what}={n} exceeds the cap of {cap} (set {MAX_STEPS_ENV})")


@dataclass(frozen=True)
class EventPoint:
    """A point ``(x, t)`` of the event space."""

    x: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "t", Fraction(self.t))

    def __iter__(self):
        yield self.x
        yield self.t


@dataclass(frozen=True)
class Trace:
    """Snapshots ``0..T``; ``snapshots[t+1] == step(snapshots[t])``."""

    snapshots: tuple[Configuration, ...]

    @property
    def horizon(self) -> int:
        return len(self.snapshots) - 1

    @property
    def initial(self) -> Configuration:
        return self.snapshots[0]

    @cached_property
    def _index(self) -> dict[int, int]:
        return {pl.body_id: i for i, pl in enumerate(self.snapshots[0].placements)}

    @cached_property
    def _turns(self) -> tuple[tuple[bool, ...], ...]:
        # Turn flags for t = 0..T; the last entry looks one step past the horizon.
        return tuple(s.turning() for s in self.snapshots)

    def ids(self) -> tuple[int, ...]:
        return self.snapshots[0].ids()

    def _slot(self, part: Part) -> int:
        try:
            i = self._index[part.body_id]
        except KeyError:
            raise UnknownBodyError(f"no body with id {part.body_id} in trace") from None
        if part.copy and self.initial.period is None:
            raise UnknownBodyError(f"periodic copy {part} requested in a finite trace")
        return i

    def edge(self, part: PartLike, t: int) -> Edge:
        part = as_part(part)
        i = self._slot(part)
        if not 0 <= t <= self.horizon:
            raise RangeError(f"t={t} outside the simulated window [0, {self.horizon}]")
        e = self.snapshots[t].placements[i].edge
        return e.shifted(part.copy * self.initial.period) if part.copy else e

    def edges(self, part: PartLike) -> tuple[Edge, ...]:
        return tuple(self.edge(part, t) for t in range(self.horizon + 1))

    def color(self, part: PartLike) -> int:
        return self.initial.placements[self._slot(as_part(part))].color

    def turned(self, part: PartLike, t: int) -> bool:
        """Whether the body turns between ``t`` and ``t+1`` (defined for ``t <= T``)."""
        i = self._slot(as_part(part))
        if not 0 <= t <= self.horizon:
            raise RangeError(f"t={t} outside the simulated window [0, {self.horizon}]")
        return self._turns[t][i]


def simulate(config: Configuration, horizon: int) -> Trace:
    if horizon < 0:
        raise ValueError(f"horizon must be non-negative, got {horizon}")
    _check_budget(horizon, "horizon")
    snaps = [config]
    for _ in range(horizon):
        snaps.append(step(snaps[-1]))
    return Trace(tuple(snaps))


@dataclass(frozen=True)
class ElementaryObservables:
    """Series for one elementary body: ``x``, ``tau``, ``s`` over ``0..T``;
    ``v`` and ``w`` over ``0..T-1``."""

    part: Part
    x: tuple[int, ...]
    v: tuple[int, ...]
    w: tuple[int, ...]
    tau: tuple[int, ...]
    s: tuple[int, ...]


def elementary_observables(trace: Trace, part: PartLike) -> ElementaryObservables:
    part = as_part(part)
    edges = trace.edges(part)
    xs = tuple(e.x for e in edges)
    v = tuple(b - a for a, b in zip(xs, xs[1:]))
    w = tuple(int(a.dir != b.dir) for a, b in zip(edges, edges[1:]))
    tau, s = [0], [0]
    for wi, vi in zip(w, v):
        tau.append(tau[-1] + wi)
        s.append(s[-1] + abs(vi))
    return ElementaryObservables(part, xs, v, w, tuple(tau), tuple(s))


def continuous_position(trace: Trace, part: PartLike, t_real: Fraction | int) -> Fraction:
    """``x_b(t + d) = x_b(t) + dir(b(t)) * d`` for integer ``t`` and ``-1/2 < d <= 1/2``."""
    t_real = Fraction(t_real)
    t = math.ceil(t_real - HALF)
    if not 0 <= t <= trace.horizon:
        raise RangeError(
            f"t={t_real} outside the continuous window (-1/2, {trace.horizon} + 1/2]"
        )
    e = trace.edge(part, t)
    return e.x + e.dir * (t_real - t)


def world_line(trace: Trace, part: PartLike, t1, t2) -> tuple[EventPoint, ...]:
    """Polyline of the continuous world line between ``t1`` and ``t2``.

    Vertices are the end points plus every half-integer time where the
    direction changes; each segment has slope +1 or -1 in the ``(x, t)`` plane.
    """
    t1, t2 = Fraction(t1), Fraction(t2)
    if not 0 <= t1 <= t2 <= trace.horizon:
        raise RangeError(f"need 0 <= t1 <= t2 <= {trace.horizon}, got [{t1}, {t2}]")
    pos = lambda t: EventPoint(continuous_position(trace, part, t), t)  # noqa: E731
    points = [pos(t1)]
    k = math.floor(t1 - HALF) + 1
    while k + HALF < t2:
        tb = k + HALF
        if tb > t1 and trace.edge(part, k).dir != trace.edge(part, k + 1).dir:
            points.append(pos(tb))
        k += 1
    if t2 > t1:
        points.append(pos(t2))
    return tuple(points)


@dataclass(frozen=True)
class BodyObservables:
    """Series for a collective: ``x``/``tau`` over ``0..T``, ``v``/``w`` over ``0..T-1``.

    ``w`` on a step where only some members turn is the fraction of members
    that turn.
    """

    members: tuple[Part, ...]
    x: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    w: tuple[Fraction, ...]
    tau: tuple[Fraction, ...]


def _require_members(members: Iterable[PartLike]) -> tuple[Part, ...]:
    parts = as_members(members)
    if not parts:
        raise ValueError("a body needs at least one elementary body")
    return parts


def body_observables(trace: Trace, members: Iterable[PartLike]) -> BodyObservables:
    parts = _require_members(members)
    n = len(parts)
    obs = [elementary_observables(trace, p) for p in parts]
    x = tuple(Fraction(sum(o.x[t] for o in obs), n) for t in range(trace.horizon + 1))
    v = tuple(b - a for a, b in zip(x, x[1:]))
    w = tuple(Fraction(sum(o.w[t] for o in obs), n) for t in range(trace.horizon))
    tau = [Fraction(0)]
    for wi in w:
        tau.append(tau[-1] + wi)
    return BodyObservables(parts, x, v, w, tuple(tau))


@dataclass(frozen=True)
class InertialSignature:
    """Recurrence ``step^period(config) == shift(config, displacement)``.

    ``velocity`` is ``displacement / period``; ``proper_velocity`` is the
    members' turns over one period divided by ``n * period``.
    """

    period: int
    displacement: int
    velocity: Fraction
    proper_velocity: Fraction
    members: tuple[Part, ...] = ()

    @property
    def light_like(self) -> bool:
        return self.proper_velocity == 0


def _recurs(c0: Configuration, ct: Configuration) -> int | None:
    """Common displacement D with ``ct == shift(c0, D)`` body by body, else None."""
    if not c0.placements:
        return 0
    d = None
    for a, b in zip(c0.placements, ct.placements):
        if a.edge.dir != b.edge.dir:
            return None
        di = b.edge.x - a.edge.x
        if d is None:
            d = di
        elif di != d:
            return None
    return d


def find_recurrence(config: Configuration, p_max: int = DEFAULT_P_MAX):
    """Smallest ``p <= p_max`` with a common-displacement recurrence.

    Returns ``(p, d, cycle)`` where ``cycle`` holds the snapshots ``0..p``,
    or None.  Each stored body must move by the same ``d``; a periodic copy
    therefore keeps its identity.
    """
    if p_max < 1:
        raise ValueError(f"p_max must be at least 1, got {p_max}")
    _check_budget(p_max, "p_max")
    snaps = [config]
    for p in range(1, p_max + 1):
        snaps.append(step(snaps[-1]))
        d = _recurs(config, snaps[-1])
        if d is not None:
            return p, d, tuple(snaps)
    return None


def signature_from_cycle(cycle: tuple[Configuration, ...], d: int,
                         members: Iterable[PartLike]) -> InertialSignature:
    parts = _require_members(members)
    p = len(cycle) - 1
    ids = {pl.body_id: i for i, pl in enumerate(cycle[0].placements)}
    for part in parts:
        if part.body_id not in ids:
            raise UnknownBodyError(f"no body with id {part.body_id}")
    turns = 0
    for snap in cycle[:-1]:
        flags = snap.turning()
        turns += sum(flags[ids[part.body_id]] for part in parts)
    return InertialSignature(p, d, Fraction(d, p), Fraction(turns, len(parts) * p), parts)


def detect_inertial(config: Configuration, members: Iterable[PartLike],
                    p_max: int = DEFAULT_P_MAX) -> InertialSignature | None:
    parts = _require_members(members)
    for part in parts:
        config.edge_of(part)
    found = find_recurrence(config, p_max)
    if found is None:
        return None
    p, d, cycle = found
    return signature_from_cycle(cycle, d, parts)
