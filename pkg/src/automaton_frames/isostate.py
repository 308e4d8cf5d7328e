"""External and internal state equality of bodies.

Two bodies share an external state when one is an isometric shift of the
other, edge by edge.  They share an internal state when, at some pair of
proper times, the color-tagged coordinates of their parts in their own rest
frames coincide as multisets (affine isomorphism).
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .frames import BodyFrame, FrameMap, frame_between, frame_of
from .kinematics import DEFAULT_P_MAX, Trace
from .lattice import Part, PartLike, as_members


def external_state_equal(trace_a: Trace, a: Iterable[PartLike], ta: int,
                         trace_b: Trace, b: Iterable[PartLike], tb: int) -> bool:
    pa, pb = as_members(a), as_members(b)
    if len(pa) != len(pb):
        return False
    ka = sorted((trace_a.color(p), trace_a.edge(p, ta).x, trace_a.edge(p, ta).dir) for p in pa)
    kb = sorted((trace_b.color(p), trace_b.edge(p, tb).x, trace_b.edge(p, tb).dir) for p in pb)
    if Counter(c for c, _, _ in ka) != Counter(c for c, _, _ in kb):
        return False
    # Sorting by (color, x, dir) is shift-invariant, so the k that works aligns the first entries.
    k = kb[0][1] - ka[0][1]
    return all(ca == cb and xa + k == xb and da == db
               for (ca, xa, da), (cb, xb, db) in zip(ka, kb))


@dataclass(frozen=True)
class StateSnapshot:
    members: tuple[Part, ...]
    frame: FrameMap
    tau: Fraction
    parts: tuple[tuple[Part, int, Fraction], ...]

    def key(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple(sorted((color, x) for _, color, x in self.parts))


def _snapshot(frame: BodyFrame, tau) -> StateSnapshot:
    tau = Fraction(tau)
    return StateSnapshot(frame.members, frame.to_absolute, tau, tuple(frame.sample(tau)))


def state_snapshot(trace: Trace, members: Iterable[PartLike], tau,
                   p_max: int = DEFAULT_P_MAX) -> StateSnapshot:
    """Parts of an inertial body in its own rest frame at proper time ``tau``.

    ``frame`` maps the body's frame into the absolute one.  World lines are
    extended through the world's recurrence, so any ``tau`` is admissible.
    """
    return _snapshot(frame_of(trace, members, p_max), tau)


@dataclass(frozen=True)
class IsoWitness:
    bijection: tuple[tuple[Part, Part], ...]
    tau_a: Fraction
    tau_b: Fraction
    frame: FrameMap  # B's frame coordinates -> A's


def proper_time_grid(frame: BodyFrame) -> list[Fraction]:
    """Proper times of the half-integer absolute instants in one recurrence period."""
    sig = frame.signature
    return [sig.proper_velocity * Fraction(j, 2) for j in range(2 * sig.period)]


def match_snapshots(sa: StateSnapshot, sb: StateSnapshot) -> tuple[tuple[Part, Part], ...] | None:
    """Color-preserving bijection pairing equal frame coordinates, or None."""
    if sa.key() != sb.key():
        return None
    order = lambda s: sorted(s.parts, key=lambda r: (r[1], r[2]))  # noqa: E731  (stable)
    return tuple((ra[0], rb[0]) for ra, rb in zip(order(sa), order(sb)))


def affine_isomorphic_frames(fa: BodyFrame, fb: BodyFrame) -> IsoWitness | None:
    if len(fa.members) != len(fb.members):
        return None
    snaps_b: dict[tuple, StateSnapshot] = {}
    for tau in proper_time_grid(fb):
        s = _snapshot(fb, tau)
        snaps_b.setdefault(s.key(), s)
    for tau in proper_time_grid(fa):
        sa = _snapshot(fa, tau)
        sb = snaps_b.get(sa.key())
        if sb is not None:
            return IsoWitness(match_snapshots(sa, sb), sa.tau, sb.tau, frame_between(fb, fa))
    return None


def affine_isomorphic(trace_a: Trace, a: Iterable[PartLike], trace_b: Trace,
                      b: Iterable[PartLike], p_max: int = DEFAULT_P_MAX) -> IsoWitness | None:
    """Search one proper period of each body for equal internal states.

    Raises ``NotInertialError`` or ``LightLikeError`` when either body has no
    rest frame.
    """
    return affine_isomorphic_frames(frame_of(trace_a, a, p_max), frame_of(trace_b, b, p_max))
