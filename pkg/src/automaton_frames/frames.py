"""Inertial reference frames and the affine maps between them.

A frame map sends event coordinates of one frame to another.  Its linear
part must keep the light-like directions (1, 1) and (-1, 1) as a set: the
*standard* shape ``[[a, b], [b, a]]`` keeps each of them, the *symmetric*
shape ``[[-a, b], [-b, a]]`` swaps them.  For a body moving with velocity
``v`` and proper-time velocity ``w`` in a frame, the standard map from the
body's own frame is ``[[1/w, v/w], [v/w, 1/w]]``.

A body's frame is anchored at the absolute event ``(x_B(0), 0)`` with its
proper time starting at zero.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import (
    InvalidFrameError, InvalidKinematicsError, LightLikeError, NotInertialError,
)
from .kinematics import (
    DEFAULT_P_MAX, HALF, EventPoint, InertialSignature, Trace, find_recurrence,
    signature_from_cycle,
)
from .lattice import Configuration, Edge, Part, PartLike, as_members, as_part

STANDARD = "standard"
SYMMETRIC = "symmetric"

Q = Union[Fraction, int]


@dataclass(frozen=True)
class FrameMap:
    """Affine map ``e -> L e + (ox, ot)`` with a standard or symmetric linear part."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction
    ox: Fraction = Fraction(0)
    ot: Fraction = Fraction(0)
    kind: str = field(init=False, compare=False)

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22", "ox", "ot"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det == 0:
            raise InvalidFrameError(f"singular frame map {self.matrix}")
        object.__setattr__(self, "kind", _classify(self.a11, self.a12, self.a21, self.a22))

    @classmethod
    def identity(cls) -> FrameMap:
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    @property
    def offset(self) -> tuple[Fraction, Fraction]:
        return (self.ox, self.ot)

    def linear(self) -> FrameMap:
        return FrameMap(self.a11, self.a12, self.a21, self.a22)

    def __call__(self, e: EventPoint | Sequence[Q]) -> EventPoint:
        return apply(self, e)

    def __matmul__(self, other: FrameMap) -> FrameMap:
        return compose(self, other)


def _classify(a11, a12, a21, a22) -> str:
    if a11 == a22 and a12 == a21:
        return STANDARD
    if a11 == -a22 and a12 == -a21:
        return SYMMETRIC
    raise InvalidFrameError(
        f"linear part [[{a11}, {a12}], [{a21}, {a22}]] neither keeps nor swaps "
        "the directions (1, 1) and (-1, 1)"
    )


def _check_kinematics(v: Fraction, w: Fraction) -> None:
    if w == 0:
        raise LightLikeError("a light-like body (w = 0) has no associated frame")
    if w < 0:
        raise InvalidKinematicsError(f"proper-time velocity must be positive, got {w}")
    if abs(v) >= 1:
        raise InvalidKinematicsError(f"frame velocity must satisfy |v| < 1, got {v}")


def frame_map_from_kinematics(v: Q, w: Q, kind: str = STANDARD) -> FrameMap:
    """Map from the frame of a body with kinematics ``(v, w)`` into the observer frame."""
    v, w = Fraction(v), Fraction(w)
    _check_kinematics(v, w)
    if kind == STANDARD:
        return FrameMap(1 / w, v / w, v / w, 1 / w)
    if kind == SYMMETRIC:
        return FrameMap(-1 / w, v / w, -v / w, 1 / w)
    raise ValueError(f"unknown configuration kind {kind!r}")


def kinematics_of(m: FrameMap) -> tuple[Fraction, Fraction]:
    """Recover ``(v, w)`` from a map's second column ``(v/w, 1/w)``."""
    return m.a12 / m.a22, 1 / m.a22


def apply(m: FrameMap, e: EventPoint | Sequence[Q]) -> EventPoint:
    x, t = (Fraction(c) for c in e)
    return EventPoint(m.a11 * x + m.a12 * t + m.ox, m.a21 * x + m.a22 * t + m.ot)


def compose(f: FrameMap, g: FrameMap) -> FrameMap:
    """``f`` after ``g``."""
    ox, ot = apply(f.linear(), (g.ox, g.ot))
    return FrameMap(
        f.a11 * g.a11 + f.a12 * g.a21, f.a11 * g.a12 + f.a12 * g.a22,
        f.a21 * g.a11 + f.a22 * g.a21, f.a21 * g.a12 + f.a22 * g.a22,
        ox + f.ox, ot + f.ot,
    )


def invert(f: FrameMap) -> FrameMap:
    d = f.det
    lin = FrameMap(f.a22 / d, -f.a12 / d, -f.a21 / d, f.a11 / d)
    ox, ot = apply(lin, (f.ox, f.ot))
    return FrameMap(lin.a11, lin.a12, lin.a21, lin.a22, -ox, -ot)


def reciprocal_kinematics(v_ba: Q, w_ba: Q) -> tuple[Fraction, Fraction]:
    """Kinematics of the observer as seen from the observed body."""
    v, w = Fraction(v_ba), Fraction(w_ba)
    _check_kinematics(v, w)
    return -v, (1 - v * v) / w


def velocity_add(v_ba: Q, v_cb: Q) -> Fraction:
    """Velocity of C in A from B-in-A and C-in-B."""
    v1, v2 = Fraction(v_ba), Fraction(v_cb)
    if abs(v1) > 1 or abs(v2) > 1:
        raise InvalidKinematicsError(f"velocities must satisfy |v| <= 1, got {v1}, {v2}")
    den = 1 + v1 * v2
    if den == 0:
        raise InvalidKinematicsError("light-like velocities in opposite directions do not compose")
    return (v1 + v2) / den


def length_in_frame(xa_in_a: Q, xb_in_a: Q, w_ca: Q) -> Fraction:
    """Separation of two co-moving bodies seen from a third frame C.

    ``xa_in_a`` and ``xb_in_a`` are their (constant) coordinates in A's rest
    frame; ``w_ca`` is C's proper-time velocity in A.
    """
    w = Fraction(w_ca)
    if w <= 0:
        raise InvalidKinematicsError(f"proper-time velocity must be positive, got {w}")
    return w * abs(Fraction(xa_in_a) - Fraction(xb_in_a))


def _parallel(u: tuple[Fraction, Fraction], d: tuple[int, int]) -> Fraction | None:
    """``k`` with ``u == k * d``, or None."""
    k = u[1] / d[1]
    return k if u[0] == k * d[0] else None


def eigendirection_check(m: FrameMap | Sequence[Sequence[Q]]) -> tuple[str, tuple[Fraction, Fraction]]:
    """Classify a linear part by what it does to (1, 1) and (-1, 1).

    Standard maps return their eigenvalues ``((1+v)/w, (1-v)/w)``.  Symmetric
    maps return the factors ``(k1, k2)`` with ``L(1,1) = k1 (-1,1)`` and
    ``L(-1,1) = k2 (1,1)``.
    """
    if isinstance(m, FrameMap):
        (a11, a12), (a21, a22) = m.matrix
    else:
        (a11, a12), (a21, a22) = ((Fraction(c) for c in row) for row in m)
    lin = lambda x, t: (a11 * x + a12 * t, a21 * x + a22 * t)  # noqa: E731
    up, down = lin(1, 1), lin(-1, 1)
    k1, k2 = _parallel(up, (1, 1)), _parallel(down, (-1, 1))
    if k1 is not None and k2 is not None and k1 != 0 and k2 != 0:
        return STANDARD, (k1, k2)
    s1, s2 = _parallel(up, (-1, 1)), _parallel(down, (1, 1))
    if s1 is not None and s2 is not None and s1 != 0 and s2 != 0:
        return SYMMETRIC, (s1, s2)
    raise InvalidFrameError(
        f"[[{a11}, {a12}], [{a21}, {a22}]] neither keeps nor swaps the light-like directions"
    )


@dataclass(frozen=True)
class RelativeKinematics:
    """Body A seen from frame B: ``x_AB(tau) = x0 + v tau``, ``tau_AB(tau) = tau0 + w tau``."""

    v: Fraction
    w: Fraction
    x0: Fraction
    tau0: Fraction
    map: FrameMap | None = None

    def x_at(self, tau_b: Q) -> Fraction:
        return self.x0 + self.v * tau_b

    def tau_at(self, tau_b: Q) -> Fraction:
        return self.tau0 + self.w * tau_b


@dataclass(frozen=True)
class BodyFrame:
    """The rest frame of an inertial, non-light-like body.

    ``cycle`` holds one recurrence period of its world (snapshots ``0..p``),
    which extends every world line of that world to all times, negative ones
    included.
    """

    members: tuple[Part, ...]
    signature: InertialSignature
    cycle: tuple[Configuration, ...]
    to_absolute: FrameMap

    @property
    def origin(self) -> EventPoint:
        return EventPoint(self.to_absolute.ox, self.to_absolute.ot)

    def edge_at(self, part: PartLike, t: int) -> Edge:
        q, r = divmod(t, self.signature.period)
        e = self.cycle[r].edge_of(part)
        return e.shifted(q * self.signature.displacement)

    def position(self, part: PartLike, t_real: Q) -> Fraction:
        t_real = Fraction(t_real)
        t = math.ceil(t_real - HALF)
        e = self.edge_at(part, t)
        return e.x + e.dir * (t_real - t)

    def color(self, part: PartLike) -> int:
        return self.cycle[0].color_of(part)

    def sample(self, tau: Q, parts: Iterable[PartLike] | None = None) -> list[tuple[Part, int, Fraction]]:
        """Frame coordinates of ``parts`` (default: the members) at frame time ``tau``.

        Each world line is intersected with the frame's line of simultaneity
        ``t' = tau``; since world lines have slope +-1 and the simultaneity line
        is flatter, the intersection is unique and rational.
        """
        tau = Fraction(tau)
        parts = self.members if parts is None else as_members(parts)
        x0, t0 = self.to_absolute((0, tau))
        slope = self.to_absolute.a21 / self.to_absolute.a11
        back = invert(self.to_absolute)
        out = []
        for part in parts:
            x, t = self._intersect(as_part(part), x0, t0, slope)
            xf, tf = back((x, t))
            assert tf == tau
            out.append((as_part(part), self.color(part), xf))
        return out

    def _intersect(self, part: Part, x0: Fraction, t0: Fraction, slope: Fraction):
        # g(t) = t - t0 - slope * (x(t) - x0) is strictly increasing along a world line.
        def g(t: Fraction) -> Fraction:
            return t - t0 - slope * (self.position(part, t) - x0)

        k = math.ceil(t0 - HALF)
        while True:
            if g(k - HALF) >= 0:
                k -= 1
            elif g(k + HALF) < 0:
                k += 1
            else:
                break
        e = self.edge_at(part, k)
        t = (t0 + slope * (e.x - e.dir * k - x0)) / (1 - slope * e.dir)
        return e.x + e.dir * (t - k), t


ABSOLUTE = FrameMap.identity()


def _as_config(source: Trace | Configuration) -> Configuration:
    return source.initial if isinstance(source, Trace) else source


def frame_of(source: Trace | Configuration, members: Iterable[PartLike],
             p_max: int = DEFAULT_P_MAX) -> BodyFrame:
    """Build the rest frame of a body from its world's recurrence."""
    config = _as_config(source)
    parts = as_members(members)
    if not parts:
        raise ValueError("a body needs at least one elementary body")
    for part in parts:
        config.edge_of(part)
    found = find_recurrence(config, p_max)
    if found is None:
        raise NotInertialError(f"no recurrence within p_max={p_max}")
    p, d, cycle = found
    sig = signature_from_cycle(cycle, d, parts)
    if sig.light_like:
        raise LightLikeError(
            f"body {','.join(map(str, parts))} is light-like (v={sig.velocity}, w=0)"
        )
    x_origin = Fraction(sum(config.edge_of(pt).x for pt in parts), len(parts))
    lin = frame_map_from_kinematics(sig.velocity, sig.proper_velocity)
    to_abs = FrameMap(lin.a11, lin.a12, lin.a21, lin.a22, x_origin, 0)
    return BodyFrame(parts, sig, cycle, to_abs)


def _map(frame: BodyFrame | FrameMap) -> FrameMap:
    return frame.to_absolute if isinstance(frame, BodyFrame) else frame


def frame_between(a: BodyFrame | FrameMap, b: BodyFrame | FrameMap) -> FrameMap:
    """Affine map from A's frame coordinates into B's."""
    return compose(invert(_map(b)), _map(a))


def relative_between(a: BodyFrame | FrameMap, b: BodyFrame | FrameMap) -> RelativeKinematics:
    """Kinematics of A in B's frame; either side may be ``ABSOLUTE``."""
    m = frame_between(a, b)
    if m.kind != STANDARD:
        raise InvalidFrameError("relative kinematics are defined for standard configurations only")
    v, w = kinematics_of(m)
    # A's origin sits at (X, theta) in B; A's reference line crosses tau_B = 0 at tau_A = -theta w.
    X, theta = m.ox, m.ot
    return RelativeKinematics(v, w, X - theta * v, -theta * w, m)


def relative_kinematics(trace: Trace, a: Iterable[PartLike], b: Iterable[PartLike],
                        p_max: int = DEFAULT_P_MAX, *,
                        trace_b: Trace | None = None) -> RelativeKinematics:
    """Kinematics of body ``a`` in the rest frame of body ``b``.

    ``trace_b`` lets the two bodies live in different worlds that share the
    absolute frame.
    """
    fa = frame_of(trace, a, p_max)
    fb = frame_of(trace if trace_b is None else trace_b, b, p_max)
    return relative_between(fa, fb)
