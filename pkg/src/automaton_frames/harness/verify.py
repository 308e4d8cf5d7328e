"""End-to-end verification of every kinematic identity on a scenario."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from ..errors import AutomataError
from ..frames import (
    ABSOLUTE, STANDARD, BodyFrame, FrameMap, eigendirection_check, frame_map_from_kinematics,
    frame_of, invert, length_in_frame, relative_between, velocity_add,
)
from ..isostate import affine_isomorphic_frames
from ..kinematics import (
    Trace, body_observables, detect_inertial, elementary_observables, simulate,
)
from .scenario import ABSOLUTE_NAME, Scenario, format_rational

PASS, FAIL, SKIP = "pass", "fail", "skip"

MIXED_W_NOTE = (
    "w_B on a step where only some members turn is the fraction of members that turn"
)


@dataclass
class CheckRecord:
    check: str
    ref: str
    status: str
    subject: str = ""
    values: dict[str, str] = field(default_factory=dict)
    detail: str = ""


@dataclass
class VerificationReport:
    scenario: str
    records: list[CheckRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    def find(self, check: str, subject: str | None = None) -> list[CheckRecord]:
        return [r for r in self.records
                if r.check == check and (subject is None or r.subject == subject)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "status": PASS if self.passed else FAIL,
            "notes": self.notes,
            "records": [asdict(r) for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        lines = [f"scenario {self.scenario}: {'PASS' if self.passed else 'FAIL'}"]
        for check in dict.fromkeys(r.check for r in self.records):
            recs = self.find(check)
            counts = {s: sum(r.status == s for r in recs) for s in (PASS, FAIL, SKIP)}
            parts = [f"{n} {s}" for s, n in counts.items() if n]
            lines.append(f"  {check:<22} {', '.join(parts)}")
            for r in recs:
                if r.status == FAIL:
                    vals = " ".join(f"{k}={v}" for k, v in r.values.items())
                    lines.append(f"    FAIL {r.subject}: {r.detail} {vals}".rstrip())
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


REFS = {
    "unit-budget": "per-step budget w_b(t) + |x_b(t+1) - x_b(t)| = 1",
    "clock-identity": "t = tau_b(t) - tau_b(0) + s_b(t)",
    "light-speed-freeze": "|v_B(t)| = 1 implies w_B(t) = 0",
    "inertia": "inertial body: v_B and w_B constant",
    "frame-matrix": "standard configuration L = [[1/w, v/w], [v/w, 1/w]]",
    "eigendirections": "L keeps (1,1) and (-1,1) as eigendirections",
    "frame-linearity": "x_AB = x_AB(0) + tau_B v_AB, tau_AB = tau_AB(0) + tau_B w_AB",
    "reciprocity": "v_AB = -v_BA and w_AB w_BA = 1 - v^2",
    "velocity-addition": "v_CA = (v_BA + v_CB) / (1 + v_BA v_CB)",
    "length": "co-moving separation: dx' = w_CA dx",
    "expected-kinematics": "declared relative kinematics and transform matrix",
    "isomorphism": "internal state equality by affine isomorphism",
}


def _q(x) -> str:
    return format_rational(x)


class _Run:
    def __init__(self, scenario: Scenario, report: VerificationReport):
        self.s = scenario
        self.report = report
        self.traces: dict[str, Trace] = {}
        self.frames: dict[str, BodyFrame | FrameMap] = {ABSOLUTE_NAME: ABSOLUTE}

    def record(self, check: str, ok: bool | None, subject: str, detail: str = "", **values):
        status = SKIP if ok is None else (PASS if ok else FAIL)
        self.report.records.append(CheckRecord(
            check, REFS[check], status, subject,
            {k: (_q(v) if isinstance(v, Fraction) else str(v))
             for k, v in values.items()},
            detail,
        ))

    def guarded(self, check: str, subject: str, fn) -> None:
        try:
            fn()
        except AutomataError as exc:
            self.record(check, False, subject, f"{type(exc).__name__}: {exc}")

    # -- elementary identities ------------------------------------------

    def elementary(self, world: str, trace: Trace) -> None:
        budget_bad, clock_bad = [], []
        for bid in trace.ids():
            o = elementary_observables(trace, bid)
            for t in range(trace.horizon):
                if o.w[t] + abs(o.x[t + 1] - o.x[t]) != 1:
                    budget_bad.append(f"{bid}@t={t}")
            for t in range(trace.horizon + 1):
                if t != o.tau[t] - o.tau[0] + o.s[t]:
                    clock_bad.append(f"{bid}@t={t}")
        n = len(trace.ids())
        self.record("unit-budget", not budget_bad, world, "; ".join(budget_bad[:5]),
                    bodies=n, horizon=trace.horizon)
        self.record("clock-identity", not clock_bad, world, "; ".join(clock_bad[:5]),
                    bodies=n, horizon=trace.horizon)

    def freeze(self, name: str) -> None:
        obs = body_observables(self.traces[name], self.s.body(name))
        bad = [t for t, (v, w) in enumerate(zip(obs.v, obs.w))
               if (abs(v) == 1 and w != 0) or w > 1 - abs(v) or w < 0]
        light = sum(abs(v) == 1 for v in obs.v)
        self.record("light-speed-freeze", not bad, name,
                    f"violations at t={bad[:5]}" if bad else "",
                    light_like_steps=light, steps=len(obs.v))

    # -- inertia and frames -----------------------------------------------

    def inertia(self, name: str) -> None:
        trace = self.traces[name]
        members = self.s.body(name)
        expected = {b: (p, d) for b, p, d in self.s.expect.inertial}.get(name)
        sig = detect_inertial(trace.initial, members, self.s.p_max)
        if sig is None:
            self.record("inertia", False if expected else None, name,
                        f"no recurrence within p_max={self.s.p_max}")
            return
        details = []
        ok = expected is None or expected == (sig.period, sig.displacement)
        if not ok:
            details.append(f"expected (p, d) = {expected}")
        if not self._constant_rates(trace, members, sig):
            ok = False
            details.append("per-period rates not constant over the horizon")
        if sig.light_like:
            details.append("light-like: no rest frame")
        else:
            self.frames[name] = frame_of(trace, members, self.s.p_max)
        self.record("inertia", ok, name, "; ".join(details), p=sig.period,
                    d=sig.displacement, v=sig.velocity, w=sig.proper_velocity)

    @staticmethod
    def _constant_rates(trace, members, sig) -> bool:
        obs = body_observables(trace, members)
        p = sig.period
        for t in range(trace.horizon - p + 1):
            if (obs.x[t + p] - obs.x[t] != sig.displacement
                    or obs.tau[t + p] - obs.tau[t] != p * sig.proper_velocity):
                return False
        return True

    def events_of(self, name: str) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Sampled ``(x, t, proper time)`` along a body's reference world line."""
        if name == ABSOLUTE_NAME:
            return [(Fraction(0), Fraction(k), Fraction(k)) for k in range(4)]
        frame = self.frames[name]
        obs = body_observables(self.traces[name], self.s.body(name))
        p = frame.signature.period
        return [(obs.x[t], Fraction(t), obs.tau[t]) for t in range(0, self.traces[name].horizon + 1, p)]

    def pair(self, a: str, b: str) -> None:
        subject = f"{a} in {b}"
        rk = relative_between(self.frames[a], self.frames[b])
        m = rk.map
        expected = frame_map_from_kinematics(rk.v, rk.w)
        self.record("frame-matrix", m.kind == STANDARD and m.linear() == expected, subject,
                    v=rk.v, w=rk.w, matrix=_fmt_matrix(m))
        kind, (l1, l2) = eigendirection_check(m)
        ok = (kind == STANDARD and l1 == (1 + rk.v) / rk.w and l2 == (1 - rk.v) / rk.w
              and l1 > 0 and l2 > 0)
        self.record("eigendirections", ok, subject, kind=kind, l_plus=l1, l_minus=l2)

        back = invert(_map(self.frames[b]))
        bad = []
        events = self.events_of(a)
        for x, t, tau_a in events:
            xb, tb = back((x, t))
            if xb != rk.x_at(tb) or tau_a != rk.tau_at(tb):
                bad.append(f"t={t}")
        self.record("frame-linearity", not bad if len(events) >= 2 else None, subject,
                    f"off-line samples {bad}" if bad else
                    ("" if len(events) >= 2 else "horizon shorter than two periods"),
                    samples=len(events), x0=rk.x0, tau0=rk.tau0, v=rk.v, w=rk.w)

    def reciprocity(self, a: str, b: str) -> None:
        ab = relative_between(self.frames[a], self.frames[b])
        ba = relative_between(self.frames[b], self.frames[a])
        ok = ab.v == -ba.v and ab.w * ba.w == 1 - ab.v ** 2 == 1 - ba.v ** 2
        self.record("reciprocity", ok, f"{a},{b}", v_ab=ab.v, v_ba=ba.v, w_ab=ab.w, w_ba=ba.w)

    def addition(self, a: str, b: str, c: str) -> None:
        v_ba = relative_between(self.frames[b], self.frames[a]).v
        v_cb = relative_between(self.frames[c], self.frames[b]).v
        v_ca = relative_between(self.frames[c], self.frames[a]).v
        formula = velocity_add(v_ba, v_cb)
        self.record("velocity-addition", v_ca == formula, f"A={a} B={b} C={c}",
                    v_ba=v_ba, v_cb=v_cb, v_ca=v_ca, formula=formula)

    def length(self, a: str, b: str, c: str) -> None:
        dx = abs(relative_between(self.frames[b], self.frames[a]).x0)
        ac = relative_between(self.frames[a], self.frames[c])
        bc = relative_between(self.frames[b], self.frames[c])
        measured = abs(ac.x0 - bc.x0)
        w_ca = relative_between(self.frames[c], self.frames[a]).w
        predicted = length_in_frame(0, dx, w_ca)
        self.record("length", measured == predicted, f"A={a} B={b} C={c}",
                    dx=dx, dx_prime=measured, w_ca=w_ca, predicted=predicted,
                    effect="contraction" if w_ca < 1 else ("extension" if w_ca > 1 else "none"))

    def expected_kinematics(self) -> None:
        for k in self.s.expect.kinematics:
            subject = f"{k.body} in {k.frame}"
            if k.body not in self.frames or k.frame not in self.frames:
                self.record("expected-kinematics", False, subject, "no rest frame for a body")
                continue
            rk = relative_between(self.frames[k.body], self.frames[k.frame])
            ok, detail = True, []
            if k.v is not None and rk.v != k.v:
                ok = False
                detail.append(f"v expected {_q(k.v)}")
            if k.w is not None and rk.w != k.w:
                ok = False
                detail.append(f"w expected {_q(k.w)}")
            if k.matrix is not None and rk.map.matrix != k.matrix:
                ok = False
                detail.append(f"matrix expected {_fmt_tuple(k.matrix)}")
            self.record("expected-kinematics", ok, subject, "; ".join(detail),
                        v=rk.v, w=rk.w, matrix=_fmt_matrix(rk.map))

    def isomorphism(self, a: str, b: str, expect: bool) -> None:
        subject = f"{a} ~ {b}" if expect else f"{a} !~ {b}"
        fa, fb = self.frames.get(a), self.frames.get(b)
        if not isinstance(fa, BodyFrame) or not isinstance(fb, BodyFrame):
            self.record("isomorphism", False, subject, "both bodies need a rest frame")
            return
        witness = affine_isomorphic_frames(fa, fb)
        found = witness is not None
        values = {"found": found}
        if witness is not None:
            values.update(tau_a=witness.tau_a, tau_b=witness.tau_b,
                          matrix=_fmt_matrix(witness.frame))
        self.record("isomorphism", found == expect, subject, **values)


def _map(frame: BodyFrame | FrameMap) -> FrameMap:
    return frame.to_absolute if isinstance(frame, BodyFrame) else frame


def _fmt_tuple(m) -> str:
    return "[" + ", ".join("[" + ", ".join(_q(a) for a in row) + "]" for row in m) + "]"


def _fmt_matrix(m: FrameMap) -> str:
    return _fmt_tuple(m.matrix)


def run_verification(scenario: Scenario) -> VerificationReport:
    report = VerificationReport(scenario.name, notes=[MIXED_W_NOTE])
    run = _Run(scenario, report)

    world_traces = {}
    for world in scenario.worlds:
        trace = simulate(scenario.configuration(world), scenario.horizon)
        world_traces[world.name] = trace
        run.elementary(world.name, trace)
    for name in scenario.body_names():
        run.traces[name] = world_traces[scenario.world_of(name).name]

    for name in scenario.body_names():
        run.freeze(name)
    for name in scenario.body_names():
        run.guarded("inertia", name, lambda: run.inertia(name))

    names = list(run.frames)
    for a, b in itertools.permutations(names, 2):
        run.guarded("frame-matrix", f"{a} in {b}", lambda: run.pair(a, b))
    for a, b in itertools.combinations(names, 2):
        run.guarded("reciprocity", f"{a},{b}", lambda: run.reciprocity(a, b))
    for a, b, c in itertools.permutations(names, 3):
        run.guarded("velocity-addition", f"A={a} B={b} C={c}", lambda: run.addition(a, b, c))

    velocity = {n: f.signature.velocity for n, f in run.frames.items() if isinstance(f, BodyFrame)}
    velocity[ABSOLUTE_NAME] = Fraction(0)
    for a, b in itertools.permutations(velocity, 2):
        if velocity[a] != velocity[b]:
            continue
        for c in names:
            if c not in (a, b):
                run.guarded("length", f"A={a} B={b} C={c}", lambda: run.length(a, b, c))

    run.expected_kinematics()
    for a, b in scenario.expect.isomorphic:
        run.guarded("isomorphism", f"{a} ~ {b}", lambda: run.isomorphism(a, b, True))
    for a, b in scenario.expect.not_isomorphic:
        run.guarded("isomorphism", f"{a} !~ {b}", lambda: run.isomorphism(a, b, False))
    return report
