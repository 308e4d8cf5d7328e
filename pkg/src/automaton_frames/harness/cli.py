"""Command line entry point: ``automaton-frames <command> <scenario> ...``.

``<scenario>`` is a JSON scenario file or one of the bundled names
(example1, example2, examples, free).  ``verify`` exits 0 iff every check
passes; ``isocheck`` exits 0 iff a witness is found.  Usage or scenario
errors exit with status 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import AutomataError
from ..frames import ABSOLUTE, frame_of, relative_between
from ..isostate import affine_isomorphic_frames
from ..kinematics import body_observables, simulate
from .emit import emit_diagram, emit_trace_csv
from .scenario import ABSOLUTE_NAME, Scenario, format_rational, load_scenario
from .verify import MIXED_W_NOTE, run_verification


def _traces(scenario: Scenario, horizon: int | None):
    T = scenario.horizon if horizon is None else horizon
    return {w.name: simulate(scenario.configuration(w), T) for w in scenario.worlds}


def _window(text: str | None):
    if text is None:
        return None
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _pair(text: str) -> tuple[str, str]:
    names = [n.strip() for n in text.split(",")]
    if len(names) != 2 or not all(names):
        raise argparse.ArgumentTypeError(f"expected 'A,B', got {text!r}")
    return names[0], names[1]


def _frame(scenario: Scenario, name: str):
    if name == ABSOLUTE_NAME:
        return ABSOLUTE
    world = scenario.world_of(name)
    return frame_of(scenario.configuration(world), scenario.body(name), scenario.p_max)


def _matrix_lines(m) -> list[str]:
    q = lambda v: format_rational(v, full=False)  # noqa: E731
    return [f"  [{q(m.a11):>6} {q(m.a12):>6}]", f"  [{q(m.a21):>6} {q(m.a22):>6}]"]


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    path = emit_trace_csv(list(_traces(scenario, args.horizon).values()), args.out)
    print(f"wrote {path}")
    return 0


def cmd_diagram(args) -> int:
    scenario = load_scenario(args.scenario)
    panels = list(_traces(scenario, args.horizon).items())
    path = emit_diagram(panels, args.out, args.format, _window(args.window))
    print(f"wrote {path}")
    return 0


def cmd_observe(args) -> int:
    scenario = load_scenario(args.scenario)
    world = scenario.world_of(args.body)
    T = scenario.horizon if args.horizon is None else args.horizon
    obs = body_observables(simulate(scenario.configuration(world), T), scenario.body(args.body))
    q = lambda v: format_rational(v, full=False)  # noqa: E731
    print(f"body {args.body} ({', '.join(map(str, obs.members))}) in world {world.name}")
    print(f"{'t':>4} {'x_B':>8} {'v_B':>8} {'w_B':>8} {'tau_B':>8}")
    for t in range(len(obs.x)):
        v = q(obs.v[t]) if t < len(obs.v) else ""
        w = q(obs.w[t]) if t < len(obs.w) else ""
        print(f"{t:>4} {q(obs.x[t]):>8} {v:>8} {w:>8} {q(obs.tau[t]):>8}")
    print(f"note: {MIXED_W_NOTE}")
    return 0


def cmd_frames(args) -> int:
    scenario = load_scenario(args.scenario)
    a, b = args.pair
    rk = relative_between(_frame(scenario, a), _frame(scenario, b))
    q = lambda v: format_rational(v, full=False)  # noqa: E731
    print(f"{a} seen from the rest frame of {b}:")
    print(f"  v = {q(rk.v)}  w = {q(rk.w)}  x0 = {q(rk.x0)}  tau0 = {q(rk.tau0)}")
    print(f"map from frame {a} to frame {b} ({rk.map.kind}):")
    print("\n".join(_matrix_lines(rk.map)))
    print(f"  offset ({q(rk.map.ox)}, {q(rk.map.ot)})")
    return 0


def cmd_isocheck(args) -> int:
    scenario = load_scenario(args.scenario)
    a, b = args.pair
    witness = affine_isomorphic_frames(_frame(scenario, a), _frame(scenario, b))
    if witness is None:
        print(f"{a} and {b}: no affine isomorphism over one proper period")
        return 1
    q = lambda v: format_rational(v, full=False)  # noqa: E731
    print(f"{a} at tau={q(witness.tau_a)} ~ {b} at tau={q(witness.tau_b)}")
    print("  " + ", ".join(f"{pa}->{pb}" for pa, pb in witness.bijection))
    print(f"map from frame {b} to frame {a}:")
    print("\n".join(_matrix_lines(witness.frame)))
    return 0


def cmd_verify(args) -> int:
    report = run_verification(load_scenario(args.scenario))
    print(report.summary())
    if args.json:
        Path(args.json).write_text(report.to_json())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="automaton-frames",
        description="Simulate stateless automata on a directed-edge lattice and check their kinematics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write a CSV trace")
    p.add_argument("scenario")
    p.add_argument("--horizon", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("diagram", help="draw time-space diagrams")
    p.add_argument("scenario")
    p.add_argument("--format", choices=("svg", "text"), default="svg")
    p.add_argument("--out", required=True)
    p.add_argument("--horizon", type=int)
    p.add_argument("--window", help="inclusive x-range LO:HI")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("observe", help="print x_B, v_B, w_B, tau_B of a body")
    p.add_argument("scenario")
    p.add_argument("--body", required=True)
    p.add_argument("--horizon", type=int)
    p.set_defaults(func=cmd_observe)

    p = sub.add_parser("frames", help="relative kinematics of A in B's frame")
    p.add_argument("scenario")
    p.add_argument("--pair", type=_pair, required=True, metavar="A,B")
    p.set_defaults(func=cmd_frames)

    p = sub.add_parser("isocheck", help="search for an affine isomorphism between two bodies")
    p.add_argument("scenario")
    p.add_argument("--pair", type=_pair, required=True, metavar="A,B")
    p.set_defaults(func=cmd_isocheck)

    p = sub.add_parser("verify", help="run every check on a scenario")
    p.add_argument("scenario")
    p.add_argument("--json", metavar="REPORT")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AutomataError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
