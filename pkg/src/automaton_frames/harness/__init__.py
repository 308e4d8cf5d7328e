"""Scenario loading, verification, emitters and the command line."""

from .emit import emit_diagram, emit_trace_csv, render_svg, render_text, trace_rows
from .scenario import Scenario, load_scenario, loads, scenario_from_dict
from .verify import CheckRecord, VerificationReport, run_verification

__all__ = [
    "CheckRecord", "Scenario", "VerificationReport", "emit_diagram", "emit_trace_csv",
    "load_scenario", "loads", "render_svg", "render_text", "run_verification",
    "scenario_from_dict", "trace_rows",
]
