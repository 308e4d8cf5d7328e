"""Collectives of stateless automata on a one-dimensional directed-edge lattice.

Exact simulation, kinematics (proper time, spatial and proper-time
velocity), inertial reference frames and internal-state equivalence.
"""

from .frames import (
    ABSOLUTE, BodyFrame, FrameMap, RelativeKinematics, apply, compose, eigendirection_check,
    frame_map_from_kinematics, frame_of, invert, length_in_frame, reciprocal_kinematics,
    relative_between, relative_kinematics, velocity_add,
)
from .isostate import (
    IsoWitness, StateSnapshot, affine_isomorphic, external_state_equal, state_snapshot,
)
from .kinematics import (
    BodyObservables, ElementaryObservables, EventPoint, InertialSignature, Trace,
    body_observables, continuous_position, detect_inertial, elementary_observables, simulate,
    world_line,
)
from .lattice import (
    Configuration, Edge, NeighborhoodState, Part, Placement, TurnRule, mirror,
    neighborhood_state, shift, standard_rule, step, threshold_rule,
)

__version__ = "0.1.0"

__all__ = [
    "ABSOLUTE", "BodyFrame", "BodyObservables", "Configuration", "Edge", "ElementaryObservables",
    "EventPoint", "FrameMap", "InertialSignature", "IsoWitness", "NeighborhoodState", "Part",
    "Placement", "RelativeKinematics", "StateSnapshot", "Trace", "TurnRule",
    "affine_isomorphic", "apply", "body_observables", "compose", "continuous_position",
    "detect_inertial", "eigendirection_check", "elementary_observables", "external_state_equal",
    "frame_map_from_kinematics", "frame_of", "invert", "length_in_frame", "mirror",
    "neighborhood_state", "reciprocal_kinematics", "relative_between", "relative_kinematics",
    "shift", "simulate", "standard_rule", "state_snapshot", "step", "threshold_rule",
    "velocity_add", "world_line",
]
