"""Exception hierarchy shared by all modules."""


class AutomataError(Exception):
    """Base class for every error raised by this package."""


class ResourceLimitError(AutomataError):
    """A horizon or period bound exceeds the configured cap."""


class UnknownBodyError(AutomataError, KeyError):
    """A body id or periodic copy does not exist in the configuration."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class RuleError(AutomataError, ValueError):
    """A turn rule is malformed or could fire with an empty opposite edge."""


class RangeError(AutomataError, ValueError):
    """A time argument lies outside the simulated window."""


class InvalidKinematicsError(AutomataError, ValueError):
    """Velocities or proper-time rates outside their admissible domain."""


class LightLikeError(InvalidKinematicsError):
    """The body has zero proper-time velocity and therefore no frame."""


class InvalidFrameError(AutomataError, ValueError):
    """A frame map is singular or neither standard nor symmetric."""


class NotInertialError(AutomataError):
    """No configuration recurrence was found within the period bound."""


class ScenarioError(AutomataError, ValueError):
    """A scenario file failed to parse or validate.

    ``field`` names the offending location (``placements[2].dir``), and
    ``line``/``column`` are set for syntax errors.
    """

    def __init__(self, message: str, field: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field:
            where.append(field)
        prefix = f"{': '.join(where)}: " if where else ""
        super().__init__(prefix + message)
