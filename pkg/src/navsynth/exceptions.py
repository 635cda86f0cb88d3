"""
Exception hierarchy for navsynth.

Every error raised by the library derives from NavSynthError so the CLI can
map it to a validation-failure exit code.
"""

from typing import Any


class NavSynthError(Exception):
    """Base class for all navsynth errors."""


# Geodesy


class UndefinedBearingError(NavSynthError, ValueError):
    """Bearing requested between coincident or antipodal points."""


# Map bundle


class BundleError(NavSynthError):
    """Problem with a map bundle."""

    def __init__(self, message: str, diagnostics: list[Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class BundleParseError(BundleError):
    """A bundle record could not be parsed."""

    def __init__(
        self,
        message: str,
        file: str,
        line: int,
        field: str | None = None,
        diagnostics: list[Any] | None = None,
    ):
        super().__init__(f"{file}:{line}: {message}", diagnostics)
        self.file = file
        self.line = line
        self.field = field


class BundleValidationError(BundleError):
    """A bundle violates a load-time invariant."""


# Routing


class RoutingError(NavSynthError):
    """Routing on the street graph failed."""


class NoSnapError(RoutingError):
    """No street node lies within the snap tolerance of a point."""


class DisconnectedError(RoutingError):
    """Start and goal nodes lie in different components."""


# Sampling and relations


class SamplingError(NavSynthError):
    """A path sample could not be drawn."""


class NoEligibleGoalError(SamplingError):
    """The bundle has no entity small enough to be a goal."""


class NoEligibleStartError(SamplingError):
    """No entity lies in the start distance band around the goal."""


class NoCompatibleTemplateError(SamplingError):
    """No template in the pool fits the placeholders available for a sample."""


class UnnameableEntityError(NavSynthError):
    """An entity has neither a usable name nor a type tag."""


class DegenerateRouteError(NavSynthError):
    """Spatial features requested for a zero-length route."""


# Grammar


class GrammarError(NavSynthError):
    """Grammar file or template problem."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        location = ""
        if source:
            location = source
            if line is not None:
                location += f":{line}"
            location += ": "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(location + message)
        self.line = line
        self.source = source


class GrammarSyntaxError(GrammarError):
    """Malformed production line."""


class UndefinedNonterminalError(GrammarError):
    """A nonterminal is referenced but never defined."""


class GrammarRecursionError(GrammarError):
    """The production graph contains a cycle."""

    def __init__(self, cycle: list[str], line: int | None = None, source: str | None = None):
        super().__init__(f"recursion detected: {' -> '.join(cycle)}", line, source)
        self.cycle = cycle


class UnknownPlaceholderError(GrammarError):
    """A placeholder is not in the registry."""


class GrammarCapacityError(GrammarError):
    """Enumeration would exceed the template cap."""


class GrammarEncodingError(GrammarError):
    """Grammar file is not valid UTF-8."""


# Generation


class MissingFeatureError(NavSynthError):
    """A template placeholder has no value for the sample."""


class EmptyTemplatePoolError(NavSynthError):
    """The selected template pool contains no templates."""


class UnknownTemplateError(NavSynthError):
    """A record's template cannot be resolved for verification."""


class DatasetFormatError(NavSynthError):
    """A dataset or predictions line is malformed."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        prefix = f"{source}:{line}: " if source and line else (f"line {line}: " if line else "")
        super().__init__(prefix + message)
        self.line = line
        self.source = source


# Rewriting


class RewriterError(NavSynthError):
    """A rewriter failed to produce text."""


class FixtureMissError(RewriterError):
    """Fixture playback has no recording for a prompt."""


# Evaluation


class EmptyEvaluationError(NavSynthError):
    """Metrics requested over zero pairs."""


class UnmatchedPredictionError(NavSynthError):
    """Predictions reference ids missing from the dataset."""

    def __init__(self, ids: list[str]):
        shown = ", ".join(ids[:20])
        more = f" (+{len(ids) - 20} more)" if len(ids) > 20 else ""
        super().__init__(f"predictions reference unknown ids: {shown}{more}")
        self.ids = ids
