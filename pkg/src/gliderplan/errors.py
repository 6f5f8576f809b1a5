"""Exception types shared across the planner."""


class GliderPlanError(Exception):
    """Base class for all errors raised by this package."""


class FlowFormatError(GliderPlanError):
    """A flow archive file is malformed or violates a format invariant."""


class OutOfDomainError(GliderPlanError):
    """A horizontal query position lies outside the gridded flow domain."""


class LandContactError(GliderPlanError):
    """An interpolation stencil touched a fill-value (land) grid node."""


class ConfigError(GliderPlanError):
    """A mission or parameter configuration is invalid."""
