"""Exception hierarchy shared across the package."""


class SpectraError(Exception):
    """Base class for every error raised by spectra."""


class ConfigurationError(SpectraError, ValueError):
    """A scenario, policy or mechanism refers to something invalid."""


class ScenarioError(ConfigurationError):
    """A scenario document violates the schema or a model invariant.

    ``path`` is the dotted location of the offending field and ``rule``
    names the violated constraint.
    """

    def __init__(self, path: str, rule: str):
        self.path = path
        self.rule = rule
        super().__init__(f"{path}: {rule}")


class InputError(SpectraError, ValueError):
    """Malformed engine input, e.g. duplicate sealed bids."""


class OracleBoundExceeded(SpectraError):
    """The instance is too large for exhaustive welfare search."""


class EngineError(SpectraError, RuntimeError):
    """An auction engine could not complete a run."""
