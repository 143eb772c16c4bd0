"""Exception hierarchy shared by all solenoidlab modules."""


class SolenoidError(Exception):
    """Base class for all errors raised by this package."""


class SpecInvalidError(SolenoidError):
    """A map family violates one of the structural hypotheses (CLI exit code 2)."""


class CapExceededError(SolenoidError):
    """An enumeration would exceed the configured cylinder cap (CLI exit code 3)."""


class WordTooShortError(SolenoidError):
    """A backward word is too short for the requested coding tolerance."""


class ResolutionError(SolenoidError):
    """A requested radius or scale lies below the resolution of the data."""


class ConfigError(SolenoidError):
    """A run configuration file is missing, malformed, or inconsistent."""
