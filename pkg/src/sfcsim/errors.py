"""Exception hierarchy shared across the simulator."""


class SfcSimError(Exception):
    """Base class for all package errors."""


class ConfigError(SfcSimError):
    """Malformed or inconsistent configuration input (CLI exit code 2)."""


class InvariantError(SfcSimError):
    """A runtime invariant was violated; always fatal (CLI exit code 3)."""


# -- topology -----------------------------------------------------------------

class DuplicateIdError(ConfigError):
    pass


class DanglingLinkError(ConfigError):
    pass


class DisconnectedGraphError(ConfigError):
    pass


class NoSuchLinkError(SfcSimError):
    pass


# -- catalog ------------------------------------------------------------------

class CatalogParseError(ConfigError):
    pass


class UnknownVnfReferenceError(ConfigError):
    pass


class MissingServiceClassError(ConfigError):
    pass


# -- environment --------------------------------------------------------------

class EpisodeFinishedError(SfcSimError):
    pass


class IncompleteRequestError(SfcSimError):
    pass


# -- telemetry ----------------------------------------------------------------

class SchemaError(SfcSimError):
    pass


# -- forecasting / agent ------------------------------------------------------

class SeriesTooShortError(SfcSimError):
    pass


class ShapeMismatchError(SfcSimError):
    pass


# -- ensemble -----------------------------------------------------------------

class DegenerateRangeError(SfcSimError):
    """Dynamic range of a feature is zero within a fold; caller picks policy."""


# -- placement ----------------------------------------------------------------

class NoFeasibleHostError(SfcSimError):
    pass


# -- tuning -------------------------------------------------------------------

class AllTrialsPrunedError(SfcSimError):
    pass


# -- metrics ------------------------------------------------------------------

class NoArrivalsError(SfcSimError):
    pass
