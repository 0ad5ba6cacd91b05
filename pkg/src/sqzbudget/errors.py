"""Exception types shared across the package."""


class DomainError(ValueError):
    """A physical quantity is outside its valid domain.

    Raised by model-level functions (negative variance, efficiency outside
    (0, 1], non-positive frequency, and so on).
    """


class ConfigError(ValueError):
    """A run configuration is malformed or inconsistent.

    Raised by the config parser and by cross-field validation. Messages
    name the offending key and the violated bound, and include the line
    number when the error comes from a config file.
    """
