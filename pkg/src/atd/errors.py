"""Exception types shared across the package."""


class AtdError(Exception):
    """Base class for all errors this package raises on bad input."""


class LexiconError(AtdError):
    """Malformed lexicon file content."""


class RulesetError(AtdError):
    """Malformed or invalid ruleset document."""


class EditError(AtdError):
    """Edits that overlap or fall outside their block."""


class ConfigError(AtdError):
    """Invalid proxy configuration."""
