"""Exception and warning types shared across the library."""


class GramevoError(Exception):
    """Base class for all errors raised by this package."""


# --- grammar ---------------------------------------------------------------

class GrammarError(GramevoError):
    """Base class for grammar-file problems."""


class GrammarSyntaxError(GrammarError):
    """Structurally malformed grammar text (stray text, empty rule name, ...)."""


class NoRules(GrammarError):
    """The grammar text contains no rule definitions."""


class UnterminatedNonterminal(GrammarError):
    """A ``<`` without a matching ``>`` inside a production."""


class EmptyProduction(GrammarError):
    """A rule alternative with no symbols at all."""

    def __init__(self, rule: str):
        self.rule = rule
        super().__init__(f"rule <{rule}> has an empty alternative")


class UndefinedNonterminal(GrammarError):
    """A production references a nonterminal that has no rule."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"nonterminal <{name}> is referenced but never defined")


class UnknownNonterminal(GrammarError):
    """Lookup of a nonterminal that is not part of the grammar."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"grammar has no rule for <{name}>")


class InfiniteGrammar(GrammarError):
    """Every derivation from some nonterminal is unavoidably recursive."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"nonterminal <{name}> can never derive an all-terminal sentence"
        )


# --- mapping ---------------------------------------------------------------

class IncompleteTree(GramevoError):
    """A derivation tree still contains unexpanded nonterminal leaves."""


# --- expressions -----------------------------------------------------------

class FormulaSyntaxError(GramevoError):
    """Formula text that cannot be parsed; carries the 0-based offset."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"syntax error at position {position}: {message}")


class UnknownToken(FormulaSyntaxError):
    """An identifier or character the formula language does not know."""

    def __init__(self, token: str, position: int):
        self.token = token
        super().__init__(position, f"unknown token {token!r}")


# --- primes / datasets -----------------------------------------------------

class LimitTooSmall(GramevoError):
    """Sieve limit below the first prime."""


class OutOfTableRange(GramevoError):
    """Query beyond the range covered by a prime table."""


class TableTooSmall(GramevoError):
    """Prime table does not hold enough primes for the requested dataset."""


class EmptyDataset(GramevoError):
    """A dataset with no points."""


class FormatError(GramevoError):
    """Malformed dataset file; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


# --- engine ----------------------------------------------------------------

class DegenerateLength(UserWarning):
    """Crossover on genomes too short to cut; parents returned unchanged."""


# --- cli -------------------------------------------------------------------

class ConfigError(GramevoError):
    """Bad run-configuration file or inconsistent option values."""
