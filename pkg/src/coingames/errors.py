"""Exception types shared across the package."""


class CoinGameError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CoinGameError):
    """A text input (board, formula, or transcript) is malformed."""


class InvalidEndpoint(CoinGameError):
    """A string endpoint references a coin index that does not exist."""


class DegenerateInput(CoinGameError):
    """The board contains a self-loop, which the game engines reject."""


class IllegalMove(CoinGameError):
    """A move was attempted that the rules do not allow."""


class BudgetExceeded(CoinGameError):
    """An exact solve was requested on a position above the size budget."""


class FormulaError(CoinGameError):
    """A DNF formula violates an input precondition (empty or too-small
    clause, unused variable, or evaluation with unset variables)."""


class ReductionError(CoinGameError):
    """A reduction cannot be built: bad parameters (chain too short,
    string cap exceeded) or an input whose game value is Unresolved."""


class StrategyError(CoinGameError):
    """A scripted strategy hit an unrecoverable inconsistency: the board
    contradicts its tracker, a required oracle is missing, or a policy
    emitted an illegal move during a playout."""
