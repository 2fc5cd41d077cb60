"""Rule semantics for the three string-cutting games.

Strings-and-Coins: cutting a string that frees one or two coins scores
that many points and grants an immediate extra cut; most points wins,
draws possible.  Nimstring: same moves, no points, the first player
unable to move loses (so the player who cuts the last string loses,
because freeing keeps the turn).  Coins-are-Lava: cuts that would free
a coin are forbidden, every cut flips the mover, and the first player
with no legal cut loses.

A coin is freed when its alive degree drops to zero by a cut.
Ground endpoints never free anything.  Coins of degree zero at game
start are inert: never freed, never scored.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import DegenerateInput, IllegalMove
from .multigraph import GROUND, Multigraph, is_coin


class GameKind(Enum):
    STRINGS_AND_COINS = "sac"
    NIMSTRING = "nimstring"
    COINS_ARE_LAVA = "lava"

    @classmethod
    def from_text(cls, text: str) -> "GameKind":
        for kind in cls:
            if kind.value == text:
                return kind
        raise ValueError(f"unknown game kind {text!r}")


class Player(Enum):
    P1 = "P1"
    P2 = "P2"

    @property
    def other(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


@dataclass(frozen=True)
class GameState:
    """A position: immutable board reference, alive string ids, mover,
    and accumulated scores (meaningful for Strings-and-Coins only)."""

    board: Multigraph
    alive: frozenset[int]
    mover: Player = Player.P1
    scores: tuple[int, int] = (0, 0)

    def score(self, p: Player) -> int:
        return self.scores[0] if p is Player.P1 else self.scores[1]

    def alive_degree(self, coin: int) -> int:
        return sum(
            (s.a == coin) + (s.b == coin)
            for s in self.board.strings
            if s.id in self.alive
        )


@dataclass(frozen=True)
class Outcome:
    """winner None means a draw (possible only in Strings-and-Coins)."""

    winner: Player | None
    scores: tuple[int, int] = (0, 0)

    @property
    def winner_text(self) -> str:
        return "Draw" if self.winner is None else self.winner.value


def initial_state(board: Multigraph, mover: Player = Player.P1) -> GameState:
    if board.has_self_loop:
        raise DegenerateInput("board has a self-loop; freeing semantics undefined")
    return GameState(board, frozenset(range(board.string_count)), mover)


def _freed_coins(state: GameState, sid: int) -> tuple[int, ...]:
    """Coins whose last alive string is ``sid``."""
    s = state.board.strings[sid]
    freed = []
    for c in set(s.coin_endpoints()):
        if state.alive_degree(c) == 1:
            freed.append(c)
    return tuple(freed)


def legal_moves(state: GameState, kind: GameKind) -> set[int]:
    if kind is GameKind.COINS_ARE_LAVA:
        return {sid for sid in state.alive if not _freed_coins(state, sid)}
    return set(state.alive)


def apply_move(state: GameState, kind: GameKind, sid: int) -> GameState:
    if state.board.has_self_loop:
        raise DegenerateInput("board has a self-loop; freeing semantics undefined")
    if sid not in state.alive:
        raise IllegalMove(f"string {sid} is not alive")
    freed = _freed_coins(state, sid)
    if kind is GameKind.COINS_ARE_LAVA:
        if freed:
            raise IllegalMove(f"string {sid} would free coin(s) {freed}")
        return replace(state, alive=state.alive - {sid}, mover=state.mover.other)
    alive = state.alive - {sid}
    if freed:
        # Free move: the capturing player cuts again.
        scores = state.scores
        if kind is GameKind.STRINGS_AND_COINS:
            gain = len(freed)
            if state.mover is Player.P1:
                scores = (scores[0] + gain, scores[1])
            else:
                scores = (scores[0], scores[1] + gain)
        return replace(state, alive=alive, scores=scores)
    return replace(state, alive=alive, mover=state.mover.other)


def is_terminal(state: GameState, kind: GameKind) -> Outcome | None:
    if kind is GameKind.COINS_ARE_LAVA:
        if legal_moves(state, kind):
            return None
        return Outcome(state.mover.other)
    if state.alive:
        return None
    if kind is GameKind.NIMSTRING:
        # Normal play: the player due to move on the empty board loses.
        return Outcome(state.mover.other)
    p1, p2 = state.scores
    winner = Player.P1 if p1 > p2 else Player.P2 if p2 > p1 else None
    return Outcome(winner, state.scores)


class LiveBoard:
    """Mutable playout accelerator for one game on a fixed board.

    Tracks alive strings, alive coin degrees, mover, and scores with
    O(1) updates per cut.  For Coins-are-Lava it also maintains an exact
    count of legal strings, exploiting that illegality is monotone: once
    a coin's degree drops to 1 its last string can never become legal
    again, because degrees never rise.
    """

    def __init__(self, board: Multigraph, kind: GameKind, mover: Player = Player.P1):
        if board.has_self_loop:
            raise DegenerateInput("board has a self-loop; freeing semantics undefined")
        self.board = board
        self.kind = kind
        self.mover = mover
        self.scores = [0, 0]
        self.alive = [True] * board.string_count
        self.alive_count = board.string_count
        self.degree = board.degrees()
        self._ends = [(s.a, s.b) for s in board.strings]
        self._incidence = board.incidence()
        # frozen[sid] is True once cutting sid would free a coin.
        self.frozen = [False] * board.string_count
        self.legal_count = board.string_count
        for c in range(board.coin_count):
            if self.degree[c] == 1:
                self._freeze_last_string(c)

    def _freeze_last_string(self, coin: int) -> None:
        for sid in self._incidence[coin]:
            if self.alive[sid] and not self.frozen[sid]:
                self.frozen[sid] = True
                self.legal_count -= 1

    def freed_by(self, sid: int) -> int:
        a, b = self._ends[sid]
        n = 0
        if is_coin(a) and self.degree[a] == 1:
            n += 1
        if is_coin(b) and b != a and self.degree[b] == 1:
            n += 1
        return n

    def is_legal(self, sid: int) -> bool:
        if not self.alive[sid]:
            return False
        if self.kind is GameKind.COINS_ARE_LAVA:
            return not self.frozen[sid]
        return True

    def has_legal_move(self) -> bool:
        if self.kind is GameKind.COINS_ARE_LAVA:
            return self.legal_count > 0
        return self.alive_count > 0

    def legal_moves(self) -> list[int]:
        return [sid for sid in range(len(self.alive)) if self.is_legal(sid)]

    def cut(self, sid: int) -> int:
        """Apply a cut for the current mover; returns coins freed (0 in
        Coins-are-Lava, where freeing cuts raise IllegalMove)."""
        if not self.is_legal(sid):
            raise IllegalMove(f"string {sid} is not a legal cut")
        freed = self.freed_by(sid)
        if self.kind is GameKind.COINS_ARE_LAVA and freed:
            raise IllegalMove(f"string {sid} would free a coin")
        self.alive[sid] = False
        self.alive_count -= 1
        if not self.frozen[sid]:
            self.legal_count -= 1
        a, b = self._ends[sid]
        for c in (a, b) if a != b else (a,):
            if is_coin(c):
                self.degree[c] -= 1
                if self.degree[c] == 1:
                    self._freeze_last_string(c)
        if self.kind is GameKind.COINS_ARE_LAVA or not freed:
            self.mover = self.mover.other
        elif self.kind is GameKind.STRINGS_AND_COINS:
            self.scores[0 if self.mover is Player.P1 else 1] += freed
        return freed

    def outcome(self) -> Outcome | None:
        if self.kind is GameKind.COINS_ARE_LAVA:
            if self.legal_count > 0:
                return None
            return Outcome(self.mover.other)
        if self.alive_count > 0:
            return None
        if self.kind is GameKind.NIMSTRING:
            return Outcome(self.mover.other)
        p1, p2 = self.scores
        winner = Player.P1 if p1 > p2 else Player.P2 if p2 > p1 else None
        return Outcome(winner, (p1, p2))
