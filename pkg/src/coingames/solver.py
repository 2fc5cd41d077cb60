"""Exact solvers for all three games, plus loony-position tools.

``solve`` does full-depth memoized search over alive-string bitmasks.
The memo key is the alive set alone: in Nimstring and Coins-are-Lava the
value "does the mover win" depends only on the alive set, and in
Strings-and-Coins the optimal future net score for the mover is
mover-symmetric (both players face identical move rights).

``naive_solve`` is an independent correctness oracle: direct recursion,
no memoization, no short-circuiting; every child is evaluated.  It is
factorially slow and capped at 12 strings.

A loony position has a degree-2 coin adjacent to exactly one degree-1
coin; the mover wins Nimstring from it with a scripted opening of one
or two cuts, chosen by solving the remainder graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import GameKind, GameState, Player
from .errors import BudgetExceeded, DegenerateInput
from .multigraph import GROUND, is_coin

DEFAULT_BUDGET = 24
NAIVE_BUDGET = 12


@dataclass(frozen=True)
class SolveResult:
    kind: GameKind
    winner_for_mover: bool | None = None
    net_for_mover: int | None = None
    principal_move: int | None = None
    states_visited: int = 0


@dataclass(frozen=True)
class LoonyWitness:
    """Strings a, b realizing the pattern: a joins degree-1 coin A to
    degree-2 coin B, b is B's other string, and A is the only degree-1
    coin adjacent to B."""

    a: int
    b: int
    coin_a: int
    coin_b: int


class _Search:
    def __init__(self, state: GameState):
        if state.board.has_self_loop:
            raise DegenerateInput("board has a self-loop")
        board = state.board
        self.ids = sorted(state.alive)
        self.ea = [board.strings[sid].a for sid in self.ids]
        self.eb = [board.strings[sid].b for sid in self.ids]
        self.deg = [0] * board.coin_count
        for a, b in zip(self.ea, self.eb):
            if is_coin(a):
                self.deg[a] += 1
            if is_coin(b):
                self.deg[b] += 1
        self.full_mask = (1 << len(self.ids)) - 1
        self.states = 0

    def moves(self, mask: int) -> tuple[list[int], list[int]]:
        """(freeing, non-freeing) move positions, each ascending."""
        freeing, plain = [], []
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            i = bit.bit_length() - 1
            if self._freed(i):
                freeing.append(i)
            else:
                plain.append(i)
        return freeing, plain

    def _freed(self, i: int) -> int:
        a, b = self.ea[i], self.eb[i]
        n = 0
        if is_coin(a) and self.deg[a] == 1:
            n += 1
        if is_coin(b) and b != a and self.deg[b] == 1:
            n += 1
        return n

    def _drop(self, i: int) -> None:
        a, b = self.ea[i], self.eb[i]
        if is_coin(a):
            self.deg[a] -= 1
        if is_coin(b):
            self.deg[b] -= 1

    def _restore(self, i: int) -> None:
        a, b = self.ea[i], self.eb[i]
        if is_coin(a):
            self.deg[a] += 1
        if is_coin(b):
            self.deg[b] += 1


def _nim_win(s: _Search, mask: int, memo: dict[int, bool]) -> bool:
    if mask == 0:
        return False
    cached = memo.get(mask)
    if cached is not None:
        return cached
    s.states += 1
    freeing, plain = s.moves(mask)
    win = False
    for i in freeing + plain:
        f = s._freed(i)
        s._drop(i)
        child = _nim_win(s, mask ^ (1 << i), memo)
        s._restore(i)
        if (f and child) or (not f and not child):
            win = True
            break
    memo[mask] = win
    return win


def _lava_win(s: _Search, mask: int, memo: dict[int, bool]) -> bool:
    cached = memo.get(mask)
    if cached is not None:
        return cached
    s.states += 1
    freeing, plain = s.moves(mask)
    win = False
    for i in plain:
        s._drop(i)
        child = _lava_win(s, mask ^ (1 << i), memo)
        s._restore(i)
        if not child:
            win = True
            break
    memo[mask] = win
    return win


def _sac_net(s: _Search, mask: int, memo: dict[int, int]) -> int:
    if mask == 0:
        return 0
    cached = memo.get(mask)
    if cached is not None:
        return cached
    s.states += 1
    freeing, plain = s.moves(mask)
    best = None
    for i in freeing + plain:
        f = s._freed(i)
        s._drop(i)
        child = _sac_net(s, mask ^ (1 << i), memo)
        s._restore(i)
        val = f + child if f else -child
        if best is None or val > best:
            best = val
    memo[mask] = best
    return best


def solve(state: GameState, kind: GameKind, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Exact optimal value of ``state`` under ``kind`` by memoized search."""
    if len(state.alive) > budget:
        raise BudgetExceeded(f"{len(state.alive)} alive strings exceed budget {budget}")
    s = _Search(state)
    mask0 = s.full_mask
    if kind is GameKind.STRINGS_AND_COINS:
        memo_n: dict[int, int] = {}
        net = _sac_net(s, mask0, memo_n)
        pm = None
        freeing, plain = s.moves(mask0)
        for i in freeing + plain:
            f = s._freed(i)
            s._drop(i)
            child = _sac_net(s, mask0 ^ (1 << i), memo_n)
            s._restore(i)
            if (f + child if f else -child) == net:
                pm = s.ids[i]
                break
        return SolveResult(kind, net_for_mover=net, principal_move=pm, states_visited=s.states)
    memo_b: dict[int, bool] = {}
    fn = _nim_win if kind is GameKind.NIMSTRING else _lava_win
    win = fn(s, mask0, memo_b)
    pm = None
    if win:
        freeing, plain = s.moves(mask0)
        order = freeing + plain if kind is GameKind.NIMSTRING else plain
        for i in order:
            f = s._freed(i)
            s._drop(i)
            child = fn(s, mask0 ^ (1 << i), memo_b)
            s._restore(i)
            if (f and child) or (not f and not child):
                pm = s.ids[i]
                break
    return SolveResult(kind, winner_for_mover=win, principal_move=pm, states_visited=s.states)


def naive_solve(state: GameState, kind: GameKind, budget: int = NAIVE_BUDGET) -> SolveResult:
    """Oracle twin of ``solve``: unmemoized, exhaustive, no short-circuit."""
    if len(state.alive) > budget:
        raise BudgetExceeded(f"{len(state.alive)} alive strings exceed naive budget {budget}")
    s = _Search(state)
    # The tree is factorial in the string count, so the degree updates
    # are inlined on locals; _Search rejects self-loops, hence a and b
    # are distinct coins whenever both are coins (GROUND is negative).
    ea, eb, deg = s.ea, s.eb, s.deg
    states = 0

    def nim(mask: int) -> bool:
        nonlocal states
        if mask == 0:
            return False
        states += 1
        win = False
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            i = bit.bit_length() - 1
            a, b = ea[i], eb[i]
            f = 0
            if a >= 0:
                if deg[a] == 1:
                    f += 1
                deg[a] -= 1
            if b >= 0:
                if deg[b] == 1:
                    f += 1
                deg[b] -= 1
            child = nim(mask ^ bit)
            if a >= 0:
                deg[a] += 1
            if b >= 0:
                deg[b] += 1
            win = win or (child if f else not child)
        return win

    def lava(mask: int) -> bool:
        nonlocal states
        states += 1
        win = False
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            i = bit.bit_length() - 1
            a, b = ea[i], eb[i]
            if (a >= 0 and deg[a] == 1) or (b >= 0 and deg[b] == 1):
                continue
            if a >= 0:
                deg[a] -= 1
            if b >= 0:
                deg[b] -= 1
            child = lava(mask ^ bit)
            if a >= 0:
                deg[a] += 1
            if b >= 0:
                deg[b] += 1
            win = win or not child
        return win

    def sac(mask: int) -> int:
        nonlocal states
        if mask == 0:
            return 0
        states += 1
        best = None
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            i = bit.bit_length() - 1
            a, b = ea[i], eb[i]
            f = 0
            if a >= 0:
                if deg[a] == 1:
                    f += 1
                deg[a] -= 1
            if b >= 0:
                if deg[b] == 1:
                    f += 1
                deg[b] -= 1
            child = sac(mask ^ bit)
            if a >= 0:
                deg[a] += 1
            if b >= 0:
                deg[b] += 1
            val = f + child if f else -child
            if best is None or val > best:
                best = val
        return best

    mask0 = s.full_mask
    if kind is GameKind.STRINGS_AND_COINS:
        net = sac(mask0)
        return SolveResult(kind, net_for_mover=net, states_visited=states)
    win = nim(mask0) if kind is GameKind.NIMSTRING else lava(mask0)
    return SolveResult(kind, winner_for_mover=win, states_visited=states)


def winner_of(state: GameState, kind: GameKind, result: SolveResult) -> Player | None:
    """Map a SolveResult back to an absolute winner (None = draw)."""
    if kind is GameKind.STRINGS_AND_COINS:
        lead = state.score(state.mover) - state.score(state.mover.other)
        total = lead + (result.net_for_mover or 0)
        if total > 0:
            return state.mover
        if total < 0:
            return state.mover.other
        return None
    return state.mover if result.winner_for_mover else state.mover.other


def find_loony_witnesses(state: GameState) -> list[LoonyWitness]:
    board = state.board
    deg = [0] * board.coin_count
    incident: list[list[int]] = [[] for _ in range(board.coin_count)]
    for sid in state.alive:
        s = board.strings[sid]
        for c in set(s.coin_endpoints()):
            deg[c] += (s.a == c) + (s.b == c)
            incident[c].append(sid)
    out = []
    for coin_b in range(board.coin_count):
        if deg[coin_b] != 2 or len(incident[coin_b]) != 2:
            continue
        degree1_neighbors = set()
        for sid in incident[coin_b]:
            other = board.strings[sid].other_end(coin_b)
            if is_coin(other) and deg[other] == 1:
                degree1_neighbors.add(other)
        if len(degree1_neighbors) != 1:
            continue
        coin_a = degree1_neighbors.pop()
        s1, s2 = sorted(incident[coin_b])
        a = s1 if board.strings[s1].touches(coin_a) else s2
        b = s2 if a == s1 else s1
        out.append(LoonyWitness(a, b, coin_a, coin_b))
    out.sort(key=lambda w: (w.a, w.b))
    return out


def loony_first_move(
    state: GameState, w: LoonyWitness, budget: int = DEFAULT_BUDGET
) -> list[int]:
    """Winning Nimstring opening from a loony position.

    Removing coins A and B removes exactly strings a and b (A carries
    only a; B carries a and b), leaving remainder G'.  Cutting a then b
    frees A then B, so both cuts are free moves and the mover plays
    first in G': do that when the mover wins Nimstring on G'.
    Otherwise cut only b and let the opponent face the lone a plus a
    remainder they cannot afford.
    """
    remainder = state.alive - {w.a, w.b}
    if len(remainder) > budget:
        raise BudgetExceeded(f"remainder has {len(remainder)} strings, budget {budget}")
    sub = GameState(state.board, frozenset(remainder), state.mover)
    res = solve(sub, GameKind.NIMSTRING, budget)
    return [w.a, w.b] if res.winner_for_mover else [w.b]
