"""Multigraph boards for string-cutting games.

Coins are vertices and strings are edges.  A string normally joins two
coins, but either endpoint may instead be the ground: a shared, absent
endpoint that never scores and is never freed.  Parallel strings are
allowed and stored individually, each with its own dense id.  String ids
are stable: game play never re-indexes a board, it only marks strings
dead in a separate alive set.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator

from .errors import InvalidEndpoint, ParseError

# Endpoint encoding: a coin index (>= 0) or GROUND.
GROUND = -1


def is_coin(endpoint: int) -> bool:
    return endpoint >= 0


@dataclass(frozen=True)
class StringEdge:
    """One string.  Endpoints are unordered; (a, b) equals (b, a)."""

    id: int
    a: int
    b: int

    def endpoints(self) -> tuple[int, int]:
        return (self.a, self.b)

    def coin_endpoints(self) -> tuple[int, ...]:
        return tuple(e for e in (self.a, self.b) if is_coin(e))

    def touches(self, coin: int) -> bool:
        return self.a == coin or self.b == coin

    def other_end(self, coin: int) -> int:
        """The endpoint opposite ``coin``; for a self-loop returns ``coin``."""
        return self.b if self.a == coin else self.a

    def pair(self) -> tuple[int, int]:
        """Order-normalized endpoint pair, usable as a rope key."""
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)

    def is_self_loop(self) -> bool:
        return is_coin(self.a) and self.a == self.b


@dataclass(frozen=True)
class Multigraph:
    """An immutable board: ``coin_count`` coins and a dense string list.

    ``labels`` optionally maps string ids to provenance text (which
    reduction gadget created the string).  Labels never affect game
    semantics or serialization.
    """

    coin_count: int = 0
    strings: tuple[StringEdge, ...] = ()
    labels: dict[int, str] = field(default_factory=dict)

    @property
    def string_count(self) -> int:
        return len(self.strings)

    @cached_property
    def has_self_loop(self) -> bool:
        return any(s.is_self_loop() for s in self.strings)

    def degree(self, coin: int) -> int:
        """Number of string endpoints at ``coin``; a self-loop counts 2."""
        return sum((s.a == coin) + (s.b == coin) for s in self.strings)

    def degrees(self) -> list[int]:
        deg = [0] * self.coin_count
        for s in self.strings:
            if is_coin(s.a):
                deg[s.a] += 1
            if is_coin(s.b):
                deg[s.b] += 1
        return deg

    def incidence(self) -> list[list[int]]:
        """String ids incident to each coin, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.coin_count)]
        for s in self.strings:
            if is_coin(s.a):
                inc[s.a].append(s.id)
            if is_coin(s.b) and s.b != s.a:
                inc[s.b].append(s.id)
        return inc

    def _check_endpoint(self, e: int) -> None:
        if e != GROUND and not (0 <= e < self.coin_count):
            raise InvalidEndpoint(f"endpoint {e} out of range (coins: {self.coin_count})")


@dataclass
class GraphBuilder:
    """Single-owner mutable builder; ``build()`` freezes the result."""

    coin_count: int = 0
    _strings: list[StringEdge] = field(default_factory=list)
    _labels: dict[int, str] = field(default_factory=dict)

    def add_coin(self) -> int:
        self.coin_count += 1
        return self.coin_count - 1

    def add_coins(self, n: int) -> list[int]:
        return [self.add_coin() for _ in range(n)]

    def add_string(self, a: int, b: int, label: str | None = None) -> int:
        for e in (a, b):
            if e != GROUND and not (0 <= e < self.coin_count):
                raise InvalidEndpoint(f"endpoint {e} out of range (coins: {self.coin_count})")
        sid = len(self._strings)
        self._strings.append(StringEdge(sid, a, b))
        if label is not None:
            self._labels[sid] = label
        return sid

    def add_rope(self, a: int, b: int, width: int, label: str | None = None) -> list[int]:
        if width < 1:
            raise ValueError("rope width must be >= 1")
        return [self.add_string(a, b, label) for _ in range(width)]

    def build(self) -> Multigraph:
        return Multigraph(self.coin_count, tuple(self._strings), dict(self._labels))


def add_coin(g: Multigraph) -> tuple[Multigraph, int]:
    return replace(g, coin_count=g.coin_count + 1), g.coin_count


def add_string(g: Multigraph, a: int, b: int) -> tuple[Multigraph, int]:
    g._check_endpoint(a)
    g._check_endpoint(b)
    sid = g.string_count
    return replace(g, strings=g.strings + (StringEdge(sid, a, b),)), sid


def add_rope(g: Multigraph, a: int, b: int, width: int) -> tuple[Multigraph, list[int]]:
    if width < 1:
        raise ValueError("rope width must be >= 1")
    ids = []
    for _ in range(width):
        g, sid = add_string(g, a, b)
        ids.append(sid)
    return g, ids


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    """Concatenate two boards; h's coins and strings are re-indexed after g's."""
    coin_off = g.coin_count
    sid_off = g.string_count

    def shift(e: int) -> int:
        return e if e == GROUND else e + coin_off

    moved = tuple(
        StringEdge(s.id + sid_off, shift(s.a), shift(s.b)) for s in h.strings
    )
    labels = dict(g.labels)
    labels.update({sid + sid_off: lab for sid, lab in h.labels.items()})
    return Multigraph(g.coin_count + h.coin_count, g.strings + moved, labels)


def cycle_graph(n: int) -> Multigraph:
    """A cycle on ``n`` coins.  n=2 is a double edge; n=1 is a self-loop
    (representable, but game engines reject it)."""
    if n < 1:
        raise ValueError("cycle length must be >= 1")
    b = GraphBuilder()
    coins = b.add_coins(n)
    for i in range(n):
        b.add_string(coins[i], coins[(i + 1) % n])
    return b.build()


def canonical_text(g: Multigraph) -> str:
    """Deterministic text serialization; round-trips through parse_text."""
    lines = [f"coins {g.coin_count}"]
    for s in g.strings:
        ea = "ground" if s.a == GROUND else str(s.a)
        eb = "ground" if s.b == GROUND else str(s.b)
        lines.append(f"string {s.id} {ea} {eb}")
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Multigraph:
    """Parse the board text format.

    One record per line: a ``coins <count>`` header, then
    ``string <id> <end> <end>`` records where each end is a decimal coin
    index or the literal ``ground``.  Ids must appear in increasing order
    from 0.  ``#`` begins a comment line.
    """
    coin_count: int | None = None
    strings: list[StringEdge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "coins":
            if coin_count is not None:
                raise ParseError(f"line {lineno}: duplicate coins header")
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'coins <count>'")
            try:
                coin_count = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad coin count {parts[1]!r}") from None
            if coin_count < 0:
                raise ParseError(f"line {lineno}: negative coin count")
        elif parts[0] == "string":
            if coin_count is None:
                raise ParseError(f"line {lineno}: string record before coins header")
            if len(parts) != 4:
                raise ParseError(f"line {lineno}: expected 'string <id> <end> <end>'")
            try:
                sid = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad string id {parts[1]!r}") from None
            if sid != len(strings):
                raise ParseError(f"line {lineno}: string id {sid} out of order (expected {len(strings)})")
            ends = []
            for tok in parts[2:4]:
                if tok == "ground":
                    ends.append(GROUND)
                else:
                    try:
                        e = int(tok)
                    except ValueError:
                        raise ParseError(f"line {lineno}: bad endpoint {tok!r}") from None
                    if not (0 <= e < coin_count):
                        raise ParseError(f"line {lineno}: coin {e} out of range")
                    ends.append(e)
            strings.append(StringEdge(sid, ends[0], ends[1]))
        else:
            raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
    if coin_count is None:
        raise ParseError("missing coins header")
    return Multigraph(coin_count, tuple(strings))


def ropes(g: Multigraph, alive: Iterable[int] | None = None) -> dict[tuple[int, int], list[int]]:
    """Group (alive) strings into ropes by their endpoint pair."""
    keep = set(alive) if alive is not None else None
    out: dict[tuple[int, int], list[int]] = {}
    for s in g.strings:
        if keep is not None and s.id not in keep:
            continue
        out.setdefault(s.pair(), []).append(s.id)
    return out


def to_dot(
    g: Multigraph,
    *,
    string_colors: dict[int, str] | None = None,
    coin_names: dict[int, str] | None = None,
    graph_name: str = "board",
) -> str:
    """DOT export: coins as circles, one shared ground box, parallel
    strings drawn as parallel edges."""
    string_colors = string_colors or {}
    coin_names = coin_names or {}
    lines = [f"graph {graph_name} {{"]
    lines.append("  node [shape=circle];")
    uses_ground = any(s.a == GROUND or s.b == GROUND for s in g.strings)
    if uses_ground:
        lines.append('  ground [shape=box, label="ground"];')
    for c in range(g.coin_count):
        name = coin_names.get(c, f"c{c}")
        lines.append(f'  c{c} [label="{name}"];')
    for s in g.strings:
        na = "ground" if s.a == GROUND else f"c{s.a}"
        nb = "ground" if s.b == GROUND else f"c{s.b}"
        attrs = [f'tooltip="string {s.id}"']
        color = string_colors.get(s.id)
        if color:
            attrs.append(f'color="{color}"')
        lines.append(f"  {na} -- {nb} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_strings(g: Multigraph) -> Iterator[StringEdge]:
    return iter(g.strings)
