"""Scripted strategies over compiled Coins-are-Lava instances.

The two scripts realize the winning plays behind the Game SAT
reduction.  Intended gameplay has four phases: (1) set all variable
gadgets, steered by a Game SAT oracle; (2) fight over level-1 wires,
disabling the wrong ones and activating one survivor per relevant
variable; (3) the same fight one level up, over the level-2 wires out
of the root coin; (4) empty clause ropes and whittle every remaining
rope to its floor.  Progress is monotone (strings only die), so each
script is a priority waterfall re-evaluated every ply: the first stage
with work remaining supplies the move, and a lowest-id cleanup cut is
the final fallback.

The decisive facts the waterfalls are built on:

* A clause dies for good once any incident wire is disabled (the dead
  wire's last top strand freezes and supports the clause rope forever)
  or once its rope empties.  It survives to the end iff its rope holds
  a string while every incident top rope is empty.
* Disabling a rope is a factor of N cheaper than activating it, so a
  contested wire is always lost; wires are only won through freezes
  (a variable's last bottom strand, the root's last bottom strand) or
  by emptying the top rope first, which freezes the bottom at one.
* Keepers are therefore dynamic: "the lowest-id good wire still alive"
  rather than a precommitted choice.  Opposing scripts disable
  complementary sets, so both converge on sparing the same wire.
* Singleton clauses for variables with a single occurrence have no
  level-1 wires at all, so their survival rests entirely on their
  level-2 wire; both scripts treat those wires as urgent.

Legality does the rest: the Lava rules freeze any string whose cut
would free a coin, so "keep one wire per variable" and "the root stays
supported" are enforced by the board itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .engine import GameKind, LiveBoard, Player
from .errors import StrategyError
from .gamesat import Mover, winning_set_move
from .reduce import ReductionArtifact


class _Rope:
    """Alive counter plus a monotone lowest-alive cursor over one
    contiguous id range.  All strands of a rope share endpoints, so they
    are always equally legal; one representative id suffices."""

    __slots__ = ("start", "stop", "alive", "cursor")

    def __init__(self, rng: tuple[int, int]):
        self.start, self.stop = rng
        self.alive = self.stop - self.start
        self.cursor = self.start

    @property
    def width(self) -> int:
        return self.stop - self.start

    def lowest_alive(self, live: LiveBoard) -> int | None:
        while self.cursor < self.stop and not live.alive[self.cursor]:
            self.cursor += 1
        return self.cursor if self.cursor < self.stop else None

    def lowest_legal(self, live: LiveBoard) -> int | None:
        sid = self.lowest_alive(live)
        if sid is not None and live.is_legal(sid):
            return sid
        return None


@dataclass
class _Wire:
    index: int
    level: int
    source_var: int | None  # None for root wires
    target: str
    bottom: _Rope
    top: _Rope

    @property
    def hp(self) -> int:
        return self.bottom.alive

    @property
    def disabled(self) -> bool:
        return self.bottom.alive == 0

    @property
    def activated(self) -> bool:
        return self.top.alive == 0


class ArtifactTracker:
    """Incremental per-gadget state over a live board: rope counters,
    wire HP, clause dooms, and the induced variable assignment."""

    def __init__(self, artifact: ReductionArtifact, live: LiveBoard):
        self.artifact = artifact
        self.live = live
        self.rope_of: list[_Rope | None] = [None] * artifact.graph.string_count
        self.var_bottom: list[_Rope] = []
        self.var_top: list[_Rope] = []
        self.wires: list[_Wire] = []
        self.clause_rope: dict[str, _Rope] = {}
        self.clause_l1: dict[str, list[_Wire]] = {}
        self.clause_l2: dict[str, list[_Wire]] = {}
        self.clause_wires: dict[str, list[_Wire]] = {}
        self.pad: _Rope | None = None
        self._part: list[tuple[_Wire, str] | None] = [None] * artifact.graph.string_count
        for p in artifact.plan:
            if p.kind == "variable":
                bot, top = _Rope(p.bottom), _Rope(p.top)
                self.var_bottom.append(bot)
                self.var_top.append(top)
                self._register(bot)
                self._register(top)
            elif p.kind == "wire":
                src = int(p.source.split(":")[1]) if p.source.startswith("var:") else None
                w = _Wire(len(self.wires), p.level, src, p.target, _Rope(p.bottom), _Rope(p.top))
                self.wires.append(w)
                self._register(w.bottom)
                self._register(w.top)
                for sid in range(w.bottom.start, w.bottom.stop):
                    self._part[sid] = (w, "bottom")
                for sid in range(w.top.start, w.top.stop):
                    self._part[sid] = (w, "top")
            elif p.kind == "clause":
                rope = _Rope(p.rope)
                self.clause_rope[p.clause] = rope
                self._register(rope)
            elif p.kind == "pad":
                self.pad = _Rope(p.rope)
                self._register(self.pad)
        for w in self.wires:
            table = self.clause_l1 if w.level == 1 else self.clause_l2
            table.setdefault(w.target, []).append(w)
        self.clause_keys = [p.clause for p in artifact.plan if p.kind == "clause"]
        for key in self.clause_keys:
            self.clause_wires[key] = self.clause_l1.get(key, []) + self.clause_l2.get(key, [])

    def _register(self, rope: _Rope) -> None:
        for sid in range(rope.start, rope.stop):
            self.rope_of[sid] = rope

    def observe(self, sid: int) -> None:
        rope = self.rope_of[sid]
        if rope is None or rope.alive <= 0:
            raise StrategyError(f"tracker out of sync at string {sid}")
        rope.alive -= 1

    def wire_part(self, sid: int) -> tuple[_Wire, str] | None:
        return self._part[sid]

    def assignment(self) -> tuple[bool | None, ...]:
        out = []
        for bot, top in zip(self.var_bottom, self.var_top):
            if bot.alive and top.alive:
                out.append(None)
            elif top.alive:
                out.append(False)  # bottom cut
            else:
                out.append(True)  # top cut
        return tuple(out)

    def satisfied(self, key: str, assignment: tuple[bool | None, ...]) -> bool:
        if key == "empty":
            return True
        kind, _, idx = key.partition(":")
        if kind == "real":
            return all(assignment[v] is True for v in self.artifact.formula.clauses[int(idx)])
        return assignment[int(idx)] is True

    def doomed(self, key: str) -> bool:
        if self.clause_rope[key].alive == 0:
            return True
        return any(w.disabled for w in self.clause_wires[key])

    def census(self) -> dict:
        f = self.artifact.formula
        return {
            "variables": {
                f.names[i]: self.var_bottom[i].alive + self.var_top[i].alive
                for i in range(f.variable_count)
            },
            "wires": {str(w.index): w.bottom.alive + w.top.alive for w in self.wires},
            "clauses": {key: rope.alive for key, rope in self.clause_rope.items()},
            "pad": self.pad.alive if self.pad else 0,
        }


def is_fallon_terminal(census: dict) -> bool:
    return (
        all(v == 1 for v in census["variables"].values())
        and all(v == 1 for v in census["wires"].values())
        and all(v == 0 for v in census["clauses"].values())
    )


def is_trudy_terminal(census: dict) -> bool:
    clause_counts = sorted(census["clauses"].values())
    return (
        all(v == 1 for v in census["variables"].values())
        and all(v == 1 for v in census["wires"].values())
        and clause_counts[:-1] == [0] * (len(clause_counts) - 1)
        and clause_counts[-1] == 1
    )


class Policy:
    """Interface: reset before a playout, observe every cut by either
    player, choose a legal string id when it is this policy's turn."""

    name = "policy"
    phase: int | str = "-"

    def reset(self, artifact: ReductionArtifact | None, live: LiveBoard, seat: Player, seed: int) -> None:
        raise NotImplementedError

    def observe(self, sid: int, mine: bool) -> None:
        pass

    def choose(self) -> int:
        raise NotImplementedError


class UniformRandom(Policy):
    """Uniform choice among legal strings.  Keeps a candidate pool with
    lazy swap-removal; Lava illegality is monotone, so every discarded
    candidate is gone for good and the pool stays a superset of the
    legal set."""

    name = "random"

    def reset(self, artifact, live, seat, seed):
        self.live = live
        self.rng = random.Random(f"{seed}/{seat.value}")
        self.pool = list(range(live.board.string_count))

    def choose(self) -> int:
        while True:
            idx = self.rng.randrange(len(self.pool))
            sid = self.pool[idx]
            if self.live.is_legal(sid):
                return sid
            self.pool[idx] = self.pool[-1]
            self.pool.pop()


class GreedyDisabler(Policy):
    """Adversarial baseline: always cuts the lowest-id legal string in
    the lowest-HP non-empty bottom rope among the wires the targeted
    script classifies as good, stressing its HP-majority invariants.
    Falls back to lowest-id legal cuts."""

    name = "greedy"

    def __init__(self, artifact: ReductionArtifact, target_side: Mover):
        self.artifact = artifact
        self.target_side = target_side

    def reset(self, artifact, live, seat, seed):
        self.live = live
        self.tracker = ArtifactTracker(self.artifact, live)
        self.scan_at = 0

    def observe(self, sid, mine):
        self.tracker.observe(sid)

    def _good_wires(self) -> list[_Wire]:
        t = self.tracker
        assignment = t.assignment()
        f = self.artifact.formula
        goods = []
        if self.target_side is Mover.FALLON:
            for w in t.wires:
                if w.level == 1:
                    if assignment[w.source_var] is True and w.target.startswith("real:"):
                        goods.append(w)
                elif w.target != "empty" and t.clause_l1.get(w.target):
                    goods.append(w)
        else:
            c_idx = None
            for ci, clause in enumerate(f.clauses):
                if all(assignment[v] is True for v in clause):
                    c_idx = ci
                    break
            c_key = f"real:{c_idx}" if c_idx is not None else None
            for w in t.wires:
                if w.level == 1:
                    v = w.source_var
                    if (
                        c_idx is not None
                        and v in f.clauses[c_idx]
                        and (w.target == c_key or w.target == f"singleton:{v}")
                    ):
                        goods.append(w)
                elif w.target == "empty" or (
                    t.satisfied(w.target, assignment) and not t.doomed(w.target)
                ):
                    goods.append(w)
        return goods

    def choose(self) -> int:
        best = None
        best_key = None
        for w in self._good_wires():
            if w.hp == 0:
                continue
            sid = w.bottom.lowest_legal(self.live)
            if sid is None:
                continue
            key = (w.hp, w.index)
            if best_key is None or key < best_key:
                best, best_key = sid, key
        if best is not None:
            return best
        live = self.live
        total = live.board.string_count
        while self.scan_at < total:
            sid = self.scan_at
            if live.alive[sid] and live.is_legal(sid):
                return sid
            self.scan_at += 1
        raise StrategyError("asked to move with no legal cut available")


class _ScriptBase(Policy):
    """Shared waterfall machinery for the two scripts."""

    side: Mover

    def __init__(self, artifact: ReductionArtifact):
        self.artifact = artifact

    def reset(self, artifact, live, seat, seed):
        self.live = live
        self.seat = seat
        self.tracker = ArtifactTracker(self.artifact, live)
        self.scan_at = 0
        self.deferred: set[int] = set()
        self.last_opp: tuple[_Wire, str] | None = None
        self.phase = 1
        self._classified = False

    def observe(self, sid, mine):
        self.tracker.observe(sid)
        if not mine:
            self.last_opp = self.tracker.wire_part(sid)

    # -- phase 1 ------------------------------------------------------
    def _variable_move(self) -> int | None:
        t = self.tracker
        assignment = t.assignment()
        if None not in assignment:
            return None
        move = winning_set_move(self.artifact.formula, assignment, self.side)
        if move is None:
            move = self._fallback_set(assignment)
        v, value = move
        rope = t.var_top[v] if value else t.var_bottom[v]
        sid = rope.lowest_legal(self.live)
        if sid is not None:
            return sid
        # The intended string is frozen (cannot happen while unset, but
        # stay defensive): let later stages find a cut.
        return None

    def _fallback_set(self, assignment) -> tuple[int, bool]:
        raise NotImplementedError

    # -- generic helpers ----------------------------------------------
    def _disable_first(self, wires: list[_Wire]) -> int | None:
        for w in wires:
            if w.hp > 0:
                sid = w.bottom.lowest_legal(self.live)
                if sid is not None:
                    return sid
        return None

    def _activate_first(self, wires: list[_Wire]) -> int | None:
        for w in wires:
            if w.hp > 0 and not w.activated:
                sid = w.top.lowest_legal(self.live)
                if sid is not None:
                    return sid
        return None

    def _rope_cut(self, keys: list[str]) -> int | None:
        t = self.tracker
        for key in keys:
            rope = t.clause_rope[key]
            if rope.alive > 0:
                sid = rope.lowest_legal(self.live)
                if sid is not None:
                    return sid
        return None

    # -- guarded cleanup ----------------------------------------------
    def _survivor_exempt(self) -> set[str]:
        return set()

    def _protected_bottom(self, w: _Wire) -> bool:
        return False

    def _cleanup_blocked(self, sid: int) -> bool:
        t = self.tracker
        info = t.wire_part(sid)
        if info is None:
            return False
        w, part = info
        if part == "bottom":
            return self._protected_bottom(w)
        # Top cut: refuse to complete the all-tops-empty condition of a
        # clause that is neither doomed nor conceded, since that is the
        # one cut that can hand the opponent a surviving clause.
        if w.top.alive != 1:
            return False
        key = w.target
        if key in self._survivor_exempt() or t.doomed(key):
            return False
        for other in t.clause_wires[key]:
            if other is w or other.disabled:
                continue
            if other.top.alive > 0:
                return False
        return True

    def _cleanup_move(self) -> int:
        live = self.live
        for sid in sorted(self.deferred):
            if not live.alive[sid]:
                self.deferred.discard(sid)
                continue
            if live.is_legal(sid) and not self._cleanup_blocked(sid):
                self.deferred.discard(sid)
                return sid
        total = live.board.string_count
        while self.scan_at < total:
            sid = self.scan_at
            if not live.alive[sid] or not live.is_legal(sid):
                # Lava legality is monotone, so a skipped string never
                # becomes cuttable later.
                self.scan_at += 1
                continue
            if self._cleanup_blocked(sid):
                self.deferred.add(sid)
                self.scan_at += 1
                continue
            return sid
        for sid in sorted(self.deferred):
            if live.alive[sid] and live.is_legal(sid):
                return sid  # forced: only guarded cuts remain
        raise StrategyError("asked to move with no legal cut available")

    def choose(self) -> int:
        sid = self._variable_move()
        if sid is not None:
            return sid
        if not self._classified:
            self._classify()
            self._classified = True
        for stage_phase, stage in self._stages():
            sid = stage()
            if sid is not None:
                self.phase = max(self.phase, stage_phase)
                return sid
        self.phase = 4
        return self._cleanup_move()

    def _classify(self) -> None:
        raise NotImplementedError

    def _stages(self):
        raise NotImplementedError


class FallonScript(_ScriptBase):
    """Play for the formula-false side: doom every clause.

    Level-1 classes (from the final assignment): wires from true
    variables are good to real clauses, bad to singletons; wires from
    false variables are neutral.  Disable bads (responding in kind when
    the opponent hits a good wire), then neutrals and all but one good
    per true variable, and activate the keepers.  Level 2: wires into
    the empty clause or into a singleton with no level-1 wires are bad
    (the latter with racing priority, since activation alone would let
    that clause survive); disable them, keep the lowest good wire alive
    and activate it.  Finally empty every clause rope.
    """

    name = "fallon-script"
    side = Mover.FALLON

    def _fallback_set(self, assignment):
        return assignment.index(None), False

    def _classify(self):
        t = self.tracker
        assignment = t.assignment()
        self.l1_good: list[_Wire] = []
        self.l1_bad: list[_Wire] = []
        self.l1_neutral: list[_Wire] = []
        self.l2_good: list[_Wire] = []
        self.l2_empty: list[_Wire] = []
        self.l2_danger: list[_Wire] = []
        self.true_vars = [v for v, val in enumerate(assignment) if val is True]
        for w in t.wires:
            if w.level == 1:
                if assignment[w.source_var] is not True:
                    self.l1_neutral.append(w)
                elif w.target.startswith("real:"):
                    self.l1_good.append(w)
                else:
                    self.l1_bad.append(w)
            elif w.target == "empty":
                self.l2_empty.append(w)
            elif not t.clause_l1.get(w.target):
                self.l2_danger.append(w)
            else:
                self.l2_good.append(w)

    def _stages(self):
        return (
            (2, self._respond),
            (2, self._l1_bads),
            (3, self._danger_raced),
            (2, self._l1_rest),
            (2, self._l1_keepers),
            (3, self._l2_bads),
            (3, self._l2_surplus),
            (3, self._l2_keeper),
            (4, self._ropes),
        )

    def _respond(self):
        hit, self.last_opp = self.last_opp, None
        if hit is None:
            return None
        w, part = hit
        if part != "bottom" or w not in self.l1_good:
            return None
        same_var = [b for b in self.l1_bad if b.source_var == w.source_var]
        return self._disable_first(same_var)

    def _l1_bads(self):
        return self._disable_first(self.l1_bad)

    def _danger_raced(self):
        # A pumped level-2 wire into a no-level-1 singleton is a race
        # the opponent can win; kill those bottoms before anything else.
        pumped = [w for w in self.l2_danger if w.hp > 0 and w.top.alive < w.top.width]
        pumped.sort(key=lambda w: (w.top.alive, w.index))
        return self._disable_first(pumped)

    def _l1_rest(self):
        sid = self._disable_first(self.l1_neutral)
        if sid is not None:
            return sid
        for v in self.true_vars:
            alive = [w for w in self.l1_good if w.source_var == v and w.hp > 0]
            if len(alive) >= 2:
                sid = self._disable_first(alive[1:])
                if sid is not None:
                    return sid
        return None

    def _l1_keepers(self):
        for v in self.true_vars:
            alive = [w for w in self.l1_good if w.source_var == v and w.hp > 0]
            if alive:
                sid = self._activate_first(alive[:1])
                if sid is not None:
                    return sid
        return None

    def _l2_bads(self):
        danger = sorted(
            (w for w in self.l2_danger if w.hp > 0), key=lambda w: (w.top.alive, w.index)
        )
        sid = self._disable_first(danger)
        if sid is not None:
            return sid
        return self._disable_first(self.l2_empty)

    def _l2_surplus(self):
        alive = [w for w in self.l2_good if w.hp > 0]
        if len(alive) >= 2:
            return self._disable_first(alive[1:])
        return None

    def _l2_keeper(self):
        alive = [w for w in self.l2_good if w.hp > 0]
        return self._activate_first(alive[:1])

    def _ropes(self):
        return self._rope_cut(self.tracker.clause_keys)


class TrudyScript(_ScriptBase):
    """Play for the formula-true side: walk one clause to survival.

    A clause survives iff its rope outlives every incident top rope,
    and a wire whose top rope empties first has its bottom frozen at
    one string, beyond disabling.  So the script sets variables to
    satisfy the formula, picks the satisfied not-yet-doomed clause
    whose activation is best covered (judged against an HP-greedy
    attacker: total bottom strings such an attacker chews through
    before reaching the clause's level-2 wire, minus the tops still to
    pump), and empties that clause's top ropes.  Each empty-clause wire
    is wounded by one string first, pulling HP-ordered attackers onto
    those long sacrificial ropes before any candidate wire.  Wires the
    opponent is pumping toward a rival survivor are disabled with
    priority, and once the pump completes, every other clause still
    lacking a dead wire is disabled so exactly one survivor remains.
    Doomed clause ropes are emptied on spare tempo.
    """

    name = "trudy-script"
    side = Mover.TRUDY

    def _fallback_set(self, assignment):
        f = self.artifact.formula
        for clause in f.clauses:
            if all(assignment[v] is not False for v in clause):
                for v in sorted(clause):
                    if assignment[v] is None:
                        return v, True
        return assignment.index(None), True

    def _classify(self):
        self.c_prime: str | None = None

    # -- candidate bookkeeping ------------------------------------------
    def _candidates(self) -> list[str]:
        t = self.tracker
        assignment = t.assignment()
        out = []
        for key in t.clause_keys:
            if key == "empty" or t.doomed(key):
                continue
            if t.satisfied(key, assignment):
                out.append(key)
        return out

    def _activation_work(self, key: str) -> int:
        return sum(w.top.alive for w in self.tracker.clause_wires[key] if not w.disabled)

    def _threat_wires(self) -> list[_Wire]:
        t = self.tracker
        assignment = t.assignment()
        out = []
        for u in t.wires:
            if u.level != 2 or u.hp == 0:
                continue
            if u.target == "empty" or (
                t.satisfied(u.target, assignment) and not t.doomed(u.target)
            ):
                out.append(u)
        return out

    def _margin(self, key: str) -> int:
        l2 = [w for w in self.tracker.clause_l2[key] if not w.disabled]
        if not l2:
            return -(10**9)
        w = l2[0]
        distance = sum(
            u.hp
            for u in self._threat_wires()
            if u is not w and (u.hp, u.index) < (w.hp, w.index)
        )
        return distance - self._activation_work(key)

    def _refresh_c_prime(self) -> None:
        cands = self._candidates()
        if self.c_prime in cands:
            return
        self.c_prime = max(cands, key=lambda k: (self._margin(k), k), default=None)

    def _protected(self) -> set[int]:
        if self.c_prime is None:
            return set()
        return {w.index for w in self.tracker.clause_wires[self.c_prime] if not w.disabled}

    def _protected_bottom(self, w):
        return w.index in self._protected()

    def _survivor_exempt(self):
        return {self.c_prime} if self.c_prime is not None else set()

    def _cleanup_blocked(self, sid):
        if super()._cleanup_blocked(sid):
            return True
        if self.c_prime is not None:
            rope = self.tracker.clause_rope[self.c_prime]
            if rope.start <= sid < rope.stop and rope.alive == 1:
                return True
        return False

    def _stages(self):
        self._refresh_c_prime()
        return (
            (2, self._wounds),
            (3, self._urgent),
            (2, self._pump),
            (3, self._post_sweep),
            (4, self._ropes),
        )

    def _wounds(self):
        for w in self.tracker.wires:
            if (
                w.level == 2
                and w.target == "empty"
                and w.bottom.alive == w.bottom.width
                and w.bottom.width >= 2
            ):
                sid = w.bottom.lowest_legal(self.live)
                if sid is not None:
                    return sid
        return None

    def _urgent(self):
        t = self.tracker
        protected = self._protected()
        raced = [
            w
            for w in t.wires
            if w.level == 2
            and w.hp > 0
            and w.index not in protected
            and w.target != "empty"
            and not t.doomed(w.target)
            and w.top.alive < w.top.width
        ]
        raced.sort(key=lambda w: (w.top.alive, w.index))
        return self._disable_first(raced)

    def _pump(self):
        if self.c_prime is None:
            return None
        pump = [w for w in self.tracker.clause_wires[self.c_prime] if w.hp > 0 and not w.activated]
        pump.sort(key=lambda w: (w.top.alive, w.index))
        return self._activate_first(pump)

    def _post_sweep(self):
        if self.c_prime is None or self._activation_work(self.c_prime) > 0:
            return None
        t = self.tracker
        protected = self._protected()
        rest = [
            w
            for w in t.wires
            if w.level == 2
            and w.hp > 0
            and w.index not in protected
            and w.target != "empty"
            and not t.doomed(w.target)
        ]
        return self._disable_first(rest)

    def _ropes(self):
        t = self.tracker
        return self._rope_cut([k for k in t.clause_keys if t.doomed(k)])


@dataclass
class PlayoutRecord:
    winner: Player
    stuck: Player
    plies: int
    lines: list[str] = field(default_factory=list)
    census: dict = field(default_factory=dict)
    policy_names: tuple[str, str] = ("", "")

    def transcript_text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def summary(self) -> dict:
        return {
            "winner": self.winner.value,
            "stuck": self.stuck.value,
            "plies": self.plies,
            "p1": self.policy_names[0],
            "p2": self.policy_names[1],
            "census": self.census,
        }


def playout(
    artifact: ReductionArtifact,
    policy_p1: Policy,
    policy_p2: Policy,
    seed: int = 0,
    max_plies: int | None = None,
) -> PlayoutRecord:
    """Run one Coins-are-Lava game to the end; deterministic given the
    seed and the policies.  Raises StrategyError if a policy emits an
    illegal move (a test failure signal, never auto-corrected)."""
    live = LiveBoard(artifact.graph, GameKind.COINS_ARE_LAVA, Player.P1)
    policy_p1.reset(artifact, live, Player.P1, seed)
    policy_p2.reset(artifact, live, Player.P2, seed)
    labels = artifact.graph.labels
    lines: list[str] = []
    ply = 0
    cap = max_plies if max_plies is not None else artifact.graph.string_count + 1
    while live.has_legal_move():
        if ply >= cap:
            raise StrategyError(f"playout exceeded {cap} plies")
        mover = live.mover
        policy = policy_p1 if mover is Player.P1 else policy_p2
        sid = policy.choose()
        if not live.is_legal(sid):
            raise StrategyError(
                f"policy {policy.name} at seat {mover.value} chose illegal string {sid}"
            )
        live.cut(sid)
        ply += 1
        lines.append(
            f"ply {ply} {mover.value} cut {sid} # {labels.get(sid, '-')} phase={policy.phase}"
        )
        policy_p1.observe(sid, mover is Player.P1)
        policy_p2.observe(sid, mover is Player.P2)
    stuck = live.mover
    census = _final_census(artifact, live)
    return PlayoutRecord(
        winner=stuck.other,
        stuck=stuck,
        plies=ply,
        lines=lines,
        census=census,
        policy_names=(policy_p1.name, policy_p2.name),
    )


def _final_census(artifact: ReductionArtifact, live: LiveBoard) -> dict:
    f = artifact.formula

    def alive_in(rng: tuple[int, int]) -> int:
        return sum(1 for sid in range(rng[0], rng[1]) if live.alive[sid])

    variables = {}
    wires = {}
    clauses = {}
    pad = 0
    wi = 0
    for p in artifact.plan:
        if p.kind == "variable":
            variables[f.names[p.var]] = alive_in(p.bottom) + alive_in(p.top)
        elif p.kind == "wire":
            wires[str(wi)] = alive_in(p.bottom) + alive_in(p.top)
            wi += 1
        elif p.kind == "clause":
            clauses[p.clause] = alive_in(p.rope)
        elif p.kind == "pad":
            pad = alive_in(p.rope)
    return {"variables": variables, "wires": wires, "clauses": clauses, "pad": pad}


def script_for(side: Mover, artifact: ReductionArtifact) -> Policy:
    return TrudyScript(artifact) if side is Mover.TRUDY else FallonScript(artifact)
