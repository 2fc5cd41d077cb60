"""Verification harness: oracle equivalence sweeps, reduction
winner-preservation checks, loony batches, structural audits of the
compiler, skip-dominance enumeration, and scripted-strategy campaigns.

End-to-end brute force of the Game SAT compiler is infeasible (the
smallest legal instance at N=2 already has hundreds of strings), so the
evidence is layered: the two small reductions are checked exactly
against the solver, the compiler is audited structurally against its
closed forms by an independent graph recount, the parity rule is
audited on script-vs-script playouts, and the scripts must win whole
campaigns.  Reports carry replayable counterexamples and are
byte-reproducible for a fixed seed.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .engine import GameKind, GameState, Player, initial_state
from .errors import BudgetExceeded, StrategyError
from .gamesat import DnfFormula, GameSatValue, Mover, format_dnf, skip_dominance_check, solve_gamesat
from .multigraph import GROUND, GraphBuilder, Multigraph, canonical_text, ropes
from .reduce import (
    ReductionArtifact,
    closed_form_counts,
    compile_gamesat_to_lava,
    reduce_lava_to_nimstring,
    reduce_nimstring_to_sac,
    total_strings,
)
from .solver import find_loony_witnesses, loony_first_move, naive_solve, solve, winner_of
from .strategy import (
    FallonScript,
    GreedyDisabler,
    TrudyScript,
    UniformRandom,
    is_fallon_terminal,
    is_trudy_terminal,
    playout,
    script_for,
)

NAIVE_CROSSCHECK_LIMIT = 10  # strings; full-tree recursion above this is too slow


@dataclass
class CampaignReport:
    name: str
    seed: int | None = None
    count: int = 0
    passes: int = 0
    fails: int = 0
    skipped: int = 0
    details: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.fails == 0 and self.skipped == 0

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "seed": self.seed,
            "count": self.count,
            "passes": self.passes,
            "fails": self.fails,
            "skipped": self.skipped,
            "ok": self.ok,
            "details": self.details,
            "counterexamples": self.counterexamples,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def random_multigraph(
    rng: random.Random, coin_count: int, string_count: int, ground_prob: float
) -> Multigraph:
    """Random board without self-loops.  Each endpoint is ground with
    probability ``ground_prob``, otherwise a uniform coin."""
    b = GraphBuilder()
    b.add_coins(coin_count)
    for _ in range(string_count):
        while True:
            a = GROUND if coin_count == 0 or rng.random() < ground_prob else rng.randrange(coin_count)
            c = GROUND if coin_count == 0 or rng.random() < ground_prob else rng.randrange(coin_count)
            if a == c and a != GROUND:
                if coin_count == 1:
                    c = GROUND
                else:
                    continue
            break
        b.add_string(a, c)
    return b.build()


@dataclass
class RandomMultigraphs:
    """Seeded instance stream; self-loop free.  With ``no_isolated``,
    every coin of every instance touches at least one string: the
    Lava-to-Nimstring reduction is only claimed on that domain, because
    an isolated coin's first chain cut frees it and hands the cutter a
    free move into the loony position."""

    max_coins: int
    max_strings: int
    ground_prob: float
    seed: int
    no_isolated: bool = False
    small_bias: bool = False

    def _size(self, rng: random.Random, lo: int, hi: int) -> int:
        if self.small_bias:
            # Min of two draws: the naive full-expansion oracle is
            # factorial in string count, so most instances must be small
            # while the occasional one still reaches the cap.
            return min(rng.randint(lo, hi), rng.randint(lo, hi))
        return rng.randint(lo, hi)

    def instances(self, count: int):
        rng = random.Random(self.seed)
        for _ in range(count):
            while True:
                coins = self._size(rng, 1, self.max_coins)
                strings = self._size(rng, 0, self.max_strings)
                g = random_multigraph(rng, coins, strings, self.ground_prob)
                if not self.no_isolated:
                    break
                deg = g.degrees()
                if all(deg[c] > 0 for c in range(g.coin_count)):
                    break
            yield g


def random_formula(rng: random.Random, max_n: int = 4, max_m: int = 3) -> DnfFormula:
    """Random positive DNF meeting the compiler preconditions: every
    clause has at least 2 variables and every variable occurs."""
    n = rng.randint(2, max_n)
    m = rng.randint(1, max_m)
    clauses: list[frozenset[int]] = []
    for _ in range(m):
        size = rng.randint(2, n)
        clauses.append(frozenset(rng.sample(range(n), size)))
    used = set().union(*clauses)
    for v in range(n):
        if v not in used:
            i = rng.randrange(len(clauses))
            clauses[i] = clauses[i] | {v}
    seen = []
    for c in clauses:
        if c not in seen:
            seen.append(c)
    return DnfFormula(n, tuple(seen))


def enumerate_small_formulas(max_n: int, max_m: int):
    """All positive DNFs with n <= max_n variables and up to max_m
    distinct nonempty clauses (unused variables allowed)."""
    for n in range(1, max_n + 1):
        subsets = []
        for size in range(1, n + 1):
            for combo in itertools.combinations(range(n), size):
                subsets.append(frozenset(combo))
        for m in range(1, max_m + 1):
            for clause_combo in itertools.combinations(subsets, m):
                yield DnfFormula(n, tuple(clause_combo))


def _nim_winner(g: Multigraph) -> Player:
    state = initial_state(g)
    return winner_of(state, GameKind.NIMSTRING, solve(state, GameKind.NIMSTRING))


def check_oracle(gen: RandomMultigraphs, count: int) -> CampaignReport:
    """Memoized solver against the naive full-expansion recursion on
    every game kind: winners must agree, and for Strings-and-Coins the
    net score for the mover must agree exactly."""
    report = CampaignReport("oracle", seed=gen.seed, details={"comparisons": 0})
    for g in gen.instances(count):
        report.count += 1
        state = initial_state(g)
        mismatches = {}
        for kind in GameKind:
            fast = solve(state, kind)
            slow = naive_solve(state, kind)
            report.details["comparisons"] += 1
            if kind is GameKind.STRINGS_AND_COINS:
                agree = fast.net_for_mover == slow.net_for_mover
                got = {"fast": fast.net_for_mover, "naive": slow.net_for_mover}
            else:
                agree = fast.winner_for_mover == slow.winner_for_mover
                got = {"fast": fast.winner_for_mover, "naive": slow.winner_for_mover}
            if not agree:
                mismatches[kind.value] = got
        if mismatches:
            report.fails += 1
            report.counterexamples.append({"instance": canonical_text(g), "mismatches": mismatches})
        else:
            report.passes += 1
    return report


def check_lemma1(gen: RandomMultigraphs, count: int) -> CampaignReport:
    """Winner of Nimstring on G equals the winner of Strings-and-Coins
    on G plus a fresh cycle; draws on the point side count as
    mismatches.  A tenth of the instances are re-solved with the naive
    oracle on both sides (size permitting)."""
    report = CampaignReport("lemma1", seed=gen.seed, details={"crosschecked": 0, "draws": 0})
    for i, g in enumerate(gen.instances(count)):
        report.count += 1
        h = reduce_nimstring_to_sac(g)
        try:
            nim_state = initial_state(g)
            nim_winner = winner_of(nim_state, GameKind.NIMSTRING, solve(nim_state, GameKind.NIMSTRING))
            sac_state = initial_state(h)
            sac_winner = winner_of(sac_state, GameKind.STRINGS_AND_COINS, solve(sac_state, GameKind.STRINGS_AND_COINS))
        except BudgetExceeded:
            report.skipped += 1
            continue
        ok = sac_winner is not None and nim_winner == sac_winner
        if sac_winner is None:
            report.details["draws"] += 1
        if i % 10 == 0:
            crosscheck_ok = True
            nim_naive = naive_solve(nim_state, GameKind.NIMSTRING)
            if winner_of(nim_state, GameKind.NIMSTRING, nim_naive) != nim_winner:
                crosscheck_ok = False
            if h.string_count <= NAIVE_CROSSCHECK_LIMIT:
                sac_naive = naive_solve(sac_state, GameKind.STRINGS_AND_COINS)
                if winner_of(sac_state, GameKind.STRINGS_AND_COINS, sac_naive) != sac_winner:
                    crosscheck_ok = False
            report.details["crosschecked"] += 1
            ok = ok and crosscheck_ok
        if ok:
            report.passes += 1
        else:
            report.fails += 1
            report.counterexamples.append(
                {
                    "instance": canonical_text(g),
                    "nim_winner": nim_winner.value,
                    "sac_winner": sac_winner.value if sac_winner else "Draw",
                }
            )
    return report


def check_lemma3(gen: RandomMultigraphs, count: int, chain_len: int = 5) -> CampaignReport:
    """Winner of Coins-are-Lava on G equals the winner of Nimstring on
    G with every coin anchored to ground by a chain.

    Only claimed when every coin of G touches a string; feed a
    ``no_isolated`` generator.  On an isolated coin the first chain cut
    frees it, and the freshly earned move lands on a loony position, so
    the Nimstring side gains a winning escape that Lava lacks."""
    report = CampaignReport("lemma3", seed=gen.seed, details={"crosschecked": 0})
    for i, g in enumerate(gen.instances(count)):
        report.count += 1
        h = reduce_lava_to_nimstring(g, chain_len)
        try:
            lava_state = initial_state(g)
            lava_winner = winner_of(lava_state, GameKind.COINS_ARE_LAVA, solve(lava_state, GameKind.COINS_ARE_LAVA))
            nim_state = initial_state(h)
            nim_winner = winner_of(nim_state, GameKind.NIMSTRING, solve(nim_state, GameKind.NIMSTRING))
        except BudgetExceeded:
            report.skipped += 1
            continue
        ok = lava_winner == nim_winner
        if i % 10 == 0:
            lava_naive = naive_solve(lava_state, GameKind.COINS_ARE_LAVA)
            if winner_of(lava_state, GameKind.COINS_ARE_LAVA, lava_naive) != lava_winner:
                ok = False
            if h.string_count <= NAIVE_CROSSCHECK_LIMIT:
                nim_naive = naive_solve(nim_state, GameKind.NIMSTRING)
                if winner_of(nim_state, GameKind.NIMSTRING, nim_naive) != nim_winner:
                    ok = False
            report.details["crosschecked"] += 1
        if ok:
            report.passes += 1
        else:
            report.fails += 1
            report.counterexamples.append(
                {
                    "instance": canonical_text(g),
                    "lava_winner": lava_winner.value,
                    "nim_winner": nim_winner.value,
                }
            )
    return report


@dataclass
class LoonyPlanter:
    """Generates boards guaranteed to contain the loony pattern: fresh
    coins A (degree 1) and B (degree 2), string a joining them, string b
    from B to ground or to a base coin of degree at least 2."""

    seed: int
    max_base_coins: int = 3
    max_base_strings: int = 8
    ground_prob: float = 0.3

    def instances(self, count: int):
        rng = random.Random(self.seed)
        for _ in range(count):
            coins = rng.randint(0, self.max_base_coins)
            strings = rng.randint(0, self.max_base_strings)
            base = random_multigraph(rng, coins, strings, self.ground_prob)
            b = GraphBuilder()
            b.add_coins(base.coin_count)
            for s in base.strings:
                b.add_string(s.a, s.b)
            coin_b = b.add_coin()
            coin_a = b.add_coin()
            a_sid = b.add_string(coin_a, coin_b)
            deg = base.degrees()
            anchors = [c for c in range(base.coin_count) if deg[c] >= 2]
            if anchors and rng.random() < 0.5:
                target = rng.choice(anchors)
            else:
                target = GROUND
            b_sid = b.add_string(coin_b, target)
            yield b.build(), a_sid, b_sid


def check_loony(gen: LoonyPlanter, count: int) -> CampaignReport:
    """Every planted loony instance is a first-player Nimstring win, and
    the scripted opening (cut a then b when the remainder favors the
    mover, else cut b alone) is verified winning by search."""
    report = CampaignReport("loony", seed=gen.seed, details={"two_cut_lines": 0, "one_cut_lines": 0})
    from .engine import apply_move

    for g, a_sid, b_sid in gen.instances(count):
        report.count += 1
        state = initial_state(g)
        try:
            res = solve(state, GameKind.NIMSTRING)
            witnesses = find_loony_witnesses(state)
            planted = [w for w in witnesses if w.a == a_sid and w.b == b_sid]
            ok = bool(res.winner_for_mover) and bool(planted)
            if planted:
                line = loony_first_move(state, planted[0])
                if len(line) == 2:
                    report.details["two_cut_lines"] += 1
                else:
                    report.details["one_cut_lines"] += 1
                cur = state
                for sid in line:
                    cur = apply_move(cur, GameKind.NIMSTRING, sid)
                after = solve(cur, GameKind.NIMSTRING)
                ok = ok and winner_of(cur, GameKind.NIMSTRING, after) == state.mover
        except BudgetExceeded:
            report.skipped += 1
            continue
        if ok:
            report.passes += 1
        else:
            report.fails += 1
            report.counterexamples.append({"instance": canonical_text(g), "a": a_sid, "b": b_sid})
    return report


def recount_structure(graph: Multigraph, N: int) -> dict:
    """Plan-free structural recount: group strings into ropes by their
    endpoint pair, bucket ropes by width, and re-derive the construction
    counts.  Raises nothing; returns the observed numbers."""
    groups = ropes(graph)
    pad = 0
    width_buckets: dict[int, list[tuple[int, int]]] = {}
    for pair, ids in groups.items():
        if pair == (GROUND, GROUND):
            pad = len(ids)
            continue
        width_buckets.setdefault(len(ids), []).append(pair)

    def bucket(width: int) -> list[tuple[int, int]]:
        return width_buckets.get(width, [])

    singles = bucket(1)
    deg = graph.degrees()
    # Variable gadgets: width-1 ground rope and width-1 coin rope
    # sharing a degree-2 middle coin.
    mids = set()
    outs = []
    ground_singles = [p for p in singles if p[0] == GROUND]
    coin_singles = [p for p in singles if p[0] != GROUND]
    for gp in ground_singles:
        mids.add(gp[1])
    variables = 0
    for cp in coin_singles:
        x, y = cp
        if x in mids and deg[x] == 2:
            variables += 1
            outs.append(y)
        elif y in mids and deg[y] == 2:
            variables += 1
            outs.append(x)
    clause_ropes = [p for p in bucket(N**5) if GROUND in p]
    w1_bottom = len(bucket(N))
    w1_top = len(bucket(N * N))
    w2_bottom = len(bucket(N**3))
    w2_top = len(bucket(N**4))
    # The root coin carries every level-2 bottom rope.
    root_candidates = set()
    for pair in bucket(N**3):
        root_candidates = root_candidates & set(pair) if root_candidates else set(pair)
    root_degree = deg[next(iter(root_candidates))] if len(root_candidates) == 1 else None
    out_wire_counts = sorted(
        sum(1 for pair in bucket(N) if c in pair) for c in outs
    )
    counted = (
        len(singles)
        + w1_bottom * N
        + w1_top * N * N
        + w2_bottom * N**3
        + w2_top * N**4
        + len(bucket(N**5)) * N**5
        + pad
    )
    return {
        "variables": variables,
        "W1_bottom": w1_bottom,
        "W1_top": w1_top,
        "W2_bottom": w2_bottom,
        "W2_top": w2_top,
        "clause_gadgets": len(clause_ropes),
        "root_unique": len(root_candidates) == 1,
        "root_degree": root_degree,
        "out_wire_counts": out_wire_counts,
        "pad": pad,
        "total_strings": graph.string_count,
        "all_strings_counted": counted == graph.string_count,
    }


def check_structure(f: DnfFormula, N: int, first: Mover) -> CampaignReport:
    """Compile and audit one formula: the independent recount must match
    the closed forms exactly, including the parity pad."""
    report = CampaignReport("structure", details={"formula": format_dnf(f), "N": N})
    artifact = compile_gamesat_to_lava(f, N, first)
    observed = recount_structure(artifact.graph, N)
    cf = closed_form_counts(f)
    k = f.occurrences()
    expected_pad = artifact.predicted["pad"]
    expected = {
        "variables": f.variable_count,
        "W1_bottom": cf["W1"],
        "W1_top": cf["W1"],
        "W2_bottom": cf["W2"],
        "W2_top": cf["W2"],
        "clause_gadgets": cf["clause_gadgets"],
        "root_unique": True,
        "root_degree": cf["W2"] * N**3,
        "out_wire_counts": sorted(2 * kv - 1 for kv in k),
        "pad": 1 if expected_pad else 0,
        "total_strings": total_strings(f, N) + (1 if expected_pad else 0),
        "all_strings_counted": True,
    }
    mismatches = {
        key: {"expected": expected[key], "observed": observed[key]}
        for key in expected
        if expected[key] != observed[key]
    }
    report.count = len(expected)
    report.passes = len(expected) - len(mismatches)
    report.fails = len(mismatches)
    if mismatches:
        report.counterexamples.append({"formula": format_dnf(f), "N": N, "mismatches": mismatches})
    return report


def check_skip_dominance(max_n: int = 3, max_m: int = 3) -> CampaignReport:
    """Exhaustive: for every small positive DNF and both first movers,
    the value with skips equals the value without, and is never
    Unresolved."""
    report = CampaignReport("skip-dominance", details={"formulas": 0})
    for f in enumerate_small_formulas(max_n, max_m):
        report.details["formulas"] += 1
        for first in (Mover.TRUDY, Mover.FALLON):
            report.count += 1
            if skip_dominance_check(f, first):
                report.passes += 1
            else:
                report.fails += 1
                report.counterexamples.append(
                    {
                        "formula": format_dnf(f),
                        "first": first.value,
                        "with_skip": solve_gamesat(f, first, True).value,
                        "without_skip": solve_gamesat(f, first, False).value,
                    }
                )
    return report


def campaign_strategies(
    f: DnfFormula,
    first: Mover,
    N_values: tuple[int, ...] = (2, 3, 4),
    seeds: int = 200,
) -> CampaignReport:
    """Run the predicted winner's script against UniformRandom,
    GreedyDisabler, and the opposing script at each N until one N yields
    a perfect campaign; record that minimal N."""
    value = solve_gamesat(f, first, allow_skip=True)
    side = Mover.TRUDY if value is GameSatValue.TRUDY_WINS else Mover.FALLON
    report = CampaignReport(
        "strategies",
        details={
            "formula": format_dnf(f),
            "first": first.value,
            "predicted": value.value,
            "per_N": {},
            "minimal_N": None,
        },
    )
    for N in N_values:
        artifact = compile_gamesat_to_lava(f, N, first)
        script_seat = artifact.player_for(side)
        opponents = {
            "random": lambda: UniformRandom(),
            "greedy": lambda: GreedyDisabler(artifact, side),
            "opposing-script": lambda: script_for(side.other, artifact),
        }
        stats = {}
        all_ok = True
        for name, make in opponents.items():
            wins = 0
            losses = 0
            violations = 0
            census_ok = True
            for seed in range(seeds):
                script = script_for(side, artifact)
                opponent = make()
                try:
                    if script_seat is Player.P1:
                        record = playout(artifact, script, opponent, seed=seed)
                    else:
                        record = playout(artifact, opponent, script, seed=seed)
                except StrategyError:
                    violations += 1
                    losses += 1
                    continue
                if record.winner is script_seat:
                    wins += 1
                else:
                    losses += 1
                canonical = (
                    is_trudy_terminal(record.census)
                    if side is Mover.TRUDY
                    else is_fallon_terminal(record.census)
                )
                census_ok = census_ok and canonical
            stats[name] = {
                "wins": wins,
                "losses": losses,
                "violations": violations,
                "census_ok": census_ok,
            }
            all_ok = all_ok and losses == 0 and violations == 0 and census_ok
        report.details["per_N"][str(N)] = stats
        report.count += 1
        if all_ok:
            report.passes += 1
            report.details["minimal_N"] = N
            break
        report.fails += 1
        report.counterexamples.append({"N": N, "stats": stats})
    return report


def fallon_win_combos(max_n: int = 3, max_m: int = 3):
    """Compiler-legal small formulas (clauses >= 2 vars, no unused
    variable) whose Game SAT value is a Fallon win, paired with the
    first mover that yields it."""
    for f in enumerate_small_formulas(max_n, max_m):
        if any(len(c) < 2 for c in f.clauses) or 0 in f.occurrences():
            continue
        for first in (Mover.TRUDY, Mover.FALLON):
            if solve_gamesat(f, first, allow_skip=True) is GameSatValue.FALLON_WINS:
                yield f, first


def parity_campaign(
    N_values: tuple[int, ...] = (2, 3),
    max_n: int = 4,
    max_m: int = 3,
    minimum: int = 50,
) -> CampaignReport:
    """Script-vs-script playouts on small Fallon-win formulas: every
    playout must reach the canonical Fallon terminal, and the stuck
    mover there must be the Trudy-mapped player."""
    report = CampaignReport(
        "parity",
        details={"canonical_terminals": 0, "playouts": 0, "non_canonical": 0, "minimum": minimum},
    )
    jobs = [(f, first, N) for f, first in fallon_win_combos(max_n, max_m) for N in N_values]
    for f, first, N in jobs:
        if report.details["playouts"] >= minimum and report.fails == 0:
            break
        artifact = compile_gamesat_to_lava(f, N, first)
        fallon = FallonScript(artifact)
        trudy = TrudyScript(artifact)
        if artifact.fallon_player is Player.P1:
            record = playout(artifact, fallon, trudy, seed=0)
        else:
            record = playout(artifact, trudy, fallon, seed=0)
        report.details["playouts"] += 1
        report.count += 1
        case = {"formula": format_dnf(f), "first": first.value, "N": N, "census": record.census}
        if is_fallon_terminal(record.census):
            report.details["canonical_terminals"] += 1
            if record.stuck is artifact.trudy_player:
                report.passes += 1
            else:
                report.fails += 1
                case["stuck"] = record.stuck.value
                report.counterexamples.append(case)
        else:
            report.details["non_canonical"] += 1
            report.fails += 1
            case["problem"] = "non-canonical terminal in script-vs-script play"
            report.counterexamples.append(case)
    if report.details["canonical_terminals"] < minimum:
        report.fails += 1
        report.counterexamples.append(
            {"problem": "too few canonical terminals", "seen": report.details["canonical_terminals"]}
        )
    return report
