"""Command line interface.

Exit codes: 0 success, 1 a check or verification failed, 2 bad usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .engine import GameKind, Player, apply_move, initial_state, is_terminal, legal_moves
from .errors import CoinGameError, ParseError
from .gamesat import Mover, format_dnf, parse_dnf
from .multigraph import canonical_text, parse_text, to_dot
from .reduce import (
    artifact_from_json,
    artifact_to_json,
    compile_gamesat_to_lava,
    full_pipeline,
    reduce_lava_to_nimstring,
    reduce_nimstring_to_sac,
)
from .solver import solve, winner_of
from .strategy import FallonScript, GreedyDisabler, TrudyScript, UniformRandom, playout
from .verify import (
    LoonyPlanter,
    RandomMultigraphs,
    campaign_strategies,
    check_lemma1,
    check_lemma3,
    check_loony,
    check_oracle,
    check_skip_dominance,
    check_structure,
    parity_campaign,
    random_formula,
    random_multigraph,
)

KIND_NAMES = {"sac": GameKind.STRINGS_AND_COINS, "nimstring": GameKind.NIMSTRING, "lava": GameKind.COINS_ARE_LAVA}


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path: str):
    return parse_text(_read(path))


def _load_formula(path: str):
    return parse_dnf(_read(path))


def _player(text: str) -> Player:
    return Player.P1 if text.upper() == "P1" else Player.P2


def _mover(text: str) -> Mover:
    return Mover.TRUDY if text.lower() == "trudy" else Mover.FALLON


def _cmd_solve(args) -> int:
    kind = KIND_NAMES[args.game]
    state = initial_state(_load_graph(args.infile), _player(args.first))
    result = solve(state, kind, budget=args.budget)
    winner = winner_of(state, kind, result)
    if kind is GameKind.STRINGS_AND_COINS:
        net = result.net_for_mover or 0
        a = max(net, 0)
        b = max(-net, 0)
        if state.mover is Player.P2:
            a, b = b, a
    else:
        a = b = 0
    name = winner.value if winner else "Draw"
    print(f"winner={name} score={a}-{b} states={result.states_visited}")
    return 0


def _cmd_reduce(args) -> int:
    if args.reduction == "nim-to-sac":
        h = reduce_nimstring_to_sac(_load_graph(args.infile))
        _write(args.out, canonical_text(h))
        print(f"coins={h.coin_count} strings={h.string_count}")
        return 0
    if args.reduction == "lava-to-nim":
        h = reduce_lava_to_nimstring(_load_graph(args.infile), args.chain_len)
        _write(args.out, canonical_text(h))
        print(f"coins={h.coin_count} strings={h.string_count}")
        return 0
    formula = _load_formula(args.formula)
    first = _mover(args.first)
    if args.reduction == "gamesat-to-lava":
        artifact = compile_gamesat_to_lava(formula, args.N, first, string_cap=args.string_cap)
        _write(args.out, canonical_text(artifact.graph))
        if args.plan:
            _write(args.plan, artifact_to_json(artifact))
        print(
            f"predicted={artifact.predicted['gamesat_value']} first={first.value}"
            f" N={args.N} coins={artifact.graph.coin_count} strings={artifact.graph.string_count}"
        )
        return 0
    # pipeline: formula -> lava -> nimstring -> strings-and-coins
    artifact, nim_graph, sac_graph = full_pipeline(
        formula, args.N, first, chain_len=args.chain_len
    )
    _write(args.out_lava, canonical_text(artifact.graph))
    _write(args.out_nim, canonical_text(nim_graph))
    _write(args.out_sac, canonical_text(sac_graph))
    if args.plan:
        _write(args.plan, artifact_to_json(artifact))
    print(
        f"predicted={artifact.predicted['gamesat_value']}"
        f" lava={artifact.graph.string_count}"
        f" nimstring={nim_graph.string_count}"
        f" sac={sac_graph.string_count}"
    )
    return 0


def _emit_report(report, out: str | None) -> int:
    text = report.to_json()
    if out:
        _write(out, text)
    sys.stdout.write(text)
    return 0 if report.ok else 1


def _cmd_verify(args) -> int:
    if args.check == "oracle":
        gen = RandomMultigraphs(
            args.max_coins, args.max_strings, args.ground_prob, args.seed, small_bias=True
        )
        return _emit_report(check_oracle(gen, args.count), args.out)
    if args.check == "lemma1":
        gen = RandomMultigraphs(args.max_coins, args.max_strings, args.ground_prob, args.seed)
        return _emit_report(check_lemma1(gen, args.count), args.out)
    if args.check == "lemma3":
        gen = RandomMultigraphs(
            args.max_coins, args.max_strings, args.ground_prob, args.seed, no_isolated=True
        )
        return _emit_report(check_lemma3(gen, args.count), args.out)
    if args.check == "loony":
        gen = LoonyPlanter(args.seed)
        return _emit_report(check_loony(gen, args.count), args.out)
    if args.check == "structure":
        if args.formula:
            report = check_structure(_load_formula(args.formula), args.N, _mover(args.first))
            return _emit_report(report, args.out)
        rng = random.Random(args.seed)
        failures = 0
        rolled = []
        for _ in range(args.count):
            f = random_formula(rng, max_n=4, max_m=3)
            n_value = rng.choice((2, 3))
            report = check_structure(f, n_value, rng.choice((Mover.TRUDY, Mover.FALLON)))
            rolled.append({"formula": format_dnf(f), "N": n_value, "ok": report.ok})
            if not report.ok:
                failures += 1
                sys.stdout.write(report.to_json())
        summary = {"name": "structure-sweep", "seed": args.seed, "count": args.count, "fails": failures, "audits": rolled}
        text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
        if args.out:
            _write(args.out, text)
        sys.stdout.write(text)
        return 0 if failures == 0 else 1
    if args.check == "strategies":
        report = campaign_strategies(
            _load_formula(args.formula),
            _mover(args.first),
            N_values=tuple(range(args.N_min, args.N_max + 1)),
            seeds=args.seeds,
        )
        code = _emit_report(report, args.out)
        if report.details.get("minimal_N") is None:
            return 1
        return code
    if args.check == "parity":
        return _emit_report(parity_campaign(minimum=args.minimum), args.out)
    # skip-dominance
    return _emit_report(check_skip_dominance(args.max_n, args.max_m), args.out)


_POLICIES = ("random", "greedy", "trudy-script", "fallon-script")


def _make_policy(name: str, artifact):
    if name == "random":
        return UniformRandom()
    if name == "greedy":
        side = Mover.TRUDY if artifact.predicted["gamesat_value"] == "TrudyWins" else Mover.FALLON
        return GreedyDisabler(artifact, side)
    if name == "trudy-script":
        return TrudyScript(artifact)
    return FallonScript(artifact)


def _cmd_play(args) -> int:
    graph = _load_graph(args.infile)
    artifact = artifact_from_json(_read(args.plan), graph)
    record = playout(
        artifact,
        _make_policy(args.policy_a, artifact),
        _make_policy(args.policy_b, artifact),
        seed=args.seed,
    )
    text = record.transcript_text()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    print(record.summary())
    return 0


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.what == "multigraph":
        g = random_multigraph(rng, args.coins, args.strings, args.ground_prob)
        text = canonical_text(g)
    else:
        text = format_dnf(random_formula(rng, args.max_n, args.max_m))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_export_dot(args) -> int:
    graph = _load_graph(args.infile)
    colors = None
    names = None
    if args.plan:
        artifact = artifact_from_json(_read(args.plan), graph)
        colors = {}
        palette = {"variable": "firebrick", "wire": "steelblue", "clause": "darkgreen", "pad": "gray"}
        for plan in artifact.plan:
            for sid in plan.owned_ids():
                colors[sid] = palette[plan.kind]
        names = {artifact.root_coin: "root"}
    _write(args.out, to_dot(graph, string_colors=colors, coin_names=names))
    return 0


def _parse_transcript_line(line: str) -> int | None:
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    tokens = body.split()
    if tokens[0] == "cut" and len(tokens) == 2:
        return int(tokens[1])
    if len(tokens) >= 5 and tokens[0] == "ply" and tokens[3] == "cut":
        return int(tokens[4])
    raise ParseError(f"unrecognized transcript line: {line.strip()!r}")


def _cmd_replay(args) -> int:
    kind = KIND_NAMES[args.game]
    state = initial_state(_load_graph(args.infile), _player(args.first))
    plies = 0
    for line in _read(args.transcript).splitlines():
        sid = _parse_transcript_line(line)
        if sid is None:
            continue
        if sid not in legal_moves(state, kind):
            print(f"illegal cut {sid} at ply {plies + 1}", file=sys.stderr)
            return 1
        state = apply_move(state, kind, sid)
        plies += 1
    outcome = is_terminal(state, kind)
    if outcome is not None:
        a, b = outcome.scores
        print(f"winner={outcome.winner_text} score={a}-{b} plies={plies}")
    else:
        print(f"status=in-progress mover={state.mover.value} plies={plies}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coingames", description="String-cutting games toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a board exactly")
    p.add_argument("--game", choices=sorted(KIND_NAMES), required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--first", choices=("P1", "P2"), default="P1")
    p.add_argument("--budget", type=int, default=24, help="max strings the solver will accept")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("reduce", help="winner-preserving reductions")
    rsub = p.add_subparsers(dest="reduction", required=True)

    r = rsub.add_parser("nim-to-sac")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=_cmd_reduce)

    r = rsub.add_parser("lava-to-nim")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--chain-len", type=int, default=5)
    r.set_defaults(func=_cmd_reduce)

    r = rsub.add_parser("gamesat-to-lava")
    r.add_argument("--formula", required=True)
    r.add_argument("--N", type=int, required=True)
    r.add_argument("--first", choices=("trudy", "fallon"), required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--plan")
    r.add_argument("--string-cap", type=int, default=200000)
    r.set_defaults(func=_cmd_reduce)

    r = rsub.add_parser("pipeline")
    r.add_argument("--formula", required=True)
    r.add_argument("--N", type=int, required=True)
    r.add_argument("--first", choices=("trudy", "fallon"), required=True)
    r.add_argument("--out-lava", required=True)
    r.add_argument("--out-nim", required=True)
    r.add_argument("--out-sac", required=True)
    r.add_argument("--plan")
    r.add_argument("--chain-len", type=int, default=5)
    r.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="verification campaigns (JSON report)")
    vsub = p.add_subparsers(dest="check", required=True)

    v = vsub.add_parser("oracle")
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--max-coins", type=int, default=5)
    v.add_argument("--max-strings", type=int, default=10)
    v.add_argument("--ground-prob", type=float, default=0.3)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("lemma1")
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--max-coins", type=int, default=4)
    v.add_argument("--max-strings", type=int, default=7)
    v.add_argument("--ground-prob", type=float, default=0.3)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("lemma3")
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--max-coins", type=int, default=2)
    v.add_argument("--max-strings", type=int, default=4)
    v.add_argument("--ground-prob", type=float, default=0.4)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("loony")
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("structure")
    v.add_argument("--formula", help="audit one formula instead of a random sweep")
    v.add_argument("--N", type=int, default=2)
    v.add_argument("--first", choices=("trudy", "fallon"), default="trudy")
    v.add_argument("--count", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("strategies")
    v.add_argument("--formula", required=True)
    v.add_argument("--first", choices=("trudy", "fallon"), required=True)
    v.add_argument("--seeds", type=int, default=200)
    v.add_argument("--N-min", dest="N_min", type=int, default=2)
    v.add_argument("--N-max", dest="N_max", type=int, default=4)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("parity")
    v.add_argument("--minimum", type=int, default=50)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    v = vsub.add_parser("skip-dominance")
    v.add_argument("--max-n", type=int, default=3)
    v.add_argument("--max-m", type=int, default=3)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    p = sub.add_parser("play", help="run scripted or random policies on a compiled board")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--plan", required=True)
    p.add_argument("--policy-a", choices=_POLICIES, required=True)
    p.add_argument("--policy-b", choices=_POLICIES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("gen", help="generate fixtures")
    gsub = p.add_subparsers(dest="what", required=True)
    g = gsub.add_parser("multigraph")
    g.add_argument("--coins", type=int, required=True)
    g.add_argument("--strings", type=int, required=True)
    g.add_argument("--ground-prob", type=float, default=0.3)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)
    g = gsub.add_parser("formula")
    g.add_argument("--max-n", type=int, default=4)
    g.add_argument("--max-m", type=int, default=3)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)

    p = sub.add_parser("export-dot", help="Graphviz rendering, colored by gadget when a plan is given")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--plan")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export_dot)

    p = sub.add_parser("replay", help="validate a transcript against the rules")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--game", choices=sorted(KIND_NAMES), required=True)
    p.add_argument("--transcript", required=True)
    p.add_argument("--first", choices=("P1", "P2"), default="P1")
    p.set_defaults(func=_cmd_replay)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CoinGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
