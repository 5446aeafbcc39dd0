"""Command-line surface: validate game files, decide words (exact or via the
bounded oracles), build and export the prefix automaton, hunt for words where
any-order play beats left-to-right play, generate random games, and play
interactive sessions against the engine."""
from __future__ import annotations

import argparse
import itertools
import sys

from .automaton import StateLimitExceeded, automaton_accepts, build_safe_l2r_automaton, export_dot
from .effects import adversarial_replacement, compute_effect_table, decide_lr, preferred_move
from .game import (
    FiniteRule,
    GameFormatError,
    GameValidationError,
    GenParams,
    load_game,
    parse_word,
    random_game,
    render_game,
    render_word,
)
from .regular import UnknownSymbolError
from .semantics import (
    IllegalMoveError,
    Move,
    Outcome,
    apply_call,
    apply_read,
    initial_config,
    solve_any_order_bounded,
    solve_lr_bounded,
    solve_multipass_bounded,
)

EXIT_OK = 0
EXIT_UNSAFE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_LIMIT = 4

_VERDICT_TEXT = {Outcome.WIN: "SAFE", Outcome.LOSE: "UNSAFE", Outcome.UNKNOWN: "UNKNOWN"}
_VERDICT_EXIT = {Outcome.WIN: EXIT_OK, Outcome.LOSE: EXIT_UNSAFE, Outcome.UNKNOWN: EXIT_UNKNOWN}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rewritegames",
                                     description="two-player rewriting games on words")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file")
    p.add_argument("file")

    p = sub.add_parser("decide", help="is a word safely rewritable left-to-right?")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--mode", choices=["effects", "lr-oracle", "any-oracle", "multipass"],
                   default="effects")
    p.add_argument("--k", type=int, default=None, help="extra passes (multipass mode only)")
    p.add_argument("--budget", type=int, default=None, help="call budget for oracle modes")
    p.add_argument("--romeo-len", type=int, default=None,
                   help="adversary word-length bound for regular rules (oracle modes)")

    p = sub.add_parser("automaton", help="build the safety automaton")
    p.add_argument("file")
    p.add_argument("--dot", default=None, help="write DOT output to this path")
    p.add_argument("--limit", type=int, default=10_000)

    p = sub.add_parser("compare", help="words where any-order play beats left-to-right play")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)

    p = sub.add_parser("gen", help="generate a random game")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--symbols", type=int, default=3)
    p.add_argument("--functions", type=int, default=1)
    p.add_argument("--rule-words", type=int, default=2)
    p.add_argument("--max-rule-len", type=int, default=2)
    p.add_argument("--regular", action="store_true")
    p.add_argument("--target-depth", type=int, default=2)

    p = sub.add_parser("play", help="interactive session against the engine")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--as", dest="role", choices=["juliet", "romeo"], required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="accepted for interface stability; engine play is deterministic")
    return parser


def _cmd_validate(args) -> int:
    try:
        load_game(args.file)
    except GameValidationError as exc:
        for violation in exc.violations:
            print(violation)
        return EXIT_USAGE
    print("OK")
    return EXIT_OK


def _cmd_decide(args) -> int:
    if args.k is not None and args.mode != "multipass":
        print("--k is only valid with --mode multipass", file=sys.stderr)
        return EXIT_USAGE
    if args.mode == "effects" and (args.budget is not None or args.romeo_len is not None):
        print("--budget/--romeo-len apply to oracle modes only", file=sys.stderr)
        return EXIT_USAGE
    game = load_game(args.file)
    word = parse_word(args.word, game.alphabet)
    budget = 10 if args.budget is None else args.budget
    romeo_len = 6 if args.romeo_len is None else args.romeo_len

    if args.mode == "effects":
        safe = decide_lr(game, word)
        print("SAFE" if safe else "UNSAFE")
        return EXIT_OK if safe else EXIT_UNSAFE
    if args.mode == "lr-oracle":
        verdict = solve_lr_bounded(game, word, budget, romeo_len)
    elif args.mode == "any-oracle":
        verdict = solve_any_order_bounded(game, word, budget, romeo_len)
    else:
        k = 1 if args.k is None else args.k
        verdict = solve_multipass_bounded(game, word, k, budget, romeo_len)
    print(_VERDICT_TEXT[verdict.outcome])
    return _VERDICT_EXIT[verdict.outcome]


def _cmd_automaton(args) -> int:
    game = load_game(args.file)
    aut = build_safe_l2r_automaton(game, state_limit=args.limit)
    print(f"STATES {len(aut.states)}")
    if args.dot is not None:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(export_dot(aut))
    return EXIT_OK


def _cmd_compare(args) -> int:
    game = load_game(args.file)
    table = compute_effect_table(game)
    total = 0
    for length in range(args.max_len + 1):
        for word in itertools.product(game.alphabet, repeat=length):
            if decide_lr(game, word, table):
                continue
            verdict = solve_any_order_bounded(game, word, args.budget)
            if verdict.outcome is Outcome.WIN:
                print(f"WITNESS {render_word(word)}")
                total += 1
    print(f"TOTAL {total}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    params = GenParams(
        n_symbols=args.symbols,
        n_functions=args.functions,
        rule_words=args.rule_words,
        max_rule_len=args.max_rule_len,
        regular=args.regular,
        target_depth=args.target_depth,
    )
    sys.stdout.write(render_game(random_game(args.seed, params)))
    return EXIT_OK


def _cursor_view(word, cursor) -> str:
    if not word:
        return "%e"
    parts = list(word)
    if cursor < len(parts):
        parts[cursor] = f"[{parts[cursor]}]"
    return " ".join(parts)


def _rule_text(game, sym) -> str:
    rule = game.replacement[sym]
    if isinstance(rule, FiniteRule):
        return f"rule {sym}: " + " , ".join(render_word(w) for w in rule.words)
    return f"rule {sym}: regex {rule.regex}"


def _read_command(prompt="> "):
    try:
        line = input(prompt)
    except EOFError:
        return ["quit"]
    tokens = line.strip().split()
    return tokens if tokens else []


def _cmd_play(args) -> int:
    game = load_game(args.file)
    word = parse_word(args.word, game.alphabet)
    table = compute_effect_table(game)
    cfg = initial_config(game, word)
    cache: dict = {}
    print(f"playing {'Juliet' if args.role == 'juliet' else 'Romeo'} on: {render_word(word)}")

    while cfg.cursor < len(cfg.word):
        sym = cfg.word[cfg.cursor]
        callable_here = sym in game.function_set
        print(f"word: {_cursor_view(cfg.word, cfg.cursor)}")

        if args.role == "juliet":
            print("moves: read call" if callable_here else "moves: read")
            tokens = _read_command()
            if not tokens:
                continue
            if tokens[0] == "quit":
                print("session ended")
                return EXIT_OK
            if tokens[0] == "read":
                cfg = apply_read(game, cfg)
            elif tokens[0] == "call":
                if not callable_here:
                    print(f"illegal move: {sym} is not a function symbol")
                    continue
                reply = adversarial_replacement(game, table, cfg.word, cfg.cursor, cfg.state)
                print(_rule_text(game, sym))
                print(f"romeo picks: {render_word(reply)}")
                cfg = apply_call(game, cfg, reply)
            else:
                print(f"illegal move: {' '.join(tokens)}")
        else:
            move = preferred_move(game, table, cfg.word, cfg.cursor, cfg.state, cache)
            if move is Move.READ:
                print("juliet move: read")
                cfg = apply_read(game, cfg)
            else:
                print("juliet move: call")
                print(_rule_text(game, sym))
                while True:
                    tokens = _read_command("pick> ")
                    if not tokens:
                        continue
                    if tokens[0] == "quit":
                        print("session ended")
                        return EXIT_OK
                    if tokens[0] != "pick":
                        print("enter: pick <word>  (or quit)")
                        continue
                    try:
                        reply = parse_word(" ".join(tokens[1:]), game.alphabet)
                        cfg = apply_call(game, cfg, reply)
                        break
                    except (ValueError, IllegalMoveError) as exc:
                        print(f"illegal pick: {exc}")

    won = cfg.state in game.target_dfa.finals
    print(f"pass complete: {render_word(cfg.word)}")
    print(f"result: {'JULIET WINS' if won else 'JULIET LOSES'}")
    return EXIT_OK


def run_cli(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "validate": _cmd_validate,
        "decide": _cmd_decide,
        "automaton": _cmd_automaton,
        "compare": _cmd_compare,
        "gen": _cmd_gen,
        "play": _cmd_play,
    }
    try:
        return handlers[args.command](args)
    except StateLimitExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    except (GameFormatError, GameValidationError, UnknownSymbolError, IllegalMoveError,
            OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_cli(sys.argv[1:]))
