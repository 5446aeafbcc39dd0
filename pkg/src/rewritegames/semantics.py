"""Play-level semantics: the single-pass left-to-right game, the any-order
game, and the bounded multipass game, each solved by a memoized alternating
search that serves as an independent oracle; plus play simulation for
certificate checking."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .game import FiniteRule, Game, render_word
from .regular import Nfa, UnknownSymbolError, Word, determinize, dfa_run, enumerate_words, nfa_membership


class IllegalMoveError(ValueError):
    pass


class Move(Enum):
    READ = "read"
    CALL = "call"


class Outcome(Enum):
    WIN = "win"
    LOSE = "lose"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LrConfig:
    """One point of a left-to-right pass; `state` is the target-automaton state
    reached by the processed prefix word[:cursor]."""

    word: Word
    cursor: int
    state: int
    calls_used: int = 0


@dataclass
class StrategyCert:
    """A rewriting strategy as explicit decisions per (word, cursor), with the
    longest play it can produce. `exhaustive` is False when adversary
    enumeration was truncated while expanding the decisions."""

    decisions: dict[tuple[Word, int], Move]
    move_bound: int
    exhaustive: bool = True

    def move_for(self, cfg: LrConfig) -> Move:
        return self.decisions[(cfg.word, cfg.cursor)]


@dataclass
class Verdict:
    outcome: Outcome
    certificate: StrategyCert | None = None


def _check_word(game: Game, word: Word):
    alpha = set(game.alphabet)
    for sym in word:
        if sym not in alpha:
            raise UnknownSymbolError(sym)


def initial_config(game: Game, word: Word) -> LrConfig:
    word = tuple(word)
    _check_word(game, word)
    return LrConfig(word, 0, game.target_dfa.initial, 0)


def prefix_state(game: Game, word: Word, cursor: int) -> int:
    """Recompute the target state of word[:cursor]; configs must agree with it."""
    return dfa_run(game.target_dfa, word[:cursor])


@lru_cache(maxsize=None)
def _finite_words(nfa: Nfa) -> tuple[Word, ...]:
    # for a finite language every accepted word is shorter than the number of
    # determinized states, so this enumeration is complete
    return tuple(enumerate_words(nfa, len(determinize(nfa).states)))


@lru_cache(maxsize=None)
def _bounded_words(nfa: Nfa, bound: int) -> tuple[Word, ...]:
    return tuple(enumerate_words(nfa, bound))


def replacement_choices(game: Game, symbol: str, romeo_len_bound: int) -> tuple[tuple[Word, ...], bool]:
    """The adversary's menu for `symbol` and whether it is complete: every word
    of a finite language (declared finite, or a regex rule detected finite), or
    the words up to `romeo_len_bound` of an infinite one."""
    rule = game.replacement[symbol]
    if isinstance(rule, FiniteRule):
        return rule.words, True
    if rule.is_finite:
        return _finite_words(rule.nfa), True
    return _bounded_words(rule.nfa, romeo_len_bound), False


def apply_read(game: Game, cfg: LrConfig) -> LrConfig:
    if cfg.cursor >= len(cfg.word):
        raise IllegalMoveError("cursor at end of word")
    sym = cfg.word[cfg.cursor]
    return LrConfig(cfg.word, cfg.cursor + 1, game.target_dfa.step(cfg.state, sym), cfg.calls_used)


def apply_call(game: Game, cfg: LrConfig, reply: Word) -> LrConfig:
    if cfg.cursor >= len(cfg.word):
        raise IllegalMoveError("cursor at end of word")
    sym = cfg.word[cfg.cursor]
    if sym not in game.function_set:
        raise IllegalMoveError(f"call on non-function symbol {sym}")
    rule = game.replacement[sym]
    if isinstance(rule, FiniteRule):
        legal = reply in rule.words
    else:
        legal = nfa_membership(rule.nfa, reply)
    if not legal:
        raise IllegalMoveError(f"replacement {render_word(reply)} is not in the rule language of {sym}")
    word = cfg.word[:cfg.cursor] + tuple(reply) + cfg.word[cfg.cursor + 1:]
    return LrConfig(word, cfg.cursor, cfg.state, cfg.calls_used + 1)


def lr_successors(game: Game, cfg: LrConfig, romeo_len_bound: int = 6):
    """Available moves with their successor configurations: Read always yields
    one; Call (on a function symbol) yields one per enumerated adversary reply."""
    if cfg.cursor >= len(cfg.word):
        raise IllegalMoveError("cursor at end of word")
    out = [(Move.READ, [apply_read(game, cfg)])]
    sym = cfg.word[cfg.cursor]
    if sym in game.function_set:
        replies, _complete = replacement_choices(game, sym, romeo_len_bound)
        out.append((Move.CALL, [apply_call(game, cfg, r) for r in replies]))
    return out


def _exist(a: Outcome, b: Outcome) -> Outcome:
    if Outcome.WIN in (a, b):
        return Outcome.WIN
    if Outcome.UNKNOWN in (a, b):
        return Outcome.UNKNOWN
    return Outcome.LOSE


def solve_lr_bounded(game: Game, word: Word, budget: int, romeo_len_bound: int = 6) -> Verdict:
    """Alternating search over one left-to-right pass, memoized on the part a
    value can depend on (target state, remaining suffix).

    Win is always exact and carries a replayable certificate. Lose is reported
    only when the whole subtree was resolved without hitting the call budget
    and with exhaustive adversary enumeration; everything else is Unknown.
    Infinite plays count as losses, so budget exhaustion is never a Win.
    """
    word = tuple(word)
    _check_word(game, word)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    dfa = game.target_dfa
    memo: dict[tuple[int, Word], Outcome] = {}
    # Unknown is monotone in the remaining budget, so remembering the highest
    # budget that came up Unknown prunes re-exploration at lower budgets.
    unknown_at: dict[tuple[int, Word], int] = {}

    def call_value(state, sym, rest, remaining):
        if remaining <= 0:
            return Outcome.UNKNOWN
        replies, complete = replacement_choices(game, sym, romeo_len_bound)
        saw_lose = False
        for r in replies:
            v = value(state, r + rest, remaining - 1)
            if v is Outcome.UNKNOWN:
                return Outcome.UNKNOWN
            if v is Outcome.LOSE:
                saw_lose = True
        if not complete:
            return Outcome.UNKNOWN
        return Outcome.LOSE if saw_lose else Outcome.WIN

    def value(state, suffix, remaining):
        if not suffix:
            return Outcome.WIN if state in dfa.finals else Outcome.LOSE
        key = (state, suffix)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if unknown_at.get(key, -1) >= remaining:
            return Outcome.UNKNOWN
        sym = suffix[0]
        rest = suffix[1:]
        out = value(dfa.step(state, sym), rest, remaining)
        if out is not Outcome.WIN and sym in game.function_set:
            out = _exist(out, call_value(state, sym, rest, remaining))
        if out is Outcome.UNKNOWN:
            unknown_at[key] = remaining
        else:
            memo[key] = out
        return out

    outcome = value(dfa.initial, word, budget)
    if outcome is not Outcome.WIN:
        return Verdict(outcome)

    # Rebuild the winning strategy from the memoized values: prefer Read when
    # it stays winning, otherwise Call (whose replies were all proven winning).
    decisions: dict[tuple[Word, int], Move] = {}
    depth_memo: dict[tuple[Word, int], int] = {}
    on_path: set[tuple[Word, int]] = set()

    def walk(w, cursor, state):
        if cursor == len(w):
            return 0
        key = (w, cursor)
        if key in depth_memo:
            return depth_memo[key]
        if key in on_path:
            raise RuntimeError("winning strategy revisited a configuration")
        on_path.add(key)
        sym = w[cursor]
        rest = w[cursor + 1:]
        nxt = dfa.step(state, sym)
        if value(nxt, rest, budget) is Outcome.WIN:
            decisions[key] = Move.READ
            depth = 1 + walk(w, cursor + 1, nxt)
        else:
            decisions[key] = Move.CALL
            replies, complete = replacement_choices(game, sym, romeo_len_bound)
            assert complete, "a Win cannot rest on truncated adversary enumeration"
            depth = 1 + max(walk(w[:cursor] + r + rest, cursor, state) for r in replies)
        on_path.discard(key)
        depth_memo[key] = depth
        return depth

    move_bound = walk(word, 0, dfa.initial)
    return Verdict(Outcome.WIN, StrategyCert(decisions, move_bound, exhaustive=True))


def solve_any_order_bounded(game: Game, word: Word, budget: int, romeo_len_bound: int = 6) -> Verdict:
    """Like solve_lr_bounded, but the caller may act at any position of the
    current word and ends the play by an explicit stop; a stopped play wins iff
    the current word is in the target language. Memoized on the whole word."""
    word = tuple(word)
    _check_word(game, word)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    dfa = game.target_dfa
    memo: dict[Word, Outcome] = {}
    unknown_at: dict[Word, int] = {}

    def call_at(w, i, remaining):
        if remaining <= 0:
            return Outcome.UNKNOWN
        replies, complete = replacement_choices(game, w[i], romeo_len_bound)
        saw_lose = False
        for r in replies:
            v = value(w[:i] + r + w[i + 1:], remaining - 1)
            if v is Outcome.UNKNOWN:
                return Outcome.UNKNOWN
            if v is Outcome.LOSE:
                saw_lose = True
        if not complete:
            return Outcome.UNKNOWN
        return Outcome.LOSE if saw_lose else Outcome.WIN

    def value(w, remaining):
        cached = memo.get(w)
        if cached is not None:
            return cached
        if unknown_at.get(w, -1) >= remaining:
            return Outcome.UNKNOWN
        out = Outcome.WIN if dfa_run(dfa, w) in dfa.finals else Outcome.LOSE
        if out is not Outcome.WIN:
            for i, sym in enumerate(w):
                if sym not in game.function_set:
                    continue
                out = _exist(out, call_at(w, i, remaining))
                if out is Outcome.WIN:
                    break
        if out is Outcome.UNKNOWN:
            unknown_at[w] = remaining
        else:
            memo[w] = out
        return out

    return Verdict(value(word, budget))


def solve_multipass_bounded(game: Game, word: Word, k: int, budget: int, romeo_len_bound: int = 6) -> Verdict:
    """The left-to-right game where, at the end of a pass, the caller may either
    stop (winning iff the word is in the target) or spend one of `k` extra
    passes restarting the cursor; k = 0 coincides with solve_lr_bounded."""
    word = tuple(word)
    _check_word(game, word)
    if k < 0:
        raise ValueError("k must be >= 0")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    dfa = game.target_dfa
    memo: dict[tuple[Word, int, int], Outcome] = {}
    unknown_at: dict[tuple[Word, int, int], int] = {}

    def call_value(w, cursor, state, passes, remaining):
        if remaining <= 0:
            return Outcome.UNKNOWN
        sym = w[cursor]
        replies, complete = replacement_choices(game, sym, romeo_len_bound)
        saw_lose = False
        for r in replies:
            v = value(w[:cursor] + r + w[cursor + 1:], cursor, state, passes, remaining - 1)
            if v is Outcome.UNKNOWN:
                return Outcome.UNKNOWN
            if v is Outcome.LOSE:
                saw_lose = True
        if not complete:
            return Outcome.UNKNOWN
        return Outcome.LOSE if saw_lose else Outcome.WIN

    def value(w, cursor, state, passes, remaining):
        key = (w, cursor, passes)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if unknown_at.get(key, -1) >= remaining:
            return Outcome.UNKNOWN
        if cursor == len(w):
            out = Outcome.WIN if state in dfa.finals else Outcome.LOSE
            if out is not Outcome.WIN and passes > 0:
                out = _exist(out, value(w, 0, dfa.initial, passes - 1, remaining))
        else:
            sym = w[cursor]
            out = value(w, cursor + 1, dfa.step(state, sym), passes, remaining)
            if out is not Outcome.WIN and sym in game.function_set:
                out = _exist(out, call_value(w, cursor, state, passes, remaining))
        if out is Outcome.UNKNOWN:
            unknown_at[key] = remaining
        else:
            memo[key] = out
        return out

    return Verdict(value(word, 0, dfa.initial, k, budget))


def simulate_play(game: Game, word: Word, juliet, romeo, move_cap: int = 10_000):
    """Replay one left-to-right pass under two strategy callbacks.

    `juliet(cfg)` returns a Move; `romeo(cfg)` returns the replacement word for
    the called symbol. Returns (outcome, trace) where the trace lists
    (config, Move) entries plus (config, reply_word) entries for replacements.
    Exceeding `move_cap` counts as a loss for the rewriting player."""
    cfg = initial_config(game, word)
    trace: list[tuple[LrConfig, Move | Word]] = []
    moves = 0
    while cfg.cursor < len(cfg.word):
        if moves >= move_cap:
            return Outcome.LOSE, trace
        mv = juliet(cfg)
        if mv is Move.READ:
            trace.append((cfg, Move.READ))
            cfg = apply_read(game, cfg)
        elif mv is Move.CALL:
            trace.append((cfg, Move.CALL))
            reply = tuple(romeo(cfg))
            trace.append((cfg, reply))
            cfg = apply_call(game, cfg, reply)
        else:
            raise IllegalMoveError(f"not a move: {mv!r}")
        moves += 1
    outcome = Outcome.WIN if cfg.state in game.target_dfa.finals else Outcome.LOSE
    return outcome, trace
