"""Guarantee-set effects for left-to-right rewriting.

For each target-automaton state q, the effect of a symbol is the antichain of
minimal state sets the rewriting player can force the run into when that symbol
is processed (reading it, or calling it and playing on whatever the adversary
substitutes). Effects of strings compose; the per-symbol table is the least
fixpoint over the Read/Call options, starting from Read-only power so that
never-terminating play counts as a loss."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .game import FiniteRule, Game
from .regular import Dfa, Nfa, UnknownSymbolError, Word, determinize
from .semantics import Move, StrategyCert, replacement_choices


def _canon_key(s: frozenset[int]):
    return (len(s), tuple(sorted(s)))


def _minimal(sets) -> tuple[frozenset[int], ...]:
    """Subset-minimal elements, deduplicated, in (size, ids) order."""
    pool = sorted(set(sets), key=_canon_key)
    keep: list[frozenset[int]] = []
    for s in pool:
        if not any(k <= s for k in keep):
            keep.append(s)
    return tuple(keep)


@dataclass(frozen=True)
class Antichain:
    """Pairwise incomparable guarantee sets in canonical (size, ids) order."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        keys = [_canon_key(s) for s in self.sets]
        if keys != sorted(set(keys)):
            raise ValueError("antichain not in canonical order")
        for i, s in enumerate(self.sets):
            if not s:
                raise ValueError("empty guarantee set")
            for t in self.sets[i + 1:]:
                if s <= t or t <= s:
                    raise ValueError("antichain elements must be incomparable")

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def render(self) -> str:
        return ",".join("{" + ",".join(f"q{q}" for q in sorted(s)) + "}" for s in self.sets)


def antichain_reduce(sets) -> Antichain:
    """Minimize a family of guarantee sets into canonical antichain form."""
    materialized = [frozenset(s) for s in sets]
    for s in materialized:
        if not s:
            raise ValueError("empty guarantee set")
    return Antichain(_minimal(materialized))


@dataclass(frozen=True)
class Effect:
    """One antichain per target state, indexed by the dense state id."""

    rows: tuple[Antichain, ...]

    def row(self, q: int) -> Antichain:
        return self.rows[q]


def identity_effect(n_states: int) -> Effect:
    return Effect(tuple(Antichain((frozenset({q}),)) for q in range(n_states)))


def read_effect(dfa: Dfa, symbol: str) -> Effect:
    """The no-call baseline: from q the run lands exactly on delta(q, symbol)."""
    if symbol not in dfa.alphabet:
        raise UnknownSymbolError(symbol)
    return Effect(tuple(Antichain((frozenset({dfa.delta[(q, symbol)]}),)) for q in dfa.states))


def _pick_unions(antichains) -> tuple[frozenset[int], ...]:
    """Minimal unions obtainable by picking one set from every antichain.

    Dominated partial unions are pruned as picks accumulate; any completion of
    a superset is a superset of the same completion, so the pruning is exact.
    """
    partials: tuple[frozenset[int], ...] = (frozenset(),)
    for ach in antichains:
        partials = _minimal(p | s for p in partials for s in ach.sets)
    return partials


def advance_antichain(antichain: Antichain, effect: Effect) -> Antichain:
    """All minimal guarantees after one more symbol: pick a current set S, then
    one guarantee of `effect` per state of S, and take the union."""
    candidates: list[frozenset[int]] = []
    for s in antichain.sets:
        candidates.extend(_pick_unions([effect.rows[q] for q in sorted(s)]))
    return Antichain(_minimal(candidates))


def compose_effects(e1: Effect, e2: Effect) -> Effect:
    """Sequential composition: play e1 from q, then e2 from every reached state."""
    if len(e1.rows) != len(e2.rows):
        raise ValueError("effects range over different state spaces")
    return Effect(tuple(advance_antichain(row, e2) for row in e1.rows))


@dataclass(frozen=True)
class EffectTable:
    """Per-symbol effects at the least fixpoint, with iteration instrumentation.

    `history` holds the per-pass snapshots (starting from the Read-only table)
    so refinement across passes can be checked after the fact."""

    dfa: Dfa
    symbols: tuple[str, ...]
    effects: dict[str, Effect]
    iteration_count: int
    history: tuple[dict[str, Effect], ...]

    def effect(self, symbol: str) -> Effect:
        if symbol not in self.effects:
            raise UnknownSymbolError(symbol)
        return self.effects[symbol]


@lru_cache(maxsize=None)
def _cached_dfa(nfa: Nfa) -> Dfa:
    return determinize(nfa)


def _coreachable(dfa: Dfa) -> frozenset[int]:
    reverse = {q: set() for q in dfa.states}
    for (q, _a), d in dfa.delta.items():
        reverse[d].add(q)
    live = set(dfa.finals)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for p in reverse[q]:
            if p not in live:
                live.add(p)
                queue.append(p)
    return frozenset(live)


def call_guarantees(game: Game, table: EffectTable, symbol: str, q: int) -> Antichain:
    """Minimal sets T such that, whatever replacement the adversary picks for
    `symbol`, the current table lets the rewriting player steer the replacement
    played from q into some subset of T.

    Finite rules take one guarantee pick per replacement word. Regular rules
    run the rule automaton in product with the evolving guarantee antichain and
    constrain every reachable accepting product state, which covers all
    infinitely many replacement words with finitely many constraints."""
    if symbol not in game.function_set:
        raise ValueError(f"{symbol} is not a function symbol")
    rule = game.replacement[symbol]
    if isinstance(rule, FiniteRule) or rule.is_finite:
        words, complete = replacement_choices(game, symbol, 0)
        assert complete
        parts = [string_effect(table, w).rows[q] for w in words]
        if not parts:
            raise ValueError(f"replacement language of {symbol} is empty")
        return Antichain(_pick_unions(parts))

    rule_dfa = _cached_dfa(rule.nfa)
    useful = _coreachable(rule_dfa)
    start = (rule_dfa.initial, Antichain((frozenset({q}),)))
    seen = {start}
    queue = deque([start])
    accepting: list[Antichain] = []
    while queue:
        rs, ach = queue.popleft()
        if rs in rule_dfa.finals and ach not in accepting:
            accepting.append(ach)
        for a in rule_dfa.alphabet:
            nrs = rule_dfa.delta[(rs, a)]
            if nrs not in useful:
                continue
            nxt = (nrs, advance_antichain(ach, table.effect(a)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    if not accepting:
        raise ValueError(f"replacement language of {symbol} is empty")
    return Antichain(_pick_unions(accepting))


def compute_effect_table(game: Game) -> EffectTable:
    """Iterate the Read/Call update from the Read-only table until stable.

    Each pass recomputes every function symbol's effect against the previous
    pass's table, so the result is the least fixpoint: a call option only ever
    enters through finitely many derivation steps."""
    dfa = game.target_dfa
    symbols = tuple(game.alphabet)
    effects = {a: read_effect(dfa, a) for a in symbols}
    history = [dict(effects)]
    limit = len(symbols) * len(dfa.states) * (2 ** len(dfa.states)) + 1

    iterations = 0
    while True:
        iterations += 1
        if iterations > limit:
            raise RuntimeError("effect fixpoint failed to converge within its bound")
        current = EffectTable(dfa, symbols, dict(effects), iterations, ())
        new_effects = dict(effects)
        for a in game.functions:
            rows = []
            for q in dfa.states:
                candidates = [frozenset({dfa.delta[(q, a)]})]
                candidates.extend(call_guarantees(game, current, a, q).sets)
                rows.append(antichain_reduce(candidates))
            new_effects[a] = Effect(tuple(rows))
        changed = new_effects != effects
        effects = new_effects
        history.append(dict(effects))
        if not changed:
            break
    return EffectTable(dfa, symbols, effects, iterations, tuple(history))


def string_effect(table: EffectTable, word: Word) -> Effect:
    """Left fold of composition over the word's symbol effects; the empty word
    gives the identity effect."""
    acc = identity_effect(len(table.dfa.states))
    for sym in word:
        acc = compose_effects(acc, table.effect(sym))
    return acc


def refines(new: Effect, old: Effect) -> bool:
    """True when `new` is at least as strong: every old guarantee is matched by
    a new guarantee included in it."""
    if len(new.rows) != len(old.rows):
        return False
    return all(
        any(s_new <= s_old for s_new in new.rows[q].sets)
        for q in range(len(old.rows))
        for s_old in old.rows[q].sets
    )


def decide_lr(game: Game, word: Word, table: EffectTable | None = None) -> bool:
    """True iff the word can be safely rewritten in one left-to-right pass:
    some guarantee of its string effect from the initial state sits inside the
    accepting states."""
    if table is None:
        table = compute_effect_table(game)
    row = string_effect(table, tuple(word)).rows[table.dfa.initial]
    finals = table.dfa.finals
    return any(s <= finals for s in row.sets)


def effect_to_text(effect: Effect) -> str:
    """Debug/golden rendering, one line per state: `q0: {q1},{q2}`."""
    return "\n".join(f"q{q}: {row.render()}" for q, row in enumerate(effect.rows))


def _suffix_safe(table: EffectTable, cache: dict, q: int, suffix: Word) -> bool:
    eff = _suffix_effect(table, cache, suffix)
    finals = table.dfa.finals
    return any(s <= finals for s in eff.rows[q].sets)


def _suffix_effect(table: EffectTable, cache: dict, suffix: Word) -> Effect:
    hit = cache.get(suffix)
    if hit is not None:
        return hit
    if not suffix:
        eff = identity_effect(len(table.dfa.states))
    else:
        eff = compose_effects(table.effect(suffix[0]), _suffix_effect(table, cache, suffix[1:]))
    cache[suffix] = eff
    return eff


def preferred_move(game: Game, table: EffectTable, word: Word, cursor: int, state: int,
                   cache: dict | None = None) -> Move:
    """Deterministic policy: Read when the Read successor stays winnable,
    otherwise Call when calling is winnable, otherwise Read as a lost-position
    fallback."""
    if cache is None:
        cache = {}
    sym = word[cursor]
    rest = word[cursor + 1:]
    if _suffix_safe(table, cache, table.dfa.delta[(state, sym)], rest):
        return Move.READ
    if sym in game.function_set and _suffix_safe(table, cache, state, (sym,) + rest):
        return Move.CALL
    return Move.READ


def extract_strategy(game: Game, table: EffectTable, word: Word, romeo_len_bound: int = 6) -> StrategyCert:
    """Turn a positive decision into explicit per-configuration moves.

    The expansion follows every enumerated adversary reply, asserting along the
    way that each visited configuration stays winnable; the resulting bound is
    the longest play the strategy can produce."""
    word = tuple(word)
    if not decide_lr(game, word, table):
        raise ValueError("word is not safely rewritable left-to-right")
    dfa = table.dfa
    cache: dict = {}
    decisions: dict[tuple[Word, int], Move] = {}
    depth_memo: dict[tuple[Word, int], int] = {}
    on_path: set[tuple[Word, int]] = set()
    exhaustive = True

    def visit(w, cursor, state):
        nonlocal exhaustive
        if cursor == len(w):
            return 0
        key = (w, cursor)
        if key in depth_memo:
            return depth_memo[key]
        if key in on_path:
            raise RuntimeError("strategy expansion revisited a configuration")
        on_path.add(key)
        assert _suffix_safe(table, cache, state, w[cursor:]), "strategy left the winnable region"
        sym = w[cursor]
        rest = w[cursor + 1:]
        nxt = dfa.delta[(state, sym)]
        if _suffix_safe(table, cache, nxt, rest):
            decisions[key] = Move.READ
            depth = 1 + visit(w, cursor + 1, nxt)
        else:
            assert sym in game.function_set, "no winnable move available"
            decisions[key] = Move.CALL
            replies, complete = replacement_choices(game, sym, romeo_len_bound)
            if not complete:
                exhaustive = False
            depth = 1 + max(visit(w[:cursor] + r + rest, cursor, state) for r in replies)
        on_path.discard(key)
        depth_memo[key] = depth
        return depth

    move_bound = visit(word, 0, dfa.initial)
    return StrategyCert(decisions, move_bound, exhaustive)


def adversarial_replacement(game: Game, table: EffectTable, word: Word, cursor: int, state: int,
                            romeo_len_bound: int = 6) -> Word:
    """The adversary's toughest reply by the table's lights: the candidate whose
    substitution leaves the rewriting player the fewest winning guarantees,
    ties broken by shortest-then-alphabetical order."""
    sym = word[cursor]
    replies, _complete = replacement_choices(game, sym, romeo_len_bound)
    rest = word[cursor + 1:]
    finals = table.dfa.finals
    cache: dict = {}

    def score(reply):
        row = _suffix_effect(table, cache, reply + rest).rows[state]
        return sum(1 for s in row.sets if s <= finals)

    best = min(sorted(replies, key=lambda r: (len(r), r)), key=score)
    return best
