"""Rewriting-game definitions: alphabet, function symbols, replacement and
target languages, plus the line-oriented file format, validation, and a seeded
random generator for test corpora."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .regular import (
    EPSILON_TOKEN,
    Dfa,
    Nfa,
    UnknownSymbolError,
    Word,
    determinize,
    is_finite_language,
    is_symbol_name,
    parse_regex,
)


class GameFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class GameValidationError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class FiniteRule:
    words: tuple[Word, ...]


@dataclass(frozen=True)
class RegularRule:
    nfa: Nfa
    regex: str
    is_finite: bool


def regular_rule(nfa: Nfa, regex: str) -> RegularRule:
    return RegularRule(nfa, regex, is_finite_language(nfa))


@dataclass(frozen=True)
class Game:
    """A rewriting game: the caller reads or calls symbols of a word, calls hand
    the choice of replacement to the adversary, and the caller wins when the
    final word lies in the target language."""

    alphabet: tuple[str, ...]
    functions: tuple[str, ...]
    replacement: dict[str, FiniteRule | RegularRule]
    target: Nfa
    target_regex: str
    target_dfa: Dfa
    function_set: frozenset[str]

    @staticmethod
    def assemble(alphabet, functions, replacement, target, target_regex) -> "Game":
        return Game(
            alphabet=tuple(alphabet),
            functions=tuple(functions),
            replacement=dict(replacement),
            target=target,
            target_regex=target_regex,
            target_dfa=determinize(target),
            function_set=frozenset(functions),
        )


def parse_word(text: str, alphabet) -> Word:
    """Whitespace-separated symbols, or the single token `%e` for the empty word."""
    alpha = set(alphabet)
    text = text.strip()
    if text == EPSILON_TOKEN:
        return ()
    tokens = text.split()
    if not tokens:
        raise ValueError("empty word text (use %e for the empty word)")
    for tok in tokens:
        if tok == EPSILON_TOKEN:
            raise ValueError("%e must stand alone")
        if tok not in alpha:
            raise UnknownSymbolError(tok)
    return tuple(tokens)


def render_word(word: Word) -> str:
    return " ".join(word) if word else EPSILON_TOKEN


def _parse_symbol_list(rest: str, lineno: int) -> tuple[str, ...]:
    symbols = rest.split()
    seen = set()
    for sym in symbols:
        if not is_symbol_name(sym):
            raise GameFormatError(f"invalid symbol name {sym!r}", lineno)
        if sym in seen:
            raise GameFormatError(f"duplicate symbol {sym}", lineno)
        seen.add(sym)
    return tuple(symbols)


def _parse_rule_words(rest: str, lineno: int) -> tuple[Word, ...]:
    words = []
    for chunk in rest.split(","):
        tokens = chunk.split()
        if not tokens:
            raise GameFormatError("empty word in finite rule (use %e)", lineno)
        if tokens == [EPSILON_TOKEN]:
            words.append(())
            continue
        for tok in tokens:
            if tok == EPSILON_TOKEN:
                raise GameFormatError("%e must stand alone within a word", lineno)
            if not is_symbol_name(tok):
                raise GameFormatError(f"invalid symbol name {tok!r}", lineno)
        words.append(tuple(tokens))
    return tuple(words)


def parse_game(text: str) -> Game:
    """Parse the game file format.

    Structural problems raise GameFormatError with a line number; semantic
    problems are collected by validate_game and raised together as a
    GameValidationError.
    """
    alphabet = None
    functions = None
    target_regex = None
    target_line = 0
    raw_rules: dict[str, tuple[str, int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise GameFormatError("duplicate alphabet line", lineno)
            alphabet = _parse_symbol_list(line[len("alphabet:"):], lineno)
        elif line.startswith("functions:"):
            if functions is not None:
                raise GameFormatError("duplicate functions line", lineno)
            functions = _parse_symbol_list(line[len("functions:"):], lineno)
        elif line.startswith("target:"):
            if target_regex is not None:
                raise GameFormatError("duplicate target line", lineno)
            rest = line[len("target:"):].strip()
            if not rest.startswith("regex"):
                raise GameFormatError("target must be 'regex <expression>'", lineno)
            target_regex = rest[len("regex"):].strip()
            target_line = lineno
        elif line.startswith("rule "):
            head, sep, payload = line.partition(":")
            if not sep:
                raise GameFormatError("missing ':' in rule line", lineno)
            sym = head[len("rule "):].strip()
            if not is_symbol_name(sym):
                raise GameFormatError(f"invalid rule symbol {sym!r}", lineno)
            if sym in raw_rules:
                raise GameFormatError(f"duplicate rule for {sym}", lineno)
            raw_rules[sym] = (payload.strip(), lineno)
        else:
            raise GameFormatError(f"unrecognized line {line!r}", lineno)

    if alphabet is None:
        raise GameFormatError("missing alphabet line")
    if functions is None:
        raise GameFormatError("missing functions line")
    if target_regex is None:
        raise GameFormatError("missing target line")

    try:
        target = parse_regex(target_regex, alphabet)
    except (ValueError,) as exc:
        raise GameFormatError(f"target: {exc}", target_line) from exc

    replacement: dict[str, FiniteRule | RegularRule] = {}
    for sym, (payload, lineno) in raw_rules.items():
        if payload.startswith("finite"):
            replacement[sym] = FiniteRule(_parse_rule_words(payload[len("finite"):], lineno))
        elif payload.startswith("regex"):
            src = payload[len("regex"):].strip()
            try:
                nfa = parse_regex(src, alphabet)
            except (ValueError,) as exc:
                raise GameFormatError(f"rule {sym}: {exc}", lineno) from exc
            replacement[sym] = regular_rule(nfa, src)
        else:
            raise GameFormatError("rule must be 'finite ...' or 'regex ...'", lineno)

    game = Game.assemble(alphabet, functions, replacement, target, target_regex)
    violations = validate_game(game)
    if violations:
        raise GameValidationError(violations)
    return game


def _language_nonempty(nfa: Nfa) -> bool:
    succ = {q: set() for q in nfa.states}
    for src, _label, dst in nfa.transitions:
        succ[src].add(dst)
    seen = {nfa.initial}
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        if q in nfa.finals:
            return True
        for nxt in succ[q]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def validate_game(game: Game) -> list[str]:
    """Every violated invariant as one message; empty means the game is well formed."""
    v = []
    alpha = set(game.alphabet)
    if len(alpha) != len(game.alphabet):
        v.append("duplicate symbols in alphabet")
    if len(set(game.functions)) != len(game.functions):
        v.append("duplicate function symbols")
    for f in game.functions:
        if f not in alpha:
            v.append(f"function {f} not declared in alphabet")
    for f in game.functions:
        if f not in game.replacement:
            v.append(f"missing rule for {f}")
    for sym in game.replacement:
        if sym not in game.function_set:
            v.append(f"rule {sym}: {sym} is not a function symbol")
    for sym, rule in game.replacement.items():
        if isinstance(rule, FiniteRule):
            if not rule.words:
                v.append(f"replacement language of {sym} is empty")
            if len(set(rule.words)) != len(rule.words):
                v.append(f"rule {sym} lists a duplicate word")
            reported = set()
            for w in rule.words:
                for tok in w:
                    if tok not in alpha and tok not in reported:
                        reported.add(tok)
                        v.append(f"rule {sym} uses undeclared symbol {tok}")
        else:
            if not set(rule.nfa.alphabet) <= alpha:
                v.append(f"rule {sym} regex uses undeclared symbols")
            if not _language_nonempty(rule.nfa):
                v.append(f"replacement language of {sym} is empty")
    if not set(game.target.alphabet) <= alpha:
        v.append("target language uses undeclared symbols")
    return v


def render_game(game: Game) -> str:
    """Canonical text form; parse_game(render_game(g)) reproduces g exactly."""
    lines = [f"alphabet: {' '.join(game.alphabet)}"]
    lines.append("functions: " + " ".join(game.functions) if game.functions else "functions:")
    lines.append(f"target: regex {game.target_regex}")
    for f in game.functions:
        rule = game.replacement[f]
        if isinstance(rule, FiniteRule):
            lines.append(f"rule {f}: finite " + " , ".join(render_word(w) for w in rule.words))
        else:
            lines.append(f"rule {f}: regex {rule.regex}")
    return "\n".join(lines) + "\n"


def load_game(path: str) -> Game:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_game(handle.read())


@dataclass(frozen=True)
class GenParams:
    n_symbols: int = 3
    n_functions: int = 1
    rule_words: int = 2
    max_rule_len: int = 2
    regular: bool = False
    target_depth: int = 2

    def __post_init__(self):
        if min(self.n_symbols, self.n_functions, self.rule_words, self.max_rule_len) < 1:
            raise ValueError("all counts must be >= 1")
        if self.target_depth < 0:
            raise ValueError("target_depth must be >= 0")
        if self.n_functions > self.n_symbols:
            raise ValueError("n_functions may not exceed n_symbols")


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _symbol_pool(n: int) -> list[str]:
    return [_LETTERS[i] if i < len(_LETTERS) else f"s{i}" for i in range(n)]


def _random_regex(rng: random.Random, syms, depth: int) -> str:
    if depth <= 0:
        return rng.choice(syms) if rng.random() < 0.9 else EPSILON_TOKEN
    kind = rng.choice(["union", "concat", "star", "opt", "atom"])
    if kind == "atom":
        return _random_regex(rng, syms, 0)
    if kind == "union":
        return f"( {_random_regex(rng, syms, depth - 1)} ) | ( {_random_regex(rng, syms, depth - 1)} )"
    if kind == "concat":
        return f"( {_random_regex(rng, syms, depth - 1)} ) ( {_random_regex(rng, syms, depth - 1)} )"
    if kind == "star":
        return f"( {_random_regex(rng, syms, depth - 1)} ) *"
    return f"( {_random_regex(rng, syms, depth - 1)} ) ?"


def _all_words_upto(syms, max_len: int):
    frontier = [()]
    yield ()
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in syms]
        yield from frontier


def _random_rule_words(rng: random.Random, syms, func: str, params: GenParams) -> list[Word]:
    words: list[Word] = []
    tries = 0
    while len(words) < params.rule_words and tries < 64:
        tries += 1
        length = rng.randint(0, params.max_rule_len)
        w = tuple(rng.choice(syms) for _ in range(length))
        if w not in words:
            words.append(w)
    # keep at least one reply that avoids the called symbol, so recursion is
    # possible but never forced
    if all(func in w for w in words):
        others = [s for s in syms if s != func]
        for candidate in _all_words_upto(others, params.max_rule_len):
            if candidate not in words:
                words[0] = candidate
                break
    return words


def _word_regex(word: Word) -> str:
    return " ".join(word) if word else EPSILON_TOKEN


def random_game(seed: int, params: GenParams) -> Game:
    """Deterministic function of (seed, params); the result always validates."""
    rng = random.Random(seed)
    syms = _symbol_pool(params.n_symbols)
    funcs = sorted(rng.sample(syms, params.n_functions), key=syms.index)
    target_regex = _random_regex(rng, syms, params.target_depth)
    target = parse_regex(target_regex, syms)

    replacement: dict[str, FiniteRule | RegularRule] = {}
    for f in funcs:
        words = _random_rule_words(rng, syms, f, params)
        if params.regular and rng.random() < 0.7:
            src = " | ".join(f"( {_word_regex(w)} )" for w in words)
            if rng.random() < 0.5:
                src = f"{src} | ( {rng.choice(syms)} ) *"
            replacement[f] = regular_rule(parse_regex(src, syms), src)
        else:
            replacement[f] = FiniteRule(tuple(words))

    game = Game.assemble(syms, funcs, replacement, target, target_regex)
    problems = validate_game(game)
    if problems:
        raise AssertionError(f"generator produced an invalid game: {problems}")
    return game
