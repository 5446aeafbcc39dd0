import itertools

import pytest

from rewritegames import (
    FiniteRule,
    GenParams,
    Move,
    compute_effect_table,
    nfa_membership,
    parse_game,
    random_game,
)

G1_TEXT = """\
alphabet: a b f
functions: f
target: regex a | b
rule f: finite a , b
"""

G2_TEXT = """\
alphabet: a f
functions: f
target: regex a a
rule f: regex a *
"""

G3_TEXT = """\
alphabet: a f
functions: f
target: regex a
rule f: finite f , a
"""

G4_TEXT = """\
alphabet: a f
functions: f
target: regex a *
rule f: regex a *
"""

# single pass loses here, one extra pass wins: keeping `s` unread in pass one
# reveals the adversary's `g` reply, and pass two can still resolve `s`
WITNESS_TEXT = """\
alphabet: a b s g
functions: s g
target: regex a a | s b
rule s: finite a
rule g: finite a , b
"""


@pytest.fixture(scope="session")
def g1():
    return parse_game(G1_TEXT)


@pytest.fixture(scope="session")
def g2():
    return parse_game(G2_TEXT)


@pytest.fixture(scope="session")
def g3():
    return parse_game(G3_TEXT)


@pytest.fixture(scope="session")
def g4():
    return parse_game(G4_TEXT)


@pytest.fixture(scope="session")
def witness_game():
    return parse_game(WITNESS_TEXT)


def words_upto(alphabet, max_len):
    """Every word of length <= max_len, shortest first, alphabet order within."""
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(alphabet, repeat=n))
    return out


def exhaustive_play_outcomes(game, word, decide_move, depth_cap=200):
    """Expand every adversary behavior under a fixed caller strategy.

    Stepping is done from scratch (word surgery plus target-NFA membership at
    the end), so it is an oracle independent of the engine's config machinery.
    Returns (plays, longest) where plays is a list of (final_word, won) and
    longest counts caller moves on the deepest play.
    """
    plays = []
    longest = 0

    def go(w, cursor, depth):
        nonlocal longest
        assert depth < depth_cap, "runaway play under certificate"
        if cursor == len(w):
            longest = max(longest, depth)
            plays.append((w, nfa_membership(game.target, w)))
            return
        move = decide_move(w, cursor)
        if move is Move.READ:
            go(w, cursor + 1, depth + 1)
        else:
            assert move is Move.CALL
            sym = w[cursor]
            assert sym in game.function_set
            rule = game.replacement[sym]
            assert isinstance(rule, FiniteRule), "exhaustive expansion needs finite rules"
            for reply in rule.words:
                go(w[:cursor] + reply + w[cursor + 1:], cursor, depth + 1)

    go(tuple(word), 0, 0)
    return plays, longest


def corpus_params(seed):
    return GenParams(
        n_symbols=2 + seed % 3,
        n_functions=1 + seed % 2,
        rule_words=1 + seed % 3,
        max_rule_len=1 + seed % 2,
        regular=False,
        target_depth=1 + seed % 2,
    )


def build_corpus(n_games, max_target_states=5):
    """First n_games seeded finite games whose determinized target is small."""
    games = []
    seed = 0
    while len(games) < n_games:
        game = random_game(seed, corpus_params(seed))
        if len(game.target_dfa.states) <= max_target_states:
            games.append((seed, game))
        seed += 1
    return games


@pytest.fixture(scope="session")
def corpus200():
    return build_corpus(200)


@pytest.fixture(scope="session")
def corpus_tables(corpus200):
    return [(seed, game, compute_effect_table(game)) for seed, game in corpus200]
