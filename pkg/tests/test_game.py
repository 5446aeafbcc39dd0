import pytest

from rewritegames import (
    FiniteRule,
    Game,
    GameFormatError,
    GameValidationError,
    GenParams,
    RegularRule,
    UnknownSymbolError,
    nfa_membership,
    parse_game,
    parse_regex,
    parse_word,
    random_game,
    render_game,
    render_word,
    validate_game,
)
from conftest import G1_TEXT, G2_TEXT


def test_parse_game_g1(g1):
    assert g1.alphabet == ("a", "b", "f")
    assert g1.functions == ("f",)
    assert g1.replacement["f"] == FiniteRule((("a",), ("b",)))
    assert g1.target_regex == "a | b"
    assert nfa_membership(g1.target, ("a",))
    assert not nfa_membership(g1.target, ("f",))
    assert len(g1.target_dfa.states) == 3


def test_parse_game_missing_rule():
    text = "alphabet: a g\nfunctions: g\ntarget: regex a\n"
    with pytest.raises(GameValidationError) as err:
        parse_game(text)
    assert "missing rule for g" in err.value.violations


def test_parse_game_regular_rule(g2):
    rule = g2.replacement["f"]
    assert isinstance(rule, RegularRule)
    assert rule.regex == "a *"
    assert rule.is_finite is False
    assert nfa_membership(rule.nfa, ("a", "a", "a"))


def test_parse_game_detects_finite_regex_rule():
    game = parse_game("alphabet: a f\nfunctions: f\ntarget: regex a\nrule f: regex a | a a\n")
    assert game.replacement["f"].is_finite is True


def test_parse_game_format_errors_carry_line_numbers():
    with pytest.raises(GameFormatError) as err:
        parse_game("alphabet: a\nfunctions:\nbogus line\ntarget: regex a\n")
    assert err.value.line == 3
    with pytest.raises(GameFormatError) as err:
        parse_game("alphabet: a\nfunctions:\ntarget: regex a (\n")
    assert err.value.line == 3
    with pytest.raises(GameFormatError):
        parse_game("functions:\ntarget: regex a\n")  # no alphabet line
    with pytest.raises(GameFormatError) as err:
        parse_game("alphabet: a a\nfunctions:\ntarget: regex a\n")
    assert err.value.line == 1


def test_parse_game_comments_and_blanks():
    text = "# a comment\nalphabet: a f # trailing\n\nfunctions: f\ntarget: regex a\nrule f: finite a\n"
    game = parse_game(text)
    assert game.alphabet == ("a", "f")


def test_validate_game_clean(g1):
    assert validate_game(g1) == []


def test_validate_empty_regular_language():
    # regex parses to something, but we then swap in an NFA whose final state
    # is unreachable
    from rewritegames.regular import Nfa

    dead = Nfa((0, 1), ("a",), frozenset(), 0, frozenset({1}))
    game = Game.assemble(
        alphabet=("a", "f"),
        functions=("f",),
        replacement={"f": RegularRule(dead, "a", False)},
        target=parse_regex("a", ("a", "f")),
        target_regex="a",
    )
    assert "replacement language of f is empty" in validate_game(game)


def test_validate_undeclared_symbol_in_rule_word():
    game = Game.assemble(
        alphabet=("a", "b", "f"),
        functions=("f",),
        replacement={"f": FiniteRule((("c",),))},
        target=parse_regex("a", ("a", "b", "f")),
        target_regex="a",
    )
    assert "rule f uses undeclared symbol c" in validate_game(game)


def test_validate_empty_finite_rule():
    game = Game.assemble(
        alphabet=("a", "f"),
        functions=("f",),
        replacement={"f": FiniteRule(())},
        target=parse_regex("a", ("a", "f")),
        target_regex="a",
    )
    assert "replacement language of f is empty" in validate_game(game)


def test_parse_word():
    assert parse_word("f a", ("a", "b", "f")) == ("f", "a")
    assert parse_word("%e", ("a",)) == ()
    with pytest.raises(UnknownSymbolError) as err:
        parse_word("a c", ("a", "b", "f"))
    assert err.value.token == "c"
    with pytest.raises(ValueError):
        parse_word("a %e", ("a",))


def test_render_word_roundtrip():
    assert render_word(()) == "%e"
    assert render_word(("a", "b")) == "a b"
    assert parse_word(render_word(("a", "b")), ("a", "b")) == ("a", "b")


def test_render_parse_roundtrip_canonical(g1, g2):
    for game in (g1, g2):
        again = parse_game(render_game(game))
        assert again == game


def test_render_parse_roundtrip_generated():
    for seed in range(100):
        params = GenParams(
            n_symbols=2 + seed % 3,
            n_functions=1 + seed % 2,
            rule_words=1 + seed % 3,
            max_rule_len=1 + seed % 2,
            regular=bool(seed % 2),
            target_depth=seed % 3,
        )
        game = random_game(seed, params)
        assert parse_game(render_game(game)) == game


def test_random_game_deterministic():
    params = GenParams()
    assert random_game(1, params) == random_game(1, params)
    assert render_game(random_game(1, params)) == render_game(random_game(1, params))


def test_random_game_varies_with_seed():
    params = GenParams(n_symbols=3, n_functions=2, rule_words=2, max_rule_len=2)
    rendered = {render_game(random_game(seed, params)) for seed in range(100)}
    assert len(rendered) >= 95


def test_random_game_always_validates():
    for seed in range(50):
        game = random_game(seed, GenParams(regular=bool(seed % 2)))
        assert validate_game(game) == []


def test_random_game_never_forces_recursion():
    for seed in range(50):
        game = random_game(seed, GenParams(n_symbols=2, n_functions=2, rule_words=2))
        for f in game.functions:
            rule = game.replacement[f]
            assert isinstance(rule, FiniteRule)
            assert any(f not in w for w in rule.words)


def test_gen_params_validation():
    with pytest.raises(ValueError):
        GenParams(n_symbols=1, n_functions=2)
    with pytest.raises(ValueError):
        GenParams(rule_words=0)
    with pytest.raises(ValueError):
        GenParams(target_depth=-1)
