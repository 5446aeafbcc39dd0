import pytest

from rewritegames import (
    IllegalMoveError,
    Move,
    Outcome,
    apply_call,
    apply_read,
    initial_config,
    lr_successors,
    replacement_choices,
    simulate_play,
    solve_any_order_bounded,
    solve_lr_bounded,
    solve_multipass_bounded,
)
from rewritegames.semantics import prefix_state
from conftest import build_corpus, exhaustive_play_outcomes, words_upto


def test_lr_successors_g1(g1):
    cfg = initial_config(g1, ("f",))
    succ = dict(lr_successors(g1, cfg))
    read = succ[Move.READ][0]
    assert (read.word, read.cursor) == (("f",), 1)
    assert read.state not in g1.target_dfa.finals  # f drives into the dead state
    call = succ[Move.CALL]
    assert [(c.word, c.cursor, c.calls_used) for c in call] == [
        (("a",), 0, 1),
        (("b",), 0, 1),
    ]
    assert all(c.state == cfg.state for c in call)


def test_lr_successors_regular_rule_bounded(g2):
    cfg = initial_config(g2, ("f",))
    succ = dict(lr_successors(g2, cfg, romeo_len_bound=2))
    words = [c.word for c in succ[Move.CALL]]
    assert words == [(), ("a",), ("a", "a")]


def test_lr_successors_at_end(g1):
    cfg = initial_config(g1, ())
    with pytest.raises(IllegalMoveError):
        lr_successors(g1, cfg)


def test_apply_call_on_letter_is_illegal(g1):
    cfg = initial_config(g1, ("a",))
    with pytest.raises(IllegalMoveError):
        apply_call(g1, cfg, ("a",))


def test_apply_call_checks_rule_membership(g1):
    cfg = initial_config(g1, ("f",))
    with pytest.raises(IllegalMoveError):
        apply_call(g1, cfg, ("f",))
    ok = apply_call(g1, cfg, ("b",))
    assert ok.word == ("b",)


def test_apply_call_regular_rule_accepts_any_member(g2):
    # membership is exact, not limited to the enumeration bound
    cfg = initial_config(g2, ("f",))
    long_reply = ("a",) * 9
    assert apply_call(g2, cfg, long_reply).word == long_reply
    with pytest.raises(IllegalMoveError):
        apply_call(g2, cfg, ("f",))


def test_prefix_state_coherence_along_plays(g1):
    cfg = initial_config(g1, ("f", "a"))
    seen = [cfg]
    frontier = [cfg]
    while frontier:
        cur = frontier.pop()
        if cur.cursor == len(cur.word):
            continue
        for _move, nexts in lr_successors(g1, cur):
            for nxt in nexts:
                assert nxt.state == prefix_state(g1, nxt.word, nxt.cursor)
                if nxt.calls_used <= 2:
                    frontier.append(nxt)
                    seen.append(nxt)
    assert len(seen) > 4


def test_solve_lr_examples(g1, g3):
    assert solve_lr_bounded(g1, ("f",), 4).outcome is Outcome.WIN
    assert solve_lr_bounded(g1, ("f", "f"), 6).outcome is Outcome.LOSE
    # the recursive rule makes every call branch budget-limited
    assert solve_lr_bounded(g3, ("f",), 8).outcome is Outcome.UNKNOWN


def test_solve_lr_win_carries_replayable_certificate(g1):
    verdict = solve_lr_bounded(g1, ("f",), 4)
    cert = verdict.certificate
    assert cert is not None and cert.exhaustive
    plays, longest = exhaustive_play_outcomes(g1, ("f",), lambda w, c: cert.decisions[(w, c)])
    assert all(won for _w, won in plays)
    assert longest <= cert.move_bound


def test_solve_lr_regular_rules_never_claim_lose(g2):
    # truncated adversary enumeration downgrades Lose to Unknown
    verdict = solve_lr_bounded(g2, ("f",), 6, romeo_len_bound=3)
    assert verdict.outcome is Outcome.UNKNOWN


def test_budget_monotonicity_on_corpus():
    for seed, game in build_corpus(20):
        for word in words_upto(game.alphabet, 3):
            small = solve_lr_bounded(game, word, 4).outcome
            big = solve_lr_bounded(game, word, 9).outcome
            if small is Outcome.WIN:
                assert big is Outcome.WIN, (seed, word)
            if small is Outcome.LOSE:
                assert big is Outcome.LOSE, (seed, word)


def test_any_order_examples(g1):
    assert solve_any_order_bounded(g1, ("f",), 4).outcome is Outcome.WIN
    assert solve_any_order_bounded(g1, ("a",), 0).outcome is Outcome.WIN


def test_lr_win_implies_any_order_win():
    for seed, game in build_corpus(15):
        for word in words_upto(game.alphabet, 3):
            if solve_lr_bounded(game, word, 8).outcome is Outcome.WIN:
                assert solve_any_order_bounded(game, word, 8).outcome is Outcome.WIN, (seed, word)


def test_multipass_k0_matches_lr(g1, g3, witness_game):
    for game in (g1, g3, witness_game):
        for word in words_upto(game.alphabet, 2):
            assert (
                solve_multipass_bounded(game, word, 0, 8).outcome
                is solve_lr_bounded(game, word, 8).outcome
            )


def test_multipass_extra_passes_cannot_hurt(g1):
    assert solve_multipass_bounded(g1, ("f",), 3, 6).outcome is Outcome.WIN


def test_multipass_witness_regression(witness_game):
    # pinned witness found by corpus search: one left step separates the games
    word = ("s", "g")
    assert solve_lr_bounded(witness_game, word, 8).outcome is Outcome.LOSE
    assert solve_multipass_bounded(witness_game, word, 0, 8).outcome is Outcome.LOSE
    assert solve_multipass_bounded(witness_game, word, 1, 8).outcome is Outcome.WIN
    assert solve_multipass_bounded(witness_game, word, 2, 8).outcome is Outcome.WIN


def test_multipass_monotone_in_k():
    for seed, game in build_corpus(10):
        for word in words_upto(game.alphabet, 2):
            outcomes = [solve_multipass_bounded(game, word, k, 8).outcome for k in (0, 1, 2)]
            for prev, nxt in zip(outcomes, outcomes[1:]):
                if prev is Outcome.WIN:
                    assert nxt is Outcome.WIN, (seed, word, outcomes)


def test_adversary_power_antitonicity():
    # enlarging a finite rule can only help the adversary
    from rewritegames import FiniteRule, Game

    for seed, game in build_corpus(10):
        func = game.functions[0]
        rule = game.replacement[func]
        extra = None
        for cand in words_upto(game.alphabet, 2):
            if cand not in rule.words:
                extra = cand
                break
        if extra is None:
            continue
        bigger = Game.assemble(
            game.alphabet,
            game.functions,
            {**game.replacement, func: FiniteRule(rule.words + (extra,))},
            game.target,
            game.target_regex,
        )
        for word in words_upto(game.alphabet, 2):
            strong = solve_lr_bounded(bigger, word, 8).outcome
            weak = solve_lr_bounded(game, word, 8).outcome
            if strong is Outcome.WIN and weak is not Outcome.UNKNOWN:
                assert weak is Outcome.WIN, (seed, word)


def test_simulate_play_read_everything_loses(g1):
    outcome, trace = simulate_play(g1, ("f",), lambda cfg: Move.READ, lambda cfg: ("a",))
    assert outcome is Outcome.LOSE
    assert [entry for _cfg, entry in trace] == [Move.READ]


def test_simulate_play_call_then_read(g1):
    def juliet(cfg):
        return Move.CALL if cfg.word[cfg.cursor] == "f" else Move.READ

    outcome, trace = simulate_play(g1, ("f",), juliet, lambda cfg: ("a",))
    assert outcome is Outcome.WIN
    assert [entry for _cfg, entry in trace] == [Move.CALL, ("a",), Move.READ]


def test_simulate_play_rejects_illegal_romeo(g1):
    def juliet(cfg):
        return Move.CALL

    with pytest.raises(IllegalMoveError):
        simulate_play(g1, ("f",), juliet, lambda cfg: ("f",))


def test_simulate_play_move_cap_is_a_loss(g3):
    # calling forever with the recursive reply never finishes the pass
    outcome, _trace = simulate_play(
        g3, ("f",), lambda cfg: Move.CALL, lambda cfg: ("f",), move_cap=30
    )
    assert outcome is Outcome.LOSE


def test_simulate_play_visits_same_plays_as_direct_expansion(g1):
    cert = solve_lr_bounded(g1, ("f",), 4).certificate
    juliet = cert.move_for

    collected = []

    def expand(script):
        pointer = [0]
        used = []

        def romeo(cfg):
            options, complete = replacement_choices(g1, cfg.word[cfg.cursor], 6)
            assert complete
            idx = script[pointer[0]] if pointer[0] < len(script) else 0
            used.append(len(options))
            pointer[0] += 1
            return options[idx]

        outcome, trace = simulate_play(g1, ("f",), juliet, romeo)
        if len(used) > len(script):
            for i in range(used[len(script)]):
                expand(script + (i,))
        else:
            final = trace[-1][0].word if trace else ("f",)
            collected.append((final, outcome is Outcome.WIN))

    expand(())
    direct, _ = exhaustive_play_outcomes(g1, ("f",), lambda w, c: cert.decisions[(w, c)])
    assert sorted(collected) == sorted(direct)
