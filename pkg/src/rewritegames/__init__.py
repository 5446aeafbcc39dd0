"""Engine for two-player context-free rewriting games: one player walks a word
left to right, reading symbols or calling them, the adversary substitutes
replacement words for called symbols, and the walker wins when the final word
lies in a regular target language. The package decides safety exactly via
guarantee-set antichains, builds the corresponding prefix automaton, extracts
checkable winning strategies, and cross-checks everything against bounded
game-tree oracles."""

from .regular import (
    EPSILON_TOKEN,
    Dfa,
    Nfa,
    RegexSyntaxError,
    UnknownSymbolError,
    Word,
    determinize,
    dfa_accepts,
    dfa_run,
    enumerate_words,
    is_finite_language,
    nfa_membership,
    parse_regex,
)
from .game import (
    FiniteRule,
    Game,
    GameFormatError,
    GameValidationError,
    GenParams,
    RegularRule,
    load_game,
    parse_game,
    parse_word,
    random_game,
    render_game,
    render_word,
    validate_game,
)
from .semantics import (
    IllegalMoveError,
    LrConfig,
    Move,
    Outcome,
    StrategyCert,
    Verdict,
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
from .effects import (
    Antichain,
    Effect,
    EffectTable,
    antichain_reduce,
    call_guarantees,
    compose_effects,
    compute_effect_table,
    decide_lr,
    effect_to_text,
    extract_strategy,
    identity_effect,
    read_effect,
    string_effect,
)
from .automaton import (
    SafeL2RAutomaton,
    StateLimitExceeded,
    automaton_accepts,
    build_safe_l2r_automaton,
    export_dot,
)

__version__ = "0.1.0"
