"""Deterministic automaton over prefix antichains: it tracks the minimal
guarantee sets reachable from the initial target state as a word is consumed,
and accepts exactly the words the effect table decides safe."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .game import Game
from .regular import UnknownSymbolError, Word
from .effects import Antichain, EffectTable, advance_antichain, compute_effect_table


class StateLimitExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"state limit exceeded: more than {limit} prefix states discovered")
        self.limit = limit


@dataclass
class SafeL2RAutomaton:
    """States are antichains in discovery order (index 0 initial); acceptance is
    recomputed from the stored antichain, never cached, so the invariant stays
    checkable after construction."""

    alphabet: tuple[str, ...]
    states: tuple[Antichain, ...]
    transitions: dict[tuple[int, str], int]
    target_finals: frozenset[int]

    def accepting(self, index: int) -> bool:
        return any(s <= self.target_finals for s in self.states[index].sets)

    def step(self, index: int, symbol: str) -> int:
        if symbol not in self.alphabet:
            raise UnknownSymbolError(symbol)
        return self.transitions[(index, symbol)]


def build_safe_l2r_automaton(game: Game, state_limit: int = 10_000,
                             table: EffectTable | None = None) -> SafeL2RAutomaton:
    """Breadth-first lazy construction from the {{initial}} antichain; symbols
    are taken in declaration order, so equal inputs give identical output."""
    if state_limit < 1:
        raise ValueError("state_limit must be >= 1")
    if table is None:
        table = compute_effect_table(game)
    start = Antichain((frozenset({game.target_dfa.initial}),))
    index = {start: 0}
    states = [start]
    transitions: dict[tuple[int, str], int] = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        current = states[i]
        for sym in game.alphabet:
            successor = advance_antichain(current, table.effect(sym))
            j = index.get(successor)
            if j is None:
                if len(states) >= state_limit:
                    raise StateLimitExceeded(state_limit)
                j = len(states)
                index[successor] = j
                states.append(successor)
                queue.append(j)
            transitions[(i, sym)] = j
    return SafeL2RAutomaton(
        alphabet=tuple(game.alphabet),
        states=tuple(states),
        transitions=transitions,
        target_finals=game.target_dfa.finals,
    )


def automaton_accepts(aut: SafeL2RAutomaton, word: Word) -> bool:
    index = 0
    for sym in word:
        index = aut.step(index, sym)
    return aut.accepting(index)


def export_dot(aut: SafeL2RAutomaton) -> str:
    """DOT rendering: nodes in discovery order labelled with their antichain,
    accepting nodes double-circled, edges in symbol declaration order. The
    output is byte-stable for equal automata."""
    lines = [
        "digraph safe_l2r {",
        "  rankdir=LR;",
        '  __start [shape=point, label=""];',
        "  __start -> s0;",
    ]
    for i, antichain in enumerate(aut.states):
        shape = "doublecircle" if aut.accepting(i) else "circle"
        lines.append(f'  s{i} [label="{antichain.render()}", shape={shape}];')
    for i in range(len(aut.states)):
        for sym in aut.alphabet:
            lines.append(f'  s{i} -> s{aut.transitions[(i, sym)]} [label="{sym}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
