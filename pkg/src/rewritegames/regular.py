"""Regular-language toolkit: regexes, NFAs with epsilon moves, complete DFAs,
membership, bounded word enumeration, and finiteness detection."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

EPSILON_TOKEN = "%e"

# A word is an ordered, hashable sequence of symbol names.
Word = tuple[str, ...]

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"regex syntax error at position {position}: {message}")
        self.position = position


class UnknownSymbolError(ValueError):
    def __init__(self, token: str):
        super().__init__(f"unknown symbol {token}")
        self.token = token


def is_symbol_name(name: str) -> bool:
    return bool(_IDENT_RE.fullmatch(name))


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton; a transition label of None is an epsilon move."""

    states: tuple[int, ...]
    alphabet: tuple[str, ...]
    transitions: frozenset[tuple[int, str | None, int]]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        members = set(self.states)
        if len(members) != len(self.states):
            raise ValueError("duplicate state ids")
        if self.initial not in members:
            raise ValueError("initial state not among states")
        if not self.finals <= members:
            raise ValueError("final states not among states")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate symbols in alphabet")
        for name in self.alphabet:
            if not is_symbol_name(name):
                raise ValueError(f"invalid symbol name {name!r}")
        for src, label, dst in self.transitions:
            if src not in members or dst not in members:
                raise ValueError(f"transition endpoint outside states: {(src, label, dst)}")
            if label is not None and label not in self.alphabet:
                raise ValueError(f"transition label {label!r} not in alphabet")


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with a total transition map over states x alphabet."""

    states: tuple[int, ...]
    alphabet: tuple[str, ...]
    delta: dict[tuple[int, str], int]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        members = set(self.states)
        if self.initial not in members:
            raise ValueError("initial state not among states")
        if not self.finals <= members:
            raise ValueError("final states not among states")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    raise ValueError(f"delta is not total: missing ({q}, {a})")
        for (q, a), d in self.delta.items():
            if q not in members or d not in members or a not in self.alphabet:
                raise ValueError(f"bad transition ({q}, {a}) -> {d}")

    def step(self, state: int, symbol: str) -> int:
        if symbol not in self.alphabet:
            raise UnknownSymbolError(symbol)
        return self.delta[(state, symbol)]


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "|()*+?":
            tokens.append((c, c, i))
            i += 1
        elif text.startswith(EPSILON_TOKEN, i):
            tokens.append(("eps", EPSILON_TOKEN, i))
            i += len(EPSILON_TOKEN)
        else:
            m = _IDENT_RE.match(text, i)
            if m is None:
                raise RegexSyntaxError(f"unexpected character {c!r}", i)
            tokens.append(("sym", m.group(), i))
            i = m.end()
    return tokens


class _RegexParser:
    """Recursive descent for: union `|`, juxtaposition, postfix `* + ?`,
    grouping, `%e` for the empty word. Postfix binds tightest, then
    concatenation, then union."""

    def __init__(self, text, alphabet):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet
        self.n_states = 0
        self.edges = []

    def fresh(self):
        q = self.n_states
        self.n_states += 1
        return q

    def edge(self, src, label, dst):
        self.edges.append((src, label, dst))

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise RegexSyntaxError("empty regex", 0)
        frag = self.union()
        if self.pos < len(self.tokens):
            kind, value, position = self.tokens[self.pos]
            raise RegexSyntaxError(f"unexpected token {value!r}", position)
        return frag

    def union(self):
        parts = [self.concat()]
        while (tok := self.peek()) is not None and tok[0] == "|":
            self.take()
            parts.append(self.concat())
        if len(parts) == 1:
            return parts[0]
        start, end = self.fresh(), self.fresh()
        for fs, fe in parts:
            self.edge(start, None, fs)
            self.edge(fe, None, end)
        return start, end

    def concat(self):
        parts = [self.postfix()]
        while (tok := self.peek()) is not None and tok[0] in ("sym", "eps", "("):
            parts.append(self.postfix())
        for (_, left_end), (right_start, _) in zip(parts, parts[1:]):
            self.edge(left_end, None, right_start)
        return parts[0][0], parts[-1][1]

    def postfix(self):
        frag = self.atom()
        while (tok := self.peek()) is not None and tok[0] in ("*", "+", "?"):
            op, _, _ = self.take()
            fs, fe = frag
            start, end = self.fresh(), self.fresh()
            self.edge(start, None, fs)
            if op in ("*", "?"):
                self.edge(start, None, end)
            if op in ("*", "+"):
                self.edge(fe, None, fs)
            self.edge(fe, None, end)
            frag = (start, end)
        return frag

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise RegexSyntaxError("unexpected end of regex", len(self.text))
        kind, value, position = tok
        if kind == "(":
            self.take()
            frag = self.union()
            closing = self.peek()
            if closing is None or closing[0] != ")":
                raise RegexSyntaxError("expected ')'", position)
            self.take()
            return frag
        if kind == "sym":
            if value not in self.alphabet:
                raise UnknownSymbolError(value)
            self.take()
            start, end = self.fresh(), self.fresh()
            self.edge(start, value, end)
            return start, end
        if kind == "eps":
            self.take()
            start, end = self.fresh(), self.fresh()
            self.edge(start, None, end)
            return start, end
        raise RegexSyntaxError(f"unexpected token {value!r}", position)


def parse_regex(text: str, alphabet) -> Nfa:
    """Translate a regex into an epsilon-NFA over `alphabet` (order preserved).

    `%e` denotes the empty word; symbol tokens must be declared in `alphabet`.
    """
    alpha = tuple(dict.fromkeys(alphabet))
    parser = _RegexParser(text, frozenset(alpha))
    start, end = parser.parse()
    return Nfa(
        states=tuple(range(parser.n_states)),
        alphabet=alpha,
        transitions=frozenset(parser.edges),
        initial=start,
        finals=frozenset({end}),
    )


def _eps_map(nfa: Nfa):
    eps = {q: [] for q in nfa.states}
    for src, label, dst in nfa.transitions:
        if label is None:
            eps[src].append(dst)
    return eps


def _sym_map(nfa: Nfa):
    moves = {q: {} for q in nfa.states}
    for src, label, dst in nfa.transitions:
        if label is not None:
            moves[src].setdefault(label, []).append(dst)
    return moves


def _closure(eps, seed):
    seen = set(seed)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for nxt in eps[q]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction with epsilon closures.

    Closures are trimmed to the states that matter (finals, or sources of a
    symbol transition), which keeps equal-language subsets identical. The empty
    subset acts as the sink, so the result is always complete. Exploration is
    breadth-first with symbols in sorted order; state ids are dense integers in
    discovery order, making the output a pure function of the input.
    """
    eps = _eps_map(nfa)
    moves = _sym_map(nfa)
    significant = frozenset(q for q in nfa.states if q in nfa.finals or moves[q])

    def subset(seed):
        return frozenset(_closure(eps, seed) & significant)

    symbols = sorted(nfa.alphabet)
    start = subset({nfa.initial})
    index = {start: 0}
    order = [start]
    queue = deque([start])
    delta = {}
    while queue:
        cur = queue.popleft()
        i = index[cur]
        for a in symbols:
            moved = {d for q in cur for d in moves[q].get(a, ())}
            nxt = subset(moved)
            j = index.get(nxt)
            if j is None:
                j = len(order)
                index[nxt] = j
                order.append(nxt)
                queue.append(nxt)
            delta[(i, a)] = j
    finals = frozenset(i for i, sub in enumerate(order) if sub & nfa.finals)
    return Dfa(
        states=tuple(range(len(order))),
        alphabet=nfa.alphabet,
        delta=delta,
        initial=0,
        finals=finals,
    )


def dfa_run(dfa: Dfa, word: Word) -> int:
    state = dfa.initial
    for sym in word:
        state = dfa.step(state, sym)
    return state


def dfa_accepts(dfa: Dfa, word: Word) -> bool:
    return dfa_run(dfa, word) in dfa.finals


def nfa_membership(nfa: Nfa, word: Word) -> bool:
    """Direct subset simulation over the NFA; independent of determinize."""
    eps = _eps_map(nfa)
    moves = _sym_map(nfa)
    alpha = set(nfa.alphabet)
    current = _closure(eps, {nfa.initial})
    for sym in word:
        if sym not in alpha:
            raise UnknownSymbolError(sym)
        current = _closure(eps, {d for q in current for d in moves[q].get(sym, ())})
    return bool(current & nfa.finals)


def enumerate_words(nfa: Nfa, max_len: int) -> list[Word]:
    """All accepted words of length <= max_len, shortest first, ties in symbol
    name order. Walks the determinized automaton, pruning states that cannot
    reach acceptance within the remaining length."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    dfa = determinize(nfa)
    symbols = sorted(dfa.alphabet)
    # ok[k][q]: acceptance reachable from q in exactly k steps
    ok = [{q: q in dfa.finals for q in dfa.states}]
    for k in range(1, max_len + 1):
        prev = ok[k - 1]
        ok.append({q: any(prev[dfa.delta[(q, a)]] for a in symbols) for q in dfa.states})

    out: list[Word] = []
    prefix: list[str] = []

    def walk(q, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for a in symbols:
            nq = dfa.delta[(q, a)]
            if ok[remaining - 1][nq]:
                prefix.append(a)
                walk(nq, remaining - 1)
                prefix.pop()

    for n in range(max_len + 1):
        if ok[n][dfa.initial]:
            walk(dfa.initial, n)
    return out


def is_finite_language(nfa: Nfa) -> bool:
    """True iff L(nfa) is finite: the determinized automaton, restricted to
    states that can still reach acceptance, has no cycle."""
    dfa = determinize(nfa)
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

    WHITE, GRAY, BLACK = 0, 1, 2
    color = {q: WHITE for q in live}
    for root in sorted(live):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(sorted(dfa.alphabet)))]
        color[root] = GRAY
        while stack:
            q, it = stack[-1]
            advanced = False
            for a in it:
                nq = dfa.delta[(q, a)]
                if nq not in live:
                    continue
                if color[nq] == GRAY:
                    return False
                if color[nq] == WHITE:
                    color[nq] = GRAY
                    stack.append((nq, iter(sorted(dfa.alphabet))))
                    advanced = True
                    break
            if not advanced:
                color[q] = BLACK
                stack.pop()
    return True
