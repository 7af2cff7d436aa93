"""Finite automata and the regular-language results for Watson-Crick conjugacy.

States are the integers ``0 .. n-1``. A :class:`Dfa` is total; an
:class:`Nfa` (with epsilon moves, symbol ``None``) is only used as an
intermediate form before subset construction.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Optional

from .errors import AlphabetMismatch, ParseError, StateBudgetExceeded
from .words import Alphabet, Involution, WordSet

DEFAULT_STATE_BUDGET = 10**5


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    transitions: tuple  # transitions[state][letter index] -> state
    start: int
    finals: frozenset
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        k = len(self.alphabet)
        for q, row in enumerate(self.transitions):
            if len(row) != k:
                raise ValueError(f"state {q} has {len(row)} transitions, expected {k}")
            for r in row:
                if not 0 <= r < n:
                    raise ValueError(f"transition from {q} to unknown state {r}")
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise ValueError("final state out of range")
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.alphabet)})

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: str) -> int:
        return self.transitions[state][self._index[letter]]

    def run(self, word: str, state: Optional[int] = None) -> int:
        self.alphabet.check(word)
        q = self.start if state is None else state
        for c in word:
            q = self.transitions[q][self._index[c]]
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.finals

    def with_start_finals(self, start: Optional[int] = None,
                          finals: Optional[Iterable[int]] = None) -> "Dfa":
        return Dfa(self.alphabet, self.transitions,
                   self.start if start is None else start,
                   self.finals if finals is None else frozenset(finals))

    def live_states(self) -> set:
        """States from which some final state is reachable."""
        pred = [set() for _ in range(self.n_states)]
        for q, row in enumerate(self.transitions):
            for r in row:
                pred[r].add(q)
        live = set(self.finals)
        todo = list(live)
        while todo:
            r = todo.pop()
            for q in pred[r]:
                if q not in live:
                    live.add(q)
                    todo.append(q)
        return live

    def words_of_length(self, k: int) -> WordSet:
        return WordSet((w for w in self._walk(k) if len(w) == k), self.alphabet)

    def words(self, maxlen: int) -> WordSet:
        """The finite slice L(M) restricted to lengths up to ``maxlen``."""
        return WordSet(self._walk(maxlen), self.alphabet)

    def _walk(self, maxlen: int):
        live = self.live_states()
        frontier = [("", self.start)] if self.start in live else []
        for depth in range(maxlen + 1):
            nxt = []
            for w, q in frontier:
                if q in self.finals:
                    yield w
                if depth < maxlen:
                    for c, r in zip(self.alphabet.letters, self.transitions[q]):
                        if r in live:
                            nxt.append((w + c, r))
            frontier = nxt

    def shortest_word(self) -> Optional[str]:
        """Shortest accepted word, ties broken by alphabet order; None if empty."""
        parent = {self.start: None}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            if q in self.finals:
                letters = []
                while parent[q] is not None:
                    q, c = parent[q]
                    letters.append(c)
                return "".join(reversed(letters))
            for c, r in zip(self.alphabet.letters, self.transitions[q]):
                if r not in parent:
                    parent[r] = (q, c)
                    queue.append(r)
        return None

    def is_empty(self) -> bool:
        return self.shortest_word() is None

    def complement(self) -> "Dfa":
        return self.with_start_finals(finals=set(range(self.n_states)) - self.finals)

    def minimize(self) -> "Dfa":
        return minimize(self)


class Nfa:
    """Mutable epsilon-NFA builder; ``None`` labels epsilon moves."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.edges: list = []  # edges[state] -> {symbol: set(states)}
        self.starts: set = set()
        self.finals: set = set()

    @property
    def n_states(self) -> int:
        return len(self.edges)

    def add_state(self) -> int:
        self.edges.append({})
        return len(self.edges) - 1

    def add_states(self, n: int) -> int:
        first = len(self.edges)
        self.edges.extend({} for _ in range(n))
        return first

    def add_edge(self, src: int, symbol: Optional[str], dst: int):
        self.edges[src].setdefault(symbol, set()).add(dst)

    def epsilon_closure(self, states: Iterable[int]) -> frozenset:
        seen = set(states)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for r in self.edges[q].get(None, ()):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return frozenset(seen)

    def accepts(self, word: str) -> bool:
        current = self.epsilon_closure(self.starts)
        for c in word:
            nxt = set()
            for q in current:
                nxt.update(self.edges[q].get(c, ()))
            current = self.epsilon_closure(nxt)
        return bool(current & self.finals)

    def determinize(self, budget: Optional[int] = DEFAULT_STATE_BUDGET) -> Dfa:
        """Subset construction; the empty subset becomes the dead state.

        Subsets are bitmasks. Each state's epsilon-closed successors are
        precomputed, and unions over a subset go through per-byte lookup
        tables built on demand.
        """
        letters = self.alphabet.letters
        n = self.n_states

        def mask(states):
            m = 0
            for q in states:
                m |= 1 << q
            return m

        closure = [mask(self.epsilon_closure((q,))) for q in range(n)]
        images = []  # images[i][q]: closed successors of q on letters[i]
        for c in letters:
            row = []
            for q in range(n):
                m = 0
                for r in self.edges[q].get(c, ()):
                    m |= closure[r]
                row.append(m)
            images.append(row)
        tables = [dict() for _ in letters]

        def step(subset, i):
            image, table, out, base = images[i], tables[i], 0, 0
            while subset:
                byte = subset & 0xFF
                if byte:
                    key = (base, byte)
                    m = table.get(key)
                    if m is None:
                        m = 0
                        for bit in range(8):
                            if byte >> bit & 1 and base + bit < n:
                                m |= image[base + bit]
                        table[key] = m
                    out |= m
                subset >>= 8
                base += 8
            return out

        start = mask(self.epsilon_closure(self.starts))
        ids = {start: 0}
        order = [start]
        rows = []
        i = 0
        while i < len(order):
            subset = order[i]
            row = []
            for k in range(len(letters)):
                target = step(subset, k)
                t = ids.get(target)
                if t is None:
                    t = ids[target] = len(order)
                    order.append(target)
                    if budget is not None and len(order) > budget:
                        raise StateBudgetExceeded(
                            f"determinisation exceeded {budget} states")
                row.append(t)
            rows.append(tuple(row))
            i += 1
        fmask = mask(self.finals)
        finals = {k for k, s in enumerate(order) if s & fmask}
        return Dfa(self.alphabet, tuple(rows), 0, frozenset(finals))


def _copy_dfa_into(nfa: Nfa, m: Dfa, relabel=None, reverse=False) -> int:
    """Embed m's transition graph into nfa; returns the state offset."""
    off = nfa.add_states(m.n_states)
    for q, row in enumerate(m.transitions):
        for c, r in zip(m.alphabet.letters, row):
            label = relabel[c] if relabel else c
            if reverse:
                nfa.add_edge(off + r, label, off + q)
            else:
                nfa.add_edge(off + q, label, off + r)
    return off


def reverse_nfa(m: Dfa) -> Nfa:
    """NFA for the reversal of L(m)."""
    nfa = Nfa(m.alphabet)
    off = _copy_dfa_into(nfa, m, reverse=True)
    nfa.starts = {off + f for f in m.finals}
    nfa.finals = {off + m.start}
    return nfa


def minimize(m: Dfa) -> Dfa:
    """Hopcroft partition refinement on the reachable part.

    The result is renumbered in breadth-first order from the start state
    (letters in alphabet order), so equivalent DFAs minimise to identical
    values.
    """
    k = len(m.alphabet)
    reach = {m.start}
    todo = [m.start]
    while todo:
        q = todo.pop()
        for r in m.transitions[q]:
            if r not in reach:
                reach.add(r)
                todo.append(r)
    inverse = [dict() for _ in range(k)]  # inverse[a][r] -> states q with q -a-> r
    for q in reach:
        for a, r in enumerate(m.transitions[q]):
            inverse[a].setdefault(r, []).append(q)
    finals = reach & m.finals
    members = [set(s) for s in (finals, reach - m.finals) if s]
    block = {q: i for i, s in enumerate(members) for q in s}
    work = {min(range(len(members)), key=lambda i: len(members[i]))}
    while work:
        splitter = list(members[work.pop()])
        for a in range(k):
            touched = {}
            for r in splitter:
                for q in inverse[a].get(r, ()):
                    touched.setdefault(block[q], []).append(q)
            for b, inside in touched.items():
                if len(inside) == len(members[b]):
                    continue
                nb = len(members)
                members.append(set(inside))
                members[b].difference_update(inside)
                for q in inside:
                    block[q] = nb
                if b in work or len(inside) <= len(members[b]):
                    work.add(nb)
                else:
                    work.add(b)
    ids = {block[m.start]: 0}
    order = [block[m.start]]
    rows = []
    i = 0
    while i < len(order):
        rep = next(iter(members[order[i]]))
        row = []
        for r in m.transitions[rep]:
            b = block[r]
            if b not in ids:
                ids[b] = len(order)
                order.append(b)
            row.append(ids[b])
        rows.append(tuple(row))
        i += 1
    new_finals = frozenset(ids[b] for b in order if next(iter(members[b])) in finals)
    return Dfa(m.alphabet, tuple(rows), 0, new_finals)


def intersect(m1: Dfa, m2: Dfa) -> Dfa:
    """Product automaton accepting L(m1) & L(m2), reachable part only."""
    if set(m1.alphabet) != set(m2.alphabet):
        raise AlphabetMismatch("intersection needs a common alphabet")
    letters = m1.alphabet.letters
    start = (m1.start, m2.start)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for c in letters:
            pair = (m1.step(p, c), m2.step(q, c))
            if pair not in ids:
                ids[pair] = len(order)
                order.append(pair)
            row.append(ids[pair])
        rows.append(tuple(row))
        i += 1
    finals = {ids[(p, q)] for p, q in order if p in m1.finals and q in m2.finals}
    return Dfa(m1.alphabet, tuple(rows), 0, frozenset(finals))


def equivalent(m1: Dfa, m2: Dfa) -> bool:
    return minimize(m1) == minimize(m2)


def dfa_from_words(alphabet: Alphabet, words: Iterable[str]) -> Dfa:
    """Minimal DFA for a finite language (trie plus a dead state)."""
    words = [alphabet.check(w) for w in words]
    trie = [{}]
    finals = set()
    for w in words:
        q = 0
        for c in w:
            if c not in trie[q]:
                trie.append({})
                trie[q][c] = len(trie) - 1
            q = trie[q][c]
        finals.add(q)
    dead = len(trie)
    rows = [tuple(node.get(c, dead) for c in alphabet) for node in trie]
    rows.append(tuple(dead for _ in alphabet))
    return minimize(Dfa(alphabet, tuple(rows), 0, frozenset(finals)))


def random_dfa(rng: random.Random, n_states: int, alphabet: Alphabet,
               final_prob: float = 0.35) -> Dfa:
    rows = tuple(tuple(rng.randrange(n_states) for _ in alphabet) for _ in range(n_states))
    finals = frozenset(q for q in range(n_states) if rng.random() < final_prob)
    return Dfa(alphabet, rows, 0, finals)


def _check_alphabets(theta: Involution, m: Dfa):
    if set(theta.alphabet) != set(m.alphabet):
        raise AlphabetMismatch(
            f"involution alphabet {theta.alphabet.letters!r} differs from "
            f"automaton alphabet {m.alphabet.letters!r}")


def build_theta_image_dfa(theta: Involution, m: Dfa,
                          budget: Optional[int] = DEFAULT_STATE_BUDGET) -> Dfa:
    """DFA for {theta(w) : w in L(m)}: reverse m, relabel letters, determinise."""
    _check_alphabets(theta, m)
    nfa = Nfa(m.alphabet)
    off = _copy_dfa_into(nfa, m, relabel=theta.mapping, reverse=True)
    nfa.starts = {off + f for f in m.finals}
    nfa.finals = {off + m.start}
    return minimize(nfa.determinize(budget))


def theta_conjugate_closure_nfa(theta: Involution, m: Dfa) -> Nfa:
    """One epsilon-NFA for the union over states q of theta(L(B_q)) . L(C_q).

    ``B_q`` is m started in q with m's finals; ``C_q`` is m from its start with
    q as the only final state. All theta(L(B_q)) are read by one reversed,
    relabelled copy of m that starts in m's finals; leaving it at q enters the
    forward copy for C_q.
    """
    _check_alphabets(theta, m)
    nfa = Nfa(m.alphabet)
    start = nfa.add_state()
    nfa.starts = {start}
    back = _copy_dfa_into(nfa, m, relabel=theta.mapping, reverse=True)
    for f in m.finals:
        nfa.add_edge(start, None, back + f)
    for q in range(m.n_states):
        fwd = _copy_dfa_into(nfa, m)
        nfa.add_edge(back + q, None, fwd + m.start)
        nfa.finals.add(fwd + q)
    return nfa


def theta_conjugate_closure_dfa(theta: Involution, m: Dfa,
                                budget: Optional[int] = DEFAULT_STATE_BUDGET,
                                minimal: bool = True) -> Dfa:
    """DFA accepting C_theta(L(m))."""
    dfa = theta_conjugate_closure_nfa(theta, m).determinize(budget)
    return minimize(dfa) if minimal else dfa


def right_quotient(m: Dfa, letter: str) -> Dfa:
    """DFA for {u : u + letter in L(m)}."""
    return m.with_start_finals(
        finals={q for q in range(m.n_states) if m.step(q, letter) in m.finals})


def contains_theta_palindrome(theta: Involution, m: Dfa) -> Optional[str]:
    """Shortest theta-palindrome in L(m) (ties by alphabet order), or None.

    Explores pairs (p, q): p is reached from the start on a prefix x, and from
    q the word theta(x) leads to a final state. Even palindromes x theta(x)
    close at p == q; odd ones x c theta(x) need a fixed letter c with
    p -c-> q.
    """
    _check_alphabets(theta, m)
    letters = m.alphabet.letters
    pred = [dict() for _ in range(m.n_states)]  # pred[q][a] -> states r with r -a-> q
    for r, row in enumerate(m.transitions):
        for c, q in zip(letters, row):
            pred[q].setdefault(c, []).append(r)
    fixed = [c for c in letters if theta.image(c) == c]
    image = theta.mapping
    key = m.alphabet.sort_key

    level = [((m.start, f), "") for f in sorted(m.finals)]
    seen = {pair for pair, _ in level}
    while level:
        even = [x + theta.apply(x) for (p, q), x in level if p == q]
        if even:
            return min(even, key=key)
        odd = [x + c + theta.apply(x)
               for (p, q), x in level for c in fixed if m.step(p, c) == q]
        if odd:
            return min(odd, key=key)
        nxt = []
        for (p, q), x in level:
            for c in letters:
                p2 = m.step(p, c)
                for q2 in pred[q].get(image[c], ()):
                    pair = (p2, q2)
                    if pair not in seen:
                        seen.add(pair)
                        nxt.append((pair, x + c))
        level = nxt
    return None


class FreenessStatus(enum.Enum):
    FREE = "FREE"
    NOT_FREE = "NOT_FREE"
    PRECONDITION_FAILED = "PRECONDITION_FAILED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FreenessVerdict:
    status: FreenessStatus
    witness_pair: Optional[tuple] = None  # (w, w2): w2 in C_theta(w), both in L, distinct
    palindrome_witness: Optional[str] = None


def shifted_conjugates_dfa(theta: Involution, m: Dfa,
                           budget: Optional[int] = DEFAULT_STATE_BUDGET) -> Dfa:
    """DFA for the union over letters a of theta(a) . C_theta(L_a), L_a = L(m) / a.

    Together with L(m) itself this covers C_theta(L(m)).
    """
    _check_alphabets(theta, m)
    nfa = Nfa(m.alphabet)
    start = nfa.add_state()
    nfa.starts = {start}
    for a in m.alphabet:
        quotient = minimize(right_quotient(m, a))
        if not quotient.live_states() or quotient.is_empty():
            continue
        closure = theta_conjugate_closure_dfa(theta, quotient, budget)
        off = _copy_dfa_into(nfa, closure)
        nfa.add_edge(start, theta.image(a), off + closure.start)
        nfa.finals.update(off + f for f in closure.finals)
    return minimize(nfa.determinize(budget))


def decide_theta_conjugate_freeness(theta: Involution, m: Dfa,
                                    budget: Optional[int] = DEFAULT_STATE_BUDGET
                                    ) -> FreenessVerdict:
    """Decide whether no word of L(m) has a distinct conjugate in L(m).

    Only meaningful for languages without theta-palindromes; otherwise the
    verdict is PRECONDITION_FAILED with a palindrome as evidence. For the
    palindrome-free case L is free iff L has no word in common with the
    shifted-conjugate language T.
    """
    palindrome = contains_theta_palindrome(theta, m)
    if palindrome is not None:
        return FreenessVerdict(FreenessStatus.PRECONDITION_FAILED,
                               palindrome_witness=palindrome)
    t = shifted_conjugates_dfa(theta, m, budget)
    shared = intersect(m, t).shortest_word()
    if shared is None:
        return FreenessVerdict(FreenessStatus.FREE)
    # shared == theta(y) + x for some accepted x + y with y non-empty
    candidates = []
    for k in range(1, len(shared) + 1):
        original = shared[k:] + theta.apply(shared[:k])
        if original != shared and m.accepts(original):
            candidates.append(original)
    if not candidates:
        raise AssertionError(f"no preimage found for conjugate witness {shared!r}")
    original = min(candidates, key=m.alphabet.sort_key)
    return FreenessVerdict(FreenessStatus.NOT_FREE, witness_pair=(original, shared))


# -- text format ---------------------------------------------------------------

def format_dfa(m: Dfa) -> str:
    lines = [
        f"alphabet: {m.alphabet.letters}",
        f"states: {m.n_states}",
        f"start: {m.start}",
        "finals: " + " ".join(str(f) for f in sorted(m.finals)),
    ]
    for q, row in enumerate(m.transitions):
        for c, r in zip(m.alphabet.letters, row):
            lines.append(f"{q} {c} {r}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    header = {}
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("alphabet", "states", "start", "finals"):
            header[key.strip()] = rest.strip()
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'src letter dst', got {raw!r}")
        moves.append((lineno, parts))
    for key in ("alphabet", "states", "start", "finals"):
        if key not in header:
            raise ParseError(f"missing '{key}:' header")
    try:
        alphabet = Alphabet(header["alphabet"].replace(" ", ""))
        n = int(header["states"])
        start = int(header["start"])
        finals = frozenset(int(f) for f in header["finals"].split())
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    table = [[None] * len(alphabet) for _ in range(n)]
    for lineno, (src, c, dst) in moves:
        try:
            q, r = int(src), int(dst)
        except ValueError:
            raise ParseError(f"line {lineno}: state ids must be integers") from None
        if c not in alphabet:
            raise ParseError(f"line {lineno}: letter {c!r} not in alphabet")
        if not (0 <= q < n and 0 <= r < n):
            raise ParseError(f"line {lineno}: state out of range")
        i = alphabet.index(c)
        if table[q][i] is not None and table[q][i] != r:
            raise ParseError(f"line {lineno}: second transition for ({q}, {c})")
        table[q][i] = r
    for q, row in enumerate(table):
        for c, r in zip(alphabet.letters, row):
            if r is None:
                raise ParseError(f"transition function is not total: missing ({q}, {c})")
    try:
        return Dfa(alphabet, tuple(tuple(row) for row in table), start, finals)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
