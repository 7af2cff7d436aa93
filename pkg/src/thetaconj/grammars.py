"""Grammars, bounded derivation enumeration and the grammar constructions.

Symbols are strings. Terminals are the single-character letters of an
:class:`Alphabet`; nonterminals are arbitrary tokens disjoint from them.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from .conjugacy import is_theta_conjugate, theta_conjugates
from .errors import (
    AlphabetMismatch,
    FrontierBudgetExceeded,
    MarkerClash,
    NonterminalClash,
    ParseError,
    ThetaConjError,
)
from .words import Alphabet, Involution, WordSet, validate_involution

DEFAULT_FORM_SLACK = 8
DEFAULT_MAX_STEPS = 64
DEFAULT_FRONTIER_BUDGET = 10**6
EMPTY_TOKEN = "@"


class InvalidGrammar(ThetaConjError, ValueError):
    pass


@dataclass(frozen=True)
class Production:
    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def __str__(self):
        rhs = " ".join(self.rhs) if self.rhs else EMPTY_TOKEN
        return f"{' '.join(self.lhs)} -> {rhs}"


@dataclass(frozen=True)
class Grammar:
    nonterminals: tuple
    terminals: Alphabet
    productions: tuple
    start: str

    def __post_init__(self):
        nts = tuple(dict.fromkeys(self.nonterminals))
        object.__setattr__(self, "nonterminals", nts)
        object.__setattr__(self, "productions", tuple(dict.fromkeys(self.productions)))
        nt_set = set(nts)
        clash = nt_set & set(self.terminals)
        if clash:
            raise InvalidGrammar(f"symbols used as both terminal and nonterminal: {sorted(clash)}")
        for name in nts:
            if not name or any(c.isspace() for c in name) or name == EMPTY_TOKEN:
                raise InvalidGrammar(f"bad nonterminal name {name!r}")
        if self.start not in nt_set:
            raise InvalidGrammar(f"start symbol {self.start!r} is not a nonterminal")
        for p in self.productions:
            if not p.lhs:
                raise InvalidGrammar(f"empty left-hand side in {p}")
            if not any(s in nt_set for s in p.lhs):
                raise InvalidGrammar(f"left-hand side of {p} has no nonterminal")
            for s in p.lhs + p.rhs:
                if s not in nt_set and s not in self.terminals:
                    raise InvalidGrammar(f"unknown symbol {s!r} in {p}")

    @property
    def is_context_free(self) -> bool:
        return all(len(p.lhs) == 1 for p in self.productions)

    @property
    def terminals_monotone(self) -> bool:
        """True when no left-hand side mentions a terminal, so terminals are never rewritten."""
        return not any(s in self.terminals for p in self.productions for s in p.lhs)


def grammar_for_words(alphabet: Alphabet, words: Iterable[str], start: str = "S") -> Grammar:
    """Context-free grammar with one rule ``start -> w`` per word."""
    prods = [Production((start,), tuple(alphabet.check(w))) for w in words]
    return Grammar((start,), alphabet, tuple(prods), start)


class EnumerationResult(WordSet):
    """Words found by :func:`enumerate_bounded`, plus how trustworthy the set is.

    ``saturated``: the derivation frontier ran dry before ``max_steps``.
    ``exact``: saturated and no form was discarded by the sentential-form
    cap, so the set is the full slice of the language up to ``max_len``.
    """

    __slots__ = ("saturated", "exact", "forms_visited")

    def __init__(self, words=(), alphabet=None, saturated=False, exact=False, forms_visited=0):
        super().__init__(words, alphabet)
        self.saturated = saturated
        self.exact = exact
        self.forms_visited = forms_visited


def enumerate_bounded(g: Grammar, max_len: int, max_steps: int = DEFAULT_MAX_STEPS,
                      form_slack: int = DEFAULT_FORM_SLACK,
                      frontier_budget: Optional[int] = DEFAULT_FRONTIER_BUDGET
                      ) -> EnumerationResult:
    """Terminal words of length <= max_len derivable in at most max_steps rewrites.

    Breadth-first over sentential forms. Forms longer than
    ``max_len + form_slack`` are dropped; when terminals are never rewritten,
    forms already holding more than ``max_len`` terminals are dropped too.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    terms = set(g.terminals)
    monotone = g.terminals_monotone
    cap = max_len + form_slack
    by_head = {}
    for p in g.productions:
        by_head.setdefault(p.lhs[0], []).append(p)

    start = (g.start,)
    visited = {start}
    frontier = [start]
    words = set()
    capped = False
    saturated = False
    for _ in range(max_steps):
        nxt = []
        for form in frontier:
            for i, sym in enumerate(form):
                for p in by_head.get(sym, ()):
                    k = len(p.lhs)
                    if k > 1 and form[i:i + k] != p.lhs:
                        continue
                    new = form[:i] + p.rhs + form[i + k:]
                    if new in visited:
                        continue
                    n_terms = sum(1 for s in new if s in terms)
                    if n_terms == len(new):
                        visited.add(new)
                        if n_terms <= max_len:
                            words.add("".join(new))
                        continue
                    if monotone and n_terms > max_len:
                        continue
                    if len(new) > cap:
                        capped = True
                        continue
                    visited.add(new)
                    if frontier_budget is not None and len(visited) > frontier_budget:
                        raise FrontierBudgetExceeded(
                            f"more than {frontier_budget} sentential forms visited")
                    nxt.append(new)
        frontier = nxt
        if not frontier:
            saturated = True
            break
    return EnumerationResult(words, g.terminals, saturated=saturated,
                             exact=saturated and not capped and monotone,
                             forms_visited=len(visited))


def reverse_grammar(g: Grammar) -> Grammar:
    prods = tuple(Production(p.lhs[::-1], p.rhs[::-1]) for p in g.productions)
    return Grammar(g.nonterminals, g.terminals, prods, g.start)


# -- grammar for the conjugate closure -----------------------------------------------

def _reserved_names(alphabet: Alphabet, suffix: str) -> dict:
    names = {key: key + suffix for key in ("S'", "T1", "T2", "T3", "T4", "T")}
    for a in alphabet:
        for kind in "oIDRTFN":
            names[(a, kind)] = f"X_{a}^{kind}{suffix}"
    return names


def _fresh_suffix(taken: set, alphabet: Alphabet, auto_rename: bool) -> str:
    k = 0
    while True:
        suffix = f"_{k}" if k else ""
        clash = taken & set(_reserved_names(alphabet, suffix).values())
        if not clash:
            return suffix
        if not auto_rename:
            raise NonterminalClash(f"grammar already uses reserved symbols {sorted(clash)}")
        k += 1


def wc_conjugate_families(theta: Involution, g: Grammar, auto_rename: bool = False):
    """The eighteen production families of the closure grammar, in order.

    Returns ``(names, families)`` where ``families`` is a list of 18 tuples
    of productions and ``names`` maps the fresh symbols (``"S'"``, ``"T1"``
    ... and ``(letter, kind)`` for the X symbols) to their actual tokens.
    The families are built over the reversal of ``g``.
    """
    if set(theta.alphabet) != set(g.terminals):
        raise AlphabetMismatch(
            f"grammar terminals {g.terminals.letters!r} differ from involution "
            f"alphabet {theta.alphabet.letters!r}")
    base = reverse_grammar(g)
    sigma = g.terminals
    taken = set(base.nonterminals) | set(sigma)
    names = _reserved_names(sigma, _fresh_suffix(taken, sigma, auto_rename))
    s1, t1, t2, t3, t4, tt = (names[k] for k in ("S'", "T1", "T2", "T3", "T4", "T"))
    z, z1, z2 = (t1, t3), (t1, t2), (t1, t4)

    def x(a, kind):
        return names[(a, kind)]

    def h(symbols):
        return tuple(x(s, "o") if s in sigma else s for s in symbols)

    P = Production
    pairs = [(a1, a2) for a1 in sigma for a2 in sigma]
    fam = [
        [P((s1,), (t1, base.start, t2)), P((s1,), (t1, base.start, tt))],
        [P(h(p.lhs), h(p.rhs)) for p in base.productions],
        [P((t1, x(a, "o")), (x(a, "N"), t1)) for a in sigma],
        [P((x(a, "o"), t2), (t3, x(a, "F"))) for a in sigma],
        [P((x(a, "o"), t3), (t3, x(a, "o"))) for a in sigma],
        [P((x(a, "o"), tt), (t4, x(a, "o"))) for a in sigma],
        [P((x(a, "N"),) + z, z + (theta.image(a),)) for a in sigma],
        [P((x(a, "N"),) + z1, z1 + (theta.image(a),)) for a in sigma],
        [P(z, ()), P(z1, ()), P(z2, ())],
        [P(z2 + (x(a, "o"),), (x(a, "D"),) + z) for a in sigma],
        [P((x(a, "D"),) + z, z + (a,)) for a in sigma],
        [P(z + (x(a, "o"),), z + (x(a, "I"),)) for a in sigma],
        [P(z + (x(a1, "I"), x(a2, "o")), (x(a1, "I"),) + z + (x(a2, "R"),)) for a1, a2 in pairs],
        [P(z + (x(a1, "R"), x(a2, "o")), (x(a1, "R"),) + z + (x(a2, "R"),)) for a1, a2 in pairs],
        [P(z + (x(a1, "R"), x(a2, "F")), (x(a2, "T"),) + z + (x(a1, "F"),)) for a1, a2 in pairs],
        [P((x(a1, "R"), x(a2, "T")) + z, (x(a2, "T"),) + z + (x(a1, "o"),)) for a1, a2 in pairs],
        [P((x(a1, "I"), x(a2, "T")) + z, (x(a2, "D"),) + z + (x(a1, "I"),)) for a1, a2 in pairs],
        [P(z + (x(a1, "I"), x(a2, "F")), (x(a2, "D"), x(a1, "D")) + z) for a1, a2 in pairs],
    ]
    return names, [tuple(f) for f in fam]


def wc_conjugate_grammar(theta: Involution, g: Grammar, auto_rename: bool = False) -> Grammar:
    """Unrestricted grammar generating C_theta(L(g))."""
    names, families = wc_conjugate_families(theta, g, auto_rename)
    fresh = [names[k] for k in ("S'", "T1", "T2", "T3", "T4", "T")]
    fresh += [names[(a, kind)] for a in g.terminals for kind in "oIDRTFN"]
    prods = tuple(p for fam in families for p in fam)
    return Grammar(tuple(g.nonterminals) + tuple(fresh), g.terminals, prods, names["S'"])


# -- PCP reduction -------------------------------------------------------------------

@dataclass(frozen=True)
class PcpInstance:
    u_tuple: tuple
    v_tuple: tuple

    def __post_init__(self):
        object.__setattr__(self, "u_tuple", tuple(self.u_tuple))
        object.__setattr__(self, "v_tuple", tuple(self.v_tuple))
        if not self.u_tuple or len(self.u_tuple) != len(self.v_tuple):
            raise InvalidGrammar("PCP tuples must be non-empty and of equal length")

    @property
    def n(self) -> int:
        return len(self.u_tuple)

    def is_solution(self, indices) -> bool:
        return bool(indices) and (
            "".join(self.u_tuple[i] for i in indices) == "".join(self.v_tuple[i] for i in indices))


DEFAULT_MARKERS = "#$0123456789"


def pcp_to_grammar(instance: PcpInstance, theta_base: Involution,
                   markers: Optional[str] = None, auto_rename: bool = False):
    """Context-free grammar that has a conjugate pair iff the instance is solvable.

    ``markers`` lists the left marker, the right marker and one index marker
    per tile (default ``#``, ``$``, ``0``, ``1``, ...). Every derivation uses
    at least one tile. Returns ``(grammar, extended involution)``.
    """
    sigma = theta_base.alphabet
    for w in instance.u_tuple + instance.v_tuple:
        sigma.check(w)
    n = instance.n
    if markers is None:
        markers = DEFAULT_MARKERS[:n + 2]
        if len(markers) < n + 2:
            raise MarkerClash(f"{n} tiles need explicit markers (only 10 digits available)")
    if len(markers) != n + 2 or len(set(markers)) != n + 2:
        raise MarkerClash(f"need {n + 2} distinct markers, got {markers!r}")
    clash = set(markers) & set(sigma)
    if clash:
        raise MarkerClash(f"markers {sorted(clash)} already belong to the base alphabet")
    left, right, idx = markers[0], markers[1], markers[2:]
    ext = Alphabet(sigma.letters + markers)
    pairs = [(a, theta_base.image(a)) for a in sigma] + [(right, left)]
    theta = validate_involution(ext, pairs)

    taken = set(ext)
    suffix = ""
    k = 0
    while {"S" + suffix, "N_U" + suffix, "N_V" + suffix} & taken:
        if not auto_rename:
            raise NonterminalClash("terminal alphabet contains a reserved nonterminal name")
        k += 1
        suffix = f"_{k}"
    s, nu, nv = "S" + suffix, "N_U" + suffix, "N_V" + suffix
    P = Production
    prods = [P((s,), (left, nu, left)), P((s,), (right, nv, right))]
    for i, u in enumerate(instance.u_tuple):
        prods.append(P((nu,), tuple(u) + (nu, idx[i])))
    for i, u in enumerate(instance.u_tuple):
        prods.append(P((nu,), tuple(u) + (idx[i],)))
    for i, v in enumerate(instance.v_tuple):
        prods.append(P((nv,), (idx[i], nv) + tuple(theta.apply(v))))
    for i, v in enumerate(instance.v_tuple):
        prods.append(P((nv,), (idx[i],) + tuple(theta.apply(v))))
    return Grammar((s, nu, nv), ext, tuple(prods), s), theta


def find_conjugate_pair(theta: Involution, g: Grammar, max_len: int,
                        max_steps: Optional[int] = None,
                        frontier_budget: Optional[int] = DEFAULT_FRONTIER_BUDGET
                        ) -> Optional[tuple]:
    """First (w1, w2) in canonical order with w1 != w2 both in L(g) and w2 in C_theta(w1).

    Only words of length <= max_len are searched; None means no pair within
    that bound, not that the language is free.
    """
    if set(theta.alphabet) != set(g.terminals):
        raise AlphabetMismatch("involution and grammar alphabets differ")
    steps = max_steps if max_steps is not None else max(DEFAULT_MAX_STEPS, 4 * max_len)
    words = enumerate_bounded(g, max_len, steps, frontier_budget=frontier_budget)
    for w1 in words:
        for w2 in theta_conjugates(theta, w1):
            if w2 != w1 and w2 in words and is_theta_conjugate(theta, w1, w2):
                return w1, w2
    return None


# -- text format ---------------------------------------------------------------------

_HEADERS = ("nonterminals", "terminals", "start", "theta")


def format_grammar(g: Grammar, theta: Optional[Involution] = None) -> str:
    lines = [
        "nonterminals: " + " ".join(g.nonterminals),
        f"terminals: {g.terminals.letters}",
        f"start: {g.start}",
    ]
    if theta is not None:
        lines.append(f"theta: {theta.spec()}".rstrip())
    lines.extend(str(p) for p in g.productions)
    return "\n".join(lines) + "\n"


def _tokens(text: str, nts: set, terms: Alphabet, lineno: int) -> tuple:
    out = []
    for tok in text.split():
        if tok == EMPTY_TOKEN:
            continue
        if tok in nts:
            out.append(tok)
        elif all(c in terms for c in tok):
            out.extend(tok)  # a run of terminal letters
        else:
            raise ParseError(f"line {lineno}: unknown symbol {tok!r}")
    return tuple(out)


def parse_grammar_document(text: str):
    """Parse the grammar text format; returns ``(grammar, theta_spec or None)``."""
    header = {}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in _HEADERS and "->" not in key:
            header[key.strip()] = rest.strip()
            continue
        lhs, arrow, rhs = line.partition("->")
        if not arrow:
            raise ParseError(f"line {lineno}: expected a rule 'lhs -> rhs', got {raw!r}")
        rules.append((lineno, lhs, rhs))
    for key in ("nonterminals", "terminals", "start"):
        if key not in header:
            raise ParseError(f"missing '{key}:' header")
    try:
        terms = Alphabet(header["terminals"].replace(" ", ""))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    nts = header["nonterminals"].split()
    nt_set = set(nts)
    prods = []
    for lineno, lhs, rhs in rules:
        left = _tokens(lhs, nt_set, terms, lineno)
        if not left:
            raise ParseError(f"line {lineno}: empty left-hand side")
        # a standalone '|' separates alternatives unless it is itself a symbol
        alternatives = [[]]
        for tok in rhs.split():
            if tok == "|" and tok not in terms and tok not in nt_set:
                alternatives.append([])
            else:
                alternatives[-1].append(tok)
        for alt in map(" ".join, alternatives):
            prods.append(Production(left, _tokens(alt, nt_set, terms, lineno)))
    try:
        g = Grammar(tuple(nts), terms, tuple(prods), header["start"])
    except InvalidGrammar as exc:
        raise ParseError(str(exc)) from None
    return g, header.get("theta")


def parse_grammar(text: str) -> Grammar:
    return parse_grammar_document(text)[0]


def parse_pcp(text: str) -> PcpInstance:
    """Two lines ``U: w0 w1 ...`` and ``V: ...``; ``@`` stands for the empty word."""
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().upper()
        if not sep or key not in ("U", "V"):
            raise ParseError(f"line {lineno}: expected 'U: ...' or 'V: ...'")
        rows[key] = tuple("" if t == EMPTY_TOKEN else t for t in rest.split())
    if set(rows) != {"U", "V"}:
        raise ParseError("PCP instance needs both a U line and a V line")
    try:
        return PcpInstance(rows["U"], rows["V"])
    except InvalidGrammar as exc:
        raise ParseError(str(exc)) from None


def format_pcp(instance: PcpInstance) -> str:
    def row(ws):
        return " ".join(w or EMPTY_TOKEN for w in ws)
    return f"U: {row(instance.u_tuple)}\nV: {row(instance.v_tuple)}\n"
