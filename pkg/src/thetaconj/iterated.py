"""Iterated conjugates and the closure C*(w).

For ``|w| >= 3`` the closure is the class of all words with the same paired
Parikh vector as ``w`` (each orbit ``{a, theta(a)}`` counted jointly), reached
after at most ``4|w| - 6`` iterations. Shorter words stabilise after one
(length 1) or three (length 2) iterations.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from .conjugacy import theta_conjugates
from .errors import SizeGuardExceeded
from .words import Involution, WordSet

DEFAULT_SIZE_GUARD = 10**6

# iterations after which C^m(w) is the full closure, for |w| = 0, 1, 2
SHORT_WORD_STABLE_ITERATION = {0: 0, 1: 1, 2: 3}


@dataclass(frozen=True)
class PairedParikhVector:
    """Joint letter counts per orbit, keyed by the orbit's least letter."""

    entries: tuple  # ((representative, count), ...) in alphabet order, zeros omitted

    def as_dict(self) -> dict:
        return dict(self.entries)

    def total(self) -> int:
        return sum(c for _, c in self.entries)


def paired_parikh(theta: Involution, w: str) -> PairedParikhVector:
    theta.alphabet.check(w)
    counts = {}
    rep = _representatives(theta)
    for c in w:
        r = rep[c]
        counts[r] = counts.get(r, 0) + 1
    order = theta.alphabet.index
    return PairedParikhVector(tuple(sorted(counts.items(), key=lambda kv: order(kv[0]))))


def _representatives(theta: Involution) -> dict:
    rep = {}
    for orbit in theta.orbits():
        for c in orbit:
            rep[c] = orbit[0]
    return rep


def stability_bound(n: int) -> int:
    """Number of iterations that always reaches the closure for words of length n."""
    if n <= 2:
        return SHORT_WORD_STABLE_ITERATION[n]
    return 4 * n - 6


def _guard(size: int, size_guard: Optional[int]):
    if size_guard is not None and size > size_guard:
        raise SizeGuardExceeded(f"set would exceed {size_guard} elements")


def _iterate(theta: Involution, start: Iterable[str], n: Optional[int], size_guard):
    """Yield (i, C^i) for i = 0, 1, ... up to n (or until a fixpoint when n is None)."""
    current = set(start)
    frontier = set(current)
    i = 0
    yield i, current
    while n is None or i < n:
        new = set()
        for x in frontier:
            new.update(theta_conjugates(theta, x).as_frozenset())
        new -= current
        i += 1
        if not new and n is None:
            return
        current = current | new
        _guard(len(current), size_guard)
        frontier = new
        yield i, current


def iterate_conjugates(theta: Involution, w: str, n: int,
                       size_guard: Optional[int] = DEFAULT_SIZE_GUARD) -> WordSet:
    """C^n(w), computed by expanding only the words added in the previous round."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    theta.alphabet.check(w)
    result = None
    for _, result in _iterate(theta, [w], n, size_guard):
        pass
    return WordSet(result, theta.alphabet)


def _parikh_class(theta: Involution, w: str, size_guard):
    pv = paired_parikh(theta, w)
    _guard(_class_size(theta, pv), size_guard)
    remaining = pv.as_dict()
    rep = _representatives(theta)
    letters = [c for c in theta.alphabet if rep[c] in remaining]
    n = len(w)
    out = []
    buf = []

    def extend(depth):
        if depth == n:
            out.append("".join(buf))
            return
        for c in letters:
            r = rep[c]
            if remaining[r]:
                remaining[r] -= 1
                buf.append(c)
                extend(depth + 1)
                buf.pop()
                remaining[r] += 1

    extend(0)
    return out


def closure_set(theta: Involution, w: str,
                size_guard: Optional[int] = DEFAULT_SIZE_GUARD) -> WordSet:
    """The closure C*(w).

    Words of length three or more get the paired-Parikh class generated
    directly; shorter words are iterated the fixed small number of times.
    """
    theta.alphabet.check(w)
    if len(w) <= 2:
        return iterate_conjugates(theta, w, SHORT_WORD_STABLE_ITERATION[len(w)], size_guard)
    return WordSet(_parikh_class(theta, w, size_guard), theta.alphabet)


def _class_size(theta: Involution, pv: PairedParikhVector) -> int:
    fixed = {o[0] for o in theta.orbits() if len(o) == 1}
    counts = [c for _, c in pv.entries]
    size = math.factorial(sum(counts))
    for c in counts:
        size //= math.factorial(c)
    paired = sum(c for r, c in pv.entries if r not in fixed)
    return size << paired


def closure_size(theta: Involution, w: str) -> int:
    """Exact |C*(w)|: multinomial over orbit counts times 2 ** (letters in non-fixed orbits)."""
    return _class_size(theta, paired_parikh(theta, w))


def stabilization_index(theta: Involution, w: str,
                        size_guard: Optional[int] = DEFAULT_SIZE_GUARD) -> int:
    """Least i with C^i(w) == C*(w); iterates until the set stops growing."""
    theta.alphabet.check(w)
    last = 0
    for last, _ in _iterate(theta, [w], None, size_guard):
        pass
    return last


def closure_of_language(theta: Involution, words: Iterable[str],
                        size_guard: Optional[int] = DEFAULT_SIZE_GUARD) -> WordSet:
    """C*(L) for a finite language, as the union of per-word closures."""
    out = set()
    seen = set()
    for w in words:
        if len(w) >= 3:
            # one closure per paired-Parikh class
            pv = paired_parikh(theta, w)
            if pv in seen:
                continue
            seen.add(pv)
        out.update(closure_set(theta, w, size_guard).as_frozenset())
        _guard(len(out), size_guard)
    return WordSet(out, theta.alphabet)


@dataclass(frozen=True)
class ClosureReport:
    word: str
    closure: Optional[WordSet]
    size: int
    stabilization_index: Optional[int]  # None when the closure is not materialised
    bound_4n_minus_6: int


def closure_report(theta: Involution, w: str,
                   size_guard: Optional[int] = DEFAULT_SIZE_GUARD) -> ClosureReport:
    """Closure summary; the set itself is omitted when it exceeds the size guard."""
    size = closure_size(theta, w)
    materialise = size_guard is None or size <= size_guard
    return ClosureReport(
        word=w,
        closure=closure_set(theta, w, size_guard) if materialise else None,
        size=size,
        stabilization_index=stabilization_index(theta, w, size_guard) if materialise else None,
        bound_4n_minus_6=4 * len(w) - 6,
    )
