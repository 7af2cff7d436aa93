"""Watson-Crick conjugate sets of single words.

For an antimorphic involution ``theta`` the conjugate set of ``w`` is
``{theta(y) + x : w == x + y}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .words import Involution, WordSet, is_primitive


def theta_conjugates(theta: Involution, w: str) -> WordSet:
    t = theta.apply(w)  # theta(w)[:k] == theta(w[n-k:])
    n = len(w)
    return WordSet((t[:k] + w[:n - k] for k in range(n + 1)), theta.alphabet)


class IncrementalConjugates(NamedTuple):
    set: WordSet
    palindrome_criterion: Optional[bool]
    """Whether C(ua) == theta(a) C(u); ``None`` for the empty word."""


def theta_conjugates_incremental(theta: Involution, w: str) -> IncrementalConjugates:
    """Build the conjugate set letter by letter via C(ua) = {ua} | theta(a) C(u)."""
    theta.alphabet.check(w)
    current = {""}
    criterion = None
    for i, a in enumerate(w):
        shifted = {theta.image(a) + x for x in current}
        grown = shifted | {w[:i + 1]}
        if i == len(w) - 1:
            criterion = grown == shifted
        current = grown
    return IncrementalConjugates(WordSet(current, theta.alphabet), criterion)


def _common_prefix_length(a: str, b: str) -> int:
    # gallop over doubling slices, then bisect the first mismatching block;
    # linear total work, all comparisons done by str equality
    n = min(len(a), len(b))
    pos, step = 0, 1
    while pos + step <= n and a[pos:pos + step] == b[pos:pos + step]:
        pos += step
        step *= 2
    step = min(step, n - pos)
    while step > 0:
        half = step // 2 or 1
        if a[pos:pos + half] == b[pos:pos + half]:
            pos += half
            step -= half
        else:
            if half == 1:
                break
            step = half
    return pos


def _z_array(s: str) -> list:
    n = len(s)
    z = [0] * n
    if n:
        z[0] = n
    left = right = 0
    for i in range(1, n):
        if i < right:
            k = min(right - i, z[i - left])
        else:
            k = 0
        while i + k < n and s[k] == s[i + k]:
            k += 1
        z[i] = k
        if i + k > right:
            left, right = i, i + k
    return z


def is_theta_conjugate(theta: Involution, u: str, v: str) -> bool:
    """Decide ``v in C_theta(u)`` in time linear in ``len(u)``.

    ``v`` is a conjugate iff ``v == u`` or ``v == theta(y) + x`` for a split
    ``u == x + y`` with ``y`` non-empty. Writing ``k = len(y)``, that means
    ``v[:k] == theta(u)[:k]`` and ``v[k:] == u[:n-k]``. Every ``k`` up to the
    longest common prefix of ``v`` and ``theta(u)`` is a candidate; one Z-array
    over ``u + sep + v`` answers the second condition for all of them at once.
    """
    letters = theta.alphabet._letter_set
    if not (letters.issuperset(u) and letters.issuperset(v)):
        theta.alphabet.check(u)
        theta.alphabet.check(v)
    n = len(u)
    if len(v) != n:
        return False
    if v == u:
        return True
    t = u[::-1].translate(theta._table)
    if v[0] != t[0]:
        return False
    if v == t:
        return True
    lcp = _common_prefix_length(v, t)
    if lcp == 0:
        return False
    z = _z_array(u + "\0" + v)
    offset = n + 1
    for k in range(1, lcp + 1):
        if z[offset + k] >= n - k:
            return True
    return False


class EqualityCase(enum.Enum):
    IDENTICAL = "identical"
    SINGLE_LETTER_PAIR = "single-letter-theta-pair"
    TWO_LETTER_SWAP = "two-letter-swap"
    POWER_PATTERN = "a^(m+1)ba^m-pattern"
    NOT_EQUAL = "not-equal"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EqualityVerdict:
    equal: bool
    case: EqualityCase
    witness: Optional[str] = None


def _power_pattern(theta: Involution, u: str, v: str) -> bool:
    """u == a^(m+1) b a^m and v == a^m b a^(m+1), m >= 1, a != b, both fixed."""
    n = len(u)
    if n < 4 or n % 2:
        return False
    m = (n - 2) // 2
    a, b = u[0], u[m + 1]
    if a == b or not (theta.is_fixed(a) and theta.is_fixed(b)):
        return False
    return u == a * (m + 1) + b + a * m and v == a * m + b + a * (m + 1)


def _classify(theta: Involution, u: str, v: str) -> EqualityCase:
    if u == v:
        return EqualityCase.IDENTICAL
    if len(u) == 1 and len(v) == 1 and theta.image(u) == v:
        return EqualityCase.SINGLE_LETTER_PAIR
    if (len(u) == 2 and v == u[::-1] and u[0] != u[1]
            and theta.is_fixed(u[0]) and theta.is_fixed(u[1])):
        return EqualityCase.TWO_LETTER_SWAP
    if _power_pattern(theta, u, v) or _power_pattern(theta, v, u):
        return EqualityCase.POWER_PATTERN
    return EqualityCase.NOT_EQUAL


def conjugate_sets_equal(theta: Involution, u: str, v: str) -> EqualityVerdict:
    """Decide whether u and v have the same conjugate set.

    The answer comes from the structural characterisation (identical words, a
    single letter and its non-fixed image, a two-letter swap of fixed letters,
    or the ``a^(m+1) b a^m`` / ``a^m b a^(m+1)`` pair over fixed letters). On
    inequality the least word of the symmetric difference is reported.
    """
    theta.alphabet.check(u)
    theta.alphabet.check(v)
    case = _classify(theta, u, v)
    if case is not EqualityCase.NOT_EQUAL:
        return EqualityVerdict(True, case)
    diff = theta_conjugates(theta, u) ^ theta_conjugates(theta, v)
    if not diff:
        raise AssertionError(f"characterisation missed equal sets for {u!r}, {v!r}")
    return EqualityVerdict(False, case, WordSet(diff, theta.alphabet).min())


def classical_conjugates(w: str) -> WordSet:
    return WordSet(w[k:] + w[:k] for k in range(max(len(w), 1)))


@dataclass(frozen=True)
class ConjugateSetReport:
    word: str
    set: WordSet
    cardinality: int
    has_primitive: bool
    palindromes: WordSet


def conjugate_set_report(theta: Involution, w: str) -> ConjugateSetReport:
    s = theta_conjugates(theta, w)
    pals = WordSet((x for x in s if theta.apply(x) == x), theta.alphabet)
    return ConjugateSetReport(
        word=w,
        set=s,
        cardinality=len(s),
        has_primitive=any(x and is_primitive(x) for x in s),
        palindromes=pals,
    )
