"""Alphabets, words and antimorphic involutions.

Words are plain ``str`` values whose characters are letters of an
:class:`Alphabet`; the empty string is the empty word.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Set
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .errors import (
    AlphabetMismatch,
    ConflictingPair,
    EmptyWord,
    NonInvolutive,
    ParseError,
    ThetaConjError,
    UnknownLetter,
)

#: characters that have a reserved meaning in the text formats
RESERVED_CHARS = frozenset("@,:")


class InvalidAlphabet(ThetaConjError, ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """An ordered, non-empty set of single-character letters.

    The declared order is the one used for canonical word ordering.
    """

    letters: str
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)
    _rank_table: dict = field(init=False, repr=False, compare=False, hash=False)
    _letter_set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.letters:
            raise InvalidAlphabet("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise InvalidAlphabet(f"duplicate letters in {self.letters!r}")
        for c in self.letters:
            if c.isspace() or not c.isprintable() or c in RESERVED_CHARS:
                raise InvalidAlphabet(f"letter {c!r} is not allowed")
        rank = {c: i for i, c in enumerate(self.letters)}
        object.__setattr__(self, "_rank", rank)
        # maps letters to code points in declared order, so translated strings
        # compare lexicographically by alphabet order
        object.__setattr__(self, "_rank_table", {ord(c): i for c, i in rank.items()})
        object.__setattr__(self, "_letter_set", frozenset(self.letters))

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self._rank

    def __str__(self) -> str:
        return self.letters

    def index(self, letter: str) -> int:
        try:
            return self._rank[letter]
        except KeyError:
            raise UnknownLetter(f"{letter!r} is not in alphabet {self.letters!r}") from None

    def covers(self, word: str) -> bool:
        return self._letter_set.issuperset(word)

    def check(self, word: str) -> str:
        """Return ``word`` unchanged, raising AlphabetMismatch on a foreign letter."""
        if self._letter_set.issuperset(word):
            return word
        for c in word:
            if c not in self._rank:
                raise AlphabetMismatch(
                    f"word {word!r} uses {c!r}, not in alphabet {self.letters!r}")
        return word

    def sort_key(self, word: str):
        """Length first, then lexicographic by declared letter order."""
        return (len(word), word.translate(self._rank_table))

    def union(self, extra: Iterable[str]) -> "Alphabet":
        new = [c for c in extra if c not in self._rank]
        return Alphabet(self.letters + "".join(dict.fromkeys(new)))


class WordSet(Set):
    """Immutable finite set of words iterated in canonical order.

    Equality is plain set equality, so a WordSet compares equal to any
    ``set``/``frozenset`` holding the same words.
    """

    __slots__ = ("_items", "_alphabet", "_ordered")

    def __init__(self, words: Iterable[str] = (), alphabet: Optional[Alphabet] = None):
        self._items = frozenset(words)
        self._alphabet = alphabet
        self._ordered = None

    @property
    def alphabet(self) -> Optional[Alphabet]:
        return self._alphabet

    def _key(self):
        if self._alphabet is not None:
            return self._alphabet.sort_key
        return lambda w: (len(w), w)

    def ordered(self) -> tuple:
        if self._ordered is None:
            self._ordered = tuple(sorted(self._items, key=self._key()))
        return self._ordered

    def __iter__(self):
        return iter(self.ordered())

    def __len__(self):
        return len(self._items)

    def __contains__(self, word):
        return word in self._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"WordSet({list(self.ordered())!r})"

    @classmethod
    def _from_iterable(cls, it):
        return cls(it)

    def as_frozenset(self) -> frozenset:
        return self._items

    def min(self) -> str:
        return self.ordered()[0]


@dataclass(frozen=True)
class Involution:
    """A letter involution extended antimorphically to words."""

    alphabet: Alphabet
    images: str  # images[i] is the image of alphabet.letters[i]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise NonInvolutive("image string must list one image per letter")
        for c in self.images:
            self.alphabet.index(c)
        table = {ord(a): b for a, b in zip(self.alphabet.letters, self.images)}
        for a, b in zip(self.alphabet.letters, self.images):
            if table[ord(b)] != a:
                raise NonInvolutive(f"theta(theta({a!r})) = {table[ord(b)]!r}")
        object.__setattr__(self, "_table", table)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Involution":
        return cls(alphabet, alphabet.letters)

    @property
    def mapping(self) -> dict:
        return dict(zip(self.alphabet.letters, self.images))

    def image(self, letter: str) -> str:
        return self.images[self.alphabet.index(letter)]

    def is_fixed(self, letter: str) -> bool:
        return self.image(letter) == letter

    def apply(self, word: str) -> str:
        self.alphabet.check(word)
        return word[::-1].translate(self._table)

    def apply_morphic(self, word: str) -> str:
        """Letterwise image without reversal."""
        self.alphabet.check(word)
        return word.translate(self._table)

    def orbits(self) -> list:
        """Orbits ``(a,)`` or ``(a, theta(a))``, keyed by the alphabet-least letter."""
        out = []
        for a, b in zip(self.alphabet.letters, self.images):
            if a == b:
                out.append((a,))
            elif self.alphabet.index(a) < self.alphabet.index(b):
                out.append((a, b))
        return out

    def spec(self) -> str:
        """Text form ``a:b,c:d`` listing every non-fixed orbit once."""
        return ",".join(f"{o[0]}:{o[1]}" for o in self.orbits() if len(o) == 2)

    def __str__(self) -> str:
        return self.spec() or "(identity)"


def validate_involution(alphabet: Alphabet, pairs: Iterable) -> Involution:
    """Build an involution from explicit ``(letter, image)`` pairs.

    A pair ``a -> b`` also implies ``b -> a`` unless ``b`` has its own explicit
    image; letters that appear nowhere are fixed points.
    """
    explicit = {}
    for a, b in pairs:
        for c in (a, b):
            if c not in alphabet:
                raise UnknownLetter(f"{c!r} is not in alphabet {alphabet.letters!r}")
        if a in explicit and explicit[a] != b:
            raise ConflictingPair(f"{a!r} mapped to both {explicit[a]!r} and {b!r}")
        explicit[a] = b
    image = dict(explicit)
    for a, b in explicit.items():
        if b not in explicit:
            if b in image and image[b] != a:
                raise NonInvolutive(f"{b!r} is the image of both {image[b]!r} and {a!r}")
            image[b] = a
    for a in alphabet:
        image.setdefault(a, a)
    for a in alphabet:
        if image[image[a]] != a:
            raise NonInvolutive(
                f"theta(theta({a!r})) = {image[image[a]]!r}, expected {a!r}")
    return Involution(alphabet, "".join(image[a] for a in alphabet))


def apply_theta(theta: Involution, w: str) -> str:
    return theta.apply(w)


def is_theta_palindrome(theta: Involution, w: str) -> bool:
    return theta.apply(w) == w


def primitive_root(w: str) -> tuple:
    """Return ``(root, exponent)`` with ``root ** exponent == w`` and root primitive."""
    n = len(w)
    if n == 0:
        raise EmptyWord("the empty word has no primitive root")
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d], n // d
    raise AssertionError("unreachable")  # d == n always matches


def is_primitive(w: str) -> bool:
    return primitive_root(w)[1] == 1


def all_involutions(alphabet: Alphabet) -> Iterator[Involution]:
    """Every involution of ``alphabet`` (one per partial perfect matching)."""
    letters = alphabet.letters

    def matchings(rest):
        if not rest:
            yield {}
            return
        a, tail = rest[0], rest[1:]
        for m in matchings(tail):
            yield {**m, a: a}
        for i, b in enumerate(tail):
            for m in matchings(tail[:i] + tail[i + 1:]):
                yield {**m, a: b, b: a}

    for m in matchings(letters):
        yield Involution(alphabet, "".join(m[c] for c in letters))


def words_of_length(alphabet: Alphabet, n: int) -> Iterator[str]:
    for t in product(alphabet.letters, repeat=n):
        yield "".join(t)


def words_upto(alphabet: Alphabet, n: int) -> Iterator[str]:
    """All words of length at most ``n`` in canonical order."""
    for k in range(n + 1):
        yield from words_of_length(alphabet, k)


def parse_involution_spec(spec: str, alphabet) -> Involution:
    """Parse ``a:b,c:d`` into an involution; unmentioned letters are fixed."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    pairs = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        a, sep, b = item.partition(":")
        a, b = a.strip(), b.strip()
        if not sep or len(a) != 1 or len(b) != 1:
            raise ParseError(f"bad involution pair {item!r}, expected 'x:y'")
        pairs.append((a, b))
    return validate_involution(alphabet, pairs)


def spec_letters(spec: str) -> str:
    """Letters mentioned in an involution spec, in order of appearance."""
    return "".join(dict.fromkeys(c for c in spec if c not in ", :"))
