import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from thetaconj.conjugacy import (
    EqualityCase,
    _common_prefix_length,
    classical_conjugates,
    conjugate_set_report,
    conjugate_sets_equal,
    is_theta_conjugate,
    theta_conjugates,
    theta_conjugates_incremental,
)
from thetaconj.errors import AlphabetMismatch
from thetaconj.words import Alphabet, Involution, all_involutions, parse_involution_spec


def test_example_sets(theta_abcd):
    assert theta_conjugates(theta_abcd, "aac") == {"aac", "daa", "dba", "dbb"}
    assert theta_conjugates(theta_abcd, "abcd") == {"abcd", "cabc", "cdab", "cdaa"}
    assert theta_conjugates(theta_abcd, "") == {""}
    assert list(theta_conjugates(theta_abcd, "aac")) == ["aac", "daa", "dba", "dbb"]


def test_rejects_foreign_letters(theta_abcd):
    with pytest.raises(AlphabetMismatch):
        theta_conjugates(theta_abcd, "xa")
    with pytest.raises(AlphabetMismatch):
        is_theta_conjugate(theta_abcd, "aa", "ax")


def test_incremental_examples(theta_abc):
    res = theta_conjugates_incremental(theta_abc, "bccb")
    assert res.set == {"bccb", "abcc", "acbc", "accb", "acca"}
    assert res.palindrome_criterion is False
    res = theta_conjugates_incremental(theta_abc, "abcab")
    assert res.set == {"abcab", "aabca", "ababc", "abcaa"}
    assert res.palindrome_criterion is True
    assert theta_conjugates_incremental(theta_abc, "c").set == {"c"}
    assert theta_conjugates_incremental(theta_abc, "a").set == {"a", "b"}
    assert theta_conjugates_incremental(theta_abc, "").palindrome_criterion is None


def test_membership_examples(theta_abcd):
    assert is_theta_conjugate(theta_abcd, "aac", "dba")
    assert not is_theta_conjugate(theta_abcd, "aac", "baa")
    assert not is_theta_conjugate(theta_abcd, "aac", "aa")


def test_membership_regression_split_before_first_mismatch():
    # the valid split sits before the first mismatch between v and theta(u)
    identity = Involution.identity(Alphabet("abcd"))
    assert is_theta_conjugate(identity, "abcad", "dabca")


def test_seteq_examples(theta_abc):
    ab = parse_involution_spec("a:b", "ab")
    assert conjugate_sets_equal(ab, "a", "b").case is EqualityCase.SINGLE_LETTER_PAIR
    identity = Involution.identity(Alphabet("ab"))
    verdict = conjugate_sets_equal(identity, "aaba", "abaa")
    assert verdict.equal and verdict.case is EqualityCase.POWER_PATTERN
    verdict = conjugate_sets_equal(theta_abc, "ca", "bc")
    assert not verdict.equal and verdict.case is EqualityCase.NOT_EQUAL
    assert verdict.witness == "cb"
    assert conjugate_sets_equal(identity, "ab", "ba").case is EqualityCase.TWO_LETTER_SWAP
    assert conjugate_sets_equal(identity, "aab", "aab").case is EqualityCase.IDENTICAL


def test_classical_conjugates():
    assert classical_conjugates("abc") == {"abc", "bca", "cab"}
    assert classical_conjugates("aa") == {"aa"}
    assert classical_conjugates("abab") == {"abab", "baba"}
    assert classical_conjugates("") == {""}


def test_report(theta_abc):
    rep = conjugate_set_report(theta_abc, "abcab")
    assert rep.cardinality == len(rep.set) == 4
    assert rep.has_primitive
    assert all(theta_abc.apply(p) == p for p in rep.palindromes)


def test_common_prefix_length_random():
    rng = random.Random(3)
    for _ in range(3000):
        n = rng.randrange(0, 70)
        a = "".join(rng.choice("ab") for _ in range(n))
        cut = rng.randrange(0, n + 1)
        b = a[:cut] + "".join(rng.choice("ab") for _ in range(rng.randrange(0, 70)))
        expected = 0
        while expected < min(len(a), len(b)) and a[expected] == b[expected]:
            expected += 1
        assert _common_prefix_length(a, b) == expected


# -- properties against the all-splits oracle -----------------------------------

THETA_POOL = [parse_involution_spec(s, "abcd") for s in ("", "a:b", "a:b,c:d", "a:c")]
word4 = st.text(alphabet="abcd", max_size=10)


@given(st.sampled_from(THETA_POOL), word4)
def test_conjugates_match_oracle(theta, w):
    got = theta_conjugates(theta, w)
    assert got == oracles.conjugates(theta.mapping, w)
    assert w in got and len(got) <= len(w) + 1
    assert theta_conjugates_incremental(theta, w).set == got


@given(st.sampled_from(THETA_POOL), word4, st.sampled_from("abcd"))
def test_palindrome_criterion(theta, u, a):
    res = theta_conjugates_incremental(theta, u + a)
    shifted = {theta.image(a) + x for x in theta_conjugates(theta, u)}
    assert (set(res.set) == shifted) == res.palindrome_criterion
    assert res.palindrome_criterion == (theta.apply(u + a) == u + a)


@given(st.sampled_from(THETA_POOL), st.text(alphabet="abcd", max_size=5),
       st.text(alphabet="abcd", min_size=1, max_size=3))
def test_subset_law(theta, u, v):
    big = theta_conjugates(theta, u + v)
    assert {theta.apply(v) + x for x in theta_conjugates(theta, u)} <= set(big)


@given(st.sampled_from(THETA_POOL), word4, st.data())
def test_membership_on_members_and_near_misses(theta, u, data):
    members = sorted(oracles.conjugates(theta.mapping, u))
    v = data.draw(st.sampled_from(members))
    assert is_theta_conjugate(theta, u, v)
    w = data.draw(st.text(alphabet="abcd", min_size=len(u), max_size=len(u)))
    assert is_theta_conjugate(theta, u, w) == (w in members)


def test_membership_exhaustive_two_letters():
    for theta in all_involutions(Alphabet("ab")):
        for n in range(0, 9):
            words = oracles.all_words("ab", n)
            for u in words:
                members = oracles.conjugates(theta.mapping, u)
                for v in words:
                    assert is_theta_conjugate(theta, u, v) == (v in members), (theta, u, v)


def test_membership_exhaustive_three_letters_short():
    for theta in all_involutions(Alphabet("abc")):
        for n in range(0, 6):
            words = oracles.all_words("abc", n)
            for u in words:
                members = oracles.conjugates(theta.mapping, u)
                for v in words:
                    assert is_theta_conjugate(theta, u, v) == (v in members)


def test_cardinality_bound_and_primitive_member():
    for letters in ("ab", "abc", "abcd"):
        top = {"ab": 10, "abc": 7, "abcd": 5}[letters]
        for theta in all_involutions(Alphabet(letters)):
            for n in range(1, top + 1):
                for w in oracles.all_words(letters, n):
                    s = theta_conjugates(theta, w)
                    assert len(s) <= n + 1
                    if len(s) == n + 1:
                        assert any(oracles.is_primitive(x) for x in s)


def test_power_words_share_conjugate_sets():
    # all members non-primitive and a^n among them => w = a^n with a fixed
    for theta in all_involutions(Alphabet("abc")):
        for n in range(2, 8):
            for w in oracles.all_words("abc", n):
                s = theta_conjugates(theta, w)
                if any(oracles.is_primitive(x) for x in s):
                    continue
                for a in "abc":
                    if a * n in s:
                        assert w == a * n and theta.image(a) == a


def test_seteq_exhaustive_small():
    for theta in all_involutions(Alphabet("ab")):
        sets = {}
        words = [w for n in range(0, 8) for w in oracles.all_words("ab", n)]
        for w in words:
            sets[w] = frozenset(oracles.conjugates(theta.mapping, w))
        for n in range(0, 8):
            same = oracles.all_words("ab", n)
            for u, v in itertools.product(same, same):
                verdict = conjugate_sets_equal(theta, u, v)
                assert verdict.equal == (sets[u] == sets[v])
        # different lengths never have equal sets
        assert not conjugate_sets_equal(theta, "a", "aa").equal


@settings(max_examples=50)
@given(st.sampled_from(THETA_POOL), word4, word4)
def test_seteq_witness_in_symmetric_difference(theta, u, v):
    verdict = conjugate_sets_equal(theta, u, v)
    su, sv = oracles.conjugates(theta.mapping, u), oracles.conjugates(theta.mapping, v)
    assert verdict.equal == (su == sv)
    if not verdict.equal:
        assert verdict.witness in su ^ sv
    else:
        assert verdict.witness is None
