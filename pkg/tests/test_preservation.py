import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from episturmian.conjugacy import MinLetterReport
from episturmian.corpus import conjugate_corpus
from episturmian.language import NotInLanguage, language, special_factors
from episturmian.morphism import NotPrimitiveError, compose, psi, psi_bar
from episturmian.preservation import (
    ObstructionWord,
    check_preservation,
    lemma_checks,
    obstruction_cases,
    obstruction_words,
    onset_of,
    run_obstruction_suite,
)
from episturmian.verify import rauzy_examples
from episturmian.words import Alphabet

CORPUS = conjugate_corpus()


def report(ind, j, m):
    return MinLetterReport("a", j, ind, m, True, True)


def test_fibonacci_letter_is_preserved(fib):
    v = check_preservation(fib, "a")
    assert v.holds_P and v.holds_P_prime
    assert v.image == "ab"
    assert v.lhs == v.rhs == ("ab", "aba")
    assert v.witness is None


def test_fibonacci_obstruction_fails(fib):
    v = check_preservation(fib, "b")
    assert not v.holds_P and not v.holds_P_prime
    assert v.lhs == ("aab", "aabab") and v.rhs == ("a", "ab")
    assert v.witness == "a"


def test_verdict_json(fib):
    data = check_preservation(fib, "aba").to_json()
    assert data["holds_P"] is True and data["lhs"] == ["aba", "abaab"]


def test_cross_check_agrees(abb_acb):
    v = check_preservation(abb_acb, "abac", cross_check=True)
    assert v.holds_P == check_preservation(abb_acb, "abac").holds_P


@pytest.mark.parametrize("ind, j, m, case", [
    (0, 1, 1, "2"),
    (1, 1, 1, "1"),
    (3, 2, 5, "both"),
    (2, 1, 3, "both"),
    (0, 2, 5, "2"),
    (5, 2, 5, "1"),
])
def test_obstruction_cases(ind, j, m, case):
    assert obstruction_cases(report(ind, j, m)) == case


def test_neither_case_is_reported():
    assert obstruction_cases(report(2, 3, 4)) == "neither"


def test_obstruction_words_tribonacci(trib):
    words = obstruction_words(trib, 8)
    assert [(w.n, w.family, w.word) for w in words] == [
        (0, 2, "c"), (1, 2, "ac"), (3, 2, "abac"), (7, 2, "abacabac"),
    ]


def test_both_families_emitted(abb_class):
    words = obstruction_words(abb_class[2], 5)
    assert {w.family for w in words} == {1, 2}


def test_onset_of():
    def tested(*pairs):
        class V:
            def __init__(self, holds):
                self.holds_P = holds
        return [(ObstructionWord(n, 1, "x"), V(h)) for n, h in pairs]

    assert onset_of(tested((0, True), (1, False), (3, False))) == 1
    assert onset_of(tested((0, False), (1, True), (3, False))) == 3
    assert onset_of(tested((0, False), (1, False))) == 0
    assert onset_of(tested((0, False), (1, True))) is None
    assert onset_of([]) is None


@given(st.sampled_from(CORPUS))
@settings(max_examples=40, deadline=None)
def test_obstructions_fail_on_corpus(entry):
    rep = run_obstruction_suite(entry.sigma, 20)
    assert rep.case != "neither"
    assert rep.onset == 0
    assert rep.tested
    for _, v in rep.tested:
        assert v.holds_P == v.holds_P_prime


@given(st.sampled_from(CORPUS), st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_p_and_p_prime_agree_on_arbitrary_factors(entry, n):
    for u in language(entry.sigma, n).sorted():
        v = check_preservation(entry.sigma, u)
        assert v.holds_P == v.holds_P_prime


def test_contrast_some_words_are_preserved():
    # the checker must be able to answer both ways on the same morphisms
    for entry in CORPUS[::97]:
        verdicts = {check_preservation(entry.sigma, u).holds_P
                    for n in range(1, 7) for u in language(entry.sigma, n).sorted()}
        assert verdicts == {True, False}, entry.label


def test_report_json(trib):
    data = run_obstruction_suite(trib, 4).to_json()
    assert data["case"] == "2" and data["onset"] == 0
    assert [t["word"] for t in data["tested"]] == ["c", "ac", "abac"]


def test_non_primitive_rejected():
    abc = Alphabet.of("abc")
    sigma = compose(psi_bar(abc, "a"), psi_bar(abc, "b"))
    with pytest.raises(NotPrimitiveError):
        check_preservation(sigma, "a")
    with pytest.raises(NotPrimitiveError):
        obstruction_words(psi(abc, "ab"), 3)


def test_non_factor_rejected(fib):
    with pytest.raises(NotInLanguage):
        check_preservation(fib, "bb")


@pytest.mark.parametrize("name", sorted(rauzy_examples()))
def test_lemma_checks_on_examples(name):
    sigma = rauzy_examples()[name]
    for n in range(0, 9):
        if not special_factors(sigma, n)[2]:
            continue
        rep = lemma_checks(sigma, n, max_len=6)
        assert rep.ok, rep.violations
        assert rep.checked


def test_lemma_checks_on_a_class(abb_class):
    for sigma in abb_class:
        for n in (0, 1, 3):
            rep = lemma_checks(sigma, n, max_len=5)
            assert rep.ok, (sigma, n, rep.violations)
