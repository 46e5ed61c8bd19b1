import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from episturmian.morphism import (
    Morphism,
    MorphismParseError,
    NotEpisturmian,
    NotPrimitiveError,
    Permutation,
    SpinnedLetter,
    apply_spinned,
    compose,
    conjugate_left,
    conjugate_right,
    d_bonacci,
    decompose_episturmian,
    elementary_psi,
    fixed_point_prefix,
    format_spinned,
    is_episturmian,
    is_standard,
    parse_any,
    parse_epi,
    parse_spinned,
    periodic_point_prefix,
    permute_spinned,
    psi,
    psi_bar,
    spinned,
)
from episturmian.words import Alphabet

ABC = Alphabet.of("abc")


def spinned_words(letters="abc", max_size=6):
    return st.lists(st.tuples(st.sampled_from(letters), st.booleans()), max_size=max_size).map(spinned)


def permutations_of(alphabet):
    return st.permutations(alphabet.letters).map(lambda p: Permutation(alphabet, tuple(p)))


def morphisms(alphabet, max_len=4):
    img = st.text(alphabet="".join(alphabet.letters), min_size=1, max_size=max_len)
    return st.tuples(*[img] * len(alphabet)).map(lambda t: Morphism(alphabet, t))


# parsing and printing


def test_parse_round_trip():
    sigma = Morphism.parse(" a -> ab , b->ac,c->a ")
    assert sigma.to_text() == "a->ab,b->ac,c->a"
    assert Morphism.parse(sigma.to_text()) == sigma
    assert Morphism.from_json(json.dumps(sigma.to_json())) == sigma
    assert parse_any(json.dumps(sigma.to_json())) == sigma


@pytest.mark.parametrize("text, fragment", [
    ("a->ab,b", "'b'"),
    ("a->ab,a->b", "'a->b'"),
    ("a->ab,b->ax", "b->ax"),
    ("", "empty"),
])
def test_parse_errors_name_the_rule(text, fragment):
    with pytest.raises(MorphismParseError, match=fragment):
        Morphism.parse(text, Alphabet.of("ab") if "x" in text else None)


def test_erasing_images_rejected():
    with pytest.raises(Exception):
        Morphism(Alphabet.of("ab"), ("ab", ""))


def test_parse_epi_shorthand():
    assert parse_epi("psi:abb:(a c b)").to_text() == "a->ababac,b->ababa,c->ab"
    assert parse_epi("psi:a:(a b)") == d_bonacci(2)
    assert parse_epi("psi:ab':id:abc") == compose(psi(ABC, "a"), psi_bar(ABC, "b"))


def test_spinned_parsing():
    u = parse_spinned("ab'c")
    assert u == (SpinnedLetter("a"), SpinnedLetter("b", True), SpinnedLetter("c"))
    assert format_spinned(u) == "ab'c"
    with pytest.raises(MorphismParseError):
        parse_spinned("'a")


# permutations


def test_permutation_cycles_and_order():
    p = Permutation.from_cycles(ABC, "(a c b)")
    assert p("abc") == "cab"
    assert str(p) == "(a c b)"
    assert p.order == 3
    assert p.compose(p.inverse()).is_identity
    assert p.power(3).is_identity
    assert str(Permutation.from_cycles(ABC, "id")) == "id"
    with pytest.raises(MorphismParseError):
        Permutation.from_cycles(ABC, "(a b)(a c)")


# the elementary morphisms


def test_elementary_images():
    assert elementary_psi(ABC, "a").images == ("a", "ab", "ac")
    assert elementary_psi(ABC, "a", barred=True).images == ("a", "ba", "ca")


def test_standard_tree_nodes():
    assert psi(ABC, "").images == ("a", "b", "c")
    assert psi(ABC, "a").images == ("a", "ab", "ac")
    assert psi(ABC, "aab").images == ("aaba", "aab", "aabaac")
    assert psi(ABC, "abc").images == ("abacaba", "abacab", "abac")


def test_psi_bar_is_conjugate_of_psi():
    # psi_a(x) a = a psibar_a(x) for every letter x
    a, ab = Alphabet.of("ab"), "a"
    assert conjugate_right(psi(a, ab), "a") == psi_bar(a, ab)
    assert conjugate_left(psi_bar(a, ab), "a") == psi(a, ab)


@given(spinned_words(), spinned_words())
def test_apply_spinned_is_a_monoid_morphism(u, v):
    assert apply_spinned(ABC, u + v) == compose(apply_spinned(ABC, u), apply_spinned(ABC, v))


@given(st.text(alphabet="abc", max_size=6), permutations_of(ABC))
def test_permutation_commutes_through_psi(u, perm):
    # psi_{pi(u)} o pi = pi o psi_u
    left = compose(psi(ABC, perm(u)), perm)
    right = compose(perm.as_morphism(), psi(ABC, u))
    assert left == right


@given(spinned_words(), permutations_of(ABC))
def test_permute_spinned_commutes(u, perm):
    left = compose(apply_spinned(ABC, permute_spinned(perm, u)), perm)
    assert left == compose(perm.as_morphism(), apply_spinned(ABC, u))


@given(morphisms(ABC), morphisms(ABC))
def test_incidence_matrix_of_composition_is_product(sigma, rho):
    assert np.array_equal(compose(sigma, rho).incidence_matrix(), sigma.incidence_matrix() @ rho.incidence_matrix())


def test_primitivity():
    assert d_bonacci(2).is_primitive
    assert d_bonacci(4).is_primitive
    assert not psi(ABC, "ab").is_primitive
    assert not compose(psi_bar(ABC, "a"), psi_bar(ABC, "b")).is_primitive
    assert Morphism.parse("a->ab,b->ba").is_primitive


def test_power_and_norm():
    fib = d_bonacci(2)
    assert fib.power(0) == Morphism.identity(fib.alphabet)
    assert fib.power(5)("a") == fixed_point_prefix(fib, "a", 13)
    assert psi(ABC, "abca").norm == 31


# decomposition


@given(spinned_words(max_size=7), permutations_of(ABC))
@settings(max_examples=150)
def test_decomposition_round_trip(u, perm):
    sigma = compose(apply_spinned(ABC, u), perm)
    for prefer in ("plain", "barred"):
        dec = decompose_episturmian(sigma, prefer=prefer)
        assert dec.reconstruct() == sigma
        assert len(dec.spinned) == len(u)
        assert dec.perm == perm


@given(st.text(alphabet="abc", max_size=7), permutations_of(ABC))
def test_standard_morphisms_decompose_plainly(u, perm):
    sigma = compose(psi(ABC, u), perm)
    dec = decompose_episturmian(sigma, plain_only=True)
    assert dec.directive == u and dec.perm == perm and dec.is_plain
    assert is_standard(sigma)


def test_abb_class_decomposition(abb_class):
    dec = decompose_episturmian(abb_class[0])
    assert str(dec) == "psi_abb o (b c)"


def test_non_episturmian_rejected():
    with pytest.raises(NotEpisturmian) as info:
        decompose_episturmian(Morphism.parse("a->ab,b->ba"))
    assert info.value.step == 0
    assert not is_episturmian(Morphism.parse("a->aab,b->bba"))
    assert not is_standard(psi_bar(Alphabet.of("ab"), "a"))


def test_non_bijective_single_letters_rejected():
    assert not is_episturmian(Morphism.parse("a->a,b->a"))


# periodic points


def test_fibonacci_fixed_point():
    assert periodic_point_prefix(d_bonacci(2), 13) == "abaababaabaab"
    assert periodic_point_prefix(d_bonacci(3), 7) == "abacaba"


def test_fixed_point_needs_growth():
    with pytest.raises(Exception):
        fixed_point_prefix(Morphism.parse("a->a,b->ba"), "a", 5)


def test_periodic_point_requires_primitivity():
    with pytest.raises(NotPrimitiveError):
        periodic_point_prefix(psi(ABC, "ab"), 10)


def test_non_primitive_fixed_point_starts_with_c_then_fibonacci():
    sigma = compose(psi_bar(ABC, "a"), psi_bar(ABC, "b"))
    assert sigma.to_text() == "a->aba,b->ba,c->caba"
    x = fixed_point_prefix(sigma, "c", 200)
    assert x.startswith("c") and "c" not in x[1:]
    assert x[1:] == periodic_point_prefix(d_bonacci(2), 199)
