import numpy as np
import pytest
from hypothesis import given, strategies as st

from pregroup_lab.core import SimpleType, Term, TypePoset
from pregroup_lab.grammar import parse_type_expr, tokenize
from pregroup_lab.reducer import (LimitExceeded, Limits, UnknownWordError, oracle_reduce, parse,
                                  reduce)

from conftest import T

S = SimpleType


def keys(ds):
    return [d.key for d in ds]


def test_she_sleeps(english):
    ds = reduce(T(("pi3", 0), ("pi3", 1), ("s1", 0)), S("s1", 0), english.poset)
    assert keys(ds) == [(((1, 2),), 3)]


def test_single_factor_order_step(english):
    assert keys(reduce(T(("s1", 0)), S("s", 0), english.poset)) == [((), 1)]


def test_whom_may_she_see(english):
    term = parse_type_expr("qbar o^ll q^l q1 j^l pi^l pi3 i o^l", english.poset)
    ds = reduce(term, S("qbar", 0), english.poset)
    assert keys(ds) == [(((2, 9), (3, 4), (5, 8), (6, 7)), 1)]


def test_when_may_she_see_him(english):
    term = parse_type_expr("qbar i^l i^ll q^l q1 j^l pi^l pi3 i o^l o", english.poset)
    ds = reduce(term, S("qbar", 0), english.poset)
    assert keys(ds) == [(((2, 9), (3, 6), (4, 5), (7, 8), (10, 11)), 1)]


def test_odd_parity_has_no_derivation():
    p = TypePoset("p")
    term = T(("p", 0), ("p", 1), ("p", 0), ("p", 1))
    assert reduce(term, S("p", 0), p) == []
    assert oracle_reduce(term, S("p", 0), p) == []


def test_oracle_agrees_on_she_sleeps(english):
    term = T(("pi3", 0), ("pi3", 1), ("s1", 0))
    assert oracle_reduce(term, S("s1", 0), english.poset) == reduce(term, S("s1", 0), english.poset)


def test_target_must_be_plain(english):
    with pytest.raises(ValueError):
        reduce(T(("s", 0)), S("s", 1), english.poset)


def test_derivation_limit_is_an_error():
    p = TypePoset("p")
    term = parse_type_expr(" ".join(["p p^r p p^l"] * 3 + ["p"]))
    n = len(reduce(term, S("p", 0), p))
    assert n >= 2
    assert len(reduce(term, S("p", 0), p, Limits(max_derivations=n))) == n
    with pytest.raises(LimitExceeded):
        reduce(term, S("p", 0), p, Limits(max_derivations=n - 1))


# --- the printed type rows of the example sentences ------------------------

PRINTED = [
    ("pi3 pi3^r s1", "s1"),
    ("pi3 pi3^r s1 j^l i", "s1"),
    ("pi3 pi3^r s1 o^l o", "s1"),
    ("pi3 pi3^r s1 j^l i o^l o i^r i", "s1"),
    ("pi3 pi3^r s1 j^l i o^l o i^r i o^l nbar1 n1^l n1", "s1"),
    ("n pi3^r s1 j^l i o^l n", "s1"),
    ("nbar2 n2^l n2 pi6^r s1 j^l i o^l n0", "s1"),
    ("nbar2 n2^l n2 pi6^r s1 abar^l a", "s1"),
    ("nbar1 n1^l n1 n1^l n1 n1^l n1 pi3^r s2 o^l n2", "s2"),
    ("q1 i^l pi^l pi3 i", "q1"),
    ("q1 i^l pi^l pi3 i o^l o", "q1"),
    ("qbar s1^l pi3 pi3^r s1 i^l i", "qbar"),
    ("qbar o^ll q^l q1 j^l pi^l pi3 i o^l", "qbar"),
    ("n2 n^r nbar n^ll s^l n pi3^r s2 o^l", "nbar"),
]


@pytest.mark.parametrize("text,target", PRINTED)
def test_printed_rows_reduce(english, text, target):
    term = parse_type_expr(text, english.poset)
    ds = reduce(term, S(target, 0), english.poset)
    assert ds
    assert keys(ds) == keys(oracle_reduce(term, S(target, 0), english.poset))
    for d in ds:
        d.check(english.poset)


# --- sentences ----------------------------------------------------------------

def test_parse_she_sleeps(english):
    ps = parse(["she", "sleeps"], english, "declarative")
    assert len(ps) == 1 and ps[0].target == S("s1", 0)


def test_parse_yes_no(english):
    ps = parse(["may", "she", "sleep"], english, "question")
    assert ps and all(p.target == S("q1", 0) for p in ps)


def test_parse_no_result(english):
    assert parse(["she", "sleep"], english, "declarative") == []


def test_parse_unknown_word(english):
    with pytest.raises(UnknownWordError) as err:
        parse(["she", "xyzzy"], english, "declarative")
    assert err.value.word == "xyzzy"


def test_parse_unknown_group(english):
    with pytest.raises(Exception):
        parse(["she", "sleeps"], english, "nosuch")


def test_choice_limit(english):
    with pytest.raises(LimitExceeded):
        parse(["may"] * 4, english, "declarative", Limits(max_choices=10))


def test_parse_invariants(english):
    tokens, group = tokenize("When may she see him?")
    for p in parse(tokens, english, group):
        assert all(c in english.lexicon.lookup(w) for w, c in zip(p.tokens, p.choice))
        assert p.term == sum(p.choice, Term())
        p.derivation.check(english.poset)


def test_parse_is_stable(english):
    tokens, group = tokenize("What did the old man eat?")
    a = [(p.choice, p.derivation.key) for p in parse(tokens, english, group)]
    b = [(p.choice, p.derivation.key) for p in parse(tokens, english, group)]
    assert a == b


# --- oracle equivalence --------------------------------------------------------

THREE = TypePoset("abc", [("a", "b")])


def random_instances(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        length = int(rng.integers(1, 8))
        term = Term(S("abc"[rng.integers(3)], int(rng.integers(-2, 3))) for _ in range(length))
        yield term, S("abc"[rng.integers(3)], 0)


def test_oracle_equivalence_random_terms():
    found = 0
    for term, target in random_instances(10_000, seed=2024):
        fast = reduce(term, target, THREE)
        slow = oracle_reduce(term, target, THREE)
        assert keys(fast) == keys(slow), (str(term), str(target))
        found += bool(fast)
    # the sample has to exercise real reductions, not only failures
    assert found >= 100


simple = st.builds(S, st.sampled_from("abc"), st.integers(-2, 2))


@given(st.lists(simple, min_size=1, max_size=7).map(Term), st.sampled_from("abc"))
def test_every_derivation_is_valid_and_replays(term, target):
    for d in reduce(term, S(target, 0), THREE):
        d.check(THREE)
        u = d.replay(THREE)
        assert u == d.term[d.survivor - 1]
