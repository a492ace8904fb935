"""Small-scale checks of the relator-insertion oracle itself."""

import pytest

from relator_oracle import (
    TrivialWordClosure,
    all_reduced_words,
    free_reduce,
    invert_word,
    reduce_concat,
    relator_variants,
)
from nup.words import GroupParams, from_string


class TestPrimitives:
    def test_free_reduce(self):
        assert free_reduce("aA") == ""
        assert free_reduce("abBA") == ""
        assert free_reduce("abA") == "abA"
        assert free_reduce("aAbB") == ""

    def test_invert(self):
        assert invert_word("ab") == "BA"
        assert invert_word("") == ""
        assert free_reduce("ab" + invert_word("ab")) == ""

    def test_reduce_concat_matches_full_reduce(self):
        for x, y in [("ab", "BA"), ("abb", "BBa"), ("a", "A"), ("", "b"), ("aB", "ba")]:
            assert reduce_concat(free_reduce(x), free_reduce(y)) == free_reduce(x + y)

    def test_variants_are_reduced_and_closed(self):
        for k in (1, 2):
            vs = relator_variants(k)
            assert len(vs) == len(set(vs))
            for v in vs:
                assert free_reduce(v) == v
                assert invert_word(v) in vs

    def test_all_reduced_words_count(self):
        # 1 + sum of 4 * 3^(n-1)
        assert len(all_reduced_words(3)) == 1 + 4 + 12 + 36


@pytest.fixture(scope="module")
def closure():
    return TrivialWordClosure(k=1, length_cap=12, node_budget=50_000)


class TestClosure:

    def test_relators_and_consequences(self, closure):
        assert closure.contains("abbAbb")
        assert closure.contains("baaBaa")
        assert closure.prove_equal("abb", "BBa")
        assert closure.prove_equal("baa", "AAb")
        assert closure.prove_equal("ab", "ab")

    def test_one_sided_no_false_positives(self, closure):
        P = GroupParams(1)
        assert not closure.prove_equal("a", "b")
        assert not closure.prove_equal("ab", "ba")
        for w in closure.words:
            if w:
                assert from_string(w, P).is_identity()

    def test_agreement_on_short_words(self, closure):
        # every oracle-proved equality among words of length <= 5 matches
        # identical normal forms, and same-class words of length <= 3 are
        # mostly within the oracle's reach
        P = GroupParams(1)
        words = [w for w in all_reduced_words(5) if w]
        by_nf = {}
        for w in words:
            by_nf.setdefault(from_string(w, P), []).append(w)
        for group in by_nf.values():
            base = group[0]
            for other in group[1:]:
                if closure.prove_equal(base, other):
                    assert from_string(base, P) == from_string(other, P)

    def test_budget_truncation_flag(self):
        tiny = TrivialWordClosure(k=1, length_cap=12, node_budget=50)
        assert tiny.budget_exhausted
        assert len(tiny.words) == 50
