"""Tests for multiset words, the deletion metric and the lexicographic order."""
from itertools import product

import pytest

from src.errors import (
    AlphabetMismatchError,
    CardinalityMismatchError,
    IndexOutOfRangeError,
    ParameterError,
    ResourceLimitError,
)
from src.multiset_core import (
    MultisetWord,
    ball_size,
    deletion_distance,
    enumerate_space,
    intersect,
    is_submultiset,
    l1_distance,
    rank,
    space_size,
    subtract,
    union_add,
    unrank,
)


def W(*counts):
    return MultisetWord(tuple(counts))


class TestMultisetWord:
    """Tests for the MultisetWord value type."""

    def test_cardinality_and_alphabet(self):
        """Test n and q are derived from the counts."""
        word = W(2, 1, 1)

        assert word.n == 4
        assert word.q == 3
        assert word[1] == 1

    def test_counts_are_normalized_to_tuple(self):
        """Test a list of counts is stored as a tuple and compares equal."""
        assert MultisetWord([1, 2]) == W(1, 2)
        assert hash(MultisetWord([1, 2])) == hash(W(1, 2))

    def test_negative_count_rejected(self):
        """Test negative multiplicities are invalid."""
        with pytest.raises(ParameterError, match="non-negative"):
            W(1, -1)

    def test_empty_alphabet_rejected(self):
        """Test a word needs at least one symbol."""
        with pytest.raises(ParameterError):
            MultisetWord(())

    def test_support_and_symbols(self):
        """Test the support and element-list views."""
        word = W(2, 0, 1)

        assert word.support() == (0, 2)
        assert word.symbols() == (0, 0, 2)

    def test_from_symbols(self):
        """Test building a word from its elements."""
        assert MultisetWord.from_symbols((0, 0, 1, 2), 3) == W(2, 1, 1)

    def test_from_symbols_out_of_range(self):
        """Test symbols outside the alphabet are rejected."""
        with pytest.raises(ParameterError, match="outside alphabet"):
            MultisetWord.from_symbols((0, 3), 3)

    def test_json_round_trip(self):
        """Test the canonical text form."""
        word = W(0, 3, 1)

        assert word.to_json() == "[0, 3, 1]"
        assert MultisetWord.from_json(word.to_json()) == word

    def test_from_json_invalid(self):
        """Test malformed JSON is a parameter error."""
        with pytest.raises(ParameterError, match="Invalid word JSON"):
            MultisetWord.from_json("[0, 3")

    def test_from_json_not_integers(self):
        """Test non-integer entries are rejected."""
        with pytest.raises(ParameterError, match="JSON array of integers"):
            MultisetWord.from_json('["a", 1]')

    def test_from_json_alphabet_mismatch(self):
        """Test the expected alphabet size is enforced."""
        with pytest.raises(AlphabetMismatchError):
            MultisetWord.from_json("[1, 2]", q=3)

    def test_constant_and_empty(self):
        """Test the constant word and the empty word."""
        assert MultisetWord.constant(1, 4, 3) == W(0, 4, 0)
        assert MultisetWord.empty(2) == W(0, 0)


class TestMultisetOperations:
    """Tests for intersection, difference, sum and containment."""

    def test_intersect(self):
        """Test coordinatewise minimum."""
        assert intersect(W(0, 3, 1), W(1, 0, 3)) == W(0, 0, 1)

    def test_subtract(self):
        """Test truncated difference."""
        assert subtract(W(2, 1, 1), W(1, 0, 1)) == W(1, 1, 0)
        assert subtract(W(0, 1), W(2, 0)) == W(0, 1)

    def test_union_add(self):
        """Test coordinatewise sum."""
        assert union_add(W(1, 1, 0), W(1, 0, 1)) == W(2, 1, 1)

    def test_operations_on_symbol_lists(self):
        """Test {0,1,1,2,2,2} against {1,2,2}."""
        # Arrange
        a = MultisetWord.from_symbols([0, 1, 1, 2, 2, 2], 3)
        b = MultisetWord.from_symbols([1, 2, 2], 3)

        # Act / Assert
        assert intersect(a, b) == W(0, 1, 2)
        assert subtract(a, b) == W(1, 1, 1)
        assert union_add(a, b) == W(1, 3, 5)

    @pytest.mark.parametrize("n,q", [(3, 3), (4, 2), (2, 4)])
    def test_subtract_undoes_union_add(self, n, q):
        """Test subtracting b from a + b gives back a."""
        words = enumerate_space(n, q)

        for a, b in product(words, repeat=2):
            assert subtract(union_add(a, b), b) == a

    def test_is_submultiset(self):
        """Test containment."""
        assert is_submultiset(W(1, 0, 1), W(2, 1, 1))
        assert not is_submultiset(W(0, 2, 0), W(2, 1, 1))

    def test_alphabet_mismatch(self):
        """Test operations over different alphabets fail."""
        with pytest.raises(AlphabetMismatchError):
            intersect(W(1, 1), W(1, 1, 0))


class TestDeletionDistance:
    """Tests for the deletion metric."""

    def test_examples(self):
        """Test distances of the two small ternary example codes."""
        assert deletion_distance(W(0, 3, 1), W(1, 0, 3)) == 3
        assert deletion_distance(W(4, 0, 0), W(0, 4, 0)) == 4
        assert deletion_distance(W(2, 1, 1), W(2, 1, 1)) == 0

    def test_cardinality_mismatch(self):
        """Test words of different size have no deletion distance."""
        with pytest.raises(CardinalityMismatchError):
            deletion_distance(W(1, 1), W(2, 1))

    @pytest.mark.parametrize("n,q", [(4, 3), (6, 2), (3, 4), (5, 3)])
    def test_equals_half_l1_on_all_pairs(self, n, q):
        """Test d(S, T) equals half the l1 distance for every pair."""
        words = enumerate_space(n, q)

        for a, b in product(words, repeat=2):
            assert deletion_distance(a, b) == l1_distance(a, b)

    @pytest.mark.parametrize("n,q", [(4, 3), (5, 2), (3, 4)])
    def test_intersection_plus_distance_is_n(self, n, q):
        """Test |a ∩ b| + d(a, b) = n for every pair."""
        words = enumerate_space(n, q)

        for a, b in product(words, repeat=2):
            assert intersect(a, b).n + deletion_distance(a, b) == n

    def test_symmetric_and_triangle(self):
        """Test metric axioms on S_{4,3}."""
        words = enumerate_space(4, 3)

        for a, b in product(words, repeat=2):
            assert deletion_distance(a, b) == deletion_distance(b, a)
        for a, b, c in product(words[:8], repeat=3):
            assert deletion_distance(a, c) <= deletion_distance(a, b) + deletion_distance(b, c)


class TestSpaceEnumeration:
    """Tests for space_size, enumeration, rank and unrank."""

    @pytest.mark.parametrize("n,q,expected", [(4, 3, 15), (6, 2, 7), (3, 4, 20), (0, 3, 1), (5, 1, 1)])
    def test_space_size(self, n, q, expected):
        """Test |S_{n,q}| = C(n+q-1, q-1)."""
        assert space_size(n, q) == expected

    def test_space_size_is_exact_for_large_values(self):
        """Test sizes beyond 64 bits are exact integers."""
        assert space_size(1000, 20) > 2**63

    def test_space_size_invalid(self):
        """Test negative n is rejected."""
        with pytest.raises(ParameterError):
            space_size(-1, 3)

    def test_enumeration_order(self):
        """Test lexicographic order of count vectors."""
        words = enumerate_space(2, 3)

        assert [w.counts for w in words] == [
            (0, 0, 2),
            (0, 1, 1),
            (0, 2, 0),
            (1, 0, 1),
            (1, 1, 0),
            (2, 0, 0),
        ]

    def test_enumeration_cap(self):
        """Test an explicit cap refuses large spaces."""
        with pytest.raises(ResourceLimitError, match="exceeding the cap"):
            enumerate_space(4, 3, cap=10)

    def test_enumeration_cap_from_environment(self, monkeypatch):
        """Test MULTISET_CODES_ENUM_CAP sets the default cap."""
        monkeypatch.setenv("MULTISET_CODES_ENUM_CAP", "5")

        with pytest.raises(ResourceLimitError):
            enumerate_space(4, 3)

    @pytest.mark.parametrize("n,q", [(4, 3), (3, 4), (6, 2), (2, 5)])
    def test_rank_matches_enumeration(self, n, q):
        """Test rank(w) is the position of w in enumerate_space."""
        for index, word in enumerate(enumerate_space(n, q)):
            assert rank(word) == index
            assert unrank(index, n, q) == word

    def test_unrank_large_space(self):
        """Test unrank at the end of a large space."""
        size = space_size(50, 6)

        assert unrank(size - 1, 50, 6) == W(50, 0, 0, 0, 0, 0)
        assert rank(unrank(12345, 50, 6)) == 12345

    @pytest.mark.parametrize("index", [-1, 15])
    def test_unrank_out_of_range(self, index):
        """Test indices outside [0, |S|) are rejected."""
        with pytest.raises(IndexOutOfRangeError):
            unrank(index, 4, 3)


class TestBallSize:
    """Tests for deletion balls."""

    def test_vertex_ball(self):
        """Test the ball at a simplex vertex."""
        assert ball_size(W(4, 0, 0), 1) == 3
        assert ball_size(W(4, 0, 0), 2) == 6

    def test_interior_ball(self):
        """Test an interior ball is larger than the vertex ball."""
        assert ball_size(W(2, 1, 1), 1) == 7

    @pytest.mark.parametrize("radius,expected", [(0, 1), (1, 3), (2, 6)])
    def test_smallest_ball_sits_at_a_vertex(self, radius, expected):
        """Test the minimum ball size over S_{4,3} is C(r+2, 2)."""
        sizes = [ball_size(w, radius) for w in enumerate_space(4, 3)]

        assert min(sizes) == expected
