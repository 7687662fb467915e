"""Multiset words on the discrete simplex and the deletion metric.

A word of cardinality n over the alphabet {0, ..., q-1} is stored as its
multiplicity vector (x_0, ..., x_{q-1}) with sum n. The space of all such
words, S_{n,q}, is ordered lexicographically on the count vectors; ranks and
enumeration follow that order.
"""
import json
import logging
import operator
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional

from src.config_parser import default_enumeration_cap
from src.errors import (
    AlphabetMismatchError,
    CardinalityMismatchError,
    IndexOutOfRangeError,
    ParameterError,
    ResourceLimitError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultisetWord:
    """A q-ary multiset stored as its multiplicity vector.

    Attributes:
        counts: counts[i] is the multiplicity of symbol i
        n: Cardinality, the sum of counts
    """

    counts: tuple[int, ...]
    n: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        try:
            counts = tuple(operator.index(c) for c in self.counts)
        except TypeError as e:
            raise ParameterError(f"counts must be integers, got {self.counts!r}") from e
        if not counts:
            raise ParameterError("a word needs an alphabet of at least one symbol")
        if any(c < 0 for c in counts):
            raise ParameterError(f"counts must be non-negative, got {counts}")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "n", sum(counts))

    @property
    def q(self) -> int:
        """Alphabet size."""
        return len(self.counts)

    def __getitem__(self, symbol: int) -> int:
        return self.counts[symbol]

    def support(self) -> tuple[int, ...]:
        """Symbols with positive multiplicity, ascending."""
        return tuple(i for i, c in enumerate(self.counts) if c > 0)

    def symbols(self) -> tuple[int, ...]:
        """Element-list view, symbols in ascending order."""
        return tuple(i for i, c in enumerate(self.counts) for _ in range(c))

    def to_json(self) -> str:
        return json.dumps(list(self.counts))

    @classmethod
    def from_json(cls, text: str, q: Optional[int] = None) -> "MultisetWord":
        """Parse the canonical text form, a JSON array of q counts.

        Args:
            text: JSON array such as "[0, 3, 1]"
            q: Expected alphabet size, checked when given

        Raises:
            ParameterError: If the text is not a JSON array of integers
            AlphabetMismatchError: If the array length differs from q
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParameterError(f"Invalid word JSON {text!r}: {str(e)}") from e
        if not isinstance(data, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in data
        ):
            raise ParameterError(f"A word must be a JSON array of integers, got {text!r}")
        word = cls(tuple(data))
        if q is not None and word.q != q:
            raise AlphabetMismatchError(f"expected {q} counts, got {word.q}")
        return word

    @classmethod
    def from_symbols(cls, symbols: Iterable[int], q: int) -> "MultisetWord":
        """Build a word from its elements, e.g. (0, 1, 1, 2) with q=3."""
        counts = [0] * q
        for s in symbols:
            if not 0 <= s < q:
                raise ParameterError(f"symbol {s} outside alphabet of size {q}")
            counts[s] += 1
        return cls(tuple(counts))

    @classmethod
    def empty(cls, q: int) -> "MultisetWord":
        return cls((0,) * q)

    @classmethod
    def constant(cls, symbol: int, n: int, q: int) -> "MultisetWord":
        """The word {symbol^n}."""
        if not 0 <= symbol < q:
            raise ParameterError(f"symbol {symbol} outside alphabet of size {q}")
        counts = [0] * q
        counts[symbol] = n
        return cls(tuple(counts))


#: A deletion pattern E is a multiset over the same alphabet; its size is E.n
DeletionPattern = MultisetWord


def _check_alphabet(a: MultisetWord, b: MultisetWord) -> None:
    if a.q != b.q:
        raise AlphabetMismatchError(f"alphabet sizes differ: {a.q} != {b.q}")


def _check_same_space(a: MultisetWord, b: MultisetWord) -> None:
    _check_alphabet(a, b)
    if a.n != b.n:
        raise CardinalityMismatchError(f"cardinalities differ: {a.n} != {b.n}")


def intersect(a: MultisetWord, b: MultisetWord) -> MultisetWord:
    """Multiset intersection, coordinatewise minimum."""
    _check_alphabet(a, b)
    return MultisetWord(tuple(min(x, y) for x, y in zip(a.counts, b.counts)))


def subtract(a: MultisetWord, b: MultisetWord) -> MultisetWord:
    """Multiset difference a \\ b, coordinatewise max(a - b, 0)."""
    _check_alphabet(a, b)
    return MultisetWord(tuple(max(x - y, 0) for x, y in zip(a.counts, b.counts)))


def union_add(a: MultisetWord, b: MultisetWord) -> MultisetWord:
    """Additive multiset union, coordinatewise sum."""
    _check_alphabet(a, b)
    return MultisetWord(tuple(x + y for x, y in zip(a.counts, b.counts)))


def is_submultiset(a: MultisetWord, b: MultisetWord) -> bool:
    """True iff a is contained in b (a.counts <= b.counts componentwise)."""
    _check_alphabet(a, b)
    return all(x <= y for x, y in zip(a.counts, b.counts))


def deletion_distance(a: MultisetWord, b: MultisetWord) -> int:
    """Deletion distance d(a, b) = n - |a ∩ b|.

    Raises:
        AlphabetMismatchError: If a.q != b.q
        CardinalityMismatchError: If a.n != b.n
    """
    _check_same_space(a, b)
    return a.n - intersect(a, b).n


def l1_distance(a: MultisetWord, b: MultisetWord) -> int:
    """Half the l1 distance between the multiplicity vectors.

    Integral whenever the cardinalities agree, which is enforced.
    """
    _check_same_space(a, b)
    total = sum(abs(x - y) for x, y in zip(a.counts, b.counts))
    return total // 2


def space_size(n: int, q: int) -> int:
    """|S_{n,q}| = C(n+q-1, q-1), exact."""
    if n < 0 or q < 1:
        raise ParameterError(f"space size needs n >= 0 and q >= 1, got n={n}, q={q}")
    return comb(n + q - 1, q - 1)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for value in range(total + 1):
        for rest in _compositions(total - value, parts - 1):
            yield (value,) + rest


def iter_space(n: int, q: int) -> Iterator[MultisetWord]:
    """Lazily yield S_{n,q} in lexicographic order of counts (no cap)."""
    space_size(n, q)
    for counts in _compositions(n, q):
        yield MultisetWord(counts)


def check_enumeration_cap(count: int, cap: Optional[int], what: str) -> None:
    """Raise ResourceLimitError if count exceeds cap (default from config)."""
    limit = default_enumeration_cap() if cap is None else cap
    if count > limit:
        logger.debug(f"Enumeration refused: {what} has {count} items, cap {limit}")
        raise ResourceLimitError(f"{what} has {count} items, exceeding the cap of {limit}")


def enumerate_space(n: int, q: int, cap: Optional[int] = None) -> list[MultisetWord]:
    """All words of S_{n,q} in lexicographic order of counts.

    Args:
        n: Cardinality
        q: Alphabet size
        cap: Maximum number of words to materialize (default: enumeration cap)

    Returns:
        List of space_size(n, q) words

    Raises:
        ResourceLimitError: If space_size(n, q) exceeds the cap
    """
    check_enumeration_cap(space_size(n, q), cap, f"S_{{{n},{q}}}")
    return list(iter_space(n, q))


def rank(word: MultisetWord) -> int:
    """Position of word in the lexicographic order of S_{n,q}."""
    index = 0
    remaining = word.n
    for i in range(word.q - 1):
        tail = word.q - 1 - i
        x = word.counts[i]
        # sum over c < x of |S_{remaining-c, tail}| by the hockey-stick identity
        index += comb(remaining + tail, tail) - comb(remaining - x + tail, tail)
        remaining -= x
    return index


def unrank(index: int, n: int, q: int) -> MultisetWord:
    """Inverse of rank: the index-th word of S_{n,q}.

    Raises:
        IndexOutOfRangeError: If index is not in [0, space_size(n, q))
    """
    size = space_size(n, q)
    if not 0 <= index < size:
        raise IndexOutOfRangeError(f"index {index} outside [0, {size}) for S_{{{n},{q}}}")
    counts = []
    remaining = n
    for i in range(q - 1):
        tail = q - 1 - i
        x = 0
        block = comb(remaining + tail - 1, tail - 1)
        while index >= block:
            index -= block
            x += 1
            block = comb(remaining - x + tail - 1, tail - 1)
        counts.append(x)
        remaining -= x
    counts.append(remaining)
    return MultisetWord(tuple(counts))


def ball_size(center: MultisetWord, radius: int, cap: Optional[int] = None) -> int:
    """Number of words of S_{n,q} within deletion distance radius of center."""
    return sum(
        1
        for word in enumerate_space(center.n, center.q, cap)
        if deletion_distance(center, word) <= radius
    )
