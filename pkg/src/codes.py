"""Multiset deletion codes: constructions, encoding and decoding.

Congruence codes keep every word whose weighted symbol sum lands in one
residue class. Class sizes come from a dynamic programme over symbols
(remaining cardinality x residue) that also drives message encoding: the
message index is the codeword's position, in lexicographic count order,
inside its class.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations
from math import log
from typing import Any, Iterable, Iterator, Optional, Sequence

from src.errors import (
    AlphabetMismatchError,
    CardinalityMismatchError,
    CodeConstructionError,
    DecodeFailureError,
    IndexOutOfRangeError,
    ParameterError,
    TooManyDeletionsError,
)
from src.multiset_core import (
    MultisetWord,
    check_enumeration_cap,
    deletion_distance,
    is_submultiset,
    rank,
    space_size,
    subtract,
    union_add,
    unrank,
)
from src.sidon import deletion_syndrome_table, find_syndrome_collision

logger = logging.getLogger(__name__)


class CodeKind(str, Enum):
    """Construction tag carried in reports."""

    BINARY_CONGRUENCE = "binary_congruence"
    SUM_MOD_Q = "sum_mod_q"
    CYCLIC_SIDON = "cyclic_sidon"
    CUSTOM = "custom"
    PARITY = "parity"
    EXPLICIT = "explicit"


CONGRUENCE_KINDS = (
    CodeKind.BINARY_CONGRUENCE,
    CodeKind.SUM_MOD_Q,
    CodeKind.CYCLIC_SIDON,
    CodeKind.CUSTOM,
)


@dataclass
class OperationCounter:
    """Tally of elementary steps taken by a decoder."""

    count: int = 0

    def tick(self, steps: int = 1) -> None:
        self.count += steps


@dataclass(frozen=True)
class DecodeResult:
    """Recovered codeword S and deletion pattern E with received = S minus E."""

    codeword: MultisetWord
    pattern: MultisetWord

    def to_dict(self) -> dict[str, Any]:
        return {"codeword": list(self.codeword.counts), "pattern": list(self.pattern.counts)}


def _tick(counter: Optional[OperationCounter], steps: int = 1) -> None:
    if counter is not None:
        counter.tick(steps)


class DeletionCode(ABC):
    """A code in S_{n,q} claimed to correct t deletions."""

    n: int
    q: int
    t: int

    @property
    @abstractmethod
    def kind(self) -> CodeKind:
        ...

    @abstractmethod
    def _member(self, word: MultisetWord) -> bool:
        ...

    @abstractmethod
    def size(self) -> int:
        """Exact number of codewords."""

    @abstractmethod
    def encode(self, message_index: int) -> MultisetWord:
        """Map a message index in [0, size()) to its codeword."""

    @abstractmethod
    def index_of(self, word: MultisetWord) -> int:
        """Inverse of encode."""

    @abstractmethod
    def _recover(
        self, received: MultisetWord, deletions: int, counter: Optional[OperationCounter]
    ) -> MultisetWord:
        """Return the deletion pattern explaining received."""

    @abstractmethod
    def codewords(self, cap: Optional[int] = None) -> list[MultisetWord]:
        """All codewords in lexicographic count order."""

    def check_word(self, word: MultisetWord) -> None:
        if word.q != self.q:
            raise AlphabetMismatchError(f"word has q={word.q}, code has q={self.q}")
        if word.n != self.n:
            raise CardinalityMismatchError(f"word has n={word.n}, code has n={self.n}")

    def contains(self, word: MultisetWord) -> bool:
        """Membership test.

        Raises:
            AlphabetMismatchError: If word.q differs from the code's q
            CardinalityMismatchError: If word.n differs from the code's n
        """
        self.check_word(word)
        return self._member(word)

    def decode(
        self, received: MultisetWord, counter: Optional[OperationCounter] = None
    ) -> DecodeResult:
        """Recover the transmitted codeword from a word that lost t' <= t symbols.

        The number of deletions t' is read off the received cardinality.

        Args:
            received: Channel output
            counter: Optional tally of decoding steps

        Returns:
            DecodeResult with the codeword and the deleted multiset

        Raises:
            AlphabetMismatchError: If received.q differs from the code's q
            CardinalityMismatchError: If received is larger than a codeword
            TooManyDeletionsError: If t' exceeds the code's capability
            DecodeFailureError: If no codeword explains received
        """
        if received.q != self.q:
            raise AlphabetMismatchError(f"received word has q={received.q}, code has q={self.q}")
        deletions = self.n - received.n
        if deletions < 0:
            raise CardinalityMismatchError(
                f"received word has {received.n} symbols, more than n={self.n}"
            )
        if deletions > self.t:
            raise TooManyDeletionsError(f"{deletions} deletions exceed the capability t={self.t}")
        if deletions == 0:
            _tick(counter, self.q)
            if not self._member(received):
                raise DecodeFailureError(f"{received.counts} is not a codeword")
            return DecodeResult(received, MultisetWord.empty(self.q))

        pattern = self._recover(received, deletions, counter)
        codeword = union_add(received, pattern)
        if pattern.n != deletions or not self._member(codeword):
            raise DecodeFailureError(
                f"no codeword explains {received.counts} with {deletions} deletions"
            )
        logger.debug(f"decoded {received.counts} -> {codeword.counts}, pattern {pattern.counts}")
        return DecodeResult(codeword, pattern)

    def describe(self) -> dict[str, Any]:
        """Parameters and size of the code as a plain dict."""
        total = space_size(self.n, self.q)
        size = self.size()
        return {
            "kind": self.kind.value,
            "n": self.n,
            "q": self.q,
            "t": self.t,
            "size": size,
            "space_size": total,
            "redundancy": redundancy(total, size, self.q),
        }


@lru_cache(maxsize=64)
def _suffix_table(
    n: int, weights: tuple[int, ...], modulus: int
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """table[i][r][s]: ways to give symbols i..q-1 total count r and weighted sum s mod m."""
    q = len(weights)
    empty = tuple((1 if s == 0 else 0) for s in range(modulus))
    zero = (0,) * modulus
    tail: tuple[tuple[int, ...], ...] = (empty,) + (zero,) * n
    table = [tail]
    for i in reversed(range(q)):
        w = weights[i]
        rows: list[tuple[int, ...]] = []
        for r in range(n + 1):
            below = tail[r]
            if r == 0:
                rows.append(below)
                continue
            # x_i = 0, or remove one copy of symbol i
            prev = rows[r - 1]
            rows.append(tuple(below[s] + prev[(s - w) % modulus] for s in range(modulus)))
        tail = tuple(rows)
        table.append(tail)
    table.reverse()
    return tuple(table)


@dataclass(frozen=True)
class WeightedCongruenceCode(DeletionCode):
    """All words S of S_{n,q} with sum_i weights[i] * x_i = residue (mod modulus).

    Attributes:
        n: Cardinality
        q: Alphabet size
        weights: f(0), ..., f(q-1), stored reduced mod modulus
        modulus: m >= 1
        residue: a in [0, m)
        t: Designed number of correctable deletions
        code_kind: Which construction produced the weights
    """

    n: int
    q: int
    weights: tuple[int, ...]
    modulus: int
    residue: int
    t: int
    code_kind: CodeKind = CodeKind.CUSTOM
    cap: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 0 or self.q < 2 or self.t < 0:
            raise CodeConstructionError(
                f"need n >= 0, q >= 2, t >= 0; got n={self.n}, q={self.q}, t={self.t}"
            )
        if self.modulus < 1:
            raise CodeConstructionError(f"modulus must be >= 1, got {self.modulus}")
        if len(self.weights) != self.q:
            raise CodeConstructionError(f"expected {self.q} weights, got {len(self.weights)}")
        if not 0 <= self.residue < self.modulus:
            raise CodeConstructionError(f"residue {self.residue} outside [0, {self.modulus})")
        kind = CodeKind(self.code_kind)
        if kind not in CONGRUENCE_KINDS:
            raise CodeConstructionError(f"{kind.value} is not a congruence construction")
        object.__setattr__(self, "code_kind", kind)
        object.__setattr__(self, "weights", tuple(int(w) % self.modulus for w in self.weights))
        self._check_family()

    def _check_family(self) -> None:
        m, q, t = self.modulus, self.q, self.t
        if self.code_kind is CodeKind.BINARY_CONGRUENCE:
            expected: tuple[tuple[int, ...], int] = ((0, 1 % m), t + 1)
            if q != 2:
                raise CodeConstructionError(f"binary congruence codes need q=2, got {q}")
        elif self.code_kind is CodeKind.SUM_MOD_Q:
            expected = (tuple(range(q)), q)
            if t != 1:
                raise CodeConstructionError(f"sum-mod-q codes correct one deletion, got t={t}")
        elif self.code_kind is CodeKind.CYCLIC_SIDON:
            expected = cyclic_weights(q, t)
        else:
            collision = find_syndrome_collision(self.weights, m, t, q, cap=self.cap)
            if collision is not None:
                raise CodeConstructionError(
                    f"weights {self.weights} mod {m} do not separate deletion patterns: "
                    f"{collision[0].counts} and {collision[1].counts} share a syndrome"
                )
            return
        weights, modulus = expected
        if self.modulus != modulus or self.weights != tuple(w % modulus for w in weights):
            raise CodeConstructionError(
                f"{self.code_kind.value} code with q={q}, t={t} needs weights "
                f"{tuple(weights)} mod {modulus}, got {self.weights} mod {self.modulus}"
            )

    @property
    def kind(self) -> CodeKind:
        return self.code_kind

    @property
    def _table(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return _suffix_table(self.n, self.weights, self.modulus)

    def syndrome(self, word: MultisetWord, counter: Optional[OperationCounter] = None) -> int:
        """sum_i weights[i] * counts[i] mod m, in [0, m)."""
        if word.q != self.q:
            raise AlphabetMismatchError(f"word has q={word.q}, code has q={self.q}")
        _tick(counter, self.q)
        return sum(w * c for w, c in zip(self.weights, word.counts)) % self.modulus

    def _member(self, word: MultisetWord) -> bool:
        return self.syndrome(word) == self.residue

    def class_sizes(self) -> list[int]:
        """Exact size of every residue class a = 0, ..., m-1."""
        return list(self._table[0][self.n])

    def size(self) -> int:
        return self._table[0][self.n][self.residue]

    def encode(self, message_index: int) -> MultisetWord:
        size = self.size()
        if not 0 <= message_index < size:
            raise IndexOutOfRangeError(f"message index {message_index} outside [0, {size})")
        table, m = self._table, self.modulus
        index, remaining, target = message_index, self.n, self.residue
        counts = []
        for i, w in enumerate(self.weights):
            x = 0
            while True:
                block = table[i + 1][remaining - x][(target - x * w) % m]
                if index < block:
                    break
                index -= block
                x += 1
            counts.append(x)
            remaining -= x
            target = (target - x * w) % m
        return MultisetWord(tuple(counts))

    def index_of(self, word: MultisetWord) -> int:
        if not self.contains(word):
            raise ParameterError(f"{word.counts} is not a codeword")
        table, m = self._table, self.modulus
        index, remaining, target = 0, self.n, self.residue
        for i, (w, x) in enumerate(zip(self.weights, word.counts)):
            index += sum(table[i + 1][remaining - c][(target - c * w) % m] for c in range(x))
            remaining -= x
            target = (target - x * w) % m
        return index

    def codewords(self, cap: Optional[int] = None) -> list[MultisetWord]:
        check_enumeration_cap(self.size(), cap, f"{self.code_kind.value} code")
        table, m, q = self._table, self.modulus, self.q

        def walk(i: int, remaining: int, target: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if i == q:
                yield prefix
                return
            w = self.weights[i]
            for x in range(remaining + 1):
                rest = (target - x * w) % m
                if table[i + 1][remaining - x][rest]:
                    yield from walk(i + 1, remaining - x, rest, prefix + (x,))

        return [MultisetWord(c) for c in walk(0, self.n, self.residue, ())]

    @cached_property
    def _pattern_table(self) -> dict[tuple[int, int], MultisetWord]:
        return deletion_syndrome_table(self.weights, self.modulus, self.t, self.q, cap=self.cap)

    def _recover(
        self, received: MultisetWord, deletions: int, counter: Optional[OperationCounter]
    ) -> MultisetWord:
        missing = (self.residue - self.syndrome(received, counter)) % self.modulus
        _tick(counter)
        if self.code_kind is CodeKind.BINARY_CONGRUENCE:
            return self._recover_binary(missing, deletions)
        if self.code_kind is CodeKind.SUM_MOD_Q:
            counts = [0] * self.q
            counts[missing] = 1
            return MultisetWord(tuple(counts))
        if self.code_kind is CodeKind.CYCLIC_SIDON:
            return self._recover_cyclic(missing, deletions, counter)
        pattern = self._pattern_table.get((deletions, missing))
        if pattern is None:
            raise DecodeFailureError(f"no pattern of size {deletions} has syndrome {missing}")
        return pattern

    def _recover_binary(self, ones: int, deletions: int) -> MultisetWord:
        # symbol 1 carries the weight; the other deletions were zeros
        if ones > deletions:
            raise DecodeFailureError(f"weight deficit {ones} exceeds {deletions} deletions")
        return MultisetWord((deletions - ones, ones))

    def _recover_cyclic(
        self, missing: int, deletions: int, counter: Optional[OperationCounter]
    ) -> MultisetWord:
        base = self.t + 1
        digits = []
        for i in range(self.q - 2):
            digits.append((missing // base**i) % base)
        digits.append(missing // base ** (self.q - 2))
        _tick(counter, self.q - 1)
        if sum(digits) > deletions:
            raise DecodeFailureError(
                f"syndrome difference {missing} expands to {sum(digits)} > {deletions} deletions"
            )
        return MultisetWord(tuple(digits) + (deletions - sum(digits),))

    def describe(self) -> dict[str, Any]:
        report = super().describe()
        sizes = self.class_sizes()
        report.update(
            {
                "weights": list(self.weights),
                "modulus": self.modulus,
                "residue": self.residue,
                "nominal_redundancy": nominal_redundancy(self),
                "equal_classes": min(sizes) == max(sizes),
            }
        )
        return report


@dataclass(frozen=True)
class ParityCode(DeletionCode):
    """Words whose multiplicities are all even; corrects one deletion."""

    n: int
    q: int
    t: int = field(default=1, init=False)

    def __post_init__(self) -> None:
        if self.q < 2:
            raise CodeConstructionError(f"parity codes need q >= 2, got {self.q}")
        if self.n < 0 or self.n % 2:
            raise CodeConstructionError(f"parity codes need an even n >= 0, got {self.n}")

    @property
    def kind(self) -> CodeKind:
        return CodeKind.PARITY

    def _member(self, word: MultisetWord) -> bool:
        return all(c % 2 == 0 for c in word.counts)

    def size(self) -> int:
        return space_size(self.n // 2, self.q)

    def encode(self, message_index: int) -> MultisetWord:
        size = self.size()
        if not 0 <= message_index < size:
            raise IndexOutOfRangeError(f"message index {message_index} outside [0, {size})")
        half = unrank(message_index, self.n // 2, self.q)
        return MultisetWord(tuple(2 * c for c in half.counts))

    def index_of(self, word: MultisetWord) -> int:
        if not self.contains(word):
            raise ParameterError(f"{word.counts} is not a codeword")
        return rank(MultisetWord(tuple(c // 2 for c in word.counts)))

    def codewords(self, cap: Optional[int] = None) -> list[MultisetWord]:
        check_enumeration_cap(self.size(), cap, "parity code")
        return [self.encode(i) for i in range(self.size())]

    def _recover(
        self, received: MultisetWord, deletions: int, counter: Optional[OperationCounter]
    ) -> MultisetWord:
        _tick(counter, self.q)
        odd = [i for i, c in enumerate(received.counts) if c % 2]
        if len(odd) != deletions:
            raise DecodeFailureError(f"{len(odd)} odd multiplicities after {deletions} deletion(s)")
        return MultisetWord.from_symbols(odd, self.q)


@dataclass(frozen=True)
class ExplicitCode(DeletionCode):
    """A finite list of codewords, stored in lexicographic count order."""

    words: tuple[MultisetWord, ...]
    t: int
    n: int = field(init=False)
    q: int = field(init=False)

    def __post_init__(self) -> None:
        words = tuple(sorted(self.words, key=lambda w: (w.q, w.n, w.counts)))
        if not words:
            raise CodeConstructionError("an explicit code needs at least one word")
        if len({(w.q, w.n) for w in words}) != 1:
            raise CodeConstructionError("all codewords must share n and q")
        if len(set(words)) != len(words):
            raise CodeConstructionError("codewords must be distinct")
        if self.t < 0:
            raise CodeConstructionError(f"t must be >= 0, got {self.t}")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "n", words[0].n)
        object.__setattr__(self, "q", words[0].q)

    @property
    def kind(self) -> CodeKind:
        return CodeKind.EXPLICIT

    def _member(self, word: MultisetWord) -> bool:
        return word in self._positions

    @cached_property
    def _positions(self) -> dict[MultisetWord, int]:
        return {w: i for i, w in enumerate(self.words)}

    def size(self) -> int:
        return len(self.words)

    def encode(self, message_index: int) -> MultisetWord:
        if not 0 <= message_index < len(self.words):
            raise IndexOutOfRangeError(f"message index {message_index} outside [0, {len(self.words)})")
        return self.words[message_index]

    def index_of(self, word: MultisetWord) -> int:
        if not self.contains(word):
            raise ParameterError(f"{word.counts} is not a codeword")
        return self._positions[word]

    def codewords(self, cap: Optional[int] = None) -> list[MultisetWord]:
        return list(self.words)

    def _recover(
        self, received: MultisetWord, deletions: int, counter: Optional[OperationCounter]
    ) -> MultisetWord:
        _tick(counter, len(self.words))
        candidates = [w for w in self.words if is_submultiset(received, w)]
        if len(candidates) != 1:
            raise DecodeFailureError(
                f"{len(candidates)} codewords contain {received.counts}; expected exactly one"
            )
        return subtract(candidates[0], received)

    def describe(self) -> dict[str, Any]:
        report = super().describe()
        report["words"] = [list(w.counts) for w in self.words]
        report["minimum_distance"] = minimum_distance(self.words)
        return report


def cyclic_weights(q: int, t: int) -> tuple[tuple[int, ...], int]:
    """Weights f(i) = (t+1)^i for i < q-1, f(q-1) = 0, and m = t(t+1)^(q-2) + 1."""
    if q < 2 or t < 1:
        raise CodeConstructionError(f"cyclic construction needs q >= 2, t >= 1; got q={q}, t={t}")
    modulus = t * (t + 1) ** (q - 2) + 1
    weights = tuple((t + 1) ** i % modulus for i in range(q - 1)) + (0,)
    return weights, modulus


def ternary_sidon_weights(t: int) -> tuple[tuple[int, ...], int]:
    """Ternary labels (0, -1, t) with modulus t^2 + t + 1."""
    if t < 1:
        raise CodeConstructionError(f"t must be >= 1, got {t}")
    return (0, -1, t), t * t + t + 1


def best_residue(code: WeightedCongruenceCode) -> tuple[int, int]:
    """Residue with the largest class and that class's size; ties go to the smallest a."""
    sizes = code.class_sizes()
    best = max(range(code.modulus), key=lambda a: (sizes[a], -a))
    return best, sizes[best]


def _with_best_residue(code: WeightedCongruenceCode, residue: Optional[int]) -> WeightedCongruenceCode:
    if residue is not None:
        return code
    best, size = best_residue(code)
    logger.debug(f"{code.code_kind.value} n={code.n} q={code.q} t={code.t}: best residue {best}, size {size}")
    return WeightedCongruenceCode(
        code.n, code.q, code.weights, code.modulus, best, code.t, code.code_kind, code.cap
    )


def make_binary(n: int, t: int, a: Optional[int] = None) -> WeightedCongruenceCode:
    """Binary words with weight x_1 = a (mod t+1); a=None picks the largest class."""
    if n < 1 or t < 1:
        raise CodeConstructionError(f"binary codes need n >= 1, t >= 1; got n={n}, t={t}")
    code = WeightedCongruenceCode(n, 2, (0, 1), t + 1, a or 0, t, CodeKind.BINARY_CONGRUENCE)
    return _with_best_residue(code, a)


def make_sum_mod_q(n: int, q: int, a: Optional[int] = None) -> WeightedCongruenceCode:
    """Words whose symbol sum is a (mod q); corrects a single deletion."""
    if n < 1:
        raise CodeConstructionError(f"n must be >= 1, got {n}")
    code = WeightedCongruenceCode(n, q, tuple(range(q)), q, a or 0, 1, CodeKind.SUM_MOD_Q)
    return _with_best_residue(code, a)


def make_custom(
    n: int,
    q: int,
    t: int,
    weights: Sequence[int],
    modulus: int,
    a: Optional[int] = None,
    cap: Optional[int] = None,
) -> WeightedCongruenceCode:
    """Congruence code with caller-supplied weights, admitted only if
    F(E) = sum f(i) e_i mod m separates the deletion patterns of every size <= t."""
    if n < 1:
        raise CodeConstructionError(f"n must be >= 1, got {n}")
    code = WeightedCongruenceCode(n, q, tuple(weights), modulus, a or 0, t, CodeKind.CUSTOM, cap)
    return _with_best_residue(code, a)


def make_cyclic(
    n: int,
    q: int,
    t: int,
    a: Optional[int] = None,
    weights: Optional[Sequence[int]] = None,
    modulus: Optional[int] = None,
    cap: Optional[int] = None,
) -> WeightedCongruenceCode:
    """Cyclic Sidon-type code correcting t deletions.

    With explicit weights and modulus the code is built as a custom
    construction after the syndrome map is checked.
    """
    if weights is not None or modulus is not None:
        if weights is None or modulus is None:
            raise CodeConstructionError("custom weights need both weights and modulus")
        return make_custom(n, q, t, weights, modulus, a, cap)
    if n < 1:
        raise CodeConstructionError(f"n must be >= 1, got {n}")
    cyc_weights, cyc_modulus = cyclic_weights(q, t)
    code = WeightedCongruenceCode(n, q, cyc_weights, cyc_modulus, a or 0, t, CodeKind.CYCLIC_SIDON)
    return _with_best_residue(code, a)


def make_ternary(
    n: int, t: int, a: Optional[int] = None, cap: Optional[int] = None
) -> WeightedCongruenceCode:
    """Ternary code with labels (0, -1, t) modulo t^2 + t + 1.

    cap bounds the patterns enumerated while checking the labels.
    """
    weights, modulus = ternary_sidon_weights(t)
    return make_custom(n, 3, t, weights, modulus, a, cap)


def make_parity(n: int, q: int) -> ParityCode:
    return ParityCode(n, q)


def build_code(
    kind: str,
    n: int,
    q: Optional[int] = None,
    t: Optional[int] = None,
    a: Optional[int] = None,
    cap: Optional[int] = None,
) -> DeletionCode:
    """Build a code from its short command-line name.

    Args:
        kind: One of binary, summod, cyclic, ternary, parity
        n: Cardinality
        q: Alphabet size (implied for binary and ternary)
        t: Deletions to correct (fixed to 1 for summod and parity)
        a: Residue, or None for the largest class
        cap: Enumeration cap for constructions that check their weights

    Raises:
        CodeConstructionError: If the parameters do not fit the kind
        ResourceLimitError: If checking the weights exceeds cap
    """

    def need(value: Optional[int], name: str) -> int:
        if value is None:
            raise CodeConstructionError(f"{kind} codes need {name}")
        return value

    def fixed(value: Optional[int], expected: int, name: str) -> None:
        if value is not None and value != expected:
            raise CodeConstructionError(f"{kind} codes have {name}={expected}, got {value}")

    if kind == "binary":
        fixed(q, 2, "q")
        return make_binary(n, need(t, "t"), a)
    if kind == "summod":
        fixed(t, 1, "t")
        return make_sum_mod_q(n, need(q, "q"), a)
    if kind == "cyclic":
        return make_cyclic(n, need(q, "q"), need(t, "t"), a)
    if kind == "ternary":
        fixed(q, 3, "q")
        return make_ternary(n, need(t, "t"), a, cap)
    if kind == "parity":
        fixed(t, 1, "t")
        if a is not None:
            raise CodeConstructionError("parity codes take no residue")
        return make_parity(n, need(q, "q"))
    raise CodeConstructionError(f"unknown code kind '{kind}'")


def redundancy(space: int, code_size: int, q: int) -> float:
    """log_q |S_{n,q}| - log_q M."""
    if code_size < 1 or space < code_size or q < 2:
        raise ParameterError(f"need 1 <= M <= |S| and q >= 2; got M={code_size}, |S|={space}, q={q}")
    return (log(space) - log(code_size)) / log(q)


def nominal_redundancy(code: WeightedCongruenceCode) -> float:
    """log_q m, the redundancy if all m classes had equal size."""
    return log(code.modulus) / log(code.q)


def minimum_distance(words: Sequence[MultisetWord]) -> Optional[int]:
    """Smallest pairwise deletion distance; None for fewer than two words."""
    if len(words) < 2:
        return None
    return min(deletion_distance(a, b) for a, b in combinations(words, 2))


def is_deletion_correcting(words: Iterable[MultisetWord], t: int) -> bool:
    """True iff every two listed words are at deletion distance >= t+1.

    A repeated word has distance 0 to its copy and fails for every t >= 0.
    """
    d = minimum_distance(list(words))
    return d is None or d >= t + 1


def decode_symbols(
    code: DeletionCode, symbols: Iterable[int], counter: Optional[OperationCounter] = None
) -> DecodeResult:
    """Decode an unordered stream of received symbols.

    The stream is tallied in one pass, one counted step per token, and the
    resulting multiplicity vector is decoded.
    """
    counts = [0] * code.q
    for s in symbols:
        if not 0 <= s < code.q:
            raise ParameterError(f"symbol {s} outside alphabet of size {code.q}")
        counts[s] += 1
        _tick(counter)
    return code.decode(MultisetWord(tuple(counts)), counter)


def constant_word_code(n: int, q: int) -> ExplicitCode:
    """The q constant words {a^n}; corrects n-1 deletions."""
    if n < 1 or q < 1:
        raise CodeConstructionError(f"need n >= 1 and q >= 1, got n={n}, q={q}")
    return ExplicitCode(tuple(MultisetWord.constant(a, n, q) for a in range(q)), t=n - 1)


def ternary_size6_code() -> ExplicitCode:
    """Six ternary words of cardinality 4 correcting one deletion."""
    words = [(4, 0, 0), (0, 4, 0), (0, 0, 4), (2, 2, 0), (2, 0, 2), (0, 2, 2)]
    return ExplicitCode(tuple(MultisetWord(w) for w in words), t=1)


def quaternary_size5_code() -> ExplicitCode:
    """{000, 011, 022, 033, 123}: five words over q=4, n=3 correcting one deletion."""
    words = [(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 3)]
    return ExplicitCode(tuple(MultisetWord.from_symbols(w, 4) for w in words), t=1)


def distance_example_codes() -> tuple[ExplicitCode, ExplicitCode]:
    """Two ternary codes of cardinality 4 with minimum distances 3 and 4."""
    first = ExplicitCode(tuple(MultisetWord(w) for w in [(0, 3, 1), (1, 0, 3), (3, 1, 0)]), t=2)
    return first, constant_word_code(4, 3)
