"""Generalized Sidon (B_t) sets and the additive deletion-syndrome map.

All checks are brute force over the multisets involved: every sum is
recorded in a dict and the first repeated sum is returned as a collision
witness.
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence, Union

from src.errors import ParameterError
from src.multiset_core import MultisetWord, check_enumeration_cap, iter_space, space_size

logger = logging.getLogger(__name__)

Collision = tuple[MultisetWord, MultisetWord]


@dataclass(frozen=True)
class BtSetCandidate:
    """A finite subset B = (b_0, ..., b_{k-1}) of the cyclic group Z_g.

    Attributes:
        group_modulus: g >= 1
        elements: Residues in [0, g), pairwise distinct
    """

    group_modulus: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.group_modulus < 1:
            raise ParameterError(f"group modulus must be >= 1, got {self.group_modulus}")
        reduced = tuple(int(b) % self.group_modulus for b in self.elements)
        if len(set(reduced)) != len(reduced):
            raise ParameterError(f"elements {self.elements} are not distinct modulo {self.group_modulus}")
        object.__setattr__(self, "elements", reduced)


def phi(cand: BtSetCandidate, x: Union[MultisetWord, Sequence[int]]) -> int:
    """Phi(x) = sum x_i b_i mod g for a multiplicity vector x over the elements."""
    counts = x.counts if isinstance(x, MultisetWord) else tuple(x)
    if len(counts) != len(cand.elements):
        raise ParameterError(
            f"multiplicity vector has length {len(counts)}, expected {len(cand.elements)}"
        )
    return sum(c * b for c, b in zip(counts, cand.elements)) % cand.group_modulus


def _weighted_sum(weights: Sequence[int], pattern: MultisetWord, modulus: int) -> int:
    return sum(w * c for w, c in zip(weights, pattern.counts)) % modulus


def find_bt_collision(
    cand: BtSetCandidate, t: int, cap: Optional[int] = None
) -> Optional[Collision]:
    """First pair of distinct multisets of size 1..t with equal sums in Z_g.

    Multisets are visited by size, then in lexicographic order of their
    multiplicity vectors; the returned pair is (earlier, later).

    Raises:
        ResourceLimitError: If more than cap multisets would be visited
    """
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    k = len(cand.elements)
    if k == 0 or t == 0:
        return None
    # sizes 1..t: C(t+k, k) - 1 multisets in total
    check_enumeration_cap(comb(t + k, k) - 1, cap, f"multisets of size <= {t} over {k} elements")
    seen: dict[int, MultisetWord] = {}
    for size in range(1, t + 1):
        for x in iter_space(size, k):
            s = phi(cand, x)
            if s in seen:
                logger.debug(f"B_{t} collision in Z_{cand.group_modulus}: {seen[s].counts} ~ {x.counts}")
                return seen[s], x
            seen[s] = x
    return None


def is_bt_set(cand: BtSetCandidate, t: int, cap: Optional[int] = None) -> bool:
    """True iff all multiset sums of 1..t elements of the candidate are distinct."""
    return find_bt_collision(cand, t, cap) is None


def _check_syndrome_args(weights: Sequence[int], modulus: int, t: int, q: int) -> None:
    if len(weights) != q:
        raise ParameterError(f"expected {q} weights, got {len(weights)}")
    if modulus < 1:
        raise ParameterError(f"modulus must be >= 1, got {modulus}")
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")


def find_syndrome_collision(
    weights: Sequence[int],
    modulus: int,
    t: int,
    q: int,
    joint: bool = False,
    cap: Optional[int] = None,
) -> Optional[Collision]:
    """First pair of deletion patterns sharing F(E) = sum f(i) e_i mod m.

    By default patterns only compete against patterns of the same size,
    since a decoder reads the number of deletions off the received
    cardinality. With joint=True every size 0..t is checked together.

    Raises:
        ParameterError: If weights do not have length q
        ResourceLimitError: If more than cap patterns would be visited
    """
    _check_syndrome_args(weights, modulus, t, q)
    total = sum(space_size(size, q) for size in range(t + 1))
    check_enumeration_cap(total, cap, f"deletion patterns of size <= {t} over q={q}")
    seen: dict[int, MultisetWord] = {}
    for size in range(t + 1):
        if not joint:
            seen = {}
        for pattern in iter_space(size, q):
            s = _weighted_sum(weights, pattern, modulus)
            if s in seen:
                return seen[s], pattern
            seen[s] = pattern
    return None


def validate_deletion_syndrome(
    weights: Sequence[int],
    modulus: int,
    t: int,
    q: int,
    joint: bool = False,
    cap: Optional[int] = None,
) -> bool:
    """True iff E -> F(E) mod m is injective on deletion patterns of each size <= t."""
    collision = find_syndrome_collision(weights, modulus, t, q, joint=joint, cap=cap)
    if collision is not None:
        logger.debug(
            f"weights {tuple(weights)} mod {modulus} fail at t={t}: "
            f"{collision[0].counts} and {collision[1].counts} collide"
        )
    return collision is None


def deletion_syndrome_table(
    weights: Sequence[int], modulus: int, t: int, q: int, cap: Optional[int] = None
) -> dict[tuple[int, int], MultisetWord]:
    """Lookup table (pattern size, F(E) mod m) -> E for every pattern of size <= t.

    Raises:
        ParameterError: If two patterns of one size share a syndrome
    """
    _check_syndrome_args(weights, modulus, t, q)
    check_enumeration_cap(
        sum(space_size(size, q) for size in range(t + 1)), cap, f"deletion patterns of size <= {t}"
    )
    table: dict[tuple[int, int], MultisetWord] = {}
    for size in range(t + 1):
        for pattern in iter_space(size, q):
            key = (size, _weighted_sum(weights, pattern, modulus))
            if key in table:
                raise ParameterError(
                    f"patterns {table[key].counts} and {pattern.counts} share syndrome {key[1]}"
                )
            table[key] = pattern
    return table
