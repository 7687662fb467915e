"""Exact values of S_q(n, t) on small instances.

A t-deletion-correcting code is an independent set of the conflict graph on
S_{n,q}, which joins two words at deletion distance <= t. The search runs a
branch and bound for a maximum clique of the complementary compatibility
graph, bounding each node by a greedy colouring, then a canonical pass in
rank order that returns the lexicographically first optimal code.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Optional, Sequence, Union

import networkx as nx
import numpy as np

from src.channel import apply_deletions, all_patterns
from src.codes import ExplicitCode, minimum_distance
from src.config_parser import DEFAULT_SEARCH_CAP
from src.errors import ParameterError
from src.multiset_core import MultisetWord, deletion_distance, enumerate_space, space_size

logger = logging.getLogger(__name__)


def confusable(a: MultisetWord, b: MultisetWord, t: int) -> bool:
    """True iff some output of size >= n-t is reachable from both words."""
    return deletion_distance(a, b) <= t


def _outputs(word: MultisetWord, t: int, cap: Optional[int]) -> set[MultisetWord]:
    return {apply_deletions(word, e) for e in all_patterns(word, t, cap)}


def confusable_by_outputs(
    a: MultisetWord, b: MultisetWord, t: int, cap: Optional[int] = None
) -> bool:
    """Confusability by listing both output sets and intersecting them."""
    deletion_distance(a, b)  # same (n, q) check
    return not _outputs(a, t, cap).isdisjoint(_outputs(b, t, cap))


def _conflict_matrix(words: Sequence[MultisetWord], t: int) -> np.ndarray:
    counts = np.array([w.counts for w in words], dtype=np.int64)
    conflicts = np.zeros((len(words), len(words)), dtype=bool)
    for i in range(len(words)):
        half_l1 = np.abs(counts - counts[i]).sum(axis=1) // 2
        conflicts[i] = half_l1 <= t
    np.fill_diagonal(conflicts, False)
    return conflicts


def conflict_graph(n: int, q: int, t: int, cap: Optional[int] = None) -> nx.Graph:
    """Conflict graph on S_{n,q}: nodes are ranks, edges join words at distance <= t.

    Each node carries its word under the "word" attribute.

    Raises:
        ResourceLimitError: If |S_{n,q}| exceeds the cap
    """
    limit = DEFAULT_SEARCH_CAP if cap is None else cap
    words = enumerate_space(n, q, limit)
    conflicts = _conflict_matrix(words, t)
    graph = nx.Graph()
    graph.add_nodes_from((i, {"word": w}) for i, w in enumerate(words))
    rows, cols = np.nonzero(np.triu(conflicts))
    graph.add_edges_from((int(i), int(j)) for i, j in zip(rows, cols))
    return graph


def _bitsets(compatible: np.ndarray, order: Sequence[int]) -> list[int]:
    """Row bitsets of compatible permuted to order; bit p stands for order[p]."""
    index = np.asarray(order, dtype=np.int64)
    permuted = compatible[np.ix_(index, index)]
    packed = np.packbits(permuted, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass(frozen=True)
class SearchResult:
    """Outcome of max_code_exact.

    Attributes:
        optimum: Size of the best code found; S_q(n, t) when exact
        witness: A code of that size
        exact: True when the branch and bound closed the gap
        nodes_explored: Search tree nodes visited over both passes
    """

    n: int
    q: int
    t: int
    optimum: int
    witness: ExplicitCode
    exact: bool
    nodes_explored: int

    def to_dict(self, emit_witness: bool = True) -> dict[str, Any]:
        result: dict[str, Any] = {
            "n": self.n,
            "q": self.q,
            "t": self.t,
            "optimum": self.optimum,
            "exact": self.exact,
            "nodes": self.nodes_explored,
        }
        if emit_witness:
            result["witness"] = [list(w.counts) for w in self.witness.words]
        return result


class _NodeLimitReached(Exception):
    pass


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _CliqueSearch:
    """Maximum clique on bitset adjacency with greedy colouring bounds."""

    def __init__(self, compatible: list[int], node_limit: Optional[int]):
        self.compatible = compatible
        self.node_limit = node_limit
        self.nodes = 0
        self.best: list[int] = []

    def _visit(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _NodeLimitReached

    def _colour(self, candidates: int) -> tuple[list[int], list[int]]:
        """Greedy colouring of candidates; a clique uses each colour at most once."""
        order: list[int] = []
        colours: list[int] = []
        uncoloured, colour = candidates, 0
        while uncoloured:
            colour += 1
            free = uncoloured
            while free:
                v = (free & -free).bit_length() - 1
                free &= ~self.compatible[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
                order.append(v)
                colours.append(colour)
        return order, colours

    def maximum(self, candidates: int) -> list[int]:
        self._expand([], candidates)
        return self.best

    def _expand(self, chosen: list[int], candidates: int) -> None:
        self._visit()
        order, colours = self._colour(candidates)
        for v, colour in zip(reversed(order), reversed(colours)):
            if len(chosen) + colour <= len(self.best):
                return
            chosen.append(v)
            remaining = candidates & self.compatible[v]
            if remaining:
                self._expand(chosen, remaining)
            elif len(chosen) > len(self.best):
                self.best = list(chosen)
            chosen.pop()
            candidates &= ~(1 << v)

    def first_of_size(self, size: int, candidates: int) -> Optional[list[int]]:
        """Lexicographically smallest clique of the given size, bits visited low to high."""
        return self._first([], size, candidates)

    def _first(self, chosen: list[int], size: int, candidates: int) -> Optional[list[int]]:
        self._visit()
        if len(chosen) == size:
            return list(chosen)
        if len(chosen) + bin(candidates).count("1") < size:
            return None
        if len(chosen) + len(set(self._colour(candidates)[1])) < size:
            return None
        for v in _bits(candidates):
            above = (candidates >> (v + 1)) << (v + 1)
            chosen.append(v)
            found = self._first(chosen, size, above & self.compatible[v])
            chosen.pop()
            if found is not None:
                return found
            candidates = above
            if len(chosen) + bin(candidates).count("1") < size:
                return None
        return None


def _greedy_code(n: int, q: int, t: int, cap: Optional[int]) -> list[MultisetWord]:
    chosen: list[MultisetWord] = []
    for word in enumerate_space(n, q, cap):
        if all(deletion_distance(word, c) > t for c in chosen):
            chosen.append(word)
    return chosen


def max_code_exact(
    n: int,
    q: int,
    t: int,
    cap: Optional[int] = None,
    node_limit: Optional[int] = None,
) -> SearchResult:
    """Largest t-deletion-correcting code in S_{n,q} by exhaustive search.

    Args:
        n: Cardinality
        q: Alphabet size
        t: Deletions to correct
        cap: Largest space searched exactly (default: DEFAULT_SEARCH_CAP words)
        node_limit: Optional bound on search tree nodes

    Returns:
        SearchResult; exact is False when the space exceeds the cap (a first-fit
        code in rank order is returned) or the node limit cut the search short

    Raises:
        ParameterError: If the parameters are out of range
    """
    if n < 0 or q < 1 or t < 0:
        raise ParameterError(f"search needs n >= 0, q >= 1, t >= 0; got n={n}, q={q}, t={t}")
    limit = DEFAULT_SEARCH_CAP if cap is None else cap
    total = space_size(n, q)
    if total > limit:
        logger.warning(f"|S_{{{n},{q}}}| = {total} exceeds the search cap {limit}; result is inexact")
        words = _greedy_code(n, q, t, None)
        return SearchResult(n, q, t, len(words), ExplicitCode(tuple(words), t), False, 0)

    words = enumerate_space(n, q, limit)
    conflicts = _conflict_matrix(words, t)
    compatible = ~conflicts
    np.fill_diagonal(compatible, False)
    # dense conflict vertices take the low bits, so they are coloured first
    degree_order = sorted(range(total), key=lambda i: (-int(conflicts[i].sum()), i))
    everyone = (1 << total) - 1

    search = _CliqueSearch(_bitsets(compatible, degree_order), node_limit)
    exact = True
    try:
        best = [degree_order[p] for p in search.maximum(everyone)]
    except _NodeLimitReached:
        logger.warning(f"node limit {node_limit} reached at n={n}, q={q}, t={t}; result is inexact")
        best = [degree_order[p] for p in search.best]
        exact = False

    nodes = search.nodes
    # any single word is a code
    members = sorted(best) or [0]
    if exact:
        canonical = _CliqueSearch(_bitsets(compatible, range(total)), None)
        found = canonical.first_of_size(len(members), everyone)
        assert found is not None
        members = found
        nodes += canonical.nodes

    witness = ExplicitCode(tuple(words[i] for i in members), t)
    logger.debug(f"S_{q}({n},{t}) {'=' if exact else '>='} {len(members)} after {nodes} nodes")
    return SearchResult(n, q, t, len(members), witness, exact, nodes)


@dataclass(frozen=True)
class VerifyReport:
    """Both verdicts on whether a list of words corrects t deletions."""

    size: int
    t: int
    min_distance: Optional[int]
    distance_ok: bool
    outputs_ok: bool

    @property
    def agree(self) -> bool:
        return self.distance_ok == self.outputs_ok

    @property
    def passed(self) -> bool:
        return self.distance_ok and self.outputs_ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "t": self.t,
            "min_distance": self.min_distance,
            "distance_ok": self.distance_ok,
            "outputs_ok": self.outputs_ok,
            "agree": self.agree,
            "passed": self.passed,
        }


def verify_code(
    code: Union[ExplicitCode, Sequence[MultisetWord]], t: Optional[int] = None, cap: Optional[int] = None
) -> VerifyReport:
    """Check a code by minimum distance and by pairwise disjoint output sets.

    Args:
        code: An ExplicitCode, or a plain list of words (repeats allowed)
        t: Deletions to correct (default: the ExplicitCode's t)
        cap: Pattern cap per codeword for the output listing
    """
    if isinstance(code, ExplicitCode):
        words = list(code.words)
        t = code.t if t is None else t
    else:
        words = list(code)
        if t is None:
            raise ParameterError("t is required when verifying a list of words")
    d = minimum_distance(words)
    distance_ok = d is None or d >= t + 1
    outputs = [_outputs(w, t, cap) for w in words]
    outputs_ok = all(a.isdisjoint(b) for a, b in combinations(outputs, 2))
    report = VerifyReport(len(words), t, d, distance_ok, outputs_ok)
    if not report.agree:
        logger.error(f"distance and output verdicts disagree for t={t}: {report.to_dict()}")
    return report
