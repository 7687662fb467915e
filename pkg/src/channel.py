"""Deletion channel simulation and encode -> delete -> decode harnesses.

The exhaustive harness tries every codeword against every deletion pattern of
size <= t. The random harness draws trials from a seeded numpy generator;
trials are generated sequentially, decoded by a thread pool and merged back
in canonical order, so a report depends only on the seed.
"""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Any, Iterator, Optional

import numpy as np

from src.codes import DecodeResult, DeletionCode
from src.config_parser import DEFAULT_PATTERN_CAP
from src.errors import DecodingError, ParameterError, PatternNotContainedError
from src.multiset_core import (
    MultisetWord,
    check_enumeration_cap,
    is_submultiset,
    rank,
    subtract,
)

logger = logging.getLogger(__name__)

#: Bumped whenever the layout of harness reports changes
REPORT_SCHEMA_VERSION = 1


class ChannelMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


@dataclass(frozen=True)
class ChannelConfig:
    """Settings for a channel run.

    Attributes:
        t_max: Maximum deletions per transmission
        mode: exhaustive or random
        seed: Seed for the random generator (random mode)
        trials: Number of transmissions (random mode)
        workers: Decoding threads (random mode)
    """

    t_max: int
    mode: ChannelMode = ChannelMode.RANDOM
    seed: int = 0
    trials: int = 1000
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", ChannelMode(self.mode))
        if self.t_max < 0:
            raise ParameterError(f"t_max must be >= 0, got {self.t_max}")
        if self.trials < 0:
            raise ParameterError(f"trials must be >= 0, got {self.trials}")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned value, got {self.seed}")


def apply_deletions(word: MultisetWord, pattern: MultisetWord) -> MultisetWord:
    """Remove the multiset pattern from word.

    Raises:
        PatternNotContainedError: If pattern is not a sub-multiset of word
    """
    if not is_submultiset(pattern, word):
        raise PatternNotContainedError(f"pattern {pattern.counts} is not contained in {word.counts}")
    return subtract(word, pattern)


def pattern_count(word: MultisetWord, t: int) -> int:
    """Number of sub-multisets of word with at most t elements."""
    # coefficients of prod_i (1 + x + ... + x^{c_i}) up to degree t
    poly = [1] + [0] * t
    for c in word.counts:
        nxt = [0] * (t + 1)
        for degree, coeff in enumerate(poly):
            if coeff:
                for extra in range(min(c, t - degree) + 1):
                    nxt[degree + extra] += coeff
        poly = nxt
    return sum(poly)


def iter_patterns(word: MultisetWord, t: int) -> Iterator[MultisetWord]:
    """Sub-multisets of word of size 0..t, by size then symbol order, no cap."""
    for size in range(min(t, word.n) + 1):
        for symbols in combinations_with_replacement(range(word.q), size):
            counts = [0] * word.q
            for s in symbols:
                counts[s] += 1
            if all(e <= c for e, c in zip(counts, word.counts)):
                yield MultisetWord(tuple(counts))


def all_patterns(word: MultisetWord, t: int, cap: Optional[int] = None) -> list[MultisetWord]:
    """Every deletion pattern E contained in word with |E| <= t, each once.

    Args:
        word: Transmitted word
        t: Maximum pattern size
        cap: Maximum number of patterns (default: DEFAULT_PATTERN_CAP)

    Raises:
        ResourceLimitError: If the pattern count exceeds the cap
    """
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    limit = DEFAULT_PATTERN_CAP if cap is None else cap
    check_enumeration_cap(pattern_count(word, t), limit, f"deletion patterns of {word.counts}")
    return list(iter_patterns(word, t))


@dataclass(frozen=True)
class Failure:
    """A transmission the decoder did not recover."""

    codeword: MultisetWord
    pattern: MultisetWord
    outcome: str
    decoded: Optional[DecodeResult] = None

    def sort_key(self) -> tuple[int, int, int]:
        return rank(self.codeword), self.pattern.n, rank(self.pattern)

    def to_dict(self) -> dict[str, Any]:
        entry: dict[str, Any] = {
            "codeword": list(self.codeword.counts),
            "pattern": list(self.pattern.counts),
            "outcome": self.outcome,
        }
        if self.decoded is not None:
            entry["decoded"] = self.decoded.to_dict()
        return entry


@dataclass(frozen=True)
class RoundTripReport:
    """Outcome of a harness run; failures are sorted canonically."""

    mode: ChannelMode
    code: dict[str, Any]
    t: int
    trials: int
    failures: tuple[Failure, ...] = ()
    seed: Optional[int] = None

    @property
    def successes(self) -> int:
        return self.trials - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        report: dict[str, Any] = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "mode": self.mode.value,
            "code": self.code,
            "t": self.t,
            "trials": self.trials,
            "successes": self.successes,
            "failures": [f.to_dict() for f in self.failures],
        }
        if self.seed is not None:
            report["seed"] = self.seed
        return report

    def to_json(self) -> str:
        """Canonical JSON: sorted keys, no whitespace."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _transmit(code: DeletionCode, codeword: MultisetWord, pattern: MultisetWord) -> Optional[Failure]:
    received = apply_deletions(codeword, pattern)
    try:
        result = code.decode(received)
    except DecodingError as e:
        return Failure(codeword, pattern, type(e).__name__)
    if result.codeword != codeword:
        return Failure(codeword, pattern, "wrong_codeword", result)
    if result.pattern != pattern:
        return Failure(codeword, pattern, "wrong_pattern", result)
    return None


def _sorted(failures: list[Failure]) -> tuple[Failure, ...]:
    return tuple(sorted(failures, key=Failure.sort_key))


def roundtrip_exhaustive(
    code: DeletionCode,
    t: Optional[int] = None,
    cap: Optional[int] = None,
    pattern_cap: Optional[int] = None,
) -> RoundTripReport:
    """Send every codeword through every deletion pattern of size <= t.

    Args:
        code: Code under test
        t: Deletions to try (default: the code's t); may exceed the code's
           capability, in which case the extra patterns show up as failures
        cap: Maximum number of codewords to enumerate
        pattern_cap: Maximum number of patterns per codeword

    Returns:
        RoundTripReport listing every failed (codeword, pattern) pair
    """
    t = code.t if t is None else t
    if not 0 <= t <= code.n:
        raise ParameterError(f"t must lie in [0, n={code.n}], got {t}")
    failures = []
    trials = 0
    for codeword in code.codewords(cap):
        for pattern in all_patterns(codeword, t, pattern_cap):
            trials += 1
            failure = _transmit(code, codeword, pattern)
            if failure is not None:
                failures.append(failure)
    if failures:
        logger.warning(f"{len(failures)} of {trials} transmissions failed to decode")
    logger.debug(f"exhaustive round trip: {trials} transmissions, {len(failures)} failures")
    return RoundTripReport(ChannelMode.EXHAUSTIVE, code.describe(), t, trials, _sorted(failures))


def _draw_trials(code: DeletionCode, cfg: ChannelConfig) -> list[tuple[MultisetWord, MultisetWord]]:
    rng = np.random.default_rng(cfg.seed)
    size = code.size()
    # extra bytes keep the modulo bias negligible for any code size
    width = (size.bit_length() + 7) // 8 + 8
    max_deletions = min(cfg.t_max, code.n)
    trials = []
    for _ in range(cfg.trials):
        index = int.from_bytes(rng.bytes(width), "big") % size
        codeword = code.encode(index)
        deletions = int(rng.integers(0, max_deletions + 1))
        drawn = rng.multivariate_hypergeometric(np.array(codeword.counts, dtype=np.int64), deletions)
        trials.append((codeword, MultisetWord(tuple(int(c) for c in drawn))))
    return trials


def roundtrip_random(code: DeletionCode, cfg: ChannelConfig) -> RoundTripReport:
    """Seeded random transmissions through the deletion channel.

    Each trial picks a uniform message index, a number of deletions uniform
    in [0, min(t_max, n)] and a uniformly random sub-multiset of that size.
    The same seed yields a byte-identical report for any worker count.
    """
    if cfg.t_max > code.n:
        raise ParameterError(f"t_max={cfg.t_max} exceeds the code length n={code.n}")
    if cfg.trials and code.size() == 0:
        raise ParameterError("cannot draw messages from an empty code")
    trials = _draw_trials(code, cfg) if cfg.trials else []
    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        outcomes = list(executor.map(lambda trial: _transmit(code, *trial), trials))
    failures = [f for f in outcomes if f is not None]
    if failures:
        logger.warning(f"{len(failures)} of {len(trials)} random transmissions failed to decode")
    return RoundTripReport(
        ChannelMode.RANDOM, code.describe(), cfg.t_max, len(trials), _sorted(failures), seed=cfg.seed
    )


def run_channel(
    code: DeletionCode, cfg: ChannelConfig, cap: Optional[int] = None, pattern_cap: Optional[int] = None
) -> RoundTripReport:
    """Dispatch on cfg.mode."""
    if cfg.mode is ChannelMode.EXHAUSTIVE:
        return roundtrip_exhaustive(code, cfg.t_max, cap=cap, pattern_cap=pattern_cap)
    return roundtrip_random(code, cfg)


