"""Upper bounds and exact values for S_q(n, t).

S_q(n, t) is the largest size of a code in S_{n,q} correcting t deletions.
Each bound is a plain function that raises BoundNotApplicableError outside
its regime; evaluate_bounds() and best_upper_bound() turn that into tagged
BoundReport values so a vacuous bound is never selected.
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import Any, Callable, Iterable, Optional

from src.errors import BoundNotApplicableError, ParameterError
from src.multiset_core import MultisetWord, space_size

logger = logging.getLogger(__name__)

NOT_APPLICABLE = "n/a"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_basic(n: int, q: int, t: int) -> None:
    if n < 1 or q < 2 or t < 0:
        raise ParameterError(f"bounds need n >= 1, q >= 2, t >= 0; got n={n}, q={q}, t={t}")


def sphere_packing_bound(n: int, q: int, t: int) -> int:
    """Sphere-packing bound with balls of radius t.

    floor(C(n+q-1, q-1) / C(t+q-1, q-1)), the smallest radius-t ball sitting
    at a vertex of the simplex. This is the radius-t form, a bound for codes
    of minimum distance at least 2t+1; radii beyond n are treated as n.
    """
    _check_basic(n, q, t)
    radius = min(t, n)
    return space_size(n, q) // comb(radius + q - 1, q - 1)


def sphere_packing_distance_bound(n: int, q: int, d: int) -> int:
    """Sphere-packing bound for a code of minimum distance d.

    Uses packing radius r = floor((d-1)/2). A t-deletion-correcting code has
    d >= t+1, so sphere_packing_distance_bound(n, q, t+1) bounds S_q(n, t).
    """
    if d < 1:
        raise ParameterError(f"minimum distance must be >= 1, got {d}")
    return sphere_packing_bound(n, q, (d - 1) // 2)


def projection_bound(n: int, q: int, t: int) -> int:
    """|C| <= |S_{n-t,q}|: each output of size n-t has at most one preimage."""
    _check_basic(n, q, t)
    if t > n:
        raise BoundNotApplicableError(f"projection bound needs t <= n, got t={t}, n={n}")
    return space_size(n - t, q)


def extremal_exact_k1(n: int, q: int) -> int:
    """Exact S_q(n, n-1) = q, attained by the constant-word code."""
    _check_basic(n, q, max(n - 1, 0))
    return q


def extremal_exact_k2_smallq(n: int, q: int) -> int:
    """Exact S_q(n, n-2) = q for q in {2, 3} and n >= 4."""
    if q not in (2, 3) or n < 4:
        raise BoundNotApplicableError(
            f"exact value for t=n-2 holds only for q in {{2,3}} and n >= 4; got n={n}, q={q}"
        )
    return q


def reiman_bound_k2(n: int, q: int) -> int:
    """Reiman-type bound floor(q(n-1)/(n-q)) for t = n-2, meaningful when n > q."""
    if n <= q:
        raise BoundNotApplicableError(f"Reiman-type bound is vacuous for n <= q (n={n}, q={q})")
    return q * (n - 1) // (n - q)


def k3_bound(n: int, q: int) -> int:
    """Bound floor(q^2 (n-2) / ((n-1)-q)) for t = n-3 when n >= q+2."""
    if q < 2 or n < q + 2:
        raise BoundNotApplicableError(f"t=n-3 bound needs q >= 2 and n >= q+2; got n={n}, q={q}")
    return q * q * (n - 2) // (n - 1 - q)


def recursive_puncturing_bound(n: int, q: int, t: int) -> int:
    """S_q(n, t) <= q^(n-t), from F_q(n, k) <= q F_q(n-1, k-1) and F_q(., 1) = q."""
    _check_basic(n, q, t)
    if n - t < 1:
        raise BoundNotApplicableError(f"puncturing bound needs t < n, got t={t}, n={n}")
    return q ** (n - t)


def binary_exact(n: int, t: int) -> int:
    """Exact S_2(n, t) = ceil((n+1)/(t+1)).

    Binary words are determined by their weight and d(S, T) = |w(S) - w(T)|,
    so codeword weights must be pairwise at least t+1 apart; the weights
    0, t+1, 2(t+1), ... reach the maximum, which is also the size of the
    largest congruence class w(S) = a (mod t+1).
    """
    if n < 1 or t < 1:
        raise BoundNotApplicableError(f"binary exact value needs n >= 1, t >= 1; got n={n}, t={t}")
    return n // (t + 1) + 1


def ternary_single_deletion_bounds(n: int) -> tuple[int, int]:
    """Lower and upper bounds on S_3(n, 1).

    The lower bound is the pigeonhole size of the largest sum-mod-3 class,
    ceil(C(n+2, 2) / 3); the upper bound is the projection bound C(n+1, 2).
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return _ceil_div(space_size(n, 3), 3), space_size(n - 1, 3)


def puncture(word: MultisetWord, symbol: int) -> MultisetWord:
    """Remove one copy of symbol; undefined when symbol is absent."""
    if not 0 <= symbol < word.q:
        raise ParameterError(f"symbol {symbol} outside alphabet of size {word.q}")
    if word.counts[symbol] == 0:
        raise ParameterError(f"cannot puncture {word.counts} at absent symbol {symbol}")
    counts = list(word.counts)
    counts[symbol] -= 1
    return MultisetWord(tuple(counts))


def punctured_code(words: Iterable[MultisetWord], symbol: int) -> list[MultisetWord]:
    """Puncture every codeword containing symbol; the others are dropped."""
    return [puncture(w, symbol) for w in words if w.counts[symbol] > 0]


@dataclass(frozen=True)
class BoundReport:
    """Value of one named bound at (n, q, t); value is None when not applicable."""

    name: str
    value: Optional[int]
    applicability: str
    n: int
    q: int
    t: int

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "value": self.value if self.value is not None else NOT_APPLICABLE,
            "applicability": self.applicability,
            "n": self.n,
            "q": self.q,
            "t": self.t,
        }


@dataclass(frozen=True)
class _BoundSpec:
    name: str
    evaluate: Callable[[int, int, int], int]
    applicability: str
    # False for bounds that do not bound S_q(n, t) itself
    selectable: bool = True


def _at_t(required: Callable[[int], int], fn: Callable[[int, int], int]) -> Callable[[int, int, int], int]:
    def evaluate(n: int, q: int, t: int) -> int:
        if t != required(n):
            raise BoundNotApplicableError(f"holds only at t={required(n)}")
        return fn(n, q)

    return evaluate


def _binary(n: int, q: int, t: int) -> int:
    if q != 2:
        raise BoundNotApplicableError("binary alphabet only")
    return binary_exact(n, t)


# Exact values first: ties in best_upper_bound go to the earliest entry.
_BOUNDS: tuple[_BoundSpec, ...] = (
    _BoundSpec("binary_exact", _binary, "q = 2, t >= 1"),
    _BoundSpec("extremal_exact_k1", _at_t(lambda n: n - 1, extremal_exact_k1), "t = n-1"),
    _BoundSpec(
        "extremal_exact_k2_smallq",
        _at_t(lambda n: n - 2, extremal_exact_k2_smallq),
        "t = n-2, q in {2,3}, n >= 4",
    ),
    _BoundSpec("reiman_bound_k2", _at_t(lambda n: n - 2, reiman_bound_k2), "t = n-2, n > q"),
    _BoundSpec("k3_bound", _at_t(lambda n: n - 3, k3_bound), "t = n-3, n >= q+2"),
    _BoundSpec("recursive_puncturing_bound", recursive_puncturing_bound, "t < n"),
    _BoundSpec("projection_bound", projection_bound, "0 <= t <= n"),
    _BoundSpec(
        "sphere_packing_distance_bound",
        lambda n, q, t: sphere_packing_distance_bound(n, q, t + 1),
        "all t; packing radius floor(t/2) from distance t+1",
    ),
    _BoundSpec(
        "sphere_packing_bound",
        sphere_packing_bound,
        "all t; radius-t balls (codes of distance >= 2t+1)",
        selectable=False,
    ),
)


def evaluate_bounds(n: int, q: int, t: int) -> list[BoundReport]:
    """Evaluate every bound at (n, q, t), tagging the inapplicable ones."""
    _check_basic(n, q, t)
    reports = []
    for spec in _BOUNDS:
        try:
            value: Optional[int] = spec.evaluate(n, q, t)
        except BoundNotApplicableError as e:
            logger.debug(f"{spec.name} not applicable at n={n}, q={q}, t={t}: {e}")
            value = None
        reports.append(BoundReport(spec.name, value, spec.applicability, n, q, t))
    return reports


def best_upper_bound(n: int, q: int, t: int) -> BoundReport:
    """Smallest applicable upper bound on S_q(n, t), naming the winner.

    Raises:
        ParameterError: If t > n or the parameters are out of range
    """
    _check_basic(n, q, t)
    if t > n:
        raise ParameterError(f"t must not exceed n (t={t}, n={n})")
    selectable = {spec.name for spec in _BOUNDS if spec.selectable}
    best: Optional[BoundReport] = None
    for report in evaluate_bounds(n, q, t):
        if report.name not in selectable or report.value is None:
            continue
        if best is None or report.value < best.value:  # type: ignore[operator]
            best = report
    assert best is not None  # the projection bound always applies for t <= n
    logger.debug(f"best upper bound at n={n}, q={q}, t={t}: {best.name}={best.value}")
    return best
