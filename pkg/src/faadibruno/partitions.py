"""Integer partitions in canonical (non-increasing) form.

A partition ``k = (k_1, ..., k_j)`` with ``k_1 >= ... >= k_j >= 1`` names the
product ``g^(k_1) * ... * g^(k_j)`` in the higher-order chain rule, so the
partitions of ``n`` index the terms of the ``n``-th derivative of ``f o g``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .errors import InvalidArgument

DEFAULT_CAP = 60


@dataclass(frozen=True, order=True)
class Partition:
    """A canonical multi-index; ``parts`` is stored non-increasing.

    The empty partition (``n == 0``) exists only as the result of
    decrementing ``(1,)``.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise InvalidArgument(f"parts must be positive integers: {parts!r}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidArgument(f"parts must be non-increasing: {parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def j(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def extend_ones(self, ell: int) -> "Partition":
        return Partition(self.parts + (1,) * ell)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class PartitionTally:
    n: int
    total: int
    by_length: dict[int, int] = field(default_factory=dict)


def _check_n(n: int, cap: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"n must be a positive integer, got {n!r}")
    if n > cap:
        raise InvalidArgument(f"n={n} exceeds the enumeration cap {cap}")


def _descending(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, cap: int = DEFAULT_CAP) -> list[Partition]:
    """All partitions of ``n`` in descending lexicographic order,
    ``(n,)`` first and ``(1, ..., 1)`` last."""
    _check_n(n, cap)
    return [Partition(p) for p in _descending(n, n)]


def enumerate_by_length(n: int, j: int, cap: int = DEFAULT_CAP) -> list[Partition]:
    """Partitions of ``n`` with exactly ``j`` parts, in the order of
    :func:`enumerate_partitions`."""
    _check_n(n, cap)
    if not isinstance(j, int) or not 1 <= j <= n:
        raise InvalidArgument(f"need 1 <= j <= n, got j={j!r}, n={n}")
    return [Partition(p) for p in _with_length(n, j, n)]


def _with_length(n: int, j: int, largest: int) -> Iterator[tuple[int, ...]]:
    if j == 0:
        if n == 0:
            yield ()
        return
    # the remaining j-1 parts need at least j-1 units
    for first in range(min(n - (j - 1), largest), 0, -1):
        if first * j < n:
            break
        for rest in _with_length(n - first, j - 1, first):
            yield (first,) + rest


def multiplicity(k: Partition, i: int) -> int:
    """Number of parts of ``k`` equal to ``i``."""
    return sum(1 for p in k.parts if p == i)


def multiplicities(k: Partition) -> Counter:
    return Counter(k.parts)


def count(n: int) -> PartitionTally:
    """Count partitions of ``n``, in total and by number of parts.

    Uses ``p(m, j) = p(m-1, j-1) + p(m-j, j)`` with ``p(0, 0) = 1``. Not
    subject to the enumeration cap since nothing is enumerated.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"n must be a positive integer, got {n!r}")
    p = [[0] * (n + 1) for _ in range(n + 1)]
    p[0][0] = 1
    for m in range(1, n + 1):
        for j in range(1, m + 1):
            p[m][j] = p[m - 1][j - 1] + p[m - j][j]
    by_length = {j: p[n][j] for j in range(1, n + 1)}
    return PartitionTally(n=n, total=sum(by_length.values()), by_length=by_length)


def hardy_ramanujan_estimate(n: int) -> float:
    """Leading Hardy-Ramanujan term ``exp(pi*sqrt(2n/3)) / (4n*sqrt(3))``.

    Returns ``inf`` once the value leaves the binary64 range.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"n must be a positive integer, got {n!r}")
    exponent = math.pi * math.sqrt(2 * n / 3) - math.log(4 * n * math.sqrt(3))
    try:
        return math.exp(exponent)
    except OverflowError:
        return math.inf


def decrement(k: Partition, position: int) -> Partition:
    """Subtract one from the part at 1-based ``position``, dropping it if it
    reaches zero, and re-canonicalize."""
    if not 1 <= position <= k.j:
        raise InvalidArgument(f"position {position} outside 1..{k.j}")
    parts = list(k.parts)
    parts[position - 1] -= 1
    return Partition(tuple(sorted((p for p in parts if p), reverse=True)))
