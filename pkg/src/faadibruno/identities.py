"""Counting identities satisfied by the coefficient table.

Feeding special ``f`` and ``g`` into the chain rule turns it into exact
integer identities: ``log`` over ``exp`` collapses to an alternating sum that
vanishes, ``x**n`` over ``exp`` gives ``n**n``, and ``exp`` over ``exp`` gives
the sum of a whole row (a Bell number).
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .coefficients import closed_form, column_multiplier, table, table_by_length
from .errors import InvalidArgument
from .partitions import DEFAULT_CAP, Partition, enumerate_partitions

Number = Union[int, Fraction]


@dataclass(frozen=True)
class IdentityReport:
    n: int
    name: str
    expected: Number
    computed: Number

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "name": self.name,
            "expected": str(self.expected),
            "computed": str(self.computed),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def stirling_sum(n: int, j: int, cap: int = DEFAULT_CAP) -> int:
    """Sum of the coefficients over partitions of ``n`` with ``j`` parts."""
    return table_by_length(n, j, cap).total()


def _stirling_row(n: int, cap: int) -> list[int]:
    row = [0] * (n + 1)
    for e in table(n, cap):
        row[e.partition.j] += e.coefficient
    return row


def verify_log_exp(n: int, cap: int = DEFAULT_CAP) -> IdentityReport:
    """``sum_j (-1)^(j-1) (j-1)! S_j = 0`` for ``n >= 2``."""
    if not isinstance(n, int) or n < 2:
        raise InvalidArgument(f"the log/exp identity needs n >= 2, got {n!r}")
    row = _stirling_row(n, cap)
    computed = sum((-1) ** (j - 1) * math.factorial(j - 1) * row[j] for j in range(1, n + 1))
    return IdentityReport(n, "log_exp", 0, computed)


def verify_power(n: int, cap: int = DEFAULT_CAP) -> IdentityReport:
    """``sum_j binom(n, j) j! S_j = n**n``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"n must be a positive integer, got {n!r}")
    row = _stirling_row(n, cap)
    computed = sum(math.comb(n, j) * math.factorial(j) * row[j] for j in range(1, n + 1))
    return IdentityReport(n, "power", n**n, computed)


def bell_total(n: int, cap: int = DEFAULT_CAP) -> int:
    """Sum of every coefficient in row ``n``."""
    return table(n, cap).total()


def bell_triangle(n: int) -> list[int]:
    """Bell numbers ``B_0..B_n`` from the Bell (Aitken) triangle; shares
    nothing with the coefficient engine."""
    bells = [1]
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        bells.append(row[0])
    return bells


def verify_bell(n: int, cap: int = DEFAULT_CAP) -> IdentityReport:
    return IdentityReport(n, "bell_total", bell_triangle(n)[n], bell_total(n, cap))


def verify_column_multipliers(n_max: int, ell_max: int = 6) -> list[IdentityReport]:
    """Compare the column shortcut to the closed form for every core with
    parts >= 2 and size <= ``n_max``."""
    reports = []
    for m in range(2, n_max + 1):
        for k in enumerate_partitions(m):
            if min(k.parts) < 2:
                continue
            for ell in range(ell_max + 1):
                reports.append(
                    IdentityReport(
                        m + ell,
                        f"column{k}+1^{ell}",
                        closed_form(k.extend_ones(ell)),
                        column_multiplier(k, ell),
                    )
                )
    return reports


@dataclass(frozen=True)
class Coincidence:
    """Partitions of the same ``n`` whose columns agree for ``ell = 0..depth``."""

    n: int
    partitions: tuple[Partition, ...]
    column: tuple[int, ...]

    @property
    def coefficient(self) -> int:
        return self.column[0]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "partitions": [list(k.parts) for k in self.partitions],
            "column": [str(c) for c in self.column],
        }


@dataclass(frozen=True)
class ColumnSearch:
    pairs: tuple[Coincidence, ...]
    # groups of three or more; recorded as observations, nothing is asserted about them
    groups: tuple[Coincidence, ...]

    def to_dict(self) -> dict:
        return {
            "pairs": [c.to_dict() for c in self.pairs],
            "groups": [c.to_dict() for c in self.groups],
        }


def _column(k: Partition, depth: int) -> tuple[int, ...]:
    return tuple(closed_form(k.extend_ones(ell), cap=k.n + depth) for ell in range(depth + 1))


def find_coinciding_columns(n_max: int, depth: int = 4, cap: int = DEFAULT_CAP) -> ColumnSearch:
    """Search rows ``1..n_max`` for distinct partitions with equal
    coefficients whose columns (append ``ell`` ones) stay equal up to
    ``depth``."""
    if not isinstance(n_max, int) or n_max < 1 or n_max > cap:
        raise InvalidArgument(f"n_max must be in 1..{cap}, got {n_max!r}")
    pairs, groups = [], []
    for n in range(1, n_max + 1):
        buckets = defaultdict(list)
        for e in table(n, cap):
            buckets[e.coefficient].append(e.partition)
        for same in buckets.values():
            if len(same) < 2:
                continue
            by_column = defaultdict(list)
            for k in same:
                by_column[_column(k, depth)].append(k)
            for column, members in by_column.items():
                for a in range(len(members)):
                    for b in range(a + 1, len(members)):
                        pairs.append(Coincidence(n, (members[a], members[b]), column))
                if len(members) >= 3:
                    groups.append(Coincidence(n, tuple(members), column))
    return ColumnSearch(tuple(pairs), tuple(groups))
