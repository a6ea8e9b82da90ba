"""Partition-indexed chain-rule coefficients.

For a partition ``k`` of ``n`` with ``j`` parts, the coefficient of
``f^(j)(g) * g^(k_1) * ... * g^(k_j)`` in ``(f o g)^(n)`` is

    C(n, k) = n! / (k_1! ... k_j!) / prod_i N(k, i)!

where ``N(k, i)`` counts the parts equal to ``i``. Three independent routes
to the same integers live here: the closed form, the anti-differentiation
recursion over ``n``, and the classical exponent (b-form) expression.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgument
from .partitions import (
    DEFAULT_CAP,
    Partition,
    decrement,
    enumerate_by_length,
    enumerate_partitions,
    multiplicity,
)


@dataclass(frozen=True)
class CoeffEntry:
    partition: Partition
    coefficient: int

    @property
    def f_order(self) -> int:
        return self.partition.j

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition.parts),
            "j": self.partition.j,
            "coeff": str(self.coefficient),
        }


@dataclass(frozen=True)
class BForm:
    """Classical exponent encoding: ``exponents[i-1]`` is the number of
    parts equal to ``i``."""

    n: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidArgument(f"n must be a positive integer, got {self.n!r}")
        if len(exps) != self.n:
            raise InvalidArgument(f"expected {self.n} exponents, got {len(exps)}")
        if any(not isinstance(b, int) or b < 0 for b in exps):
            raise InvalidArgument(f"exponents must be nonnegative integers: {exps!r}")
        weight = sum(i * b for i, b in enumerate(exps, start=1))
        if weight != self.n:
            raise InvalidArgument(f"sum of i*b_i is {weight}, expected {self.n}")

    @property
    def j(self) -> int:
        return sum(self.exponents)


@dataclass(frozen=True)
class CoeffTable:
    n: int
    entries: tuple[CoeffEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def as_dict(self) -> dict[Partition, int]:
        return {e.partition: e.coefficient for e in self.entries}

    def coefficient(self, k: Partition) -> int:
        for e in self.entries:
            if e.partition == k:
                return e.coefficient
        raise KeyError(k)

    def total(self) -> int:
        return sum(e.coefficient for e in self.entries)

    def to_dict(self) -> dict:
        return {"n": self.n, "entries": [e.to_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_tsv(self, header: bool = True) -> str:
        lines = ["partition\tj\tcoeff"] if header else []
        for e in self.entries:
            parts = ",".join(map(str, e.partition.parts))
            lines.append(f"{parts}\t{e.partition.j}\t{e.coefficient}")
        return "\n".join(lines) + "\n"


def _factorials(n: int) -> list[int]:
    facts = [1]
    for m in range(1, n + 1):
        facts.append(facts[-1] * m)
    return facts


def multinomial(n: int, k: Partition) -> int:
    """``n! / (k_1! ... k_j!)``."""
    if k.n != n:
        raise InvalidArgument(f"|k| = {k.n} does not match n = {n}")
    return _multinomial(k, _factorials(n))


def _multinomial(k: Partition, facts: list[int]) -> int:
    denom = 1
    for p in k.parts:
        denom *= facts[p]
    q, r = divmod(facts[k.n], denom)
    assert r == 0, f"multinomial for {k} is not integral"
    return q


def _closed_form(k: Partition, facts: list[int]) -> int:
    denom = 1
    for mult in Counter(k.parts).values():
        denom *= facts[mult]
    q, r = divmod(_multinomial(k, facts), denom)
    assert r == 0, f"closed form for {k} is not integral"
    return q


def closed_form(k: Partition, cap: int = DEFAULT_CAP) -> int:
    """The coefficient ``C(n, k)`` via the multinomial over multiplicity
    factorials."""
    if k.n < 1 or k.n > cap:
        raise InvalidArgument(f"|k| = {k.n} outside 1..{cap}")
    return _closed_form(k, _factorials(k.n))


def table(n: int, cap: int = DEFAULT_CAP) -> CoeffTable:
    """Every coefficient of the ``n``-th derivative, in partition
    enumeration order."""
    facts = _factorials(n) if isinstance(n, int) and n >= 0 else []
    entries = tuple(
        CoeffEntry(k, _closed_form(k, facts)) for k in enumerate_partitions(n, cap)
    )
    return CoeffTable(n, entries)


def table_by_length(n: int, j: int, cap: int = DEFAULT_CAP) -> CoeffTable:
    facts = _factorials(n) if isinstance(n, int) and n >= 0 else []
    entries = tuple(
        CoeffEntry(k, _closed_form(k, facts)) for k in enumerate_by_length(n, j, cap)
    )
    return CoeffTable(n, entries)


# -- recursion ---------------------------------------------------------------


@dataclass(frozen=True)
class RecursionTerm:
    """One summand of the recursion: position ``i`` contributes
    ``weight * previous`` where ``previous`` is the coefficient of
    ``k - e_i`` one order lower."""

    position: int
    predecessor: Partition
    weight: Fraction
    previous: int

    @property
    def contribution(self) -> Fraction:
        return self.weight * self.previous


def recursion_terms(k: Partition, previous: dict[Partition, int]) -> list[RecursionTerm]:
    """The ``j`` literal summands producing ``C(n, k)`` from row ``n - 1``.

    The weight at position ``i`` is ``N(k - e_i, k_i - 1) / N(k, k_i)``; when
    ``k_i == 1`` the numerator is taken as 1 (the factor came from raising the
    order of ``f`` rather than differentiating a ``g`` factor).
    """
    terms = []
    for i, part in enumerate(k.parts, start=1):
        pred = decrement(k, i)
        num = 1 if part == 1 else multiplicity(pred, part - 1)
        weight = Fraction(num, multiplicity(k, part))
        terms.append(RecursionTerm(i, pred, weight, previous[pred]))
    return terms


def _recursion_value(k: Partition, previous: dict[Partition, int]) -> Fraction:
    return sum((t.contribution for t in recursion_terms(k, previous)), Fraction(0))


def _recursion_value_grouped(k: Partition, previous: dict[Partition, int]) -> Fraction:
    # equal parts give identical summands; N(k, v) copies of weight 1/N(k, v)
    total = Fraction(0)
    for v in sorted(set(k.parts), reverse=True):
        pos = k.parts.index(v) + 1
        pred = decrement(k, pos)
        num = 1 if v == 1 else multiplicity(pred, v - 1)
        total += num * previous[pred]
    return total


def recursion_rows(n: int, cap: int = DEFAULT_CAP, grouped: bool = False) -> list[CoeffTable]:
    """Rows ``1..n`` built from ``C(1, (1,)) = 1`` by the recursion alone."""
    if not isinstance(n, int) or n < 1 or n > cap:
        raise InvalidArgument(f"n must be in 1..{cap}, got {n!r}")
    step = _recursion_value_grouped if grouped else _recursion_value
    rows = [CoeffTable(1, (CoeffEntry(Partition((1,)), 1),))]
    previous = rows[0].as_dict()
    for m in range(2, n + 1):
        entries = []
        for k in enumerate_partitions(m, cap):
            value = step(k, previous)
            assert value.denominator == 1, f"recursion gave {value} for {k}"
            entries.append(CoeffEntry(k, value.numerator))
        row = CoeffTable(m, tuple(entries))
        rows.append(row)
        previous = row.as_dict()
    return rows


def recursion_table(n: int, cap: int = DEFAULT_CAP, grouped: bool = False) -> CoeffTable:
    """Row ``n`` computed purely by the recursion (no closed form)."""
    return recursion_rows(n, cap, grouped)[-1]


# -- classical exponent form -------------------------------------------------


def to_bform(k: Partition) -> BForm:
    counts = Counter(k.parts)
    return BForm(k.n, tuple(counts.get(i, 0) for i in range(1, k.n + 1)))


def from_bform(b: BForm) -> Partition:
    if not isinstance(b, BForm):
        raise InvalidArgument(f"expected a BForm, got {type(b).__name__}")
    parts = []
    for i in range(b.n, 0, -1):
        parts.extend([i] * b.exponents[i - 1])
    return Partition(tuple(parts))


def classical_coefficient(b: BForm) -> int:
    """``n! / (b_1! ... b_n!) * prod_i (1/i!)^b_i``, computed over the
    rationals and asserted integral."""
    facts = _factorials(b.n)
    value = Fraction(facts[b.n])
    for i, bi in enumerate(b.exponents, start=1):
        value /= facts[bi]
        value /= Fraction(facts[i]) ** bi
    assert value.denominator == 1, f"classical coefficient {value} is not integral"
    return value.numerator


# -- columns of the table ----------------------------------------------------


def column_multiplier(k: Partition, ell: int) -> int:
    """Coefficient of ``k`` extended by ``ell`` trailing ones, obtained as
    ``C(n, k) * binom(n + ell, ell)``; only valid when every part is >= 2."""
    if not isinstance(ell, int) or ell < 0:
        raise InvalidArgument(f"ell must be a nonnegative integer, got {ell!r}")
    if k.j == 0 or min(k.parts) < 2:
        raise InvalidArgument(f"every part must be >= 2, got {k}")
    return closed_form(k) * math.comb(k.n + ell, ell)


def max_coefficient(n: int, cap: int = DEFAULT_CAP) -> CoeffEntry:
    """Entry with the largest coefficient; the earliest in enumeration order
    wins ties."""
    best = None
    for e in table(n, cap):
        if best is None or e.coefficient > best.coefficient:
            best = e
    return best
