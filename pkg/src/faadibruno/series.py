"""Derivative jets and the two ways of composing them.

A :class:`Jet` of order ``n`` at ``x0`` holds ``h(x0), h'(x0), ..., h^(n)(x0)``.
Scalars are either ``Fraction``/``int`` (exact) or ``float``; a jet should
not mix the two.

``compose_faa`` applies the partition-indexed chain rule using the coefficient
table. ``compose_series`` knows nothing about partitions: it substitutes the
Taylor polynomial of ``g - g(x0)`` into that of ``f`` and is kept as the
oracle for the first.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .coefficients import CoeffTable, table
from .errors import DomainError, InvalidArgument

Scalar = Union[int, Fraction, float]


@dataclass(frozen=True)
class Jet:
    order: int
    base_point: Scalar
    derivs: tuple

    def __post_init__(self):
        derivs = tuple(self.derivs)
        object.__setattr__(self, "derivs", derivs)
        if len(derivs) != self.order + 1:
            raise InvalidArgument(
                f"a jet of order {self.order} needs {self.order + 1} values, got {len(derivs)}"
            )

    @property
    def value(self) -> Scalar:
        return self.derivs[0]

    def __getitem__(self, m):
        return self.derivs[m]

    def __len__(self):
        return len(self.derivs)

    @classmethod
    def constant(cls, c: Scalar, at: Scalar, order: int) -> "Jet":
        zero = c * 0
        return cls(order, at, (c,) + (zero,) * order)

    @classmethod
    def identity(cls, at: Scalar, order: int) -> "Jet":
        zero, one = at * 0, at * 0 + 1
        tail = (one,) + (zero,) * (order - 1) if order else ()
        return cls(order, at, (at,) + tail)

    def to_float(self) -> "Jet":
        return Jet(self.order, float(self.base_point), tuple(float(d) for d in self.derivs))


def _check_pair(a: Jet, b: Jet) -> None:
    if a.order != b.order:
        raise InvalidArgument(f"jet orders differ: {a.order} != {b.order}")
    if a.base_point != b.base_point:
        raise InvalidArgument(f"jet base points differ: {a.base_point} != {b.base_point}")


def jet_add(a: Jet, b: Union[Jet, Scalar]) -> Jet:
    if not isinstance(b, Jet):
        return Jet(a.order, a.base_point, (a.derivs[0] + b,) + a.derivs[1:])
    _check_pair(a, b)
    return Jet(a.order, a.base_point, tuple(x + y for x, y in zip(a.derivs, b.derivs)))


def jet_neg(a: Jet) -> Jet:
    return Jet(a.order, a.base_point, tuple(-x for x in a.derivs))


def jet_sub(a: Jet, b: Union[Jet, Scalar]) -> Jet:
    if not isinstance(b, Jet):
        return jet_add(a, -b)
    return jet_add(a, jet_neg(b))


def jet_scale(a: Jet, c: Scalar) -> Jet:
    return Jet(a.order, a.base_point, tuple(c * x for x in a.derivs))


def jet_mul(a: Jet, b: Union[Jet, Scalar]) -> Jet:
    """Leibniz rule ``(ab)^(m) = sum_r binom(m, r) a^(r) b^(m-r)``."""
    if not isinstance(b, Jet):
        return jet_scale(a, b)
    _check_pair(a, b)
    out = []
    for m in range(a.order + 1):
        out.append(sum(math.comb(m, r) * a.derivs[r] * b.derivs[m - r] for r in range(m + 1)))
    return Jet(a.order, a.base_point, tuple(out))


def jet_div(a: Jet, b: Jet) -> Jet:
    """Quotient jet; solves ``a = q * b`` order by order."""
    _check_pair(a, b)
    if b.derivs[0] == 0:
        raise DomainError("division by a jet whose value is zero")
    q = []
    for m in range(a.order + 1):
        acc = a.derivs[m] - sum(math.comb(m, r) * q[r] * b.derivs[m - r] for r in range(m))
        if isinstance(acc, int):
            acc = Fraction(acc)
        q.append(acc / b.derivs[0])
    return Jet(a.order, a.base_point, tuple(q))


def jet_pow(a: Jet, e: int) -> Jet:
    """``a ** e`` for a nonnegative integer ``e`` by repeated multiplication."""
    if not isinstance(e, int) or e < 0:
        raise InvalidArgument(f"exponent must be a nonnegative integer, got {e!r}")
    result = Jet.constant(a.derivs[0] * 0 + 1, a.base_point, a.order)
    for _ in range(e):
        result = jet_mul(result, a)
    return result


def _check_composable(f_at_g: Jet, g_at_x: Jet) -> None:
    if f_at_g.order != g_at_x.order:
        raise InvalidArgument(f"jet orders differ: {f_at_g.order} != {g_at_x.order}")
    if f_at_g.base_point != g_at_x.derivs[0]:
        raise InvalidArgument(
            f"outer jet is taken at {f_at_g.base_point}, inner value is {g_at_x.derivs[0]}"
        )


def compose_faa(
    f_at_g: Jet,
    g_at_x: Jet,
    rows: Optional[Mapping[int, CoeffTable]] = None,
    counter: Optional[Counter] = None,
) -> Jet:
    """Jet of ``f o g`` at ``g_at_x.base_point``.

    Derivative ``m >= 1`` is ``sum_k C(m, k) f^(j)(g) g^(k_1) ... g^(k_j)``
    over partitions ``k`` of ``m``. ``rows`` may supply precomputed
    coefficient tables keyed by ``m``; ``counter[m]`` is incremented once per
    coefficient term used.
    """
    _check_composable(f_at_g, g_at_x)
    f, g = f_at_g.derivs, g_at_x.derivs
    out = [f[0]]
    for m in range(1, f_at_g.order + 1):
        row = rows[m] if rows is not None and m in rows else table(m, cap=max(m, 1))
        acc = f[0] * 0
        for entry in row:
            prod = entry.coefficient * f[entry.partition.j]
            for part in entry.partition.parts:
                prod = prod * g[part]
            acc = acc + prod
            if counter is not None:
                counter[m] += 1
        out.append(acc)
    return Jet(f_at_g.order, g_at_x.base_point, tuple(out))


def _poly_mul_trunc(p: Sequence, q: Sequence, n: int) -> list:
    out = [p[0] * 0] * (n + 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for k, b in enumerate(q[: n + 1 - i]):
            out[i + k] += a * b
    return out


def compose_series(f_at_g: Jet, g_at_x: Jet) -> Jet:
    """Same contract as :func:`compose_faa`, by truncated power-series
    substitution (Horner in the shifted inner series)."""
    _check_composable(f_at_g, g_at_x)
    n = f_at_g.order
    facts = [math.factorial(m) for m in range(n + 1)]
    exact = not any(isinstance(v, float) for v in f_at_g.derivs + g_at_x.derivs)

    def taylor(d, m):
        return Fraction(d) / facts[m] if exact else d / facts[m]

    fa = [taylor(f_at_g.derivs[m], m) for m in range(n + 1)]
    gb = [taylor(g_at_x.derivs[m], m) for m in range(n + 1)]
    gb[0] = gb[0] * 0
    acc = [fa[n]] + [fa[n] * 0] * n
    for m in range(n - 1, -1, -1):
        acc = _poly_mul_trunc(acc, gb, n)
        acc[0] += fa[m]
    return Jet(n, g_at_x.base_point, tuple(acc[m] * facts[m] for m in range(n + 1)))


# -- elementary functions ----------------------------------------------------


def _is_exact(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _falling(r, m: int):
    out = r * 0 + 1
    for i in range(m):
        out = out * (r - i)
    return out


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _power_value(x: Scalar, r) -> Scalar:
    """``x ** r`` for the power/sqrt jets; exact only when ``r`` is an integer
    or a half-integer at a perfect square."""
    if _is_exact(x):
        r = Fraction(r)
        if r.denominator == 1:
            if x == 0 and r < 0:
                raise DomainError(f"x**{r} is undefined at 0")
            return Fraction(x) ** int(r)
        if r.denominator == 2:
            root = _exact_sqrt(Fraction(x))
            if root is None:
                raise DomainError(f"sqrt({x}) is irrational; use float mode")
            return root ** int(2 * r)
        raise DomainError(f"x**{r} has no exact rational value at {x}; use float mode")
    if x < 0 and not float(r).is_integer():
        raise DomainError(f"x**{r} is not real at {x}")
    if x == 0 and r < 0:
        raise DomainError(f"x**{r} is undefined at 0")
    return float(x) ** float(r)


ELEMENTARY = ("exp", "log", "sin", "cos", "sqrt", "power")


def elementary_jet(kind: str, at: Scalar, order: int, exponent=None) -> Jet:
    """Derivatives ``0..order`` of an elementary function at ``at``.

    Exact (rational) input yields exact output where every derivative is
    rational: ``exp`` at 0, ``log`` at 1, ``sin``/``cos`` at 0,
    ``sqrt`` at perfect squares, integer powers. Anything else raises
    :class:`DomainError` rather than rounding.
    """
    if not isinstance(order, int) or order < 0:
        raise InvalidArgument(f"order must be a nonnegative integer, got {order!r}")
    exact = _is_exact(at)
    if exact:
        at = Fraction(at)
    if kind == "exp":
        if exact:
            if at != 0:
                raise DomainError(f"exp({at}) is irrational; use float mode")
            value = Fraction(1)
        else:
            value = math.exp(at)
        derivs = (value,) * (order + 1)
    elif kind == "log":
        if at <= 0:
            raise DomainError(f"log is undefined at {at}")
        if exact:
            if at != 1:
                raise DomainError(f"log({at}) is irrational; use float mode")
            value = Fraction(0)
        else:
            value = math.log(at)
        # d^j log = (-1)^(j-1) (j-1)! / x^j
        derivs = (value,) + tuple(
            (-1) ** (j - 1) * math.factorial(j - 1) / at**j for j in range(1, order + 1)
        )
    elif kind in ("sin", "cos"):
        if exact:
            if at != 0:
                raise DomainError(f"{kind}({at}) is irrational; use float mode")
            s, c = Fraction(0), Fraction(1)
        else:
            s, c = math.sin(at), math.cos(at)
        cycle = (s, c, -s, -c) if kind == "sin" else (c, -s, -c, s)
        derivs = tuple(cycle[m % 4] for m in range(order + 1))
    elif kind in ("sqrt", "power"):
        r = Fraction(1, 2) if kind == "sqrt" else exponent
        if r is None:
            raise InvalidArgument("power jet needs an exponent")
        if kind == "sqrt" and (at < 0 or (at == 0 and order > 0)):
            raise DomainError(f"sqrt is not differentiable at {at}")
        if not exact:
            r = float(r)
        derivs = []
        for m in range(order + 1):
            coef = _falling(r, m)
            if coef == 0:
                derivs.append(coef * 1)
                continue
            derivs.append(coef * _power_value(at, r - m))
        derivs = tuple(derivs)
    else:
        raise InvalidArgument(f"unknown elementary function {kind!r}")
    return Jet(order, at, derivs)
