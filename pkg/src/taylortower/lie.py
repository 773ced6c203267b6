"""Free Lie algebra dimensions: Witt numbers, Lyndon words and plethysm.

Two independent routes to ``dim L_k(K^d)`` live here: the necklace formula
(:func:`witt`) and explicit Lyndon-word generation (:func:`lyndon_count`).
The plethystic operators turn a dimension series ``g`` of a graded space
into the dimension series of the free Lie / free non-unital commutative
algebra on it.  Only q-free or q-even inputs are accepted: odd degrees
would need super-sign conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterator

from .series import DomainError, Series, exp_series, log_series

LYNDON_BUDGET = 10 ** 7


class PlethysmError(DomainError):
    """Input outside the classical (non-super) plethysm range, or non-integral output."""


class BudgetExceeded(ValueError):
    pass


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


@lru_cache(maxsize=None)
def witt(d: int, k: int) -> int:
    """Dimension of the degree-``k`` part of the free Lie algebra on ``d`` generators."""
    if d < 0 or k < 1:
        raise ValueError("witt needs d >= 0 and k >= 1")
    total = sum(mobius(e) * d ** (k // e) for e in divisors(k))
    if total % k:
        raise ArithmeticError(f"necklace sum {total} not divisible by {k}")
    return total // k


def witt_series(d: int, order: int) -> Series:
    return Series.from_coefficients([0] + [witt(d, k) for k in range(1, order + 1)], order)


def lyndon_words(d: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """All Lyndon words of length <= ``max_len`` on letters ``0..d-1``
    (Duval's generation algorithm, lexicographic order)."""
    if d < 1 or max_len < 1:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == d - 1:
            w.pop()


def is_lyndon(word: tuple[int, ...]) -> bool:
    """Strictly smaller than each of its proper rotations."""
    n = len(word)
    return n > 0 and all(word < word[i:] + word[:i] for i in range(1, n))


def lyndon_count(d: int, k: int, budget: int = LYNDON_BUDGET) -> int:
    if d ** k > budget:
        raise BudgetExceeded(f"{d}^{k} words exceeds the enumeration budget {budget}")
    return sum(1 for w in lyndon_words(d, k) if len(w) == k)


def lie_n_dimension(n: int) -> int:
    """``dim Lie(n)``, counted as multilinear Lyndon words on ``n`` distinct letters."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 9:
        # enumeration is n!; beyond this only the closed form is practical
        return factorial(n - 1)
    return sum(1 for w in permutations(range(n)) if is_lyndon(w))


@dataclass
class WittTable:
    alphabet_dim: int
    entries: dict[int, int] = field(default_factory=dict)

    @classmethod
    def build(cls, d: int, k_max: int) -> "WittTable":
        return cls(d, {k: witt(d, k) for k in range(1, k_max + 1)})

    def to_json(self) -> dict:
        return {"d": self.alphabet_dim, "entries": {str(k): v for k, v in sorted(self.entries.items())}}

    def to_tsv(self) -> str:
        lines = ["d\tk\twitt"]
        lines += [f"{self.alphabet_dim}\t{k}\t{v}" for k, v in sorted(self.entries.items())]
        return "\n".join(lines) + "\n"


def _check_plethysm_input(g: Series) -> None:
    if not g.is_reduced():
        raise PlethysmError("plethysm needs a reduced series")
    for m, c in g.items():
        if m.q % 2:
            raise PlethysmError("odd q-degree present; super-sign plethysm is not supported")
        if c < 0 or c.denominator != 1:
            raise PlethysmError(f"plethysm needs non-negative integer dimensions, got {c}")


def _assert_dimensions(s: Series, what: str) -> Series:
    for m, c in s.items():
        if c < 0 or c.denominator != 1:
            raise PlethysmError(f"{what} produced non-dimension coefficient {c} at {m}")
    return s


def plethystic_lie(g: Series, order: int | None = None) -> Series:
    """Dimension series of the free Lie algebra on a space with dimension series ``g``:
    ``sum_m mu(m)/m * (-log(1 - psi^m g))``."""
    _check_plethysm_input(g)
    if order is not None:
        g = g.truncate(order)
    result = Series.zero(g.num_vars, g.order)
    for m in range(1, g.order + 1):
        mu = mobius(m)
        if not mu:
            continue
        gm = g.adams(m)
        if gm.is_zero():
            continue
        result = result - log_series(1 - gm).scale(Fraction(mu, m))
    return _assert_dimensions(result, "plethystic_lie")


def plethystic_sym(g: Series, order: int | None = None) -> Series:
    """Dimension series of the non-unital free commutative algebra on ``g``:
    ``exp(sum_m psi^m g / m) - 1``."""
    _check_plethysm_input(g)
    if order is not None:
        g = g.truncate(order)
    acc = Series.zero(g.num_vars, g.order)
    for m in range(1, g.order + 1):
        acc = acc + g.adams(m).scale(Fraction(1, m))
    return _assert_dimensions(exp_series(acc) - 1, "plethystic_sym")
