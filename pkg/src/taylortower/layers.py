"""Taylor-tower layers: closed forms for the geometric, exponential and
logarithmic classes, and the differential recurrence ``A_k`` for type f_n.

For type f_n the table holds the differentials ``A_k`` (before taking
symmetric-group orbits), not the layers ``D_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Mapping

from .lie import witt
from .models import FunctorKind
from .series import DomainError, Series, UsageError

Multiplicity = Callable[[int, int], int]


def falling_factorial(k_minus_1: int, s: int) -> int:
    """Number of ordered selections of ``s`` distinct letters out of ``k_minus_1``."""
    if not 0 <= s <= k_minus_1:
        raise UsageError(f"need 0 <= s <= {k_minus_1}, got s = {s}")
    return factorial(k_minus_1) // factorial(k_minus_1 - s)


@dataclass(frozen=True)
class LayerInput:
    d1: Series
    d1_at_ground: Series
    n: int = 1

    def __post_init__(self):
        if any(m.degree for m, _ in self.d1_at_ground.items()):
            raise DomainError("d1_at_ground must be a pure q-polynomial")
        if self.d1.num_vars != self.d1_at_ground.num_vars:
            raise UsageError("d1 and d1_at_ground must share a variable count")
        if self.n < 1:
            raise UsageError("n must be positive")

    @classmethod
    def ones(cls, n: int = 1) -> "LayerInput":
        """``D_1 F(X) = D_1 F(K) = K``: the input of the ground-field computation."""
        one = Series.one(1, 0)
        return cls(one, one, n)

    @classmethod
    def constant(cls, d1: int | Fraction, at_ground: int | Fraction = 1, n: int = 1) -> "LayerInput":
        return cls(Series.constant(d1, 1, 0), Series.constant(at_ground, 1, 0), n)


@dataclass
class LayerTable:
    kind: FunctorKind
    entries: dict[int, Series] = field(default_factory=dict)
    label: str = "layer"

    def __getitem__(self, k: int) -> Series:
        return self.entries[k]

    def at_q(self, value) -> dict[int, Series]:
        return {k: s.at_q(value) for k, s in self.entries.items()}

    def to_json(self) -> dict:
        return {
            "kind": self.kind.tag,
            "n": self.kind.n,
            "label": self.label,
            "entries": {str(k): s.to_json() for k, s in sorted(self.entries.items())},
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "LayerTable":
        kind = FunctorKind(d["kind"], d.get("n"))
        return cls(kind, {int(k): Series.from_json(v) for k, v in d["entries"].items()},
                   d.get("label", "layer"))


def layers_geometric(inp: LayerInput, k_max: int) -> LayerTable:
    """``D_k = (D_1)^{tensor k}``."""
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    entries = {1: inp.d1}
    for k in range(2, k_max + 1):
        entries[k] = entries[k - 1] * inp.d1
    return LayerTable(FunctorKind.geometric(), entries)


def _degree_zero_dimension(inp: LayerInput) -> int:
    if any(m.q for m, _ in inp.d1.items()):
        raise DomainError("d1 must sit in q-degree 0; graded inputs need super-sign conventions")
    d = sum((Fraction(c) for _, c in inp.d1.items()), Fraction(0))
    if d < 0 or d.denominator != 1:
        raise DomainError(f"d1 must have a non-negative integer dimension, got {d}")
    return int(d)


def layers_exponential(inp: LayerInput, k_max: int) -> LayerTable:
    """``D_k = (D_1^{tensor k})_{Sigma_k}``: dimension ``C(d+k-1, k)``."""
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    d = _degree_zero_dimension(inp)
    entries = {k: Series.constant(comb(d + k - 1, k), inp.d1.num_vars, 0)
               for k in range(1, k_max + 1)}
    return LayerTable(FunctorKind.exponential(), entries)


def layers_logarithmic(inp: LayerInput, k_max: int) -> LayerTable:
    """``D_k = Lie(k) tensor_{Sigma_k} D_1^{tensor k} tensor D_1 F(K)``:
    the Witt number times the ground-field series."""
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    d = _degree_zero_dimension(inp)
    entries = {k: inp.d1_at_ground.scale(witt(d, k)) for k in range(1, k_max + 1)}
    return LayerTable(FunctorKind.logarithmic(), entries)


def a_k_recurrence(inp: LayerInput, k_max: int,
                   multiplicity: Multiplicity = falling_factorial) -> LayerTable:
    """Differentials ``A_k`` of a type f_n functor.

    ``A_0 = K``, ``A_1 = D_1``, and for ``k >= 2``::

        A_k = A_{k-1} D_1 + sum_{s=1}^{k-1} q^{s(n-1)} |P(k-1,s)| D_1^s A_{k-s-1} D_1 D_1(K)

    The ``k = 2`` case of this sum is exactly ``D_1 D_1 + q^{n-1} D_1 D_1 D_1(K)``.
    ``multiplicity`` replaces ``|P(k-1, s)|``; it exists for negative controls.
    """
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    d1, g, shift = inp.d1, inp.d1_at_ground, inp.n - 1
    a = {0: Series.one(d1.num_vars, d1.order), 1: d1}
    powers = [Series.one(d1.num_vars, d1.order), d1]
    for k in range(2, k_max + 1):
        powers.append(powers[-1] * d1)
        tail = d1 * g
        total = a[k - 1] * d1
        for s in range(1, k):
            block = (powers[s] * a[k - s - 1]).scale(multiplicity(k - 1, s))
            total = total + (block * tail).shift_q(s * shift)
        a[k] = total
    entries = {k: v for k, v in a.items() if k >= 1}
    return LayerTable(FunctorKind.type_f(inp.n), entries, label="differential")


def leading_coefficient_in_dimension(dimension: Callable[[int], int], k: int) -> Fraction:
    """Leading coefficient of a degree-``k`` polynomial in ``d``, from its values at
    ``d = 0..k`` (``k``-th forward difference over ``k!``)."""
    values = [dimension(d) for d in range(k + 1)]
    for _ in range(k):
        values = [b - a for a, b in zip(values, values[1:])]
    return Fraction(values[0], factorial(k))
