"""Cross effects of univariate series models and degree detection."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .models import FunctorKind, hilbert_cr2, hilbert_series
from .reports import ReportDocument, Timer, compare, make_report
from .series import DomainError, Monomial, Series, UsageError, substitute


@dataclass(frozen=True)
class CrossEffect:
    base: Series
    arity: int
    value: Series

    def is_multireduced(self) -> bool:
        return all(self.value.set_zero(i).is_zero() for i in range(self.arity))


def _check(f: Series, m: int) -> None:
    if m < 1:
        raise UsageError("cross effect arity must be at least 1")
    if f.num_vars != 1:
        raise UsageError("cross effects are taken of univariate series")
    if not f.is_reduced():
        raise DomainError("cross effects need a reduced series")


def cross_effect_recursive(f: Series, m: int) -> CrossEffect:
    """``cr_m f`` by unwinding the two-variable splitting
    ``cr_{j-1}(x1+x2, x3, ...) = cr_j(x1, x2, ...) + cr_{j-1}(x1, x3, ...) + cr_{j-1}(x2, x3, ...)``."""
    _check(f, m)
    cr = f
    for j in range(2, m + 1):
        ring = [Series.variable(i, j, f.order) for i in range(j)]
        rest = ring[2:]
        cr = (substitute(cr, [ring[0] + ring[1]] + rest)
              - substitute(cr, [ring[0]] + rest)
              - substitute(cr, [ring[1]] + rest))
    return CrossEffect(f, m, cr)


def cross_effect_inclusion_exclusion(f: Series, m: int) -> CrossEffect:
    """``sum over nonempty S of (-1)**(m-|S|) f(sum_{i in S} x_i)``."""
    _check(f, m)
    total: dict[Monomial, Fraction] = {}
    for size in range(1, m + 1):
        sign = -1 if (m - size) % 2 else 1
        for subset in combinations(range(m), size):
            for mono, c in _expand_on_subset(f, subset, m).items():
                total[mono] = total.get(mono, 0) + sign * c
    return CrossEffect(f, m, Series(m, f.order, total))


def _expand_on_subset(f: Series, subset: tuple[int, ...], m: int) -> dict[Monomial, Fraction]:
    # f(sum_{i in subset} x_i) by the multinomial theorem
    out: dict[Monomial, Fraction] = {}
    for mono, c in f.items():
        k = mono.x[0]
        for parts in _compositions(k, len(subset)):
            x = [0] * m
            weight = factorial(k)
            for i, e in zip(subset, parts):
                x[i] = e
                weight //= factorial(e)
            key = Monomial(tuple(x), mono.q)
            out[key] = out.get(key, 0) + weight * c
    return out


def _compositions(k: int, parts: int):
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def cross_effect(f: Series, m: int) -> CrossEffect:
    """Fast path: only monomials involving every variable survive the
    alternating subset sum, each with its multinomial weight."""
    _check(f, m)
    terms: dict[Monomial, Fraction] = {}
    for mono, c in f.items():
        k = mono.x[0]
        if k < m:
            continue
        for parts in _compositions(k - m, m):
            e = tuple(p + 1 for p in parts)
            weight = factorial(k)
            for p in e:
                weight //= factorial(p)
            key = Monomial(e, mono.q)
            terms[key] = terms.get(key, 0) + weight * c
    return CrossEffect(f, m, Series(m, f.order, terms))


def is_degree_n(f: Series, n: int, order: int | None = None) -> bool:
    """True iff ``cr_{n+1} f`` vanishes through total degree ``order``."""
    if order is None:
        order = f.order
    if order > f.order:
        raise UsageError(f"order {order} exceeds the truncation {f.order}")
    return cross_effect(f.truncate(order), n + 1).value.is_zero()


def multilinear_part(f: Series, n: int) -> Fraction:
    """Coefficient of ``x_1 x_2 ... x_n`` in ``cr_n f`` (equals ``n! a_n``)."""
    if n > f.order:
        raise UsageError(f"n = {n} exceeds the truncation {f.order}")
    return cross_effect(f, n).value.coefficient(Monomial((1,) * n, 0))


def cr2_structural_check(kind: FunctorKind, d_x: int, d_y: int, order: int) -> ReportDocument:
    """Bigraded Hilbert model: inclusion-exclusion ``cr_2`` against the
    structural right-hand side of the kind's defining equation."""
    timer = Timer()
    fx = hilbert_series(kind, [d_x, 0], order)
    fy = hilbert_series(kind, [0, d_y], order)
    fxy = hilbert_series(kind, [d_x, d_y], order)
    tx = hilbert_series(FunctorKind.geometric(), [d_x, 0], order)
    ty = hilbert_series(FunctorKind.geometric(), [0, d_y], order)
    measured = fxy - fx - fy
    structural = hilbert_cr2(kind, fx, fy, fxy, tx, ty)
    w = compare(structural, measured, order, "cr2")
    return make_report("cr2-structural", {"kind": kind, "d_x": d_x, "d_y": d_y}, order, w, timer)
