"""The four functor classes as functional equations on reduced power series.

Two models are kept apart on purpose:

* the *analytic* model: univariate rational series such as ``exp(ax) - 1``
  that satisfy a bivariate functional equation, and
* the *Hilbert* model: word-length dimension series of the example functors
  (free commutative, tensor and free Lie algebras) on ``K^d``.

``Sym_{>=1}(K)`` has Hilbert series ``w/(1-w)``, not ``e^w - 1``, so the two
must never be compared directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .lie import plethystic_lie
from .series import DomainError, Monomial, Series, UsageError, geometric_inverse, substitute

EXPONENTIAL = "exponential"
GEOMETRIC = "geometric"
LOGARITHMIC = "logarithmic"
TYPE_F = "type_f"
TAGS = (EXPONENTIAL, GEOMETRIC, LOGARITHMIC, TYPE_F)


class SolverError(ArithmeticError):
    def __init__(self, message: str, monomial: Monomial | None = None,
                 value: Fraction | None = None):
        super().__init__(message)
        self.monomial = monomial
        self.value = value


class UnsupportedModelError(ValueError):
    pass


@dataclass(frozen=True)
class FunctorKind:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown functor kind {self.tag!r}")
        if self.tag == TYPE_F:
            if self.n is None or self.n < 1:
                raise ValueError("type_f needs n >= 1")
        elif self.n is not None:
            raise ValueError(f"{self.tag} takes no n parameter")

    @classmethod
    def exponential(cls) -> "FunctorKind":
        return cls(EXPONENTIAL)

    @classmethod
    def geometric(cls) -> "FunctorKind":
        return cls(GEOMETRIC)

    @classmethod
    def logarithmic(cls) -> "FunctorKind":
        return cls(LOGARITHMIC)

    @classmethod
    def type_f(cls, n: int) -> "FunctorKind":
        return cls(TYPE_F, n)

    @classmethod
    def parse(cls, tag: str, n: int | None = None) -> "FunctorKind":
        tag = tag.strip().lower().replace("-", "_")
        aliases = {"exp": EXPONENTIAL, "geom": GEOMETRIC, "x/(1-x)": GEOMETRIC,
                   "log": LOGARITHMIC, "f": TYPE_F, "typef": TYPE_F, "f_n": TYPE_F}
        tag = aliases.get(tag, tag)
        return cls(tag, n if tag == TYPE_F else None)

    @property
    def spread(self) -> int:
        """The rescaling constant ``2**(n-1)`` of a type-f_n model (1 otherwise)."""
        return 2 ** (self.n - 1) if self.tag == TYPE_F else 1

    def to_json(self) -> dict:
        d = {"kind": self.tag}
        if self.n is not None:
            d["n"] = self.n
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "FunctorKind":
        return cls(d["kind"], d.get("n"))

    def __str__(self) -> str:
        return f"{self.tag}(n={self.n})" if self.n is not None else self.tag


@dataclass(frozen=True)
class ClosedFormParams:
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))


def closed_form_coefficient(kind: FunctorKind, a: Fraction, k: int) -> Fraction:
    a = Fraction(a)
    if k == 0:
        return Fraction(0)
    if kind.tag == EXPONENTIAL:
        return a ** k / factorial(k)
    if kind.tag == GEOMETRIC:
        return a ** k
    if kind.tag == LOGARITHMIC:
        return a ** k / k
    c = kind.spread
    # (1 - x/c)**(-c): coefficient C(c+k-1, k) / c**k
    num = 1
    for j in range(k):
        num *= c + j
    return a ** k * Fraction(num, factorial(k) * c ** k)


def closed_form(kind: FunctorKind, params: ClosedFormParams | Fraction | int = 1,
                order: int = 12) -> Series:
    """Taylor expansion of ``exp(ax)-1``, ``ax/(1-ax)``, ``-log(1-ax)`` or ``f_n(ax)``."""
    if order < 1:
        raise UsageError("order must be at least 1")
    a = params.scale if isinstance(params, ClosedFormParams) else Fraction(params)
    return Series.from_coefficients(
        [closed_form_coefficient(kind, a, k) for k in range(order + 1)], order)


def _scale_of(f: Series) -> Fraction:
    a1 = f.coefficient(1)
    return a1 if a1 else Fraction(1)


def equation_sides(kind: FunctorKind, f: Series, order: int,
                   scale: Fraction | int | None = None) -> tuple[Series, Series]:
    """``(F(x+y), structural decomposition)`` for the kind's defining equation.

    For the logarithmic and type-f_n equations the composite argument is
    conjugated by the scale ``a`` so that ``f(ax)`` solves the equation whose
    ``a = 1`` instance is the displayed one.  ``scale`` defaults to the linear
    coefficient of ``f``.
    """
    if f.num_vars != 1:
        raise UsageError("the analytic model is univariate")
    if not f.is_reduced():
        raise DomainError("functional equations are stated for reduced series")
    if order > f.order:
        raise UsageError(f"order {order} exceeds the truncation {f.order} of the input")
    if order < 1:
        raise UsageError("order must be at least 1")
    a = Fraction(scale) if scale is not None else _scale_of(f)
    f = f.truncate(order)
    x = Series.variable(0, 2, order)
    y = Series.variable(1, 2, order)
    fx = substitute(f, [x])
    fy = substitute(f, [y])
    fxy = substitute(f, [x + y])
    if kind.tag == EXPONENTIAL:
        rhs = fx * fy + fx + fy
    elif kind.tag == GEOMETRIC:
        rhs = fx + fy + 2 * fx * fy + fxy * fx * fy
    elif kind.tag == LOGARITHMIC:
        z = (x * y).scale(a) * geometric_inverse(x.scale(a)) * geometric_inverse(y.scale(a))
        rhs = substitute(f, [z]) + fx + fy
    else:
        c = kind.spread
        z = ((x * y).scale(a / c) * geometric_inverse(x.scale(a / c))
             * geometric_inverse(y.scale(a / c)))
        fz = substitute(f, [z])
        e = fx + fy + fx * fy
        rhs = e + fz + fz * e
    return fxy, rhs


def equation_residual(kind: FunctorKind, f: Series, order: int,
                      scale: Fraction | int | None = None) -> Series:
    """``F(x+y)`` minus the structural side; zero iff ``f`` solves the equation through ``order``."""
    lhs, rhs = equation_sides(kind, f, order, scale)
    return lhs - rhs


def solve_reduced(kind: FunctorKind, a1: Fraction | int, order: int) -> Series:
    """Unique reduced solution with linear coefficient ``a1``, degree by degree.

    At degree ``k`` the unknown ``a_k`` enters the ``x^(k-1) y`` coefficient of
    the residual as ``k * a_k`` and nothing else does, so it is pinned there;
    the remaining degree-``k`` coefficients must then vanish.
    """
    if order < 1:
        raise UsageError("order must be at least 1")
    a1 = Fraction(a1)
    scale = a1 if a1 else Fraction(1)
    coeffs = [Fraction(0), a1]
    for k in range(2, order + 1):
        trial = Series.from_coefficients(coeffs + [Fraction(0)], k)
        r = equation_residual(kind, trial, k, scale).coefficient((k - 1, 1))
        coeffs.append(-r / k)
        f = Series.from_coefficients(coeffs, k)
        bad = equation_residual(kind, f, k, scale).homogeneous_part(k).sorted_terms()
        if bad:
            m, c = bad[0]
            raise SolverError(f"{kind}: inconsistent at degree {k}, residual {c} on {m}", m, c)
    f = Series.from_coefficients(coeffs[: order + 1], order)
    bad = equation_residual(kind, f, order, scale).sorted_terms()
    if bad:
        m, c = bad[0]
        raise SolverError(f"{kind}: residual {c} on {m} after solving", m, c)
    return f


# -- Hilbert model ---------------------------------------------------------------


def hilbert_series(kind: FunctorKind, dims: Sequence[int], order: int) -> Series:
    """Multigraded word-length dimension series of the example functor on
    ``K^{d_1} + ... + K^{d_m}``, one grading variable per summand."""
    m = len(dims)
    if m < 1 or any(d < 0 for d in dims):
        raise UsageError("dimensions must be a non-empty list of non-negative integers")
    ws = [Series.variable(i, m, order) for i in range(m)]
    if kind.tag == EXPONENTIAL:
        prod = Series.one(m, order)
        for w, d in zip(ws, dims):
            prod = prod * geometric_inverse(w) ** d
        return prod - 1
    gen = Series.zero(m, order)
    for w, d in zip(ws, dims):
        gen = gen + w.scale(d)
    if kind.tag == GEOMETRIC:
        return geometric_inverse(gen) - 1
    if kind.tag == LOGARITHMIC:
        return plethystic_lie(gen)
    raise UnsupportedModelError(
        "type_f has no Hilbert model here: it would need super-sign plethysm conventions")


def hilbert_model(kind: FunctorKind, input_dim: int, order: int) -> Series:
    """Word-length Hilbert series of the example functor of ``kind`` on ``K^input_dim``."""
    return hilbert_series(kind, [input_dim], order)


def hilbert_cr2(kind: FunctorKind, fx: Series, fy: Series, fxy: Series,
                tx: Series | None = None, ty: Series | None = None) -> Series:
    """The structural second cross effect dictated by the defining equation."""
    if kind.tag == EXPONENTIAL:
        return fx * fy
    if kind.tag == GEOMETRIC:
        return 2 * fx * fy + fxy * fx * fy
    if kind.tag == LOGARITHMIC:
        return plethystic_lie(tx * ty)
    raise UnsupportedModelError(f"no Hilbert model for {kind}")


def hilbert_equation_sides(kind: FunctorKind, d_x: int, d_y: int, order: int,
                           bigraded: bool = False) -> tuple[Series, Series]:
    """``(F(X v Y), F(X) + F(Y) + structural cr_2)`` in the Hilbert model.

    With ``bigraded`` the two inputs carry separate word-length variables;
    otherwise everything is graded by a single ``w``.
    """
    if bigraded:
        fx = hilbert_series(kind, [d_x, 0], order)
        fy = hilbert_series(kind, [0, d_y], order)
        fxy = hilbert_series(kind, [d_x, d_y], order)
        tx = hilbert_series(FunctorKind.geometric(), [d_x, 0], order)
        ty = hilbert_series(FunctorKind.geometric(), [0, d_y], order)
    else:
        fx = hilbert_model(kind, d_x, order)
        fy = hilbert_model(kind, d_y, order)
        fxy = hilbert_model(kind, d_x + d_y, order)
        tx = hilbert_model(FunctorKind.geometric(), d_x, order)
        ty = hilbert_model(FunctorKind.geometric(), d_y, order)
    return fxy, fx + fy + hilbert_cr2(kind, fx, fy, fxy, tx, ty)
