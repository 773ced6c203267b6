from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from taylortower.series import Monomial, Series

X = Series.variable


def uni(*coeffs, order=None):
    return Series.from_coefficients(list(coeffs), order)


def bivariate(terms, order):
    return Series(2, order, {Monomial(tuple(x), q): c for (x, q), c in terms.items()})


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def series_st(draw, num_vars=1, order=4, reduced=False, max_q=1):
    terms = {}
    count = draw(st.integers(0, 6))
    for _ in range(count):
        x = draw(st.lists(st.integers(0, order), min_size=num_vars, max_size=num_vars))
        if sum(x) > order or (reduced and sum(x) == 0):
            continue
        q = draw(st.integers(-max_q, max_q))
        terms[Monomial(tuple(x), q)] = draw(small_rationals)
    return Series(num_vars, order, terms)


def sympy_coeffs(expr, syms, order):
    """Oracle: expand a sympy expression as a polynomial through total degree ``order``."""
    t = sp.Symbol("t")
    scaled = expr.subs({s: t * s for s in syms}, simultaneous=True)
    poly = sp.expand(sp.series(scaled, t, 0, order + 1).removeO())
    out = {}
    for term in sp.Add.make_args(poly):
        coeff, rest = term.as_independent(*syms, t)
        exps = tuple(sp.degree(rest, s) for s in syms)
        if coeff != 0:
            out[exps] = out.get(exps, 0) + Fraction(int(sp.fraction(coeff)[0]), int(sp.fraction(coeff)[1]))
    return {k: v for k, v in out.items() if v}


@pytest.fixture
def x4():
    return Series.variable(0, 1, 4)


__all__ = ["X", "uni", "bivariate", "series_st", "small_rationals", "sympy_coeffs", "Fraction"]
