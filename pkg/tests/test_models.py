from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sympy_coeffs, uni
from taylortower.models import (ClosedFormParams, FunctorKind, SolverError, UnsupportedModelError,
                                closed_form, equation_residual, equation_sides, hilbert_equation_sides,
                                hilbert_model, hilbert_series, solve_reduced)
from taylortower.series import DomainError, Series, UsageError

KINDS = [FunctorKind.exponential(), FunctorKind.geometric(), FunctorKind.logarithmic(),
         *(FunctorKind.type_f(n) for n in range(1, 5))]


def sympy_closed_form(kind, a):
    x = sp.Symbol("x")
    ax = a * x
    if kind.tag == "exponential":
        return sp.exp(ax) - 1, x
    if kind.tag == "geometric":
        return ax / (1 - ax), x
    if kind.tag == "logarithmic":
        return -sp.log(1 - ax), x
    c = 2 ** (kind.n - 1)
    return (1 - ax / c) ** (-c) - 1, x


def coeff_list(s: Series):
    return [s.coefficient(k) for k in range(s.order + 1)]


# -- kinds ---------------------------------------------------------------------


def test_kind_parse_and_json():
    assert FunctorKind.parse("geom") == FunctorKind.geometric()
    assert FunctorKind.parse("type_f", 3).spread == 4
    for k in KINDS:
        assert FunctorKind.from_json(k.to_json()) == k
    with pytest.raises(ValueError):
        FunctorKind.parse("banana")
    with pytest.raises(ValueError):
        FunctorKind.type_f(0)


# -- closed forms --------------------------------------------------------------


def test_closed_form_examples():
    assert closed_form(FunctorKind.geometric(), 1, 4) == uni(0, 1, 1, 1, 1)
    assert closed_form(FunctorKind.type_f(2), 1, 3) == uni(0, 1, Fraction(3, 4), Fraction(1, 2))
    assert closed_form(FunctorKind.logarithmic(), ClosedFormParams(2), 3) == uni(
        0, 2, 2, Fraction(8, 3))
    # f_1 is the geometric series
    assert closed_form(FunctorKind.type_f(1), 3, 6) == closed_form(FunctorKind.geometric(), 3, 6)


@pytest.mark.parametrize("kind", KINDS, ids=str)
@pytest.mark.parametrize("a", [1, 2, Fraction(-1, 3)])
def test_closed_form_matches_sympy(kind, a):
    expr, x = sympy_closed_form(kind, sp.Rational(a.numerator, a.denominator)
                                if isinstance(a, Fraction) else a)
    want = sympy_coeffs(expr, [x], 7)
    got = {m.x: Fraction(c) for m, c in closed_form(kind, a, 7).items()}
    assert got == want


def test_closed_form_rejects_bad_order():
    with pytest.raises(UsageError):
        closed_form(FunctorKind.geometric(), 1, 0)


# -- residuals -------------------------------------------------------------------


@pytest.mark.parametrize("kind", KINDS, ids=str)
@pytest.mark.parametrize("a", [1, 2, 3])
def test_closed_forms_solve_equation(kind, a):
    assert equation_residual(kind, closed_form(kind, a, 10), 10).is_zero()


def test_exponential_residual_of_identity():
    x = Series.variable(0, 1, 4)
    r = equation_residual(FunctorKind.exponential(), x, 4)
    assert r == -(Series.variable(0, 2, 4) * Series.variable(1, 2, 4))


def test_wrong_kind_gives_nonzero_residual():
    f = closed_form(FunctorKind.geometric(), 1, 6)
    assert not equation_residual(FunctorKind.exponential(), f, 6).is_zero()
    assert not equation_residual(FunctorKind.type_f(2), f, 6).is_zero()


def test_geometric_equation_literal_oracle():
    # F(x+y) = F(x) + F(y) + 2F(x)F(y) + F(x+y)F(x)F(y) checked in sympy directly
    x, y = sp.symbols("x y")
    F = lambda t: t / (1 - t)  # noqa: E731
    expr = F(x + y) - (F(x) + F(y) + 2 * F(x) * F(y) + F(x + y) * F(x) * F(y))
    assert sp.simplify(expr) == 0
    lhs, rhs = equation_sides(FunctorKind.geometric(), closed_form(FunctorKind.geometric(), 1, 6), 6)
    assert {m.x: Fraction(c) for m, c in lhs.items()} == sympy_coeffs(F(x + y), [x, y], 6)


def test_equation_input_errors():
    with pytest.raises(DomainError):
        equation_residual(FunctorKind.geometric(), uni(1, 1, order=3), 3)
    with pytest.raises(UsageError):
        equation_residual(FunctorKind.geometric(), uni(0, 1, order=3), 5)
    with pytest.raises(UsageError):
        equation_residual(FunctorKind.geometric(), Series.variable(0, 2, 3), 3)


# -- solver ----------------------------------------------------------------------


@pytest.mark.parametrize("kind", KINDS, ids=str)
def test_solver_recovers_closed_form(kind):
    for a in (1, 2, 3):
        assert solve_reduced(kind, a, 9) == closed_form(kind, a, 9)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(KINDS), st.fractions(min_value=-4, max_value=4, max_denominator=5))
def test_solver_uniqueness_property(kind, a):
    f = solve_reduced(kind, a, 6)
    assert f.coefficient(1) == a
    assert equation_residual(kind, f, 6, a if a else 1).is_zero()


def test_solver_zero_start_is_zero():
    assert solve_reduced(FunctorKind.exponential(), 0, 5).is_zero()


def test_solver_error_carries_witness():
    err = SolverError("boom", None, Fraction(1))
    assert err.value == 1


# -- type f_n limit ---------------------------------------------------------------


def test_type_f_decreases_to_exponential():
    for k in range(2, 7):
        vals = [closed_form(FunctorKind.type_f(n), 1, k).coefficient(k) for n in range(1, 9)]
        assert all(u > v for u, v in zip(vals, vals[1:]))
        assert all(v > Fraction(1, sp.factorial(k)) for v in vals)


# -- Hilbert model -----------------------------------------------------------------


def witt_oracle(d, k):
    return sum(sp.mobius(k // e) * d ** e for e in sp.divisors(k)) // k


@pytest.mark.parametrize("d", [1, 2, 3])
def test_hilbert_models_match_classical_dimensions(d):
    order = 8
    sym = hilbert_model(FunctorKind.exponential(), d, order)
    ten = hilbert_model(FunctorKind.geometric(), d, order)
    lie = hilbert_model(FunctorKind.logarithmic(), d, order)
    for k in range(1, order + 1):
        assert sym.coefficient(k) == comb(d + k - 1, k)
        assert ten.coefficient(k) == d ** k
        assert lie.coefficient(k) == witt_oracle(d, k)


def test_hilbert_examples():
    assert coeff_list(hilbert_model(FunctorKind.exponential(), 1, 4)) == [0, 1, 1, 1, 1]
    assert coeff_list(hilbert_model(FunctorKind.logarithmic(), 2, 5)) == [0, 2, 1, 2, 3, 6]


def test_hilbert_bigraded_sym():
    s = hilbert_series(FunctorKind.exponential(), [1, 1], 3)
    # Sym of a 2-dim space split 1+1: every monomial w1^i w2^j appears once
    assert all(c == 1 for _, c in s.items())
    assert len(s) == 9


@pytest.mark.parametrize("kind", KINDS[:3], ids=str)
@pytest.mark.parametrize("dx,dy", [(1, 1), (1, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("bigraded", [False, True])
def test_hilbert_equation_holds(kind, dx, dy, bigraded):
    lhs, rhs = hilbert_equation_sides(kind, dx, dy, 8, bigraded)
    assert lhs == rhs


def test_hilbert_type_f_unsupported():
    with pytest.raises(UnsupportedModelError):
        hilbert_model(FunctorKind.type_f(2), 1, 4)


def test_hilbert_rejects_bad_dims():
    with pytest.raises(UsageError):
        hilbert_series(FunctorKind.geometric(), [], 3)
    with pytest.raises(UsageError):
        hilbert_series(FunctorKind.geometric(), [-1], 3)
