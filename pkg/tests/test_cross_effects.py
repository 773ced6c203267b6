import random
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import series_st, sympy_coeffs, uni
from taylortower.cross_effects import (cross_effect, cross_effect_inclusion_exclusion,
                                       cross_effect_recursive, cr2_structural_check, is_degree_n,
                                       multilinear_part)
from taylortower.identities import cross_effect_oracle_check, random_polynomial
from taylortower.models import FunctorKind, UnsupportedModelError, closed_form
from taylortower.series import DomainError, Monomial, Series, UsageError, substitute

METHODS = [cross_effect, cross_effect_inclusion_exclusion, cross_effect_recursive]


def sympy_cross_effect(coeffs, m, order):
    xs = sp.symbols(f"x1:{m + 1}")
    f = lambda t: sum(sp.Rational(c.numerator, c.denominator) * t ** k  # noqa: E731
                      for k, c in enumerate(coeffs))
    expr = sum((-1) ** (m - r) * f(sum(sub))
               for r in range(1, m + 1) for sub in combinations(xs, r))
    return sympy_coeffs(sp.expand(expr), list(xs), order)


def as_dict(s):
    return {m.x: Fraction(c) for m, c in s.items()}


def test_cr2_of_square():
    f = uni(0, 0, 1, order=3)
    for method in METHODS:
        assert as_dict(method(f, 2).value) == {(1, 1): 2}


def test_cr3_of_cube_is_six():
    f = uni(0, 0, 0, 1, order=3)
    for method in METHODS:
        assert as_dict(method(f, 3).value) == {(1, 1, 1): 6}


def test_cr1_is_identity():
    f = uni(0, 2, Fraction(-1, 3), 5, order=3)
    for method in METHODS:
        assert method(f, 1).value == f


def test_degree_two_cr3_vanishes():
    f = uni(0, 1, 1, order=5)
    for method in METHODS:
        assert method(f, 3).value.is_zero()


@pytest.mark.parametrize("m", [2, 3, 4])
def test_cross_effects_match_sympy(m):
    rng = random.Random(m)
    for _ in range(3):
        f = random_polynomial(rng, 6)
        coeffs = [f.coefficient(k) for k in range(7)]
        want = sympy_cross_effect(coeffs, m, 6)
        for method in METHODS:
            assert as_dict(method(f, m).value) == want


@settings(max_examples=30, deadline=None)
@given(series_st(order=6, reduced=True, max_q=1), st.integers(1, 4))
def test_methods_agree(f, m):
    a = cross_effect_recursive(f, m).value
    assert cross_effect_inclusion_exclusion(f, m).value == a
    assert cross_effect(f, m).value == a


@settings(max_examples=30, deadline=None)
@given(series_st(order=6, reduced=True), st.integers(2, 4))
def test_symmetric_and_multireduced(f, m):
    cr = cross_effect_recursive(f, m)
    assert cr.is_multireduced()
    for perm in permutations(range(m)):
        assert cr.value.permute(perm) == cr.value


@settings(max_examples=30, deadline=None)
@given(series_st(order=6, reduced=True), series_st(order=6, reduced=True), st.integers(1, 4))
def test_additive_in_f(f, g, m):
    assert cross_effect(f + g, m).value == cross_effect(f, m).value + cross_effect(g, m).value


@settings(max_examples=25, deadline=None)
@given(series_st(order=6, reduced=True), st.integers(2, 4))
def test_splitting_identity(f, j):
    # cr_{j-1}(x1+x2, x3..xj) = cr_j(x1..xj) + cr_{j-1}(x1, x3..) + cr_{j-1}(x2, x3..)
    order = f.order
    v = [Series.variable(i, j, order) for i in range(j)]
    prev = cross_effect(f, j - 1).value
    lhs = substitute(prev, [v[0] + v[1]] + v[2:])
    rhs = (cross_effect(f, j).value + substitute(prev, [v[0]] + v[2:])
           + substitute(prev, [v[1]] + v[2:]))
    assert lhs == rhs


def test_is_degree_n():
    f = uni(0, 1, 0, 4, order=6)
    assert is_degree_n(f, 3)
    assert not is_degree_n(f, 2)
    g = closed_form(FunctorKind.exponential(), 1, 8)
    assert not is_degree_n(g, 7)
    assert is_degree_n(g, 5, order=5)
    with pytest.raises(UsageError):
        is_degree_n(g, 3, order=9)


@pytest.mark.parametrize("kind", [FunctorKind.exponential(), FunctorKind.geometric(),
                                  FunctorKind.logarithmic(), FunctorKind.type_f(3)], ids=str)
def test_multilinear_part_is_factorial_times_coefficient(kind):
    f = closed_form(kind, 2, 6)
    for n in range(1, 7):
        assert multilinear_part(f, n) == factorial(n) * f.coefficient(n)


def test_errors():
    with pytest.raises(DomainError):
        cross_effect(uni(1, 1, order=2), 2)
    with pytest.raises(UsageError):
        cross_effect(uni(0, 1, order=2), 0)
    with pytest.raises(UsageError):
        cross_effect_recursive(Series.variable(0, 2, 2), 2)
    with pytest.raises(UsageError):
        multilinear_part(uni(0, 1, order=2), 3)


def test_q_grading_is_carried():
    f = Series.variable(0, 1, 3).shift_q(2) ** 2
    assert cross_effect(f, 2).value.items() == {Monomial((1, 1), 4): 2}.items()


def test_oracle_check_passes():
    assert cross_effect_oracle_check(20, 4, 6, seed=3).status == "pass"


@pytest.mark.parametrize("kind", [FunctorKind.exponential(), FunctorKind.geometric(),
                                  FunctorKind.logarithmic()], ids=str)
@pytest.mark.parametrize("dx,dy", [(1, 1), (2, 1), (2, 3)])
def test_cr2_structural(kind, dx, dy):
    assert cr2_structural_check(kind, dx, dy, 6).status == "pass"


def test_cr2_structural_type_f_unsupported():
    with pytest.raises(UnsupportedModelError):
        cr2_structural_check(FunctorKind.type_f(2), 1, 1, 4)
