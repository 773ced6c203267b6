"""Identity checks returning :class:`ReportDocument` values.

Each check compares two independently computed series and reports the first
disagreeing coefficient.  Negative controls deliberately perturb an identity
and pass only when the perturbation is detected.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial

from .cross_effects import (cross_effect_inclusion_exclusion, cross_effect_recursive,
                            is_degree_n, multilinear_part)
from .conf import verify_difhom
from .layers import (LayerInput, layers_exponential, layers_geometric, layers_logarithmic,
                     leading_coefficient_in_dimension)
from .lie import lie_n_dimension, lyndon_count, plethystic_lie, plethystic_sym, witt
from .models import (FunctorKind, SolverError, closed_form, equation_residual,
                     hilbert_equation_sides, solve_reduced)
from .reports import ReportDocument, Timer, Witness, compare, make_report
from .series import Monomial, Series, exp_series, geometric_inverse, log_series

ANALYTIC_KINDS = [FunctorKind.exponential(), FunctorKind.geometric(), FunctorKind.logarithmic()] + [
    FunctorKind.type_f(n) for n in (1, 2, 3, 4)]
HILBERT_KINDS = [FunctorKind.exponential(), FunctorKind.geometric(), FunctorKind.logarithmic()]


def _x(order: int) -> Series:
    return Series.variable(0, 1, order)


def functional_equation_check(kind: FunctorKind, a, order: int) -> ReportDocument:
    timer = Timer()
    residual = equation_residual(kind, closed_form(kind, a, order), order)
    zero = Series.zero(2, order)
    w = compare(zero, residual, order, "residual")
    return make_report("functional-eq", {"kind": kind, "a": a}, order, w, timer)


def solver_check(kind: FunctorKind, a, order: int) -> ReportDocument:
    timer = Timer()
    try:
        solved = solve_reduced(kind, a, order)
    except SolverError as exc:
        w = Witness(exc.monomial, Fraction(0), Fraction(exc.value), "solver")
        return make_report("solver", {"kind": kind, "a": a}, order, w, timer)
    w = compare(closed_form(kind, a, order), solved, order)
    return make_report("solver", {"kind": kind, "a": a}, order, w, timer)


def pbw_functional_identity(order: int, scale: Fraction | int = 1) -> ReportDocument:
    """``exp(-log(1-x)) - 1 = x/(1-x)``; ``scale`` multiplies the logarithm
    (anything but 1 is a perturbation)."""
    timer = Timer()
    x = _x(order)
    neg_log = -log_series(1 - x)
    lhs = exp_series(neg_log.scale(scale)) - 1
    w = compare(closed_form(FunctorKind.geometric(), 1, order), lhs, order)
    params = {} if scale == 1 else {"scale": Fraction(scale)}
    return make_report("pbw", params, order, w, timer)


def fn_composition_check(n: int, order: int) -> ReportDocument:
    """``f_n(x) = exp(-c log(1 - x/c)) - 1`` with ``c = 2**(n-1)``."""
    timer = Timer()
    c = 2 ** (n - 1)
    x = _x(order)
    lhs = exp_series(log_series(1 - x.scale(Fraction(1, c))).scale(-c)) - 1
    w = compare(closed_form(FunctorKind.type_f(n), 1, order), lhs, order)
    return make_report("fn-composition", {"n": n}, order, w, timer)


def pbw_dimension_check(d: int, order: int) -> ReportDocument:
    """``prod_k (1 - w^k)^(-witt(d, k)) = 1/(1 - d w)``."""
    timer = Timer()
    w = _x(order)
    product = Series.one(1, order)
    for k in range(1, order + 1):
        product = product * geometric_inverse(w ** k) ** witt(d, k)
    witness = compare(geometric_inverse(w.scale(d)), product, order)
    return make_report("pbw-dimension", {"d": d}, order, witness, timer)


def sym_lie_check(d: int, order: int) -> ReportDocument:
    """``Sym[L[g]] = 1/(1 - g) - 1`` for ``g = d w``."""
    timer = Timer()
    g = _x(order).scale(d)
    lhs = plethystic_sym(plethystic_lie(g))
    witness = compare(geometric_inverse(g) - 1, lhs, order)
    return make_report("sym-lie", {"d": d}, order, witness, timer)


def lie_multilinear_check(n: int) -> ReportDocument:
    """Multilinear part of the free Lie algebra on ``n`` lines is ``(n-1)!``."""
    timer = Timer()
    gen = Series.zero(n, n)
    for i in range(n):
        gen = gen + Series.variable(i, n, n)
    got = plethystic_lie(gen).coefficient(Monomial((1,) * n, 0))
    expected = Fraction(factorial(n - 1))
    witness = None
    if got != expected:
        witness = Witness(Monomial((1,) * n, 0), expected, got, "plethysm")
    elif lie_n_dimension(n) != expected:
        witness = Witness(Monomial((1,) * n, 0), expected, Fraction(lie_n_dimension(n)), "lyndon")
    return make_report("lie-multilinear", {"n": n}, n, witness, timer)


def hilbert_log_equation_check(d_x: int, d_y: int, order: int,
                               bigraded: bool = False) -> ReportDocument:
    """``L(d_x + d_y) = L(d_x) + L(d_y) + L[T_1(d_x) T_1(d_y)]``."""
    timer = Timer()
    lhs, rhs = hilbert_equation_sides(FunctorKind.logarithmic(), d_x, d_y, order, bigraded)
    witness = compare(rhs, lhs, order)
    params = {"d_x": d_x, "d_y": d_y}
    if bigraded:
        params["bigraded"] = "true"
    return make_report("hilbert-log", params, order, witness, timer)


def hilbert_log_worked_instance() -> ReportDocument:
    """``L[(w/(1-w))^2] = w^2 + 2w^3 + 3w^4 + 6w^5``, the composite term at ``d_x = d_y = 1``."""
    timer = Timer()
    w = _x(5)
    got = plethystic_lie((w * geometric_inverse(w)) ** 2)
    witness = compare(Series.from_coefficients([0, 0, 1, 2, 3, 6], 5), got, 5)
    return make_report("hilbert-log-instance", {"d_x": 1, "d_y": 1}, 5, witness, timer)


def hilbert_equation_check(kind: FunctorKind, d_x: int, d_y: int, order: int) -> ReportDocument:
    timer = Timer()
    lhs, rhs = hilbert_equation_sides(kind, d_x, d_y, order)
    witness = compare(rhs, lhs, order)
    return make_report("hilbert-eq", {"kind": kind, "d_x": d_x, "d_y": d_y}, order, witness, timer)


def witt_lyndon_check(d_max: int, k_max: int) -> ReportDocument:
    timer = Timer()
    witness = None
    for d in range(1, d_max + 1):
        for k in range(1, k_max + 1):
            a, b = witt(d, k), lyndon_count(d, k)
            if a != b:
                witness = Witness(Monomial((k,), 0), Fraction(b), Fraction(a), f"d={d}")
                break
        if witness:
            break
    return make_report("witt-lyndon", {"d_max": d_max}, k_max, witness, timer)


def random_polynomial(rng: random.Random, order: int) -> Series:
    degree = rng.randint(1, order)
    coeffs = [0] + [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(degree)]
    if not coeffs[degree]:
        coeffs[degree] = Fraction(1)
    return Series.from_coefficients(coeffs, order)


def cross_effect_oracle_check(samples: int = 100, max_arity: int = 5, order: int = 8,
                              seed: int = 0) -> ReportDocument:
    """Recursive against inclusion-exclusion cross effects on seeded random
    polynomials, plus degree detection against the true polynomial degree."""
    timer = Timer()
    rng = random.Random(seed)
    witness = None
    for i in range(samples):
        f = random_polynomial(rng, order)
        for m in range(1, max_arity + 1):
            witness = compare(cross_effect_inclusion_exclusion(f, m).value,
                              cross_effect_recursive(f, m).value, order, f"sample={i} m={m}")
            if witness:
                break
        if witness:
            break
        degree = max(mono.degree for mono, _ in f.items())
        if not is_degree_n(f, degree) or is_degree_n(f, degree - 1):
            witness = Witness(Monomial((degree,), 0), Fraction(degree), Fraction(-1),
                              f"sample={i} degree detection")
            break
    return make_report("cross-effects", {"samples": samples, "max_arity": max_arity, "seed": seed},
                       order, witness, timer)


def layer_check(k_max: int = 6, d_max: int = 3) -> ReportDocument:
    """Layer closed forms, and the analytic bridge: the leading coefficient in
    ``d`` of each layer dimension is the analytic multilinear part over ``k!``."""
    timer = Timer()
    witness = None

    def fail(k, expected, actual, ctx):
        return Witness(Monomial((k,), 0), Fraction(expected), Fraction(actual), ctx)

    x = _x(k_max)
    geo = layers_geometric(LayerInput(x, Series.one(1, k_max)), k_max)
    analytic = {kind.tag: closed_form(kind, 1, k_max) for kind in HILBERT_KINDS}
    for k in range(1, k_max + 1):
        ml = {tag: multilinear_part(f, k) / factorial(k) for tag, f in analytic.items()}
        if geo[k] != x ** k or geo[k].coefficient(k) != ml["geometric"]:
            witness = fail(k, ml["geometric"], geo[k].coefficient(k), "geometric d1=x")
            break
        for d in range(0, d_max + 1):
            inp = LayerInput.constant(d)
            pairs = [
                ("geometric", layers_geometric(inp, k)[k], d ** k),
                ("exponential", layers_exponential(inp, k)[k], comb(d + k - 1, k)),
                ("logarithmic", layers_logarithmic(inp, k)[k], witt(d, k)),
            ]
            for tag, got, want in pairs:
                if got.coefficient(0) != want:
                    witness = fail(k, want, got.coefficient(0), f"{tag} d={d}")
                    break
            if witness:
                break
        if witness:
            break
        dims = {
            "geometric": lambda d: d ** k,
            "exponential": lambda d: comb(d + k - 1, k),
            "logarithmic": lambda d: witt(d, k),
        }
        for tag, dim in dims.items():
            lead = leading_coefficient_in_dimension(dim, k)
            if lead != ml[tag]:
                witness = fail(k, ml[tag], lead, f"{tag} leading coefficient")
                break
        if witness:
            break
    return make_report("layers", {"d_max": d_max}, k_max, witness, timer)


def fn_limit_check(k_range=(2, 8), n_range=(2, 10)) -> ReportDocument:
    """Type f_n coefficients decrease strictly in ``n`` towards ``1/k!``, and the
    gap to ``1/k!`` at least halves per step in ``n``."""
    timer = Timer()
    witness = None
    k_lo, k_hi = k_range
    n_lo, n_hi = n_range
    for k in range(k_lo, k_hi + 1):
        limit = Fraction(1, factorial(k))
        prev = closed_form(FunctorKind.type_f(n_lo - 1), 1, k).coefficient(k) if n_lo > 1 else None
        for n in range(n_lo, n_hi + 1):
            a = closed_form(FunctorKind.type_f(n), 1, k).coefficient(k)
            ctx = f"k={k} n={n}"
            if a <= limit:
                witness = Witness(Monomial((k,), 0), limit, a, ctx + " not above 1/k!")
            elif prev is not None and not a < prev:
                witness = Witness(Monomial((k,), 0), prev, a, ctx + " not decreasing")
            elif prev is not None and not (a - limit) * 2 <= prev - limit:
                witness = Witness(Monomial((k,), 0), prev, a, ctx + " gap did not halve")
            if witness:
                break
            prev = a
        if witness:
            break
    return make_report("fn-limit", {"k": f"{k_lo}..{k_hi}", "n": f"{n_lo}..{n_hi}"}, k_hi, witness,
                       timer)


def wrong_multiplicity(k_minus_1: int, s: int) -> int:
    """``s!`` in place of the number of ordered selections; a deliberate error."""
    return factorial(s)


def _expect_failure(name: str, inner: ReportDocument, timer: Timer) -> ReportDocument:
    if inner.passed:
        w = Witness(Monomial((0,), 0), Fraction(1), Fraction(0), "perturbation went undetected")
        return make_report(name, inner.parameters, inner.order_checked, w, timer)
    return make_report(name, inner.parameters, inner.order_checked, None, timer,
                       details=["detected: " + inner.summary()])


def negative_control_pbw(order: int = 10) -> ReportDocument:
    timer = Timer()
    inner = pbw_functional_identity(order, Fraction(10001, 10000))
    return _expect_failure("negative-control-pbw", inner, timer)


def negative_control_recurrence(n: int = 2, k_max: int = 6) -> ReportDocument:
    timer = Timer()
    inner = verify_difhom(n, k_max, wrong_multiplicity)
    return _expect_failure("negative-control-recurrence", inner, timer)
