"""Configuration-space Poincare polynomials and the ground-field certification
of the type f_n differentials.

``H^*(F_n(k))`` is additively ``prod_{j=1}^{k-1} (1 + j q^{n-1})``; each factor is
the cohomology of a wedge of ``j`` spheres ``S^{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .layers import LayerInput, Multiplicity, a_k_recurrence, falling_factorial
from .models import FunctorKind, hilbert_series
from .reports import ReportDocument, Timer, Witness, compare, make_report
from .series import Monomial, Series, UsageError

ASSOCIATIVE = "associative"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class ConfPoincare:
    n: int
    k: int
    poly: Series

    def coefficients(self) -> list[int]:
        """Betti numbers indexed by q-degree, ``0 .. (k-1)(n-1)``."""
        top = (self.k - 1) * (self.n - 1)
        return [int(self.poly.coefficient(Monomial((0,), j))) for j in range(top + 1)]

    def at_q(self, value) -> Fraction:
        return self.poly.at_q(value).coefficient(Monomial((0,), 0))


def wedge_of_spheres(j: int, n: int) -> Series:
    """``H^*(wedge of j copies of S^{n-1}) = 1 + j q^{n-1}``."""
    return Series.q_polynomial({0: 1}) + Series.constant(j, 1, 0, q=n - 1)


def conf_poincare(n: int, k: int) -> ConfPoincare:
    if n < 1 or k < 1:
        raise UsageError("conf_poincare needs n >= 1 and k >= 1")
    poly = Series.one(1, 0)
    for j in range(1, k):
        poly = poly * wedge_of_spheres(j, n)
    return ConfPoincare(n, k, poly)


def verify_difhom(n: int, k_max: int, multiplicity: Multiplicity = falling_factorial) -> ReportDocument:
    """Ground-field differentials of the n-Poisson triple against ``H^*(F_n(k))``
    for ``2 <= k <= k_max``."""
    if n < 1 or k_max < 2:
        raise UsageError("verify_difhom needs n >= 1 and k_max >= 2")
    timer = Timer()
    table = a_k_recurrence(LayerInput.ones(n), k_max, multiplicity)
    witness = None
    for k in range(2, k_max + 1):
        witness = compare(conf_poincare(n, k).poly, table[k], context=f"k={k}")
        if witness:
            break
    params = {"n": n, "k_max": k_max}
    if multiplicity is not falling_factorial:
        params["multiplicity"] = getattr(multiplicity, "__name__", "custom")
    return make_report("difhom", params, k_max, witness, timer)


def e_infinity_check(k_max: int, n_max: int = 6) -> ReportDocument:
    """Every ``conf_poincare(n, k)`` with ``2 <= n <= n_max``, ``k <= k_max`` has
    constant term 1 and nothing strictly between degrees 0 and ``n-1``.

    ``n = 1`` is excluded: there the spheres are ``S^0`` and everything sits in
    degree 0.
    """
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    timer = Timer()
    witness = None
    for n in range(2, n_max + 1):
        for k in range(1, k_max + 1):
            coeffs = conf_poincare(n, k).coefficients()
            if coeffs[0] != 1:
                witness = Witness(Monomial((0,), 0), Fraction(1), Fraction(coeffs[0]), f"n={n} k={k}")
            else:
                gap = [j for j in range(1, min(n - 1, len(coeffs))) if coeffs[j]]
                if gap:
                    witness = Witness(Monomial((0,), gap[0]), Fraction(0),
                                      Fraction(coeffs[gap[0]]), f"n={n} k={k}")
            if witness:
                break
        if witness:
            break
    return make_report("e-infinity", {"n_max": n_max, "k_max": k_max}, k_max, witness, timer)


def e_one_check(k_max: int) -> ReportDocument:
    """``e_1(k) = K[Sigma_k]``: ``conf_poincare(1, k)`` is ``k!``."""
    timer = Timer()
    witness = None
    for k in range(1, k_max + 1):
        value = conf_poincare(1, k).at_q(1)
        if value != factorial(k):
            witness = Witness(Monomial((0,), 0), Fraction(factorial(k)), value, f"k={k}")
            break
    return make_report("e-one", {"k_max": k_max}, k_max, witness, timer)


def triple_dimension_series(which: str, d: int, order: int) -> Series:
    """Word-length dimension series of the non-unital tensor algebra
    (``associative``) or symmetric algebra (``symmetric``) on ``K^d``."""
    if d < 0:
        raise UsageError("d must be non-negative")
    if which == ASSOCIATIVE:
        return hilbert_series(FunctorKind.geometric(), [d], order)
    if which == SYMMETRIC:
        return hilbert_series(FunctorKind.exponential(), [d], order)
    raise UsageError(f"unknown triple {which!r}; expected associative or symmetric")


def conf_table(n_values: list[int], k_values: list[int], at_q=None) -> list[dict]:
    """Rows ``{"n", "k", "coefficients"}`` (or ``"value"`` when ``at_q`` is given)."""
    rows = []
    for n in n_values:
        for k in k_values:
            c = conf_poincare(n, k)
            if at_q is None:
                rows.append({"n": n, "k": k, "coefficients": c.coefficients()})
            else:
                rows.append({"n": n, "k": k, "value": c.at_q(at_q)})
    return rows
