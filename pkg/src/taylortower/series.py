"""Truncated multivariate formal power series with exact rational coefficients.

A :class:`Series` lives in ``num_vars`` arity variables ``x_1..x_m`` and is
truncated by *total* arity degree.  Every coefficient is a finite Laurent
polynomial in a degree marker ``q``; a suspension shifts the ``q`` exponent
by one.  ``q`` exponents are never truncated.

Values are immutable, and every operation returns a new series.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

__all__ = [
    "ExactRational",
    "Monomial",
    "Series",
    "SeriesError",
    "UsageError",
    "DomainError",
    "parse_rational",
    "format_rational",
    "add",
    "mul",
    "substitute",
    "geometric_inverse",
    "exp_series",
    "log_series",
    "shift_q",
    "coefficient",
    "equal_to_order",
]

ExactRational = Fraction
Scalar = Union[int, Fraction]


class SeriesError(Exception):
    """Base class for series errors."""


class UsageError(SeriesError, ValueError):
    """Operands that cannot be combined (variable count, order out of range)."""


class DomainError(SeriesError, ValueError):
    """An operation whose precondition (reducedness, unit constant term) fails."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a :class:`Fraction`."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(c: Fraction) -> str:
    """Canonical ``"p/q"`` string; the denominator is always written."""
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class Monomial(NamedTuple):
    x: tuple[int, ...]
    q: int = 0

    @property
    def degree(self) -> int:
        return sum(self.x)


def _norm(c) -> Scalar:
    # integral coefficients are stored as int: much faster than Fraction
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _var_names(num_vars: int) -> list[str]:
    if num_vars <= 3:
        return ["x", "y", "z"][:num_vars]
    return [f"x{i}" for i in range(1, num_vars + 1)]


class Series:
    """Truncated formal power series; see module docstring.

    ``terms`` maps :class:`Monomial` (or a plain ``(x_tuple, q)`` pair) to a
    rational coefficient.  Zero coefficients and terms of total degree above
    ``order`` are dropped on construction.
    """

    __slots__ = ("num_vars", "order", "_terms", "_hash")

    def __init__(self, num_vars: int, order: int, terms: Mapping | None = None):
        if num_vars < 1:
            raise UsageError("num_vars must be positive")
        if order < 0:
            raise UsageError("truncation order must be non-negative")
        self.num_vars = num_vars
        self.order = order
        clean: dict[Monomial, Fraction] = {}
        for key, c in (terms or {}).items():
            x, q = key
            x = tuple(int(e) for e in x)
            if len(x) != num_vars:
                raise UsageError(f"monomial {key!r} does not have {num_vars} exponents")
            if any(e < 0 for e in x):
                raise UsageError(f"negative arity exponent in {key!r}")
            if sum(x) > order:
                continue
            c = _norm(c)
            if c:
                m = Monomial(x, int(q))
                c = clean.pop(m, 0) + c
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, num_vars: int, order: int, terms: dict) -> "Series":
        # terms already normalized: Monomial keys, nonzero coefficients, degree <= order
        s = cls.__new__(cls)
        s.num_vars = num_vars
        s.order = order
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def zero(cls, num_vars: int, order: int) -> "Series":
        return cls._raw(num_vars, order, {})

    @classmethod
    def constant(cls, c: Scalar, num_vars: int, order: int, q: int = 0) -> "Series":
        return cls(num_vars, order, {Monomial((0,) * num_vars, q): c})

    @classmethod
    def one(cls, num_vars: int, order: int) -> "Series":
        return cls.constant(1, num_vars, order)

    @classmethod
    def variable(cls, index: int, num_vars: int, order: int, q: int = 0) -> "Series":
        """The arity variable ``x_{index+1}`` (zero-based ``index``)."""
        if not 0 <= index < num_vars:
            raise UsageError(f"variable index {index} out of range")
        x = [0] * num_vars
        x[index] = 1
        return cls(num_vars, order, {Monomial(tuple(x), q): 1})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Scalar], order: int | None = None) -> "Series":
        """Univariate series ``sum coeffs[k] * x**k``."""
        if order is None:
            order = max(len(coeffs) - 1, 0)
        return cls(1, order, {Monomial((k,), 0): c for k, c in enumerate(coeffs)})

    @classmethod
    def q_polynomial(cls, coeffs: Mapping[int, Scalar] | Sequence[Scalar], num_vars: int = 1,
                     order: int = 0) -> "Series":
        """Arity-degree-0 series ``sum c_k q**k``."""
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        zero = (0,) * num_vars
        return cls(num_vars, order, {Monomial(zero, k): c for k, c in items})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return {m: Fraction(c) for m, c in self._terms.items()}

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_reduced(self) -> bool:
        return all(sum(m.x) > 0 for m in self._terms)

    def coefficient(self, m: Monomial | Sequence[int] | int, q: int = 0) -> Fraction:
        """Exact coefficient of a monomial, zero if absent."""
        if isinstance(m, int):
            m = Monomial((m,), q)
        elif not isinstance(m, Monomial):
            if len(m) == 2 and isinstance(m[0], tuple):
                m = Monomial(tuple(m[0]), int(m[1]))
            else:
                m = Monomial(tuple(m), q)
        return Fraction(self._terms.get(m, 0))

    def coefficients(self, q: int = 0) -> list[Fraction]:
        """Dense univariate coefficient list ``[c_0, ..., c_order]`` at a fixed q power."""
        if self.num_vars != 1:
            raise UsageError("coefficients() needs a univariate series")
        return [Fraction(self._terms.get(Monomial((k,), q), 0)) for k in range(self.order + 1)]

    def q_coefficients(self, x: Sequence[int] | None = None) -> dict[int, Fraction]:
        """The q-Laurent polynomial sitting on an arity monomial (default: the constant)."""
        x = tuple(x) if x is not None else (0,) * self.num_vars
        return {m.q: Fraction(c) for m, c in self._terms.items() if m.x == x}

    def q_degrees(self) -> set[int]:
        return {m.q for m in self._terms}

    def at_q(self, value: Scalar) -> "Series":
        """Specialize the degree marker ``q`` to a rational number."""
        value = Fraction(value)
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            key = Monomial(m.x, 0)
            out[key] = out.get(key, 0) + c * value ** m.q
        return Series(self.num_vars, self.order, out)

    def truncate(self, order: int) -> "Series":
        order = min(order, self.order)
        return Series._raw(self.num_vars, order,
                           {m: c for m, c in self._terms.items() if sum(m.x) <= order})

    def homogeneous_part(self, degree: int) -> "Series":
        return Series._raw(self.num_vars, self.order,
                           {m: c for m, c in self._terms.items() if sum(m.x) == degree})

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order: total degree, then lexicographically
        descending exponents (``x^2`` before ``xy``), then q."""
        return sorted(self._terms.items(),
                      key=lambda t: (sum(t[0].x), tuple(-e for e in t[0].x), t[0].q))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Series") -> None:
        if not isinstance(other, Series):
            raise UsageError(f"expected a Series, got {type(other).__name__}")
        if other.num_vars != self.num_vars:
            raise UsageError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(other, self.num_vars, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = {m: c for m, c in self._terms.items() if sum(m.x) <= order}
        for m, c in other._terms.items():
            if sum(m.x) > order:
                continue
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Series._raw(self.num_vars, order, out)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series._raw(self.num_vars, self.order, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: Scalar) -> "Series":
        c = _norm(c)
        if not c:
            return Series.zero(self.num_vars, self.order)
        return Series._raw(self.num_vars, self.order, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        return Series._raw(self.num_vars, order, _mul_terms(self._terms, other._terms, order))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise UsageError("only non-negative integer powers are supported")
        result = Series.one(self.num_vars, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.order == other.order
                and self._terms == other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, self.order, frozenset(self._terms.items())))
        return self._hash

    # -- transformations ----------------------------------------------------

    def shift_q(self, k: int) -> "Series":
        return Series._raw(self.num_vars, self.order,
                           {Monomial(m.x, m.q + k): c for m, c in self._terms.items()})

    def adams(self, m: int) -> "Series":
        """Replace every variable ``x_i`` by ``x_i**m`` and ``q`` by ``q**m``."""
        if m < 1:
            raise UsageError("Adams operation index must be positive")
        terms = {}
        for mono, c in self._terms.items():
            x = tuple(m * e for e in mono.x)
            if sum(x) <= self.order:
                terms[Monomial(x, m * mono.q)] = c
        return Series._raw(self.num_vars, self.order, terms)

    def embed(self, num_vars: int, positions: Sequence[int]) -> "Series":
        """Rename variable ``i`` to variable ``positions[i]`` of a larger ring."""
        if len(positions) != self.num_vars:
            raise UsageError("one target position per variable is required")
        terms = {}
        for mono, c in self._terms.items():
            x = [0] * num_vars
            for i, e in enumerate(mono.x):
                x[positions[i]] += e
            terms[Monomial(tuple(x), mono.q)] = c
        return Series(num_vars, self.order, terms)

    def set_zero(self, index: int) -> "Series":
        """Substitute 0 for the variable ``x_{index+1}``."""
        return Series._raw(self.num_vars, self.order,
                           {m: c for m, c in self._terms.items() if m.x[index] == 0})

    def permute(self, perm: Sequence[int]) -> "Series":
        """Move variable ``i`` to position ``perm[i]``."""
        return self.embed(self.num_vars, perm)

    def compose(self, args: Sequence["Series"]) -> "Series":
        """Substitute ``args[i]`` for ``x_{i+1}``.  Arguments must be reduced."""
        return substitute(self, args)

    def equal_to_order(self, other: "Series", order: int | None = None) -> bool:
        return equal_to_order(self, other, order)

    # -- rendering / serialization -------------------------------------------

    def to_json(self) -> dict:
        return {
            "vars": self.num_vars,
            "order": self.order,
            "terms": [{"x": list(m.x), "q": m.q, "c": format_rational(c)}
                      for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Series":
        try:
            num_vars = int(data["vars"])
            order = int(data["order"])
            terms = {}
            for t in data["terms"]:
                key = Monomial(tuple(int(e) for e in t["x"]), int(t.get("q", 0)))
                if key in terms:
                    raise UsageError(f"duplicate monomial {key} in serialized series")
                terms[key] = parse_rational(t["c"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"malformed series JSON: {exc}") from exc
        return cls(num_vars, order, terms)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else _var_names(self.num_vars)
        if not self._terms:
            return "0"
        groups: dict[tuple[int, ...], list[tuple[int, Fraction]]] = {}
        for m, c in self.sorted_terms():
            groups.setdefault(m.x, []).append((m.q, c))
        pieces: list[tuple[bool, str]] = []
        for x, qcs in groups.items():
            mono = _format_x(x, names)
            if len(qcs) == 1:
                qk, c = qcs[0]
                factors = [f for f in (_format_q(qk), mono) if f]
                negative = c < 0
                pieces.append((negative, _format_scaled(abs(c), factors)))
            else:
                inner = _join([(c < 0, _format_scaled(abs(c), [_format_q(qk)] if qk else []))
                               for qk, c in qcs])
                pieces.append((False, f"({inner})*{mono}" if mono else inner))
        return _join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Series(vars={self.num_vars}, order={self.order}, {self.format()!r})"


def _format_x(x: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, x):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_q(k: int) -> str:
    if k == 0:
        return ""
    return "q" if k == 1 else f"q^{k}"


def _format_scaled(c: Fraction, factors: list[str]) -> str:
    body = "*".join(f for f in factors if f)
    if not body:
        return str(c)
    if c == 1:
        return body
    return f"{c}*{body}"


def _join(pieces: Iterable[tuple[bool, str]]) -> str:
    out = ""
    for i, (negative, text) in enumerate(pieces):
        if i == 0:
            out = f"-{text}" if negative else text
        else:
            out += f" - {text}" if negative else f" + {text}"
    return out


def _mul_terms(a: Mapping[Monomial, Fraction], b: Mapping[Monomial, Fraction], order: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    bl = sorted(((sum(m.x), m.x, m.q, c) for m, c in b.items()), key=lambda t: t[0])
    out: dict[Monomial, Fraction] = {}
    for am, ac in a.items():
        room = order - sum(am.x)
        if room < 0:
            continue
        ax, aq = am.x, am.q
        for db, bx, bq, bc in bl:
            if db > room:
                break
            key = Monomial(tuple(i + j for i, j in zip(ax, bx)), aq + bq)
            out[key] = out.get(key, 0) + ac * bc
    return {m: c for m, c in out.items() if c}


# -- module-level operations ---------------------------------------------------


def add(a: Series, b: Series) -> Series:
    a._check(b)
    return a + b


def mul(a: Series, b: Series) -> Series:
    a._check(b)
    return a * b


def _powers(g: Series, top: int, order: int) -> list[Series]:
    pw = [Series.one(g.num_vars, order)]
    g = g.truncate(order)
    for _ in range(top):
        pw.append(pw[-1] * g)
    return pw


def substitute(f: Series, args: Sequence[Series] | Series) -> Series:
    """Formal composition ``f(args[0], ..., args[m-1])``.

    Every argument must be reduced and all arguments must share a variable
    count.  The result is exact through the smallest truncation order
    involved; powers of each argument are computed once.
    """
    if isinstance(args, Series):
        args = [args]
    args = list(args)
    if len(args) != f.num_vars:
        raise UsageError(f"series in {f.num_vars} variables needs {f.num_vars} arguments, got {len(args)}")
    num_vars = args[0].num_vars
    for g in args:
        if g.num_vars != num_vars:
            raise UsageError("substitution arguments must share a variable count")
        if not g.is_reduced():
            raise DomainError("composition needs reduced arguments (no arity-degree-0 term)")
    order = min([f.order] + [g.order for g in args])
    top = [0] * f.num_vars
    for m in f._terms:
        for i, e in enumerate(m.x):
            top[i] = max(top[i], e)
    powers = [_powers(g, min(top[i], order), order) for i, g in enumerate(args)]
    out: dict[Monomial, Fraction] = {}
    zero = (0,) * num_vars
    for m, c in f._terms.items():
        if sum(m.x) > order:
            continue
        term: dict[Monomial, Fraction] = {Monomial(zero, m.q): c}
        for i, e in enumerate(m.x):
            if e:
                term = _mul_terms(term, powers[i][e]._terms, order)
                if not term:
                    break
        for k, v in term.items():
            out[k] = out.get(k, 0) + v
    return Series._raw(num_vars, order, {k: v for k, v in out.items() if v})


def geometric_inverse(f: Series) -> Series:
    """``1/(1 - f)`` for reduced ``f``, i.e. ``sum_k f**k``."""
    if not f.is_reduced():
        raise DomainError("geometric_inverse needs a reduced series")
    result = Series.one(f.num_vars, f.order)
    p = result
    for _ in range(f.order):
        p = p * f
        if p.is_zero():
            break
        result = result + p
    return result


def exp_series(f: Series) -> Series:
    """``exp(f) = sum f**k / k!`` for reduced ``f`` (constant term 1)."""
    if not f.is_reduced():
        raise DomainError("exp_series needs a reduced series")
    result = Series.one(f.num_vars, f.order)
    p = result
    for k in range(1, f.order + 1):
        p = p * f
        if p.is_zero():
            break
        result = result + p.scale(Fraction(1, factorial(k)))
    return result


def log_series(g: Series) -> Series:
    """``log(g) = sum (-1)**(k+1) (g-1)**k / k`` for ``g`` with constant term exactly 1."""
    const = {m: c for m, c in g._terms.items() if sum(m.x) == 0}
    if const != {Monomial((0,) * g.num_vars, 0): 1}:
        raise DomainError("log_series needs constant term exactly 1")
    h = g - 1
    result = Series.zero(g.num_vars, g.order)
    p = Series.one(g.num_vars, g.order)
    for k in range(1, g.order + 1):
        p = p * h
        if p.is_zero():
            break
        result = result + p.scale(Fraction((-1) ** (k + 1), k))
    return result


def shift_q(f: Series, k: int) -> Series:
    return f.shift_q(k)


def coefficient(f: Series, m: Monomial | Sequence[int] | int, q: int = 0) -> Fraction:
    return f.coefficient(m, q)


def first_difference(a: Series, b: Series, order: int | None = None) -> Monomial | None:
    """Lowest monomial (canonical order) where ``a`` and ``b`` differ through
    ``order``; coefficients beyond a series' own truncation read as zero."""
    a._check(b)
    if order is None:
        order = min(a.order, b.order)
    diff = {}
    for m, c in a._terms.items():
        if sum(m.x) <= order:
            diff[m] = c
    for m, c in b._terms.items():
        if sum(m.x) <= order:
            v = diff.get(m, 0) - c
            if v:
                diff[m] = v
            else:
                diff.pop(m, None)
    if not diff:
        return None
    return min(diff, key=lambda m: (sum(m.x), tuple(-e for e in m.x), m.q))


def equal_to_order(a: Series, b: Series, order: int | None = None) -> bool:
    """Exact equality of every coefficient of total arity degree <= ``order``."""
    a._check(b)
    if order is None:
        order = min(a.order, b.order)
    if order > max(a.order, b.order):
        raise UsageError(f"order {order} exceeds both truncations ({a.order}, {b.order})")
    return first_difference(a, b, order) is None
