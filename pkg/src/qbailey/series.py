"""Truncated formal power series in ``t = q^(1/2)`` with exact rational coefficients.

Every exponent is an integer number of half-units: ``q^k`` is stored at key
``2k`` and ``q^(1/2)`` at key ``1``.  A series carries a truncation order
``trunc``; coefficients above it are unknown and never stored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .errors import DivergentInfiniteProduct, LaurentTerm, NonUnit

Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    # Fractions with denominator 1 are kept as ints: int arithmetic is much faster.
    tc = type(c)
    if tc is int:
        return c
    if tc is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


class QSeries:
    """Immutable sparse truncated series.

    ``terms`` maps exponent (t-units) to a nonzero rational; the mapping is
    kept sorted and zero-free.
    """

    __slots__ = ("_terms", "_trunc")

    def __init__(self, terms: Mapping[int, Coeff] | Iterable[tuple[int, Coeff]] = (), trunc: int = 0):
        if trunc < 0:
            raise ValueError("trunc must be >= 0")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Coeff] = {}
        for e, c in items:
            if e < 0:
                raise LaurentTerm(f"negative exponent {e}")
            if e > trunc:
                continue
            acc[e] = acc.get(e, 0) + _norm(c)
        self._terms = {e: _norm(acc[e]) for e in sorted(acc) if acc[e] != 0}
        self._trunc = trunc

    @classmethod
    def _raw(cls, terms: dict[int, Coeff], trunc: int) -> "QSeries":
        # terms must already be sorted, zero-free and within trunc
        s = cls.__new__(cls)
        s._terms = terms
        s._trunc = trunc
        return s

    @classmethod
    def constant(cls, c: Coeff, trunc: int) -> "QSeries":
        return cls({0: c}, trunc)

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls._raw({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls._raw({0: 1}, trunc)

    @property
    def trunc(self) -> int:
        return self._trunc

    @property
    def terms(self) -> dict[int, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Coeff]]:
        return iter(self._terms.items())

    def coeff(self, e: int) -> Fraction:
        if e > self._trunc:
            raise IndexError(f"exponent {e} beyond truncation order {self._trunc}")
        return Fraction(self._terms.get(e, 0))

    def __getitem__(self, e: int) -> Fraction:
        return self.coeff(e)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def valuation(self) -> int | None:
        """Smallest exponent with a nonzero coefficient, or None for zero."""
        for e in self._terms:
            return e
        return None

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(0, 0))

    def truncate(self, trunc: int) -> "QSeries":
        if trunc >= self._trunc:
            return self
        return QSeries._raw({e: c for e, c in self._terms.items() if e <= trunc}, trunc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return first_difference(self, other) is None

    __hash__ = None

    def __repr__(self) -> str:
        return f"QSeries({format_series(self)})"

    def __add__(self, other) -> "QSeries":
        return add(self, _coerce(other, self._trunc))

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -c for e, c in self._terms.items()}, self._trunc)

    def __sub__(self, other) -> "QSeries":
        return add(self, -_coerce(other, self._trunc))

    def __rsub__(self, other) -> "QSeries":
        return add(_coerce(other, self._trunc), -self)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return mul(self, _coerce(other, self._trunc))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return scale(self, Fraction(1) / other)
        return mul(self, invert_unit(_coerce(other, self._trunc)))


def _coerce(x, trunc: int) -> QSeries:
    if isinstance(x, QSeries):
        return x
    if isinstance(x, Monomial):
        return x.to_series(trunc)
    if isinstance(x, (int, Fraction)):
        return QSeries.constant(x, trunc)
    raise TypeError(f"cannot use {type(x).__name__} as a QSeries")


def first_difference(f: QSeries, g: QSeries) -> tuple[int, Fraction, Fraction] | None:
    """First exponent (up to the common order) where f and g differ."""
    t = min(f.trunc, g.trunc)
    a, b = f._terms, g._terms
    for e in sorted(set(a) | set(b)):
        if e > t:
            break
        ca, cb = a.get(e, 0), b.get(e, 0)
        if ca != cb:
            return e, Fraction(ca), Fraction(cb)
    return None


def add(f: QSeries, g: QSeries) -> QSeries:
    t = min(f.trunc, g.trunc)
    acc = {e: c for e, c in f._terms.items() if e <= t}
    for e, c in g._terms.items():
        if e > t:
            break
        acc[e] = acc.get(e, 0) + c
    return QSeries._raw({e: _norm(acc[e]) for e in sorted(acc) if acc[e] != 0}, t)


def scale(f: QSeries, c: Coeff) -> QSeries:
    c = _norm(c)
    if c == 0:
        return QSeries.zero(f.trunc)
    return QSeries._raw({e: _norm(v * c) for e, v in f._terms.items()}, f.trunc)


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product truncated to the smaller of the two orders."""
    t = min(f.trunc, g.trunc)
    if len(f) > len(g):
        f, g = g, f
    gk = list(g._terms.items())
    acc: dict[int, Coeff] = {}
    for e1, c1 in f._terms.items():
        lim = t - e1
        if lim < 0:
            break
        for e2, c2 in gk:
            if e2 > lim:
                break
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return QSeries._raw({e: _norm(acc[e]) for e in sorted(acc) if acc[e] != 0}, t)


def invert_unit(f: QSeries) -> QSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    c0 = f._terms.get(0, 0)
    if c0 == 0:
        raise NonUnit("constant term is zero")
    t = f.trunc
    inv0 = Fraction(1) / c0
    inv0 = _norm(inv0)
    tail = [(e, c) for e, c in f._terms.items() if e > 0]
    g = [0] * (t + 1)
    g[0] = inv0
    for k in range(1, t + 1):
        s = 0
        for e, c in tail:
            if e > k:
                break
            gv = g[k - e]
            if gv:
                s += c * gv
        if s:
            g[k] = _norm(-s * inv0)
    return QSeries._raw({e: c for e, c in enumerate(g) if c != 0}, t)


def mul_binomial(f: QSeries, c: Coeff, e: int) -> QSeries:
    """f * (1 + c*t^e), in O(len(f))."""
    if e < 0:
        raise LaurentTerm("negative exponent")
    acc = dict(f._terms)
    t = f.trunc
    for k, v in f._terms.items():
        if k + e > t:
            break
        acc[k + e] = acc.get(k + e, 0) + c * v
    return QSeries._raw({k: _norm(acc[k]) for k in sorted(acc) if acc[k] != 0}, t)


def div_binomial(f: QSeries, c: Coeff, e: int) -> QSeries:
    """f / (1 + c*t^e), by the recurrence g_k = f_k - c*g_{k-e}."""
    if e < 0:
        raise LaurentTerm("negative exponent")
    if e == 0:
        d = 1 + c
        if d == 0:
            raise NonUnit("factor (1 - 1) has zero constant term")
        return scale(f, Fraction(1) / d)
    t = f.trunc
    g: dict[int, Coeff] = {}
    lo = f.valuation()
    if lo is None:
        return f
    for k in range(lo, t + 1):
        v = f._terms.get(k, 0)
        prev = g.get(k - e)
        if prev:
            v = v - c * prev
        if v != 0:
            g[k] = _norm(v)
    return QSeries._raw(g, t)


def shift(f: QSeries, k: int) -> QSeries:
    """Multiply by t^k; the truncation order moves by k as well.

    For k < 0 every term of f below |k| must vanish.
    """
    if k >= 0:
        return QSeries._raw({e + k: c for e, c in f._terms.items()}, f.trunc + k)
    k = -k
    if k > f.trunc:
        raise LaurentTerm(f"cannot divide by t^{k}: order {f.trunc} too small")
    v = f.valuation()
    if v is not None and v < k:
        raise LaurentTerm(f"cannot divide by t^{k}: term at exponent {v}")
    return QSeries._raw({e - k: c for e, c in f._terms.items()}, f.trunc - k)


def substitute_square(f: QSeries) -> QSeries:
    """The substitution q -> q^2: every exponent and the order double."""
    return QSeries._raw({2 * e: c for e, c in f._terms.items()}, 2 * f.trunc)


def only_integer_powers(f: QSeries) -> bool:
    return all(e % 2 == 0 for e in f._terms)


def is_integral(f: QSeries) -> bool:
    return all(isinstance(c, int) for c in f._terms.values())


# --- monomials ---------------------------------------------------------------

_MONO_RE = re.compile(r"^(-?)(?:q\^(\d+)(/2)?|q|(1))$")


@dataclass(frozen=True)
class Monomial:
    """A signed power ``sign * t^exp`` of the half-variable t = q^(1/2)."""

    sign: int = 1
    exp: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.exp < 0:
            raise LaurentTerm("monomial exponent must be >= 0")

    @classmethod
    def q(cls, k: Union[int, Fraction] = 1, sign: int = 1) -> "Monomial":
        """The monomial sign * q^k for integer or half-integer k."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError("exponent must be a multiple of 1/2")
        return cls(sign, int(e))

    @classmethod
    def parse(cls, text: str) -> "Monomial | _Infinity":
        text = text.strip()
        if text == "inf":
            return INFINITY
        m = _MONO_RE.match(text)
        if not m:
            raise ValueError(f"bad monomial {text!r}")
        sign = -1 if m.group(1) else 1
        if m.group(4):
            return cls(sign, 0)
        if m.group(2) is None:
            return cls(sign, 2)
        k = int(m.group(2))
        if m.group(3):
            if k % 2 == 0:
                raise ValueError(f"half-exponent must be odd in {text!r}")
            return cls(sign, k)
        return cls(sign, 2 * k)

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        if self.exp == 0:
            return s + "1"
        if self.exp % 2:
            return f"{s}q^{self.exp}/2"
        return f"{s}q^{self.exp // 2}"

    def __neg__(self) -> "Monomial":
        return Monomial(-self.sign, self.exp)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.sign * other.sign, self.exp + other.exp)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.sign * other.sign, self.exp - other.exp)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(self.sign if n % 2 else 1, self.exp * n)

    def times_q(self, t_units: int) -> "Monomial":
        return Monomial(self.sign, self.exp + t_units)

    def to_series(self, trunc: int) -> QSeries:
        return QSeries({self.exp: self.sign}, trunc)

    @property
    def is_infinite(self) -> bool:
        return False


class _Infinity:
    """The limit value X -> infinity, legal only where a limit is documented."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    is_infinite = True

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = lambda self: "inf"


INFINITY = _Infinity()

ONE = Monomial(1, 0)


def one_minus(z: Monomial, trunc: int) -> QSeries:
    """The series 1 - z."""
    return QSeries({0: 1, z.exp: -z.sign} if z.exp else {0: 1 - z.sign}, trunc)


def pochhammer(z: Monomial, base_t_units: int, n, trunc: int) -> QSeries:
    """(z; Q)_n with Q = t^base_t_units; n may be INFINITY."""
    if getattr(z, "is_infinite", False):
        raise ValueError("pochhammer argument must be finite")
    if n is INFINITY:
        if base_t_units <= 0:
            raise DivergentInfiniteProduct("base must have positive exponent")
        if z.exp == 0 and z.sign == 1:
            return QSeries.zero(trunc)
        count = 0
        while z.exp + count * base_t_units <= trunc:
            count += 1
        n = count
    if n < 0:
        raise ValueError("n must be >= 0")
    f = QSeries.one(trunc)
    for k in range(n):
        f = mul_binomial(f, -z.sign, z.exp + k * base_t_units)
        if not f:
            break
    return f


def div_pochhammer(f: QSeries, z: Monomial, base_t_units: int, n) -> QSeries:
    """f / (z; Q)_n computed factor by factor."""
    if n is INFINITY:
        if base_t_units <= 0:
            raise DivergentInfiniteProduct("base must have positive exponent")
        n = 0
        while z.exp + n * base_t_units <= f.trunc:
            n += 1
    for k in range(n):
        f = div_binomial(f, -z.sign, z.exp + k * base_t_units)
    return f


def monomial_times(f: QSeries, z: Monomial) -> QSeries:
    return scale(shift(f, z.exp), z.sign)


def format_exponent(e: int) -> str:
    return str(e // 2) if e % 2 == 0 else f"{e}/2"


def format_series(f: QSeries, limit: int = 12) -> str:
    parts = []
    for i, (e, c) in enumerate(f.items()):
        if i == limit:
            parts.append("...")
            break
        parts.append(f"{c}*q^{format_exponent(e)}" if e else str(c))
    body = " + ".join(parts) if parts else "0"
    return f"{body} + O(q^{format_exponent(f.trunc + 1)})"
