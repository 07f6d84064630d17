"""Bailey pairs, the transforms that produce new pairs, and the Bailey lemma.

A pair is stored with its parameter ``a`` and its base ``Q = t^base`` where
``t = q^(1/2)``; base 2 means Q = q and base 4 means Q = q^2.  ``alpha`` and
``beta`` are lazy: ``pair.alpha(n, trunc)`` builds the n-th term on demand and
caches the most precise copy computed so far.
"""
from __future__ import annotations

import threading
import time
from fractions import Fraction
from typing import Callable, Optional

from .errors import LaurentTerm, NonTerminating, NonUnit
from .reports import PairCheckReport, PairFailure, VerificationReport, compare_series
from .series import (
    INFINITY,
    ONE,
    Monomial,
    QSeries,
    add,
    div_binomial,
    div_pochhammer,
    first_difference,
    mul,
    mul_binomial,
    pochhammer,
    scale,
    shift,
)

TermFn = Callable[[int, int], QSeries]

HALF = Fraction(1, 2)


class _LazySequence:
    def __init__(self, fn: TermFn):
        self._fn = fn
        self._cache: dict[int, QSeries] = {}
        self._lock = threading.RLock()

    def __call__(self, n: int, trunc: int) -> QSeries:
        if n < 0:
            raise IndexError("index must be >= 0")
        with self._lock:
            hit = self._cache.get(n)
            if hit is not None and hit.trunc >= trunc:
                return hit.truncate(trunc)
        value = self._fn(n, trunc)
        if value.trunc < trunc:
            raise ValueError(f"term {n} computed only to order {value.trunc} < {trunc}")
        with self._lock:
            hit = self._cache.get(n)
            if hit is None or hit.trunc < value.trunc:
                self._cache[n] = value
        return value.truncate(trunc)


class BaileyPair:
    """A Bailey pair relative to (a, Q)."""

    def __init__(self, a: Monomial, base: int, alpha: TermFn, beta: TermFn,
                 trunc: int, label: str = ""):
        if base <= 0:
            raise ValueError("base must be positive")
        self.a = a
        self.base = base
        self.trunc = trunc
        self.label = label
        self._alpha = _LazySequence(alpha)
        self._beta = _LazySequence(beta)

    def alpha(self, n: int, trunc: Optional[int] = None) -> QSeries:
        return self._alpha(n, self.trunc if trunc is None else trunc)

    def beta(self, n: int, trunc: Optional[int] = None) -> QSeries:
        return self._beta(n, self.trunc if trunc is None else trunc)

    @property
    def Q(self) -> Monomial:
        return Monomial(1, self.base)

    def with_trunc(self, trunc: int) -> "BaileyPair":
        return BaileyPair(self.a, self.base, self._alpha, self._beta, trunc, self.label)

    def __repr__(self) -> str:
        return f"BaileyPair({self.label!r}, a={self.a}, Q=q^{Fraction(self.base, 2)})"


def perturb_alpha(p: BaileyPair, n: int, t_units: int, delta=1) -> BaileyPair:
    """Copy of p with delta added to the t^t_units coefficient of alpha_n."""
    def alpha(k, trunc):
        v = p.alpha(k, trunc)
        if k == n and t_units <= trunc:
            v = add(v, QSeries({t_units: delta}, trunc))
        return v

    return BaileyPair(p.a, p.base, alpha, p.beta, p.trunc, p.label + "+perturbed")


# --- defining relation -------------------------------------------------------

def bailey_relation_rhs(p: BaileyPair, n: int, trunc: int) -> QSeries:
    """sum_{j<=n} alpha_j / ((Q;Q)_{n-j} (aQ;Q)_{n+j})."""
    Q = p.Q
    aQ = p.a * Q
    total = QSeries.zero(trunc)
    for j in range(n + 1):
        term = p.alpha(j, trunc)
        if not term:
            continue
        term = div_pochhammer(term, Q, p.base, n - j)
        term = div_pochhammer(term, aQ, p.base, n + j)
        total = add(total, term)
    return total


def verify_pair(p: BaileyPair, n_max: int, trunc: Optional[int] = None) -> PairCheckReport:
    """Check beta_n = sum_j alpha_j/((Q)_{n-j}(aQ)_{n+j}) for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    trunc = p.trunc if trunc is None else trunc
    start = time.perf_counter()
    for n in range(n_max + 1):
        rhs = bailey_relation_rhs(p, n, trunc)
        lhs = p.beta(n, trunc)
        diff = first_difference(lhs, rhs)
        if diff is not None:
            e, l, r = diff
            return PairCheckReport(p.label, n + 1, trunc, "fail", PairFailure(n, e, l, r),
                                   _ms(start))
    return PairCheckReport(p.label, n_max + 1, trunc, "pass", None, _ms(start))


def _ms(start: float) -> int:
    return int(round((time.perf_counter() - start) * 1000))


# --- seed pair ---------------------------------------------------------------

def slater_e1(trunc: int) -> BaileyPair:
    """Slater's E(1) pair relative to (1, q)."""

    def alpha(n, t):
        if n == 0:
            return QSeries.one(t)
        return QSeries({2 * n * n: 2 if n % 2 == 0 else -2}, t)

    def beta(n, t):
        return div_pochhammer(QSeries.one(t), Monomial(1, 4), 4, n)

    return BaileyPair(ONE, 2, alpha, beta, trunc, "e1")


# --- transforms --------------------------------------------------------------

def _require_unit(z: Monomial, what: str) -> None:
    # 1 - z is a unit unless z == 1
    if z.exp == 0 and z.sign == 1:
        raise NonUnit(f"{what}: factor (1 - 1) is not invertible")


def _quotient(x: Monomial, y: Monomial, what: str) -> Monomial:
    if y.exp > x.exp:
        raise LaurentTerm(f"{what}: {x}/{y} has a negative exponent")
    return x / y


def lovejoy_star(p: BaileyPair, b: Monomial, trunc: Optional[int] = None) -> BaileyPair:
    """Lovejoy's transform: a pair relative to (a, Q) becomes one relative to (aQ, Q)."""
    trunc = p.trunc if trunc is None else trunc
    base, a = p.base, p.a
    Q = p.Q
    aQ = a * Q
    _require_unit(b, "lovejoy_star")
    _require_unit(aQ, "lovejoy_star")
    aQ_b = _quotient(aQ, b, "lovejoy_star")

    def alpha(n, t):
        total = QSeries.zero(t)
        for j in range(n + 1):
            # (aQ/b)_n/(aQ/b)_j * (b)_j * (-b)^(n-j) * Q^((n(n-1) - j(j-1))/2) * alpha_j
            e = (n - j) * b.exp + base * (n * (n - 1) - j * (j - 1)) // 2
            room = t - e
            if room < 0:
                continue
            aj = p.alpha(j, room)
            if not aj:
                continue
            term = mul(aj, pochhammer(aQ_b.times_q(j * base), base, n - j, room))
            term = mul(term, pochhammer(b, base, j, room))
            total = add(total, scale(shift(term, e), (-b.sign) ** (n - j)))
        total = mul_binomial(total, -aQ.sign, aQ.exp + 2 * n * base)
        total = div_binomial(total, -aQ.sign, aQ.exp)
        return div_pochhammer(total, b * Q, base, n)

    def beta(n, t):
        v = mul_binomial(p.beta(n, t), -b.sign, b.exp)
        return div_binomial(v, -b.sign, b.exp + n * base)

    return BaileyPair(aQ, base, alpha, beta, trunc, f"star({p.label},b={b})")


def symmetrize_b(p: BaileyPair, b: Monomial, trunc: Optional[int] = None) -> BaileyPair:
    """Average of Lovejoy's transform at b and -b, each divided by (1 -/+ b).

    Requires a pair relative to a = 1; the result is relative to (Q, Q).
    """
    if p.a != ONE:
        raise ValueError("symmetrize_b needs a pair with a = 1")
    trunc = p.trunc if trunc is None else trunc
    _require_unit(b, "symmetrize_b")
    _require_unit(-b, "symmetrize_b")
    plus = lovejoy_star(p, b, trunc)
    minus = lovejoy_star(p, -b, trunc)
    base = p.base
    b2 = b * b

    def alpha(n, t):
        u = div_binomial(plus.alpha(n, t), -b.sign, b.exp)
        v = div_binomial(minus.alpha(n, t), b.sign, b.exp)
        return scale(add(u, v), HALF)

    def beta(n, t):
        return div_binomial(p.beta(n, t), -b2.sign, b2.exp + 2 * n * base)

    return BaileyPair(plus.a, base, alpha, beta, trunc, f"sym({p.label},b={b})")


def square_base(p: BaileyPair, trunc: Optional[int] = None) -> BaileyPair:
    """Base change: a pair relative to (a, Q) gives one relative to (a^2, Q^2)."""
    trunc = p.trunc if trunc is None else trunc
    base, a = p.base, p.a
    minus_a = -a
    _require_unit(minus_a, "square_base")

    def alpha(n, t):
        up = t + n * base
        v = mul_binomial(p.alpha(n, up), a.sign, a.exp + 2 * n * base)
        v = div_binomial(v, a.sign, a.exp)
        return shift(v, -n * base)

    def beta(n, t):
        up = t + n * base
        total = QSeries.zero(up)
        for j in range(n + 1):
            k = n - j
            e = base * (k * k - k)
            if e > up:
                continue
            term = p.beta(j, up - e)
            if not term:
                continue
            term = div_pochhammer(term, Monomial(1, 2 * base), 2 * base, k)
            total = add(total, scale(shift(term, e), -1 if k % 2 else 1))
        total = div_pochhammer(total, minus_a, base, 2 * n)
        return shift(total, -n * base)

    return BaileyPair(a * a, 2 * base, alpha, beta, trunc, f"sq({p.label})")


def u_pair_closed(b: Monomial, trunc: int) -> BaileyPair:
    """Closed-form pair relative to (q^2, q^2), symmetrized in b."""
    if not 1 <= b.exp <= 2:
        raise ValueError("u_pair_closed needs b = +-q^(e/2) with e in {1, 2}")

    def v_term(bb: Monomial, n: int, t: int) -> QSeries:
        # q^n * U_n(q, bb, q)
        q_b = Monomial(1, 2) / bb
        inner = QSeries.zero(t)
        e0 = n * bb.exp + n * (n - 1)
        if e0 <= t:
            head = pochhammer(q_b, 2, n, t - e0)
            inner = scale(shift(head, e0), (-bb.sign) ** n)
        for j in range(1, n + 1):
            e = (n - j) * bb.exp + n * (n - 1) + j * (j + 1)
            room = t - e
            if room < 0:
                break
            term = mul(pochhammer(q_b.times_q(2 * j), 2, n - j, room), pochhammer(bb, 2, j, room))
            sign = (-1) ** n * bb.sign ** (n - j)
            inner = add(inner, scale(shift(term, e), 2 * sign))
        inner = mul_binomial(inner, -1, 8 * n + 4)
        inner = div_binomial(inner, -bb.sign, bb.exp)
        inner = div_binomial(inner, -1, 4)
        return div_pochhammer(inner, bb.times_q(2), 2, n)

    def alpha(n, t):
        up = t + 2 * n
        v = scale(add(v_term(b, n, up), v_term(-b, n, up)), HALF)
        return shift(v, -2 * n)

    b2 = b * b

    def beta(n, t):
        e = n * b2.exp + 2 * n * (n - 2)
        if e < 0:
            raise LaurentTerm("U2 numerator has a negative exponent")
        sign = (-b2.sign) ** n
        v = QSeries({e: sign}, t)
        v = div_pochhammer(v, Monomial(-1, 2), 2, 2 * n)
        return div_pochhammer(v, b2, 4, n + 1)

    return BaileyPair(Monomial(1, 4), 4, alpha, beta, trunc, f"u-closed(b={b})")


def u_pair_chain(b: Monomial, trunc: int) -> BaileyPair:
    """E(1) pushed through symmetrize_b and square_base."""
    return square_base(symmetrize_b(slater_e1(trunc), b, trunc), trunc)


# --- Bailey lemma ------------------------------------------------------------

def _n_ceiling(trunc: int) -> int:
    return 4 * max(trunc, 1)


def bailey_lemma_sides(p: BaileyPair, X1: Monomial, X2, trunc: Optional[int] = None
                       ) -> tuple[QSeries, QSeries]:
    """Both sides of the limiting Bailey lemma for the specialization (X1, X2).

    X2 (or X1) may be INFINITY, in which case
    (X2)_n (c/X2)^n -> (-1)^n c^n Q^(n(n-1)/2) and (aQ/X2)_k -> 1.
    """
    trunc = p.trunc if trunc is None else trunc
    if X1 is INFINITY:
        X1, X2 = X2, X1
    if X1 is INFINITY:
        raise ValueError("at most one of X1, X2 may be INFINITY")
    base = p.base
    Q = p.Q
    aQ = p.a * Q
    c1 = _quotient(aQ, X1, "bailey_lemma")
    if X2 is INFINITY:
        step = c1
        quad = True
        c2 = None
    else:
        c2 = _quotient(aQ, X2, "bailey_lemma")
        step = _quotient(c1, X2, "bailey_lemma")
        quad = False

    def mult_exp(n):
        return n * step.exp + (base * n * (n - 1) // 2 if quad else 0)

    if not quad and step.exp == 0:
        raise NonTerminating("aQ/(X1 X2) has exponent 0; the sum does not terminate")
    lhs = QSeries.zero(trunc)
    rhs_sum = QSeries.zero(trunc)
    n = 0
    while mult_exp(n) <= trunc:
        if n > _n_ceiling(trunc):
            raise NonTerminating(f"summation did not reach order {trunc} by n = {n}")
        e = mult_exp(n)
        room = trunc - e
        sign = step.sign ** n
        if quad and n % 2:
            sign = -sign
        mult = pochhammer(X1, base, n, room)
        if not quad:
            mult = mul(mult, pochhammer(X2, base, n, room))
        if mult:
            mult = scale(mult, sign)
            lhs = add(lhs, shift(mul(mult, p.beta(n, room)), e))
            r = div_pochhammer(mul(mult, p.alpha(n, room)), c1, base, n)
            if not quad:
                r = div_pochhammer(r, c2, base, n)
            rhs_sum = add(rhs_sum, shift(r, e))
        n += 1

    pre = pochhammer(c1, base, INFINITY, trunc)
    if not quad:
        pre = mul(pre, pochhammer(c2, base, INFINITY, trunc))
        pre = div_pochhammer(pre, step, base, INFINITY)
    pre = div_pochhammer(pre, aQ, base, INFINITY)
    return lhs, mul(pre, rhs_sum)


# --- Fine's identity ---------------------------------------------------------

def fine_sides(b: Monomial, t: Monomial, trunc: int) -> tuple[QSeries, QSeries]:
    """(t)_inf sum t^n/((q)_n (1 - b q^n))  and  sum (-t)^n b^n q^(n(n-1)/2)/(b)_(n+1)."""
    if t.exp <= 0:
        raise ValueError("t must have positive exponent")
    _require_unit(b, "fine_identity")
    lhs = QSeries.zero(trunc)
    rhs = QSeries.zero(trunc)
    n = 0
    while n * t.exp <= trunc:
        term = QSeries({n * t.exp: t.sign ** n}, trunc)
        term = div_pochhammer(term, Monomial(1, 2), 2, n)
        term = div_binomial(term, -b.sign, b.exp + 2 * n)
        lhs = add(lhs, term)
        e = n * t.exp + n * b.exp + n * (n - 1)
        if e <= trunc:
            sign = (-t.sign * b.sign) ** n
            r = div_pochhammer(QSeries({e: sign}, trunc), b, 2, n + 1)
            rhs = add(rhs, r)
        n += 1
    lhs = mul(pochhammer(t, 2, INFINITY, trunc), lhs)
    return lhs, rhs


def fine_identity_check(b: Monomial, t: Monomial, trunc: int) -> VerificationReport:
    start = time.perf_counter()
    lhs, rhs = fine_sides(b, t, trunc)
    return compare_series(f"fine(b={b},t={t})", "lhs~rhs", lhs, rhs, _ms(start))


def lemma_check(p: BaileyPair, X1: Monomial, X2, trunc: Optional[int] = None) -> VerificationReport:
    start = time.perf_counter()
    lhs, rhs = bailey_lemma_sides(p, X1, X2, trunc)
    return compare_series(f"bailey-lemma({p.label},X1={X1},X2={X2})", "lhs~rhs", lhs, rhs, _ms(start))


def compare_pairs(p: BaileyPair, other: BaileyPair, n_max: int, trunc: Optional[int] = None,
                  which: str = "beta") -> PairCheckReport:
    """Termwise comparison of p.<which>(n) with other.<which>(n) for n <= n_max."""
    trunc = p.trunc if trunc is None else trunc
    start = time.perf_counter()
    get_p, get_o = getattr(p, which), getattr(other, which)
    label = f"{p.label}~{other.label}"
    check = f"{which}-termwise"
    for n in range(n_max + 1):
        diff = first_difference(get_p(n, trunc), get_o(n, trunc))
        if diff is not None:
            e, l, r = diff
            return PairCheckReport(label, n + 1, trunc, "fail", PairFailure(n, e, l, r), _ms(start), check)
    return PairCheckReport(label, n_max + 1, trunc, "pass", None, _ms(start), check)
