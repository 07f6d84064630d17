"""Double theta sums over the cone |j| <= n.

A block is

    scale * sum_{n>=0} chi_n(n) t^(A n^2 + B n + C) * prod(factors) * sum_{|j|<=n} chi_j(j) t^(D j^2)

with t = q^(1/2).  In t-units the exponent A n^2 + B n + C + D j^2 is the value
of a positive definite binary quadratic form (plus a linear part) at (n, j);
for the first identity it is 2n^2 + n + j^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonTerminating
from .series import QSeries, add, mul_binomial, scale, shift

TRIVIAL = "trivial"
PARITY = "parity"


@dataclass(frozen=True)
class LinearFactor:
    """The two-term multiplier 1 + sign * t^(n_coeff*n + const)."""

    sign: int
    n_coeff: int
    const: int


@dataclass(frozen=True)
class ThetaBlockSpec:
    n2_coeff: int
    n1_coeff: int
    const_coeff: int
    j2_coeff: int
    chi_n: str = TRIVIAL
    chi_j: str = TRIVIAL
    scale: Fraction = Fraction(1)
    factors: tuple[LinearFactor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n2_coeff <= 0 or self.j2_coeff <= 0:
            raise ValueError("n2_coeff and j2_coeff must be positive")
        for chi in (self.chi_n, self.chi_j):
            if chi not in (TRIVIAL, PARITY):
                raise ValueError(f"unknown character {chi!r}")

    def outer_exp(self, n: int) -> int:
        return self.n2_coeff * n * n + self.n1_coeff * n + self.const_coeff


def _chi(kind: str, k: int) -> int:
    return -1 if kind == PARITY and k % 2 else 1


def theta_block(spec: ThetaBlockSpec, trunc: int) -> QSeries:
    total = QSeries.zero(trunc)
    if spec.scale == 0:
        return total
    inner: dict[int, int] = {}
    n = 0
    while True:
        e = spec.outer_exp(n)
        increasing = 2 * spec.n2_coeff * n + spec.n2_coeff + spec.n1_coeff > 0
        if e > trunc and increasing:
            break
        if n > 4 * max(trunc, 1):
            raise NonTerminating(f"theta block did not reach order {trunc}")
        # extend the j-sum by the two new endpoints j = +-n
        je = spec.j2_coeff * n * n
        if je <= trunc:
            inner[je] = inner.get(je, 0) + _chi(spec.chi_j, n) * (1 if n == 0 else 2)
        if 0 <= e <= trunc:
            room = trunc - e
            term = QSeries({k: v for k, v in inner.items() if k <= room}, room)
            for f in spec.factors:
                fe = f.n_coeff * n + f.const
                term = mul_binomial(term, f.sign, fe)
            term = scale(shift(term, e), _chi(spec.chi_n, n))
            total = add(total, term)
        n += 1
    return scale(total, spec.scale)


HALF = Fraction(1, 2)

# (n2, n1) of the outer exponent and any extra (1 + q^(2n+1)) factor, per identity
_SHAPES = {
    1: (2, 1, ()),
    2: (3, 0, (LinearFactor(1, 4, 2),)),
    3: (1, 0, ()),
}

# A variant of the third right-hand side carries an extra (1 + q^(2n+1)) factor.
# It is wrong already at q^1 (3 instead of 2): the Bailey lemma at X1 = q^2,
# X2 = -q cancels that factor against (-q;q^2)_n / (-q^3;q^2)_n.
_PRINTED = dict(_SHAPES)
_PRINTED[3] = (1, 0, (LinearFactor(1, 4, 2),))


def theorem_blocks(identity: int, as_printed: bool = False) -> tuple[ThetaBlockSpec, ThetaBlockSpec]:
    """The plain and the sign-twisted halves of an identity's right-hand side."""
    shapes = _PRINTED if as_printed else _SHAPES
    if identity not in shapes:
        raise ValueError(f"no identity {identity}")
    n2, n1, extra = shapes[identity]
    plain = ThetaBlockSpec(n2, n1, 0, 1, TRIVIAL, TRIVIAL, HALF,
                           extra + (LinearFactor(1, 2, 1),))
    twisted = ThetaBlockSpec(n2, n1, 0, 1, PARITY, PARITY, HALF,
                             extra + (LinearFactor(-1, 2, 1),))
    return plain, twisted


def theorem_rhs(identity: int, trunc: int, as_printed: bool = False) -> QSeries:
    plain, twisted = theorem_blocks(identity, as_printed)
    return add(theta_block(plain, trunc), theta_block(twisted, trunc))
