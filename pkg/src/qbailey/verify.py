"""Three-way checks of the partition identities.

For each identity the left-hand side is computed three ways: from its
displayed q-series, from the Bailey lemma applied to the pair it comes from,
and by enumeration.  The right-hand side comes from the theta blocks.
"""
from __future__ import annotations

import time

from .bailey import bailey_lemma_sides, slater_e1, symmetrize_b, u_pair_closed
from .errors import NonTerminating
from .oracle import SignedCountTable, enumerate_family
from .reports import VerificationReport, compare_series
from .series import (
    INFINITY,
    Monomial,
    QSeries,
    add,
    div_binomial,
    div_pochhammer,
    pochhammer,
    shift,
)
from .theta import theorem_rhs

IDENTITIES = (1, 2, 3)
FAMILY = {1: "P", 2: "Q", 3: "R"}

HALF_Q = Monomial(1, 1)


def _lhs_exponent(identity: int, n: int) -> int:
    # t-units of q^(n(n+1)/2), q^(2n^2), q^(n^2)
    return {1: n * (n + 1), 2: 4 * n * n, 3: 2 * n * n}[identity]


def _lhs_term(identity: int, n: int, room: int) -> QSeries:
    one = QSeries.one(room)
    if identity == 1:
        v = div_pochhammer(one, Monomial(-1, 2), 2, n)
        v = div_binomial(v, -1, 4 * n + 2)
        return v if n % 2 == 0 else -v
    v = pochhammer(Monomial(1, 4), 4, n, room)
    v = div_pochhammer(v, Monomial(-1, 4), 4, n)
    if identity == 2:
        v = div_pochhammer(v, Monomial(1, 4), 8, n)
        return div_binomial(v, -1, 4 * n + 2)
    return div_pochhammer(v, Monomial(1, 2), 4, n + 1)


def lhs_series(identity: int, trunc: int) -> QSeries:
    """The single-sum side of an identity, as a series to order trunc."""
    if identity not in IDENTITIES:
        raise ValueError(f"no identity {identity}")
    total = QSeries.zero(trunc)
    n = 0
    while _lhs_exponent(identity, n) <= trunc:
        if n > 4 * max(trunc, 1):
            raise NonTerminating("lhs summation did not terminate")
        e = _lhs_exponent(identity, n)
        total = add(total, shift(_lhs_term(identity, n, trunc - e), e))
        n += 1
    return total


def table_series(table: SignedCountTable) -> QSeries:
    return QSeries({2 * n: c for n, c in enumerate(table.counts)}, 2 * table.n_max)


def source_pair(identity: int, trunc: int):
    """(pair, X1, X2) whose Bailey lemma specialization gives the identity."""
    if identity == 1:
        return symmetrize_b(slater_e1(trunc), HALF_Q, trunc), Monomial(1, 2), INFINITY
    pair = u_pair_closed(HALF_Q, trunc)
    if identity == 2:
        return pair, Monomial(1, 4), INFINITY
    if identity == 3:
        return pair, Monomial(1, 4), Monomial(-1, 2)
    raise ValueError(f"no identity {identity}")


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, int(round((time.perf_counter() - start) * 1000))


def verify_theorem(identity: int, trunc: int = 200, with_oracle: bool = True,
                   oracle_n_max: int = 50, as_printed: bool = False) -> list[VerificationReport]:
    """Run every comparison leg for one identity at order trunc (t-units).

    Legs: displayed lhs vs theta rhs; lhs vs enumeration (optional); lhs vs
    the Bailey-lemma left side of the source pair; and the two Bailey-lemma
    sides against each other.  ``as_printed`` swaps in the uncorrected theta
    side of the third identity.
    """
    if identity not in IDENTITIES:
        raise ValueError(f"no identity {identity}")
    if with_oracle and 2 * oracle_n_max > trunc:
        raise ValueError("oracle_n_max must not exceed the truncation order in q-units")
    name = f"theorem{identity}"
    lhs, t_lhs = _timed(lhs_series, identity, trunc)
    rhs, t_rhs = _timed(theorem_rhs, identity, trunc, as_printed)
    reports = [compare_series(name, "lhs~theta", lhs, rhs, t_lhs + t_rhs)]
    if with_oracle:
        table, t_tab = _timed(enumerate_family, FAMILY[identity], oracle_n_max)
        reports.append(compare_series(name, "lhs~oracle", lhs, table_series(table), t_tab))
    pair, X1, X2 = source_pair(identity, trunc)
    (b_lhs, b_rhs), t_b = _timed(bailey_lemma_sides, pair, X1, X2, trunc)
    reports.append(compare_series(name, "lhs~bailey-lhs", lhs, b_lhs, t_b))
    reports.append(compare_series(name, "bailey-lhs~bailey-rhs", b_lhs, b_rhs, 0))
    return reports
