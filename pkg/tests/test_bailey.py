from fractions import Fraction

import pytest

from qbailey.bailey import (
    bailey_lemma_sides,
    compare_pairs,
    fine_identity_check,
    fine_sides,
    lovejoy_star,
    perturb_alpha,
    slater_e1,
    square_base,
    symmetrize_b,
    u_pair_chain,
    u_pair_closed,
    verify_pair,
)
from qbailey.errors import LaurentTerm, NonTerminating, NonUnit
from qbailey.series import (
    INFINITY,
    Monomial,
    QSeries,
    div_binomial,
    div_pochhammer,
    first_difference,
    invert_unit,
    mul,
    pochhammer,
)

HALF = Monomial(1, 1)  # q^(1/2)
Q1 = Monomial(1, 2)
Q2 = Monomial(1, 4)
T = 80


@pytest.fixture(scope="module")
def e1():
    return slater_e1(T)


@pytest.fixture(scope="module")
def sym(e1):
    return symmetrize_b(e1, HALF, T)


@pytest.fixture(scope="module")
def chain():
    return u_pair_chain(HALF, T)


@pytest.fixture(scope="module")
def closed():
    return u_pair_closed(HALF, T)


# --- E(1) ---

def test_e1_terms(e1):
    assert e1.alpha(0) == QSeries.one(T)
    assert e1.alpha(2).terms == {8: 2}
    assert e1.alpha(3).terms == {18: -2}
    assert e1.beta(1) == invert_unit(QSeries({0: 1, 4: -1}, T))
    assert e1.a == Monomial(1, 0) and e1.base == 2


def test_e1_relation(e1):
    assert verify_pair(e1, 0).passed
    r = verify_pair(e1, 10, T)
    assert r.passed and r.n_checked == 11 and r.first_failure is None


def test_e1_doubled_alpha1_fails_at_n1(e1):
    doubled = perturb_alpha(e1, 1, 2, -2)  # alpha_1: -2q -> -4q
    assert doubled.alpha(1).terms == {2: -4}
    r = verify_pair(doubled, 2)
    assert not r.passed
    assert r.first_failure.n == 1


def test_relation_by_hand_n1(e1):
    # beta_1 = 1/((q)_1 (q)_1) + alpha_1/(q)_2, written out without the engine's loop
    t = 30
    one = QSeries.one(t)
    lhs = div_binomial(div_binomial(one, -1, 2), -1, 2)
    lhs = lhs + div_pochhammer(QSeries({2: -2}, t), Q1, 2, 2)
    assert first_difference(lhs, e1.beta(1, t)) is None


# --- Lovejoy transform ---

def test_star_n0(e1):
    star = lovejoy_star(e1, HALF, T)
    assert star.beta(0) == e1.beta(0)
    assert star.alpha(0) == e1.alpha(0)
    assert star.a == Q1 and star.base == 2


def test_star_alpha1_by_hand(e1):
    # a = 1, b = q^(1/2): (b)_1/(q/b)_1 = 1 and (-b)^-1 alpha_1 = 2q^(1/2), so
    # alpha*_1 = (1-q^3)(1-q^(1/2))(-q^(1/2)) / ((1-q)(1-q^(3/2))) * (1 + 2q^(1/2))
    t = 40
    num = mul(mul(QSeries({0: 1, 6: -1}, t), QSeries({0: 1, 1: -1}, t)), QSeries({1: -1}, t))
    den = mul(QSeries({0: 1, 2: -1}, t), QSeries({0: 1, 3: -1}, t))
    expected = mul(mul(num, invert_unit(den)), QSeries({0: 1, 1: 2}, t))
    assert lovejoy_star(e1, HALF, t).alpha(1, t) == expected


@pytest.mark.parametrize("b", [HALF, -HALF, Monomial(1, 2)])
def test_star_is_pair(e1, b):
    assert verify_pair(lovejoy_star(e1, b, T), 10).passed


def test_star_rejects_b_one(e1):
    with pytest.raises(NonUnit):
        lovejoy_star(e1, Monomial(1, 0))


# --- symmetrized transform ---

def test_sym_beta0(sym):
    assert sym.beta(0) == invert_unit(QSeries({0: 1, 2: -1}, T))


def test_sym_is_pair(sym):
    assert sym.a == Q1 and sym.base == 2
    assert verify_pair(sym, 10).passed


def test_sym_beta_even_in_b(e1, sym):
    other = symmetrize_b(e1, -HALF, T)
    for n in range(6):
        assert sym.beta(n) == other.beta(n)


def test_sym_alpha_supported_on_integer_powers(sym):
    for n in range(8):
        assert all(e % 2 == 0 for e in sym.alpha(n).terms)


@pytest.mark.parametrize("b", [Monomial(1, 0), Monomial(-1, 0)])
def test_sym_rejects_unit_b(e1, b):
    with pytest.raises(NonUnit):
        symmetrize_b(e1, b)


def test_sym_needs_a_one(sym):
    with pytest.raises(ValueError):
        symmetrize_b(sym, HALF)


# --- base change ---

def test_square_base_n0(sym):
    sq = square_base(sym, T)
    assert sq.beta(0) == sym.beta(0)
    assert sq.alpha(0) == sym.alpha(0)
    assert sq.a == Q2 and sq.base == 4


def test_square_base_is_pair(chain):
    assert verify_pair(chain, 8).passed


def test_square_base_of_e1_needs_unit(e1):
    # a = 1 gives (1 + a) = 2, still a unit; the construction goes through
    sq = square_base(e1, 40)
    assert sq.a == Monomial(1, 0) and sq.base == 4
    assert verify_pair(sq, 4).passed


# --- closed-form pair ---

def test_u_closed_beta0(closed):
    assert closed.beta(0) == invert_unit(QSeries({0: 1, 2: -1}, T))


def test_u_closed_is_pair(closed):
    assert verify_pair(closed, 8).passed


def test_chain_equals_closed(chain, closed):
    assert compare_pairs(chain, closed, 8, T, "beta").passed
    assert compare_pairs(chain, closed, 8, T, "alpha").passed


@pytest.mark.parametrize("b", [-HALF, Monomial(1, 2), Monomial(-1, 2)])
def test_chain_equals_closed_other_b(b):
    chain, closed = u_pair_chain(b, 40), u_pair_closed(b, 40)
    assert compare_pairs(chain, closed, 5, 40, "beta").passed
    assert verify_pair(closed, 5).passed


def test_u_closed_rejects_b():
    with pytest.raises(ValueError):
        u_pair_closed(Monomial(1, 0), T)
    with pytest.raises(ValueError):
        u_pair_closed(Monomial(1, 3), T)


# --- perturbation ---

@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_perturbing_alpha_breaks_relation(sym, n):
    e = 2 * n * n + 2
    r = verify_pair(perturb_alpha(sym, n, e, Fraction(1, 3)), 6)
    assert not r.passed
    assert r.first_failure.n == n


def test_perturbing_u_alpha(closed):
    r = verify_pair(perturb_alpha(closed, 2, 10), 4)
    assert r.first_failure.n == 2
    # alpha_n enters beta_n through 1/((Q)_0 (aQ)_{2n}), so the shift shows up at the same exponent
    assert r.first_failure.t_units == 10


# --- Bailey lemma ---

def test_lemma_theorem1_lhs_shape(sym):
    lhs, rhs = bailey_lemma_sides(sym, Q1, INFINITY, 60)
    expected = QSeries.zero(60)
    for n in range(10):
        e = n * (n + 1)
        if e > 60:
            break
        term = div_pochhammer(QSeries({e: (-1) ** n}, 60), Monomial(-1, 2), 2, n)
        expected = expected + div_binomial(term, -1, 4 * n + 2)
    assert lhs == expected
    assert lhs == rhs


@pytest.mark.parametrize("X1,X2", [
    (Q1, INFINITY),
    (Monomial(-1, 2), INFINITY),
    (Q1, Monomial(-1, 1)),
    (HALF, Monomial(1, 1)),
])
def test_lemma_sides_agree_for_sym(sym, X1, X2):
    lhs, rhs = bailey_lemma_sides(sym, X1, X2, 60)
    assert first_difference(lhs, rhs) is None


@pytest.mark.parametrize("X1,X2", [(Q2, INFINITY), (Q2, Monomial(-1, 2)), (Q1, Monomial(-1, 2)), (INFINITY, Q2)])
def test_lemma_sides_agree_for_u(closed, X1, X2):
    lhs, rhs = bailey_lemma_sides(closed, X1, X2, 60)
    assert lhs == rhs


def test_lemma_sides_agree_for_e1(e1):
    # X1 = q would make aQ/X1 = 1 and (1;q)_n vanish
    lhs, rhs = bailey_lemma_sides(e1, Monomial(-1, 2), INFINITY, 60)
    assert lhs == rhs
    with pytest.raises(NonUnit):
        bailey_lemma_sides(e1, Q1, INFINITY, 60)


def test_lemma_detects_broken_pair(sym):
    lhs, rhs = bailey_lemma_sides(perturb_alpha(sym, 1, 2, 1), Q1, INFINITY, 60)
    assert lhs != rhs


def test_lemma_non_terminating(sym):
    # aQ/(X1 X2) = 1: the n-sum never decays
    with pytest.raises(NonTerminating):
        bailey_lemma_sides(sym, Q1, Q1, 20)


def test_lemma_laurent_guard(sym):
    with pytest.raises(LaurentTerm):
        bailey_lemma_sides(sym, Monomial(1, 6), INFINITY, 20)


# --- Fine's identity ---

def test_fine_large_t_collapses():
    t = 20
    lhs, rhs = fine_sides(HALF, Monomial(1, 2 * t + 2), t)
    geo = invert_unit(QSeries({0: 1, 1: -1}, t))
    assert lhs == geo and rhs == geo


@pytest.mark.parametrize("b,t", [(HALF, Q1), (Monomial(-1, 2), Q2), (Q1, Q1), (Monomial(-1, 0), HALF)])
def test_fine_identity(b, t):
    r = fine_identity_check(b, t, T)
    assert r.passed, r


def test_fine_rejects():
    with pytest.raises(NonUnit):
        fine_identity_check(Monomial(1, 0), Q1, 20)
    with pytest.raises(ValueError):
        fine_identity_check(HALF, Monomial(1, 0), 20)


# --- laziness ---

def test_terms_are_cached_and_coherent(sym):
    hi = sym.alpha(4, 120)
    lo = sym.alpha(4, 40)
    assert lo.trunc == 40
    assert first_difference(hi, lo) is None


def test_infinite_pochhammer_is_stable():
    assert pochhammer(HALF, 2, INFINITY, 30).truncate(10) == pochhammer(HALF, 2, INFINITY, 10)
