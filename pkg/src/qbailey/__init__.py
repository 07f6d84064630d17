"""Exact q-series engine for Bailey pairs and three signed partition identities."""
from .bailey import (
    BaileyPair,
    bailey_lemma_sides,
    compare_pairs,
    fine_identity_check,
    lovejoy_star,
    slater_e1,
    square_base,
    symmetrize_b,
    u_pair_chain,
    u_pair_closed,
    verify_pair,
)
from .errors import DivergentInfiniteProduct, LaurentTerm, NonTerminating, NonUnit, QSeriesError
from .oracle import SignedCountTable, enumerate_P, enumerate_Q, enumerate_R
from .reports import PairCheckReport, VerificationReport
from .series import INFINITY, Monomial, QSeries, add, invert_unit, mul, pochhammer, substitute_square
from .theta import ThetaBlockSpec, theta_block, theorem_rhs
from .verify import lhs_series, verify_theorem

__version__ = "0.1.0"
