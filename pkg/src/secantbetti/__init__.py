"""Exact computation of secant ideals of curves, their Betti tables and invariants."""

from .field import Field, QQ, GF32003
from .polyring import (GREVLEX, LEX, MonomialOrder, ParseError, Polynomial, PolynomialRing,
                       RingMismatch, format_polynomial, parse_polynomial)
from .groebner import (GroebnerBasis, GroebnerTruncation, Ideal, buchberger, eliminate,
                       groebner_basis, normal_form, same_ideal, standard_monomials)
from .hilbert import HilbertData, hilbert_function, hilbert_poly
from .betti import (BettiTable, Inconclusive, alternating_sum, betti_table, is_acm, n_dp_check,
                    regularity)
from .determinantal import (HypothesisError, KoszulChain, LinearFormMatrix, build_gamma,
                            curve_from_matrix, cycle_certificate, en_betti, en_table,
                            hankel_matrix, minor_ideal, rnc_ideal, verify_cycle)
from .secant import SecantResult, SecantSpec, secant_by_elimination, secant_graded_piece, secant_ideal
from .fixtures import genus2_curve, genus2_fixture
from .predictions import (CurveParams, PredictionReport, deg_secant, genus_section,
                          predict_beta13, predict_beta24, predict_corner, predict_hilbert_poly,
                          verify_all)

__version__ = "0.1.0"
