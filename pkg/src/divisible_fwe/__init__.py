from .algebra.exactnum import ExactNumber, Interval, qx_approx, qx_arith, qx_sign, qx_sqrt_in_field
from .algebra.poly import HomogPoly, UniPoly, WeightProfile, fwe_classify, homog_combine, macwilliams_apply, \
    transform_sign, weight_profile
from ._parser import parse_exact_literal
from .moments import CandidateQ, MomentMatrix, SearchReport, binomial_moment_rows, candidate_q, \
    construct_enumerator, factor_determinant, moment_determinant, moment_identity_check, moment_matrix, poly_det, \
    search_degree
from .zeta import RHVerdict, ZetaResult, functional_eq_check, genus_two_g, reciprocal_transform, rh_check, zeta_poly
from .rings import ExtremalResult, RingSpec, distance_bound, extremal_search, get_ring, ring_products, scan_extremal
from .conjecture import ChebyshevReport, chebyshev_T, scaled_chebyshev, verify_conjecture
from .catalog import CatalogEntry, CatalogFile, builtin_catalog, catalog_io, load_catalog
from .cli.__main__ import main, run_command
