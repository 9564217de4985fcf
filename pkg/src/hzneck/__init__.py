"""Exact arithmetic for Ramanujan and Cohen sums, n-necklace and Harer-Zagier
polynomials, semilinear congruence counts and the Harer-Zagier generating
functions for Euler characteristics of mapping class groups."""
from .errors import IdentityViolation, Inconclusive, InstanceTooLarge
from .ramanujan import c_kld, cohen_c, ramanujan_c
from .necklace import beta_poly, cycle_index_regular_cyclic, necklace_poly, necklace_poly_r
from .congruence import count_cohen_closed, count_linear_closed
from .series import Monomial, RatPoly, TruncSeries
from .moduli import euler_series_closed, euler_series_punctured

__all__ = [
    "IdentityViolation", "Inconclusive", "InstanceTooLarge",
    "ramanujan_c", "cohen_c", "c_kld",
    "necklace_poly", "necklace_poly_r", "beta_poly", "cycle_index_regular_cyclic",
    "count_linear_closed", "count_cohen_closed",
    "RatPoly", "TruncSeries", "Monomial",
    "euler_series_punctured", "euler_series_closed",
]
