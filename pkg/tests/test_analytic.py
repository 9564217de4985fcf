from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hzneck import analytic as an
from hzneck import congruence as cg
from hzneck.arith import stirling_first
from hzneck.necklace import necklace_poly, necklace_poly_r
from hzneck.series import RatPoly

fractions = st.fractions(min_value=-9, max_value=9, max_denominator=7)


def brute_counter(n, k, r, m):
    return cg.count_cohen_bruteforce(cg.CongruenceInstance(n, k, r, m))


def test_euler_operator_examples():
    p = RatPoly([3, 0, 5])
    assert an.euler_op_power(p, 0) == p
    assert an.euler_op_power(RatPoly.monomial(1, 4), 2) == RatPoly.monomial(16, 4)
    assert an.euler_op_power(necklace_poly(0, 2), 1)(1) == Fraction(3, 2)


@given(st.lists(fractions, max_size=9).map(RatPoly), st.integers(1, 6))
def test_stirling_operator_identity(p, l):
    # t^l D^l = sum_m s(l, m) (t D)^m
    lhs = RatPoly.monomial(1, l) * an.nth_derivative(p, l)
    rhs = RatPoly()
    for m in range(1, l + 1):
        rhs = rhs + an.euler_op_power(p, m).scale(stirling_first(l, m))
    assert lhs == rhs


def test_bridge_examples():
    assert cg.count_cohen_bruteforce(cg.CongruenceInstance(0, 2, 1, 2)) == 10
    assert an.stirling_derivative_bridge(0, 2, 1, 1, brute_counter) == Fraction(3, 2)
    assert an.stirling_derivative_bridge(0, 2, 1, 2, brute_counter) == 1


def test_key_identity_with_enumerated_counts():
    for k in range(1, 5):
        for r in (1, 2):
            for m in range(0, 3):
                if k ** (m + r * m) > 10**6:
                    continue
                for n in range(k**r + 1):
                    lhs, rhs = an.key_identity_sides(n, k, r, m, brute_counter)
                    assert lhs == rhs, (n, k, r, m)


def test_taylor_and_exponential_reconstruct_M():
    for k in range(1, 7):
        for r in (1, 2):
            for n in range(0, k**r + 2):
                poly = necklace_poly_r(n, k, r)
                assert an.taylor_expansion_t1(n, k, r) == poly
                assert an.exponential_expansion(n, k, r, 6) == an.compose_with_exp(poly, 6)
                assert an.taylor_expansion_t1(n, k, r, form="exponential", order=6) == an.compose_with_exp(poly, 6)


def test_polylog_examples():
    assert an.polylog_partial(3, 0, 50).value == 0
    li = an.polylog_partial(3, Fraction(1, 2), 200)
    with mpmath.workdps(50):
        assert abs(li.value - mpmath.polylog(3, mpmath.mpf(1) / 2)) <= li.tail_bound
    assert li.tail_bound < mpmath.mpf(2) ** -200


def test_zeta2_with_large_K():
    z = an.zeta_partial(2, 10**6)
    with mpmath.workdps(50):
        assert abs(z.value - mpmath.pi**2 / 6) <= z.tail_bound + mpmath.mpf(10) ** -40
    assert z.tail_bound < 1e-4


@pytest.mark.parametrize("e, t", [(2, 1), (3, 1), (4, Fraction(-1, 2)), (5, Fraction(3, 4))])
def test_tail_bounds_are_honest(e, t):
    part = an.polylog_partial(e, t, 40)
    with mpmath.workdps(50):
        exact = mpmath.polylog(e, an._mp(t))
        assert abs(exact - part.value) <= part.tail_bound


def test_sigma_examples():
    assert an.sigma_p(1, 2, 5) == 1
    assert an.sigma_p(4, 1, 1) == 7
    assert an.sigma_p(4, 2, -2) == 1 + mpmath.mpf(2) ** -4


def test_dirichlet_Q_examples():
    rep = an.verify_dirichlet_Q(1, 1, 1, 3)
    assert rep.passed and rep.discrepancy < 1e-4
    rep4 = an.verify_dirichlet_Q(4, 1, 1, 3)
    with mpmath.workdps(50):
        scale = 1 + mpmath.mpf(2) ** -3 + mpmath.mpf(4) ** -3
        assert abs(rep4.rhs - rep.rhs * scale) < mpmath.mpf(10) ** -40
    assert an.verify_dirichlet_Q(1, 2, 1, 2).passed


def test_dirichlet_Q_against_true_zeta():
    rep = an.verify_dirichlet_Q(6, 1, 1, 4, K=400)
    with mpmath.workdps(50):
        exact = mpmath.zeta(4) / mpmath.zeta(5) * an.sigma_p(6, 1, -4)
        assert abs(rep.lhs - exact) <= rep.tail_bound


def test_dirichlet_M_examples():
    rep = an.verify_dirichlet_M(1, 1, 1, 2)
    assert rep.lhs == 1 and rep.rhs == 1 and rep.passed
    rep = an.verify_dirichlet_M(1, 1, Fraction(1, 2), 2)
    with mpmath.workdps(50):
        exact = mpmath.polylog(3, mpmath.mpf(1) / 2) / mpmath.zeta(3)
        assert abs(rep.lhs - exact) < 1e-4
    assert rep.passed
    rep6 = an.verify_dirichlet_M(6, 1, Fraction(1, 2), 2)
    with mpmath.workdps(50):
        assert abs(rep6.rhs - rep.rhs * an.sigma_p(6, 1, -2)) < mpmath.mpf(10) ** -40


def test_prop5_examples():
    assert an.verify_prop5_series(1, 1, 4, 1).passed
    assert an.verify_prop5_series(1, 1, 6, 2).passed
    degenerate = an.verify_prop5_series(4, 1, 3, 0)
    direct = an.verify_dirichlet_M(4, 1, 1, 3)
    assert degenerate.lhs == direct.lhs and degenerate.rhs == direct.rhs


def test_prop5_lhs_matches_termwise_counts():
    for l in (1, 2, 3):
        rep = an.verify_prop5_series(6, 1, 6, l, K=150)
        termwise = an.prop5_termwise_Q(6, 1, 6, l, 150)
        assert abs(rep.lhs - termwise) < mpmath.mpf(10) ** -40


def test_polylog_euler_reduction_is_exact():
    for s, m in [(3, 1), (4, 2), (5, 3)]:
        assert an.polylog_euler_reduction(s, m, 60) == an.zeta_partial_exact(s - m, 60)


def test_report_json_fields():
    d = an.verify_dirichlet_Q(1, 1, 1, 4, K=100).as_json()
    assert {"lhs", "rhs", "discrepancy", "tail_bound", "pass", "precision_dps"} <= set(d)
    assert d["precision_dps"] >= 50


@pytest.mark.parametrize("call", [
    lambda: an.verify_dirichlet_Q(1, 1, 1, 0.5),
    lambda: an.verify_dirichlet_M(1, 1, 2, 3),
    lambda: an.verify_prop5_series(1, 1, 1, 2),
])
def test_divergent_parameters_rejected(call):
    with pytest.raises(ValueError):
        call()
