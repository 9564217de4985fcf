"""Taylor/Stirling bridges between M_r(t; n, k) and the semilinear counts,
and the Dirichlet-series identities involving zeta, Li_s and sigma_p(n, r).

Real-valued work runs at ``DPS`` significant digits with mpmath; tails of
truncated Dirichlet series are bounded by comparison with an integral.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Optional

import mpmath

from . import congruence, necklace
from .arith import divisors, integer_root, stirling_first
from .errors import IdentityViolation
from .series import RatPoly, TruncSeries, series_exp

DPS = 50

QCounter = Callable[[int, int, int, int], int]


def _closed_counter(n: int, k: int, r: int, m: int) -> int:
    return congruence.count_cohen_closed(n, k, r, m)


def euler_op_power(p: RatPoly, m: int) -> RatPoly:
    """(t d/dt)^m p."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return RatPoly(c * e**m for e, c in enumerate(p.coeffs))


def nth_derivative(p: RatPoly, l: int) -> RatPoly:
    for _ in range(l):
        p = p.derivative()
    return p


def falling_factorial(x: int, l: int) -> int:
    """x (x-1) ... (x-l+1): the l-th derivative of t^x at t = 1."""
    out = 1
    for i in range(l):
        out *= x - i
    return out


def delta_divides(n: int, k: int, r: int) -> int:
    """M_r(1; n, k), which is 1 when k^r | n and 0 otherwise."""
    return 1 if n % k**r == 0 else 0


def key_identity_sides(n: int, k: int, r: int, m: int, counter: QCounter = _closed_counter):
    """((t d/dt)^m M_r)(1) and Q_r(n, k, m) / k^(rm)."""
    lhs = euler_op_power(necklace.necklace_poly_r(n, k, r), m)(Fraction(1))
    rhs = Fraction(counter(n, k, r, m), k ** (r * m))
    return Fraction(lhs), rhs


def stirling_derivative_bridge(n: int, k: int, r: int, l: int,
                               counter: QCounter = _closed_counter) -> Fraction:
    """l-th derivative of M_r(t; n, k) at t = 1, checked against
    sum_{m=1}^{l} s(l, m) Q_r(n, k, m) / k^(rm)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    direct = Fraction(nth_derivative(necklace.necklace_poly_r(n, k, r), l)(Fraction(1)))
    stirling = sum(
        (stirling_first(l, m) * Fraction(counter(n, k, r, m), k ** (r * m)) for m in range(1, l + 1)),
        Fraction(0),
    )
    if direct != stirling:
        raise IdentityViolation(
            f"derivative bridge n={n} k={k} r={r} l={l}: {direct} != {stirling}"
        )
    return direct


def _binomial_shift_poly(l: int) -> RatPoly:
    return RatPoly([-1, 1]) ** l


def taylor_expansion_t1(n: int, k: int, r: int, counter: QCounter = _closed_counter,
                        form: str = "power", order: Optional[int] = None):
    """delta + sum_{l=1}^{k} (t-1)^l / l! * sum_m s(l,m) Q_r(n,k,m)/k^(rm), expanded in t.

    ``form="exponential"`` returns the expansion in lambda = log t instead,
    to O(lambda^order) (default order k + 1).
    """
    if form == "exponential":
        return exponential_expansion(n, k, r, order if order is not None else k + 1, counter)
    if form != "power":
        raise ValueError(f"unknown form {form!r}")
    ratios = {m: Fraction(counter(n, k, r, m), k ** (r * m)) for m in range(1, k + 1)}
    out = RatPoly([delta_divides(n, k, r)])
    for l in range(1, k + 1):
        c = sum((stirling_first(l, m) * ratios[m] for m in range(1, l + 1)), Fraction(0))
        out = out + _binomial_shift_poly(l).scale(c / factorial(l))
    return out


def exponential_expansion(n: int, k: int, r: int, order: int,
                          counter: QCounter = _closed_counter) -> TruncSeries:
    """M_r(e^lambda; n, k) = delta + sum_{l>=1} lambda^l / l! * Q_r(n,k,l)/k^(rl), to O(lambda^order)."""
    terms = {0: Fraction(delta_divides(n, k, r))}
    for l in range(1, order):
        terms[l] = Fraction(counter(n, k, r, l), k ** (r * l) * factorial(l))
    return TruncSeries.from_dict(terms, order)


def compose_with_exp(p: RatPoly, order: int) -> TruncSeries:
    """p(e^lambda) to O(lambda^order) by Horner over series."""
    e_lam = series_exp(TruncSeries.monomial(1, 1, order), order)
    acc = TruncSeries.zero(order)
    for c in reversed(p.coeffs):
        acc = acc * e_lam + TruncSeries.monomial(c, 0, order)
    return acc


# ---------------------------------------------------------------------------
# Dirichlet series


@dataclass
class DirichletPartial:
    value: mpmath.mpf
    terms_used: int
    tail_bound: mpmath.mpf
    exponent: mpmath.mpf


def _mp(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _power_tail(K: int, excess) -> mpmath.mpf:
    """sum_{k>K} k^(-excess) <= K^(1-excess) / (excess - 1)."""
    excess = _mp(excess)
    if excess <= 1:
        raise ValueError(f"tail of sum k^-{excess} diverges")
    return _mp(K) ** (1 - excess) / (excess - 1)


def polylog_partial(e, t, K: int) -> DirichletPartial:
    """sum_{k=1}^{K} t^k / k^e with a bound on the omitted tail."""
    with mpmath.workdps(DPS):
        e, t = _mp(e), _mp(t)
        if K < 1:
            raise ValueError("K must be >= 1")
        if abs(t) > 1:
            raise ValueError("|t| must be <= 1")
        if abs(t) == 1 and e <= 1:
            raise ValueError(f"Li_{e}({t}) diverges")
        value = mpmath.fsum(t**k / mpmath.mpf(k) ** e for k in range(1, K + 1))
        if t == 0:
            tail = mpmath.mpf(0)
        else:
            bounds = []
            if e > 1:
                bounds.append(_power_tail(K, e))
            if abs(t) < 1:
                bounds.append(abs(t) ** (K + 1) / ((1 - abs(t)) * mpmath.mpf(K + 1) ** e))
            tail = min(bounds)
        return DirichletPartial(value, K, tail, e)


def zeta_partial(e, K: int) -> DirichletPartial:
    return polylog_partial(e, 1, K)


def sigma_p(n: int, r: int, p) -> mpmath.mpf:
    """sum over d with d^r | n of d^(rp)."""
    if n < 1 or r < 1:
        raise ValueError("need n, r >= 1")
    with mpmath.workdps(DPS):
        p = _mp(p)
        return mpmath.fsum(
            mpmath.mpf(d) ** (r * p) for d in range(1, integer_root(n, r) + 1) if n % d**r == 0
        )


def _coefficient_scale(n: int, r: int) -> int:
    # |c_r(n, e)| <= sum_{f^r | n} f^r for every e
    return sum(d**r for d in range(1, integer_root(n, r) + 1) if n % d**r == 0)


def _ratio_with_bounds(num: DirichletPartial, den: DirichletPartial):
    """num/den from partial sums of positive series; bound on |true - estimate|."""
    est = num.value / den.value
    lo = num.value / (den.value + den.tail_bound)
    hi = (num.value + num.tail_bound) / den.value
    return est, max(abs(est - lo), abs(hi - est))


@dataclass
class DirichletReport:
    which: str
    params: Dict[str, object]
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    discrepancy: mpmath.mpf
    tail_bound: mpmath.mpf
    tol: float
    passed: bool

    def as_json(self) -> dict:
        d = asdict(self)
        for key in ("lhs", "rhs", "discrepancy", "tail_bound"):
            d[key] = mpmath.nstr(d[key], 20)
        d["pass"] = d.pop("passed")
        d["precision_dps"] = DPS
        return d


def _finish(which, params, lhs, rhs, tail, tol) -> DirichletReport:
    disc = abs(lhs - rhs)
    rounding = mpmath.mpf(10) ** (-(DPS - 10))
    passed = bool(disc <= tail + rounding and tail <= tol)
    return DirichletReport(which, params, lhs, rhs, disc, tail, tol, passed)


def verify_dirichlet_Q(n: int, r: int, m: int, p, K: int = 2000, tol: float = 1e-4,
                       counter: QCounter = _closed_counter) -> DirichletReport:
    """sum_k Q_r(n,k,m) / k^(r(p+m)) against zeta(rp+r-m)/zeta(rp+r) * sigma_{-p}(n, r)."""
    with mpmath.workdps(DPS):
        p = _mp(p)
        s = r * p + r
        if s - m <= 1:
            raise ValueError(f"rp + r - m = {s - m} gives a divergent series")
        terms = []
        for k in range(1, K + 1):
            ratio = Fraction(counter(n, k, r, m), k ** (r * m))
            terms.append(_mp(ratio) / mpmath.mpf(k) ** (r * p))
        lhs = mpmath.fsum(terms)
        # |Q/k^(rm)| <= C tau(k) k^(m-r) and tau(k) <= 2 sqrt(k)
        lhs_tail = 2 * _coefficient_scale(n, r) * _power_tail(K, s - m - mpmath.mpf(1) / 2)
        ratio, ratio_err = _ratio_with_bounds(zeta_partial(s - m, K), zeta_partial(s, K))
        sig = sigma_p(n, r, -p)
        rhs = ratio * sig
        tail = lhs_tail + ratio_err * sig
        return _finish("Q", {"n": n, "r": r, "m": m, "p": str(p), "K": K}, lhs, rhs, tail, tol)


def verify_dirichlet_M(n: int, r: int, t, p, K: int = 2000, tol: float = 1e-4) -> DirichletReport:
    """sum_k M_r(t;n,k) / k^(rp) against Li_{rp+r}(t)/zeta(rp+r) * sigma_{-p}(n, r)."""
    with mpmath.workdps(DPS):
        p, tm = _mp(p), _mp(t)
        s = r * p + r
        if s <= 1:
            raise ValueError(f"rp + r = {s} gives a divergent series")
        if abs(tm) > 1:
            raise ValueError("|t| must be <= 1")
        terms = []
        for k in range(1, K + 1):
            terms_k = necklace.necklace_terms(n, k, r)
            val = mpmath.fsum(_mp(c) * tm**e for e, c in terms_k.items())
            terms.append(val / mpmath.mpf(k) ** (r * p))
        lhs = mpmath.fsum(terms)
        sig = sigma_p(n, r, -p)
        if tm == 1:
            # M_r(1; n, k) vanishes unless k^r | n, so the lhs is a finite sum
            if K**r < n:
                raise ValueError("K too small to reach every k with k^r | n")
            li, z = polylog_partial(s, 1, K), zeta_partial(s, K)
            rhs = li.value / z.value * sig  # identical partial sums, ratio exactly 1
            tail = mpmath.mpf(0)
        else:
            scale = _coefficient_scale(n, r)
            if abs(tm) < 1:
                # |sum_{d|k} c_r(n, k/d) t^d| <= C |t| / (1 - |t|)
                lhs_tail = scale * abs(tm) / (1 - abs(tm)) * _power_tail(K, s)
            else:
                lhs_tail = 2 * scale * _power_tail(K, s - mpmath.mpf(1) / 2)
            pair = (polylog_partial(s, tm, K), zeta_partial(s, K))
            ratio, ratio_err = _ratio_with_bounds(*pair) if tm >= 0 else _signed_ratio(*pair)
            rhs = ratio * sig
            tail = lhs_tail + ratio_err * sig
        params = {"n": n, "r": r, "t": str(t), "p": str(p), "K": K}
        return _finish("M", params, lhs, rhs, tail, tol)


def _signed_ratio(num: DirichletPartial, den: DirichletPartial):
    est = num.value / den.value
    # |num_true/den_true - num/den| <= tail_n/den + |num| tail_d / den^2
    err = num.tail_bound / den.value + abs(num.value) * den.tail_bound / den.value**2 \
        + num.tail_bound * den.tail_bound / den.value**2
    return est, err


def verify_prop5_series(n: int, r: int, p, l: int, K: int = 2000, tol: float = 1e-4,
                        counter: QCounter = _closed_counter) -> DirichletReport:
    """l-th t-derivative at t = 1 of sum_k M_r(t;n,k)/k^(rp), termwise, against
    sum_{m=1}^{l} s(l, m) zeta(rp+r-m)/zeta(rp+r) sigma_{-p}(n, r).

    l = 0 degenerates to the t = 1 case of :func:`verify_dirichlet_M`.
    """
    if l == 0:
        report = verify_dirichlet_M(n, r, 1, p, K, tol)
        report.which = "prop5"
        report.params["l"] = 0
        return report
    if l < 0:
        raise ValueError("l must be >= 0")
    with mpmath.workdps(DPS):
        p = _mp(p)
        s = r * p + r
        if s - l <= 1:
            raise ValueError(f"rp + r - l = {s - l}: differentiated series diverges at t = 1")
        terms = []
        for k in range(1, K + 1):
            deriv = sum(
                (c * falling_factorial(e, l) for e, c in necklace.necklace_terms(n, k, r).items()),
                Fraction(0),
            )
            terms.append(_mp(deriv) / mpmath.mpf(k) ** (r * p))
        lhs = mpmath.fsum(terms)
        lhs_tail = 2 * _coefficient_scale(n, r) * _power_tail(K, s - l - mpmath.mpf(1) / 2)
        sig = sigma_p(n, r, -p)
        zden = zeta_partial(s, K)
        rhs = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for m in range(1, l + 1):
            ratio, ratio_err = _ratio_with_bounds(zeta_partial(s - m, K), zden)
            rhs += stirling_first(l, m) * ratio * sig
            err += abs(stirling_first(l, m)) * ratio_err * sig
        params = {"n": n, "r": r, "p": str(p), "l": l, "K": K}
        return _finish("prop5", params, lhs, rhs, lhs_tail + err, tol)


def prop5_termwise_Q(n: int, r: int, p, l: int, K: int,
                     counter: QCounter = _closed_counter) -> mpmath.mpf:
    """sum_{m=1}^{l} s(l,m) times the K-term partial sum of Q_r(n, m)."""
    with mpmath.workdps(DPS):
        p = _mp(p)
        total = mpmath.mpf(0)
        for m in range(1, l + 1):
            part = mpmath.fsum(
                _mp(Fraction(counter(n, k, r, m), k ** (r * m))) / mpmath.mpf(k) ** (r * p)
                for k in range(1, K + 1)
            )
            total += stirling_first(l, m) * part
        return total


def polylog_euler_reduction(s: int, m: int, K: int) -> Fraction:
    """(t d/dt)^m applied to the K-term polylog polynomial, evaluated at t = 1.

    Equal, as exact rationals, to the K-term partial sum of zeta(s - m).
    """
    li = RatPoly([0] + [Fraction(1, k**s) for k in range(1, K + 1)])
    return Fraction(euler_op_power(li, m)(Fraction(1)))


def zeta_partial_exact(e: int, K: int) -> Fraction:
    return sum((Fraction(1, k**e) if e >= 0 else Fraction(k ** (-e)) for k in range(1, K + 1)), Fraction(0))
