"""Harer-Zagier generating functions for the Euler characteristics of the
mapping class groups Gamma_g^1 (one marked point) and Gamma_g.

Every k-sum is formal; it is truncated at a cutoff certified by a window of
consecutive k whose contributions below the truncation order vanish.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Callable, Dict, List, Optional, Union

from . import necklace
from .arith import bernoulli, divisors, euler_phi, mobius
from .errors import Inconclusive
from .series import (
    Monomial,
    RatPoly,
    TruncSeries,
    compose_odd_or_power,
    series_inv_1p,
    series_log1p,
    series_recip_power,
)

log = logging.getLogger(__name__)

STABILIZATION_WINDOW = 8
KMAX_FACTOR = 64

SeriesLike = Union[RatPoly, TruncSeries]


def _as_series(x: SeriesLike, order: int) -> TruncSeries:
    if isinstance(x, RatPoly):
        return x.to_series(order)
    return x.truncate(min(order, x.order))


def _check_arg(x: TruncSeries, y: Monomial) -> None:
    if not x.is_zero() and x.valuation <= 0:
        raise ValueError(f"X must have positive valuation, got {x.valuation}")
    if y.coeff == 0 or y.exp < 1:
        raise ValueError(f"Y must be a nonzero monomial c t^k with k >= 1, got {y}")


@lru_cache(maxsize=None)
def _binom(n: int, k: int) -> int:
    return comb(n, k)


def frak_B(arg: SeriesLike, order: int) -> TruncSeries:
    """B(T) = -sum_{h>=1} B_{2h}/(2h) T^(2h-1) composed with a positive-valuation argument."""
    arg = _as_series(arg, order)

    def coeff(s: int) -> Fraction:
        if s % 2 == 0:
            return Fraction(0)
        return -bernoulli(s + 1) / (s + 1)

    return compose_odd_or_power(coeff, arg, order, start=1)


def _y_over_1px(x: TruncSeries, y: Monomial, order: int) -> TruncSeries:
    return series_inv_1p(x, order - y.exp).mul_monomial(y)


def phi1(x: SeriesLike, y: Monomial, order: int, form: str = "series") -> TruncSeries:
    """Phi^1(X, Y) to O(t^order).

    ``form="series"`` evaluates the defining double sum term by term;
    ``form="closed"`` uses (1/Y)((1+X)log(1+X) - X) + B(Y/(1+X)).
    """
    k = y.exp
    xs = _as_series(x, order + k)
    _check_arg(xs, y)
    if form == "series":
        return _phi1_double_sum(xs, y, order)
    if form == "closed":
        return _phi1_closed_form(xs, y, order)
    raise ValueError(f"unknown form {form!r}")


def _phi1_double_sum(x: TruncSeries, y: Monomial, order: int) -> TruncSeries:
    k = y.exp
    total = TruncSeries.zero(order)
    if not x.is_zero():
        inv_y = series_recip_power(y, 1, order + k)
        power = x * x
        s = 2
        while power.valuation - k < order:
            c = Fraction((-1) ** s, s * (s - 1))
            total = total + (power * inv_y).scale(c).truncate(order)
            power = power * x
            s += 1
    h = 1
    while k * (2 * h - 1) < order:
        yh = y.power(2 * h - 1)
        inner_order = order - yh.exp
        lead = -bernoulli(2 * h) / (2 * h)
        power = TruncSeries.monomial(1, 0, inner_order)
        s = 0
        while power.valuation < inner_order:
            c = lead * _binom(s + 2 * h - 2, s) * (-1) ** s
            total = total + power.scale(c).mul_monomial(yh)
            if x.is_zero():
                break
            power = (power * x).truncate(inner_order)
            s += 1
        h += 1
    return total


def _phi1_closed_form(x: TruncSeries, y: Monomial, order: int) -> TruncSeries:
    k = y.exp
    inner = order + k
    one_plus_x = x + TruncSeries.monomial(1, 0, inner)
    log_part = one_plus_x * series_log1p(x, inner) - x
    first = (log_part * series_recip_power(y, 1, inner)).truncate(order)
    second = frak_B(_y_over_1px(x, y, order), order)
    return first + second


def phi1_bar(z: TruncSeries, y: Monomial, order: int, form: str = "closed") -> TruncSeries:
    """Phi-bar^1(Z, Y) = Phi^1(YZ - 1, Y); Z may carry negative exponents."""
    yz = z.mul_monomial(y)
    x = yz - TruncSeries.monomial(1, 0, yz.order)
    return phi1(x, y, order, form=form)


def phi_closed(x: SeriesLike, y: Monomial, order: int, variant: str = "corrected") -> TruncSeries:
    """Phi(X, Y) for the closed-surface series.

    ``variant="corrected"``::

        sum_{s>=3} (-1)^(s-1) X^s / (s(s-1)(s-2) Y^2) + sum_{s>=1} (-1)^s X^s / (12 s)
            + sum_{h>=2} B_{2h} / (2h(2h-2)) (Y/(1+X))^(2h-2)

    ``variant="printed"`` puts Y^2 on the middle sum instead of 1/Y^2 on the
    first; it is kept for comparison and does not produce integral Euler
    characteristics.
    """
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    y2 = y.power(2)
    pad = y2.exp if variant == "corrected" else 0
    xs = _as_series(x, order + pad)
    _check_arg(xs, y)
    total = TruncSeries.zero(order)
    if not xs.is_zero():
        cubic = compose_odd_or_power(
            lambda s: Fraction((-1) ** (s - 1), s * (s - 1) * (s - 2)) if s >= 3 else Fraction(0),
            xs, order + pad, start=3)
        if variant == "corrected":
            cubic = (cubic * series_recip_power(y, 2, order + pad)).truncate(order)
        total = total + cubic
        log_order = order if variant == "corrected" else order - y2.exp
        if log_order > 0:
            logish = compose_odd_or_power(
                lambda s: Fraction((-1) ** s, 12 * s), xs.truncate(log_order), log_order, start=1)
            if variant == "printed":
                logish = logish.mul_monomial(y2)
            total = total + logish

    def bern(j: int) -> Fraction:
        # j = 2h - 2 with h >= 2
        if j < 2 or j % 2:
            return Fraction(0)
        return bernoulli(j + 2) / ((j + 2) * j)

    if 2 * y.exp < order:
        u = _y_over_1px(xs.truncate(order), y, order)
        total = total + compose_odd_or_power(bern, u, order, start=2)
    return total


# ---------------------------------------------------------------------------
# assembly


def punctured_term(k: int, order: int, route: str = "beta") -> TruncSeries:
    """(phi(k)/k) sum_{d|k} mu(d) Phi^1(...) for one k.

    ``route="beta"`` feeds beta_{k,d}(t) into the double-sum Phi^1;
    ``route="necklace"`` feeds Z = M(1/t; k/d, k) into Phi-bar^1 (closed form).
    """
    y = Monomial(Fraction(k), k)
    total = TruncSeries.zero(order)
    for d in divisors(k):
        mu = mobius(d)
        if not mu:
            continue
        if route == "beta":
            term = phi1(necklace.beta_poly(k, d), y, order, form="series")
        elif route == "necklace":
            z = TruncSeries.from_dict(
                {-e: c for e, c in necklace.necklace_terms(k // d, k).items()}, order + k
            )
            term = phi1_bar(z, y, order, form="closed")
        else:
            raise ValueError(f"unknown route {route!r}")
        total = total + term.scale(mu)
    return total.scale(Fraction(euler_phi(k), k))


def closed_term(k: int, order: int, variant: str = "corrected") -> TruncSeries:
    """sum_{m,d|k} phi(d) mu(m)/m^2 Phi(beta_{k/m, d/(d,m)}(t^m), k t^k / m)."""
    total = TruncSeries.zero(order)
    for m in divisors(k):
        mu = mobius(m)
        if not mu:
            continue
        y = Monomial(Fraction(k, m), k)
        for d in divisors(k):
            x = necklace.beta_poly(k // m, d // gcd(d, m)).substitute_monomial(m)
            term = phi_closed(x, y, order, variant)
            total = total + term.scale(Fraction(euler_phi(d) * mu, m * m))
    return total


@dataclass
class EulerCharTable:
    punctured: bool
    values: Dict[int, Fraction]
    order: int
    k_cutoff: int
    stabilized: bool
    silent_ks: List[int] = field(default_factory=list)
    series: Optional[TruncSeries] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    def exponent(self, g: int) -> int:
        return 2 * g - 1 if self.punctured else 2 * g - 2

    def rows(self) -> List[dict]:
        return [
            {"g": g, "value": f"{v.numerator}/{v.denominator}", "k_cutoff": self.k_cutoff,
             "stabilized": self.stabilized}
            for g, v in sorted(self.values.items())
        ]

    def as_json(self) -> dict:
        return {
            "punctured": self.punctured,
            "order": self.order,
            "k_cutoff": self.k_cutoff,
            "stabilized": self.stabilized,
            "silent_window": self.silent_ks,
            "checks": self.checks,
            "table": self.rows(),
        }


def _assemble(term: Callable[[int, int], TruncSeries], max_exp: int, cutoff: Optional[int],
              window: int, k_max: Optional[int]):
    order = max_exp + 1
    if cutoff is not None and cutoff < max_exp:
        raise ValueError(f"cutoff {cutoff} must be >= truncation exponent {max_exp}")
    k_max = k_max or KMAX_FACTOR * max(max_exp, 1)
    total = TruncSeries.zero(order)
    silent: List[int] = []
    k = 0
    while True:
        k += 1
        c = term(k, order)
        if c.is_zero():
            silent.append(k)
        else:
            silent = []
            total = total + c
        if cutoff is not None:
            if k >= cutoff:
                break
        elif len(silent) >= window and k >= max_exp:
            break
        elif k >= k_max:
            break
    stabilized = len(silent) >= window
    log.debug("assembled to k=%d, stabilized=%s", k, stabilized)
    return total, k, stabilized, silent[-window:] if stabilized else silent


def _finish_table(total: TruncSeries, punctured: bool, max_genus: int, k: int, stabilized: bool,
                  silent: List[int]) -> EulerCharTable:
    """Extract e(Gamma) per genus and run the structural checks.

    In the closed case the t^0 slot is not an Euler characteristic (genus 1
    is outside the range of the formula) and is left out of ``values``.
    """
    order = total.order
    first_g = 1 if punctured else 2
    exps = {2 * g - 1 if punctured else 2 * g - 2 for g in range(first_g, max_genus + 1)}
    values = {g: total[2 * g - 1 if punctured else 2 * g - 2] for g in range(first_g, max_genus + 1)}
    terms = total.terms()
    if punctured:
        wrong_parity = [e for e in terms if e > 0 and e % 2 == 0]
        nonpositive = [e for e in terms if e <= 0]
    else:
        wrong_parity = [e for e in terms if e % 2]
        nonpositive = [e for e in terms if e < 0]
    checks = {
        "parity_vanishing": not wrong_parity,
        "nonpositive_vanishing": not nonpositive,
        "integral": all(v.denominator == 1 for v in values.values()),
        "stabilized": stabilized,
    }
    table = EulerCharTable(punctured, values, order - 1, k, stabilized, silent, total, checks)
    log.debug("extracted exponents %s", sorted(exps))
    return table


def euler_series_punctured(max_genus: int, cutoff: Optional[int] = None,
                           window: int = STABILIZATION_WINDOW, k_max: Optional[int] = None,
                           route: str = "beta") -> EulerCharTable:
    """sum_g e(Gamma_g^1) t^(2g-1) through genus ``max_genus``."""
    if max_genus < 1:
        raise ValueError("max_genus must be >= 1")
    max_exp = 2 * max_genus - 1
    total, k, stab, silent = _assemble(
        lambda kk, order: punctured_term(kk, order, route), max_exp, cutoff, window, k_max)
    return _finish_table(total, True, max_genus, k, stab, silent)


def euler_series_punctured_prop2(max_genus: int, cutoff: Optional[int] = None,
                                 window: int = STABILIZATION_WINDOW,
                                 k_max: Optional[int] = None) -> EulerCharTable:
    return euler_series_punctured(max_genus, cutoff, window, k_max, route="necklace")


def euler_series_closed(max_genus: int, cutoff: Optional[int] = None,
                        window: int = STABILIZATION_WINDOW, k_max: Optional[int] = None,
                        variant: str = "corrected") -> EulerCharTable:
    """sum_g e(Gamma_g) t^(2g-2), reported for 2 <= g <= ``max_genus``."""
    if max_genus < 2:
        raise ValueError("max_genus must be >= 2")
    max_exp = 2 * max_genus - 2
    total, k, stab, silent = _assemble(
        lambda kk, order: closed_term(kk, order, variant), max_exp, cutoff, window, k_max)
    return _finish_table(total, False, max_genus, k, stab, silent)


def require_stable(table: EulerCharTable) -> EulerCharTable:
    if not table.stabilized:
        raise Inconclusive(
            f"k-sum not stabilized by k={table.k_cutoff} (last silent run {table.silent_ks})"
        )
    return table


def load_reference(path: str) -> Dict[int, Fraction]:
    """Read {genus: value} from JSON (object or list of {g, value}) or CSV with g,value columns."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        rows = csv.DictReader(text.splitlines())
        return {int(r["g"]): Fraction(r["value"]) for r in rows}
    if isinstance(data, dict):
        data = data.get("table", data)
    if isinstance(data, dict):
        return {int(g): Fraction(str(v)) for g, v in data.items()}
    return {int(r["g"]): Fraction(str(r["value"])) for r in data}


def compare_reference(table: EulerCharTable, reference: Dict[int, Fraction]) -> Dict[int, tuple]:
    """Genera where the table and the reference disagree: {g: (ours, theirs)}."""
    return {
        g: (table.values[g], v)
        for g, v in reference.items()
        if g in table.values and table.values[g] != v
    }
