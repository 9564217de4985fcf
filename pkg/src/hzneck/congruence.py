"""Solution counts of the linear systems N_k(b; l_1..l_s) and of Cohen's
semilinear congruences Q_r(n, k, m), each by exhaustive enumeration and by
closed divisor sums, plus the identities that pack N_k into powers of
beta_{k,d} and M(t; k/d, k)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import List, Sequence, Tuple

from . import necklace, ramanujan
from .arith import divisors
from .errors import IdentityViolation, InstanceTooLarge
from .series import RatPoly, newton_series_coeffs

ENUMERATION_BOUND = 10**8


@dataclass(frozen=True)
class LinearInstance:
    """x_1 + ... + x_s = b (mod k) with gcd(x_i, k) = l_i."""

    k: int
    b: int
    constraints: Tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for l in self.constraints:
            if l < 1 or self.k % l:
                raise ValueError(f"constraint {l} does not divide {self.k}")


@dataclass(frozen=True)
class CongruenceInstance:
    """a_1 x_1^r y_1 + ... + a_m x_m^r y_m = n (mod k^r), x_i mod k, y_i mod k^r."""

    n: int
    k: int
    r: int
    m: int
    a: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.k < 1 or self.r < 1 or self.m < 0:
            raise ValueError("need k, r >= 1 and m >= 0")
        a = tuple(self.a) or (1,) * self.m
        if len(a) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(a)}")
        for ai in a:
            if gcd(ai, self.k) != 1:
                raise ValueError(f"coefficient {ai} is not a unit mod {self.k}")
        object.__setattr__(self, "a", a)


def count_linear_bruteforce(inst: LinearInstance) -> int:
    k, s = inst.k, len(inst.constraints)
    if k**s > ENUMERATION_BOUND:
        raise InstanceTooLarge(f"{k}^{s} tuples exceed {ENUMERATION_BOUND}")
    pools = [[x for x in range(1, k + 1) if gcd(x, k) == l] for l in inst.constraints]
    target = inst.b % k
    return sum(1 for xs in itertools.product(*pools) if sum(xs) % k == target)


def count_linear_closed(inst: LinearInstance) -> int:
    """(1/k) sum_{d|k} c(b, d) prod_i c(k/d, k/l_i)."""
    k, b = inst.k, inst.b % inst.k
    total = sum(
        ramanujan.ramanujan_c(b, d) * prod(ramanujan.ramanujan_c(k // d, k // l) for l in inst.constraints)
        for d in divisors(k)
    )
    if total % k:
        raise IdentityViolation(f"divisor sum {total} for {inst} is not divisible by {k}")
    out = total // k
    if out < 0:
        raise IdentityViolation(f"negative count {out} for {inst}")
    return out


def _pair_values(k: int, r: int, a: int) -> List[int]:
    mod = k**r
    return [(a * pow(x, r) * y) % mod for x in range(k) for y in range(mod)]


def count_cohen_bruteforce(inst: CongruenceInstance) -> int:
    """Enumerate every (x_1..x_m, y_1..y_m)."""
    k, r, m = inst.k, inst.r, inst.m
    if k ** (m + r * m) > ENUMERATION_BOUND:
        raise InstanceTooLarge(f"{k ** (m + r * m)} tuples exceed {ENUMERATION_BOUND}")
    mod = k**r
    target = inst.n % mod
    pools = [_pair_values(k, r, ai) for ai in inst.a]
    return sum(1 for vs in itertools.product(*pools) if sum(vs) % mod == target)


@lru_cache(maxsize=256)
def cohen_residue_histogram(k: int, r: int, a: Tuple[int, ...]) -> Tuple[int, ...]:
    """Number of (x, y)-tuples hitting each residue mod k^r.

    Single pairs are enumerated exhaustively and the m-fold count is the exact
    cyclic convolution of their histograms, so instances far beyond the
    brute-force budget can still be counted without any Ramanujan sums.
    """
    mod = k**r
    hist = [0] * mod
    hist[0] = 1
    for ai in a:
        single = [0] * mod
        for v in _pair_values(k, r, ai):
            single[v] += 1
        nxt = [0] * mod
        for u, cu in enumerate(hist):
            if cu:
                for v, cv in enumerate(single):
                    if cv:
                        nxt[(u + v) % mod] += cu * cv
        hist = nxt
    return tuple(hist)


def count_cohen_convolution(inst: CongruenceInstance) -> int:
    return cohen_residue_histogram(inst.k, inst.r, inst.a)[inst.n % inst.k**inst.r]


def cohen_ratio_closed(n: int, k: int, r: int, m: int) -> Fraction:
    """Q_r(n, k, m) / k^(rm) = k^(-r) sum_{d|k} c_r(n, k/d) d^m."""
    return Fraction(sum(ramanujan.cohen_c(n, k // d, r) * d**m for d in divisors(k)), k**r)


def count_cohen_closed(n: int, k: int, r: int, m: int) -> int:
    if k < 1 or r < 1 or m < 0:
        raise ValueError("need k, r >= 1 and m >= 0")
    value = cohen_ratio_closed(n, k, r, m) * k ** (r * m)
    if value.denominator != 1 or value < 0:
        raise IdentityViolation(f"Q_{r}({n},{k},{m}) evaluated to non-count {value}")
    return int(value)


def _divisor_tuples(k: int, s: int, proper: bool):
    ds = [l for l in divisors(k) if not proper or l < k]
    return itertools.product(ds, repeat=s)


def packing_identity_beta(k: int, b: int, s: int) -> Tuple[RatPoly, RatPoly]:
    """Both sides of sum_{l_i | k, l_i < k} N_k(b; l) t^(ks - sum l) = (1/k) sum_d c(b,d) beta_{k,d}^s."""
    lhs_terms = {}
    for ls in _divisor_tuples(k, s, proper=True):
        e = k * s - sum(ls)
        lhs_terms[e] = lhs_terms.get(e, 0) + count_linear_closed(LinearInstance(k, b, ls))
    lhs = RatPoly.from_dict(lhs_terms)
    rhs = RatPoly()
    for d in divisors(k):
        rhs = rhs + necklace.beta_poly(k, d) ** s * ramanujan.ramanujan_c(b % k, d)
    return lhs, rhs.scale(Fraction(1, k))


def packing_identity_M(k: int, b: int, s: int) -> Tuple[RatPoly, RatPoly]:
    """Both sides of sum_{l_i | k} N_k(b; l) t^(sum l) = (1/k) sum_d c(b,d) (k M(t; k/d, k))^s."""
    lhs_terms = {}
    for ls in _divisor_tuples(k, s, proper=False):
        e = sum(ls)
        lhs_terms[e] = lhs_terms.get(e, 0) + count_linear_closed(LinearInstance(k, b, ls))
    lhs = RatPoly.from_dict(lhs_terms)
    rhs = RatPoly()
    for d in divisors(k):
        rhs = rhs + (necklace.necklace_poly(k // d, k).scale(k)) ** s * ramanujan.ramanujan_c(b % k, d)
    return lhs, rhs.scale(Fraction(1, k))


def _dt_lhs(k: int, b: int, s: int, t: int) -> Fraction:
    return Fraction(sum(
        count_linear_closed(LinearInstance(k, b, ls)) * prod(ls) ** t
        for ls in _divisor_tuples(k, s, proper=False)
    ))


def _dt_rhs(k: int, b: int, s: int, t: int) -> Fraction:
    total = 0
    for d in divisors(k):
        inner = sum(ramanujan.ramanujan_c(k // d, k // delta) * delta**t for delta in divisors(k))
        total += ramanujan.ramanujan_c(b % k, d) * inner**s
    return Fraction(total, k)


def dt_variant_values(k: int, b: int, s: int, t: int) -> Fraction:
    """Common value of sum N_k(b; l)(prod l_i)^t and its divisor-sum form."""
    if t < 0:
        raise ValueError("t must be a non-negative integer")
    lhs, rhs = _dt_lhs(k, b, s, t), _dt_rhs(k, b, s, t)
    if lhs != rhs:
        raise IdentityViolation(f"d^t variant k={k} b={b} s={s} t={t}: {lhs} != {rhs}")
    return lhs


def dt_variant_via_cohen(k: int, b: int, s: int, t: int, counter=None) -> Fraction:
    """The same value rebuilt from semilinear counts:
    sum_{delta|k} c(k/d, k/delta) delta^t = k^(1-t) Q_1(k/d, k, t)."""
    if counter is None:
        counter = lambda n, kk, m: count_cohen_closed(n, kk, 1, m)
    total = Fraction(0)
    for d in divisors(k):
        inner = Fraction(k * counter(k // d, k, t), k**t)
        total += ramanujan.ramanujan_c(b % k, d) * inner**s
    return total / k


def dt_newton_coeffs(k: int, b: int, s: int, nodes: Sequence[int], counter=None) -> Tuple[list, list]:
    """Newton-series coefficients of t -> sum N_k(b; l)(prod l_i)^t over the
    given integer nodes: once from the direct values, once from Q_1 counts."""
    direct = newton_series_coeffs(nodes, [dt_variant_values(k, b, s, t) for t in nodes])
    via_q = newton_series_coeffs(nodes, [dt_variant_via_cohen(k, b, s, t, counter) for t in nodes])
    return direct, via_q
