"""Ramanujan sums c(n, k), Cohen r-sums c_r(n, k) and the twisted sums
c(k, l, d) that enter the Harer-Zagier polynomials.

The evaluators here are integer-only divisor sums.  The root-of-unity
oracles at the bottom evaluate the defining exponential sums numerically
and exist so the divisor formulas can be checked against the definitions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, Tuple

import mpmath

from .arith import divisors, euler_phi, mobius, r_gcd

ORACLE_TOL = 1e-6
ORACLE_DPS = 30
ORACLE_MAX_MODULUS = 10**6


class OracleRoundingError(ArithmeticError):
    """A root-of-unity sum did not round cleanly to an integer."""


@lru_cache(maxsize=1 << 16)
def ramanujan_c(n: int, k: int) -> int:
    """Classical Ramanujan sum c(n, k) = sum_{e | (n, k)} mu(k/e) e."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    g = gcd(n, k)  # gcd(0, k) = k
    return sum(mobius(k // e) * e for e in divisors(g))


@lru_cache(maxsize=1 << 16)
def cohen_c(n: int, k: int, r: int = 1) -> int:
    """Cohen's r-Ramanujan sum c_r(n, k).

    Moebius inversion of the condition (m, k^r)_r = 1 gives
    ``c_r(n, k) = sum_{e | k, e^r | n} mu(k/e) e^r``.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if r == 1:
        return ramanujan_c(n, k)
    return sum(mobius(k // e) * e**r for e in divisors(k) if n % e**r == 0)


def c_kld(k: int, l: int, d: int) -> int:
    """c(k, l, d) = sum over 1 <= m <= k with (m, k) = l of eps_d^m.

    Evaluated as c(k/d, k/l).
    """
    if k < 1 or l < 1 or d < 1 or k % l or k % d:
        raise ValueError(f"need l | k and d | k, got k={k}, l={l}, d={d}")
    return ramanujan_c(k // d, k // l)


def _round_complex(z, what: str) -> int:
    re_part = float(mpmath.re(z))
    im_part = float(mpmath.im(z))
    nearest = round(re_part)
    if abs(im_part) > ORACLE_TOL or abs(re_part - nearest) > ORACLE_TOL:
        raise OracleRoundingError(f"{what}: {z} is not within {ORACLE_TOL} of an integer")
    return int(nearest)


def root_of_unity_oracle(n: int, k: int, r: int = 1) -> int:
    """Evaluate c_r(n, k) straight from its definition as a root-of-unity sum."""
    modulus = k**r
    if modulus > ORACLE_MAX_MODULUS:
        raise ValueError(f"k^r = {modulus} exceeds oracle bound {ORACLE_MAX_MODULUS}")
    with mpmath.workdps(ORACLE_DPS):
        acc = mpmath.mpc(0)
        for m in range(1, modulus + 1):
            if r_gcd(m, modulus, r) == 1:
                acc += mpmath.expjpi(mpmath.mpf(2 * m * n) / modulus)
        return _round_complex(acc, f"c_{r}({n},{k})")


def c_kld_oracle(k: int, l: int, d: int) -> int:
    """Direct summation of eps_d^m over 1 <= m <= k with gcd(m, k) = l."""
    if k < 1 or l < 1 or d < 1 or k % l or k % d:
        raise ValueError(f"need l | k and d | k, got k={k}, l={l}, d={d}")
    with mpmath.workdps(ORACLE_DPS):
        acc = mpmath.mpc(0)
        for m in range(1, k + 1):
            if gcd(m, k) == l:
                acc += mpmath.expjpi(mpmath.mpf(2 * m) / d)
        return _round_complex(acc, f"c({k},{l},{d})")


@dataclass(frozen=True)
class RamanujanTable:
    """Precomputed c_r(n, k) for 0 <= n <= max_n, 1 <= k <= max_k."""

    r: int
    max_n: int
    max_k: int
    entries: Dict[Tuple[int, int], int] = field(repr=False)

    @classmethod
    def build(cls, max_n: int, max_k: int, r: int = 1) -> "RamanujanTable":
        entries = {
            (n, k): cohen_c(n, k, r)
            for n in range(max_n + 1)
            for k in range(1, max_k + 1)
        }
        return cls(r=r, max_n=max_n, max_k=max_k, entries=entries)

    def __getitem__(self, nk: Tuple[int, int]) -> int:
        return self.entries[nk]

    def check(self) -> None:
        """Raise if a stored value disagrees with the closed form or the
        phi / mu specializations."""
        for (n, k), v in self.entries.items():
            if v != cohen_c(n, k, self.r):
                raise AssertionError(f"table entry ({n},{k}) = {v} is stale")
            if self.r == 1 and n == 0 and v != euler_phi(k):
                raise AssertionError(f"c(0,{k}) = {v} != phi({k})")
            if self.r == 1 and n == 1 and v != mobius(k):
                raise AssertionError(f"c(1,{k}) = {v} != mu({k})")
