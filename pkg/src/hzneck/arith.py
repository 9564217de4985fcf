"""Exact integer primitives: divisors, Moebius, Euler phi, r-gcd,
Bernoulli and signed Stirling numbers of the first kind.

Rationals are plain :class:`fractions.Fraction` values throughout the
package; they are always stored reduced with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import List, Tuple

Factorization = Tuple[Tuple[int, int], ...]

__all__ = [
    "Fraction",
    "factorize",
    "divisors",
    "mobius",
    "euler_phi",
    "r_gcd",
    "integer_root",
    "is_rth_power",
    "bernoulli",
    "stirling_first",
]


def _check_positive(k: int, name: str = "k") -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"{name} must be an int, got {type(k).__name__}")
    if k < 1:
        raise ValueError(f"{name} must be >= 1, got {k}")


@lru_cache(maxsize=4096)
def factorize(k: int) -> Factorization:
    """Prime factorization of k by trial division, primes increasing."""
    _check_positive(k)
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if k > 1:
        out.append((k, 1))
    return tuple(out)


@lru_cache(maxsize=4096)
def _divisors(k: int) -> Tuple[int, ...]:
    divs = [1]
    for p, e in factorize(k):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def divisors(k: int) -> List[int]:
    """All positive divisors of k in increasing order."""
    _check_positive(k)
    return list(_divisors(k))


def mobius(k: int) -> int:
    _check_positive(k)
    f = factorize(k)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(k: int) -> int:
    _check_positive(k)
    out = k
    for p, _ in factorize(k):
        out = out // p * (p - 1)
    return out


def integer_root(n: int, r: int) -> int:
    """floor(n ** (1/r)) for n >= 0, exact."""
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    if n < 2 or r == 1:
        return n
    x = int(round(n ** (1.0 / r)))
    while x**r > n:
        x -= 1
    while (x + 1) ** r <= n:
        x += 1
    return x


def is_rth_power(n: int, r: int) -> bool:
    return integer_root(n, r) ** r == n


def r_gcd(a: int, b: int, r: int) -> int:
    """Largest common divisor of a and b that is a perfect r-th power.

    Computed prime by prime: each exponent of gcd(a, b) is rounded down to
    a multiple of r.
    """
    _check_positive(a, "a")
    _check_positive(b, "b")
    _check_positive(r, "r")
    out = 1
    for p, e in factorize(gcd(a, b)):
        out *= p ** (e - e % r)
    return out


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> Tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_1 = -1/2
    if m == 0:
        return (Fraction(1),)
    prev = _bernoulli_table(m - 1)
    acc = sum((comb(m + 1, j) * prev[j] for j in range(m)), Fraction(0))
    return prev + (-acc / (m + 1),)


def bernoulli(index: int) -> Fraction:
    """Bernoulli number B_index (B_1 = -1/2 convention).

    Values are memoized; the table is immutable so concurrent reads are safe.
    """
    if index < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if index >= 3 and index % 2:
        return Fraction(0)
    return _bernoulli_table(index)[index]


@lru_cache(maxsize=None)
def _falling_factorial_coeffs(l: int) -> Tuple[int, ...]:
    # coefficients of t(t-1)...(t-l+1), lowest power first
    coeffs = [1]
    for i in range(l):
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= i * c
        coeffs = nxt
    return tuple(coeffs)


def stirling_first(l: int, m: int) -> int:
    """Signed Stirling number of the first kind s(l, m); 0 outside 1 <= m <= l."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if m < 1 or m > l:
        return 0
    return _falling_factorial_coeffs(l)[m]
