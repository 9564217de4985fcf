"""n-necklace polynomials, Harer-Zagier beta polynomials and the character
cycle index of the regular representation of a cyclic group."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Tuple

import mpmath

from . import ramanujan
from .arith import divisors
from .series import RatPoly

# exponent vector (c_1, ..., c_v) -> coefficient
CycleIndexMonomialMap = Dict[Tuple[int, ...], Fraction]


def necklace_poly(n: int, k: int) -> RatPoly:
    """M(t; n, k) = (1/k) sum_{d | k} c(n, k/d) t^d."""
    return necklace_poly_r(n, k, 1)


def necklace_terms(n: int, k: int, r: int = 1) -> Dict[int, Fraction]:
    """Sparse form {d: c_r(n, k/d) / k^r} of M_r(t; n, k); only divisors of k occur."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    out = {}
    for d in divisors(k):
        c = ramanujan.cohen_c(n, k // d, r)
        if c:
            out[d] = Fraction(c, k**r)
    return out


def necklace_poly_r(n: int, k: int, r: int = 1) -> RatPoly:
    """M_r(t; n, k) = k^(-r) sum_{d | k} c_r(n, k/d) t^d."""
    return RatPoly.from_dict(necklace_terms(n, k, r))


def beta_poly(k: int, d: int) -> RatPoly:
    """Harer-Zagier polynomial beta_{k,d}(t) = sum_{l | k, l < k} c(k/d, k/l) t^(k-l).

    Integer coefficients; beta_{1,1} = 0.
    """
    if k < 1 or d < 1 or k % d:
        raise ValueError(f"need d | k, got k={k}, d={d}")
    return RatPoly.from_dict(
        {k - l: ramanujan.c_kld(k, l, d) for l in divisors(k) if l < k}
    )


def beta_poly_oracle(k: int, d: int) -> RatPoly:
    """beta_{k,d} from sum_{r=1}^{k-1} eps_d^r t^(k - (k, r)) with numerical roots of unity."""
    if k < 1 or d < 1 or k % d:
        raise ValueError(f"need d | k, got k={k}, d={d}")
    acc: Dict[int, mpmath.mpc] = {}
    with mpmath.workdps(ramanujan.ORACLE_DPS):
        for r in range(1, k):
            e = k - gcd(k, r)
            acc[e] = acc.get(e, mpmath.mpc(0)) + mpmath.expjpi(mpmath.mpf(2 * r) / d)
        return RatPoly.from_dict(
            {e: ramanujan._round_complex(z, f"beta_{k},{d}[t^{e}]") for e, z in acc.items()}
        )


def cycle_index_regular_cyclic(k: int, n: int) -> CycleIndexMonomialMap:
    """Z^{chi_n} of the regular representation of C_k.

    Returns {exponent vector: coefficient} with one monomial t_{k/d}^d per
    divisor d, coefficient c(n, k/d) / k.  n is reduced mod k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n %= k
    out: CycleIndexMonomialMap = {}
    for d in divisors(k):
        vec = [0] * k
        vec[k // d - 1] = d
        c = Fraction(ramanujan.ramanujan_c(n, k // d), k)
        if c:
            out[tuple(vec)] = c
    return out


def cycle_index_bruteforce(k: int, n: int) -> CycleIndexMonomialMap:
    """Average chi_n(g) * prod t_j^{c_j(g)} over g in C_k acting on itself by translation.

    Cycle types come from walking the actual permutations; character values
    are numerical roots of unity rounded after summation.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    acc: Dict[Tuple[int, ...], mpmath.mpc] = {}
    with mpmath.workdps(ramanujan.ORACLE_DPS):
        for j in range(k):
            seen = [False] * k
            vec = [0] * k
            for start in range(k):
                if seen[start]:
                    continue
                length, x = 0, start
                while not seen[x]:
                    seen[x] = True
                    x = (x + j) % k
                    length += 1
                vec[length - 1] += 1
            chi = mpmath.expjpi(mpmath.mpf(2 * n * j) / k)
            key = tuple(vec)
            acc[key] = acc.get(key, mpmath.mpc(0)) + chi
        out = {}
        for key, z in acc.items():
            v = ramanujan._round_complex(z, f"cycle index C_{k}, chi_{n}")
            if v:
                out[key] = Fraction(v, k)
        return out


def specialize_diagonal(z: CycleIndexMonomialMap) -> RatPoly:
    """Set every t_j := t."""
    terms: Dict[int, Fraction] = {}
    for vec, c in z.items():
        e = sum(vec)
        terms[e] = terms.get(e, Fraction(0)) + c
    return RatPoly.from_dict(terms)


def kw_generating_poly(k: int) -> List[RatPoly]:
    """Coefficients of sum_{n=1}^{k} M(t; n, k) q^n, indexed by the power of q.

    Entry 0 is the zero polynomial.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return [RatPoly()] + [necklace_poly(n, k) for n in range(1, k + 1)]
