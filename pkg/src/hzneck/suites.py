"""Identity-verification sweeps shared by ``verify all`` and the acceptance tests.

A suite walks a parameter grid and yields one :class:`Cell` per grid point.
Grids come from :data:`DEFAULTS` and can be overridden key by key
(``"cohen_oracle.max_k": 6``) from a key=value config file.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional

from . import analytic, congruence, moduli, necklace, ramanujan
from .arith import divisors
from .errors import IdentityViolation
from .series import Monomial, RatPoly, TruncSeries

Params = Dict[str, object]


@dataclass
class Cell:
    suite: str
    params: Params
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    cells: List[Cell] = field(default_factory=list)

    @property
    def failures(self) -> List[Cell]:
        return [c for c in self.cells if not c.passed]

    @property
    def passed(self) -> bool:
        return bool(self.cells) and not self.failures

    def as_json(self, max_failures: int = 5) -> dict:
        return {
            "suite": self.name,
            "cells": len(self.cells),
            "failed": len(self.failures),
            "pass": self.passed,
            "counterexamples": [
                {"params": c.params, "detail": c.detail} for c in self.failures[:max_failures]
            ],
        }


# Full grids follow the ranges the library is certified on; smoke grids are
# the same checks shrunk to run in a few seconds.
DEFAULTS: Dict[str, Dict[str, object]] = {
    "full": {
        "ramanujan_oracle.max_k": 30, "ramanujan_oracle.max_n": 60, "ramanujan_oracle.random": 50,
        "cohen_oracle.max_k": 12, "cohen_oracle.max_r": 3, "cohen_oracle.max_n": 50,
        "multiplicative.max_k": 20, "multiplicative.max_n": 40,
        "kld.max_k": 24,
        "beta.max_k": 20,
        "cycle_index.max_k": 16,
        "linear_counts.max_k": 10, "linear_counts.max_s": 3,
        "cohen_counts.max_k": 6, "cohen_counts.max_r": 2, "cohen_counts.max_m": 2,
        "key_identity.max_k": 8, "key_identity.max_r": 2, "key_identity.max_m": 4,
        "packing.max_k": 8, "packing.max_s": 3,
        "dt_variant.max_k": 6, "dt_variant.max_t": 4, "dt_variant.max_s": 2,
        "dirichlet.K": 2000, "dirichlet.tol": 1e-4,
        "phi1.order": 12,
        "moduli.max_genus": 5,
    },
    "smoke": {
        "ramanujan_oracle.max_k": 12, "ramanujan_oracle.max_n": 20, "ramanujan_oracle.random": 10,
        "cohen_oracle.max_k": 6, "cohen_oracle.max_r": 2, "cohen_oracle.max_n": 12,
        "multiplicative.max_k": 12, "multiplicative.max_n": 12,
        "kld.max_k": 12,
        "beta.max_k": 12,
        "cycle_index.max_k": 8,
        "linear_counts.max_k": 6, "linear_counts.max_s": 2,
        "cohen_counts.max_k": 4, "cohen_counts.max_r": 2, "cohen_counts.max_m": 1,
        "key_identity.max_k": 5, "key_identity.max_r": 2, "key_identity.max_m": 3,
        "packing.max_k": 6, "packing.max_s": 2,
        "dt_variant.max_k": 4, "dt_variant.max_t": 3, "dt_variant.max_s": 2,
        "dirichlet.K": 300, "dirichlet.tol": 1e-2,
        "phi1.order": 8,
        "moduli.max_genus": 3,
    },
}

# coefficient vectors for the semilinear counts, filtered to units mod k
COHEN_VECTORS = ((1, 1), (5, 7))


def grid(level: str, overrides: Optional[Dict[str, object]] = None) -> Dict[str, object]:
    if level not in DEFAULTS:
        raise ValueError(f"unknown level {level!r}")
    out = dict(DEFAULTS[level])
    for key, value in (overrides or {}).items():
        if key not in out:
            raise ValueError(f"unknown sweep key {key!r}")
        out[key] = type(out[key])(value)
    return out


def _cell(suite: str, params: Params, check: Callable[[], Optional[str]]) -> Cell:
    """Run ``check``; a returned string or an IdentityViolation marks a failure."""
    try:
        detail = check()
    except IdentityViolation as exc:
        return Cell(suite, params, False, str(exc))
    return Cell(suite, params, detail is None, detail or "")


def _mismatch(lhs, rhs) -> Optional[str]:
    return None if lhs == rhs else f"{lhs!r} != {rhs!r}"


# ---------------------------------------------------------------------------
# suites


def ramanujan_oracle(g: Dict[str, object], rng: random.Random) -> Iterator[Cell]:
    pts = [(n, k) for k in range(1, g["ramanujan_oracle.max_k"] + 1)
           for n in range(g["ramanujan_oracle.max_n"] + 1)]
    pts += sorted({(rng.randrange(10**6), rng.randrange(1, 200))
                   for _ in range(g["ramanujan_oracle.random"])})
    for n, k in pts:
        yield _cell("ramanujan_oracle", {"n": n, "k": k},
                    lambda: _mismatch(ramanujan.ramanujan_c(n, k), ramanujan.root_of_unity_oracle(n, k)))


def cohen_oracle(g, rng) -> Iterator[Cell]:
    for r in range(1, g["cohen_oracle.max_r"] + 1):
        for k in range(1, g["cohen_oracle.max_k"] + 1):
            for n in range(g["cohen_oracle.max_n"] + 1):
                yield _cell("cohen_oracle", {"n": n, "k": k, "r": r},
                            lambda: _mismatch(ramanujan.cohen_c(n, k, r),
                                              ramanujan.root_of_unity_oracle(n, k, r)))


def multiplicative(g, rng) -> Iterator[Cell]:
    top = g["multiplicative.max_k"]
    for k1 in range(1, top + 1):
        for k2 in range(k1, top + 1):
            if gcd(k1, k2) != 1:
                continue
            for n in range(g["multiplicative.max_n"] + 1):
                yield _cell("multiplicative", {"n": n, "k1": k1, "k2": k2},
                            lambda: _mismatch(ramanujan.ramanujan_c(n, k1 * k2),
                                              ramanujan.ramanujan_c(n, k1) * ramanujan.ramanujan_c(n, k2)))


def kld(g, rng) -> Iterator[Cell]:
    for k in range(1, g["kld.max_k"] + 1):
        for l in divisors(k):
            for d in divisors(k):
                yield _cell("kld", {"k": k, "l": l, "d": d},
                            lambda: _mismatch(ramanujan.c_kld_oracle(k, l, d), ramanujan.c_kld(k, l, d)))


def beta_necklace(g, rng) -> Iterator[Cell]:
    """beta_{k,d}(t) = k t^k M(1/t; k/d, k) - 1, and beta against its root-of-unity form."""
    for k in range(1, g["beta.max_k"] + 1):
        for d in divisors(k):
            def check():
                beta = necklace.beta_poly(k, d)
                via_m = necklace.necklace_poly(k // d, k).reverse(k).scale(k) - RatPoly([1])
                return _mismatch(beta, via_m) or _mismatch(beta, necklace.beta_poly_oracle(k, d))
            yield _cell("beta_necklace", {"k": k, "d": d}, check)


def cycle_index(g, rng) -> Iterator[Cell]:
    for k in range(1, g["cycle_index.max_k"] + 1):
        for n in range(k):
            def check():
                z = necklace.cycle_index_regular_cyclic(k, n)
                return (_mismatch(necklace.specialize_diagonal(z), necklace.necklace_poly(n, k))
                        or _mismatch(z, necklace.cycle_index_bruteforce(k, n)))
            yield _cell("cycle_index", {"k": k, "n": n}, check)


def linear_counts(g, rng) -> Iterator[Cell]:
    import itertools
    for k in range(1, g["linear_counts.max_k"] + 1):
        for s in range(1, g["linear_counts.max_s"] + 1):
            for ls in itertools.combinations_with_replacement(divisors(k), s):
                for b in range(k):
                    inst = congruence.LinearInstance(k, b, ls)
                    yield _cell("linear_counts", {"k": k, "b": b, "l": list(ls)},
                                lambda: _mismatch(congruence.count_linear_closed(inst),
                                                  congruence.count_linear_bruteforce(inst)))


def _unit_vector(k: int, base, m: int):
    return tuple(a if gcd(a, k) == 1 else 1 for a in (base * m)[:m])


def cohen_counts(g, rng) -> Iterator[Cell]:
    """Closed Q_r against exhaustive enumeration of all (x, y) tuples."""
    for k in range(1, g["cohen_counts.max_k"] + 1):
        for r in range(1, g["cohen_counts.max_r"] + 1):
            for m in range(1, g["cohen_counts.max_m"] + 1):
                for base in COHEN_VECTORS:
                    a = _unit_vector(k, base, m)
                    for n in range(k**r):
                        inst = congruence.CongruenceInstance(n, k, r, m, a)
                        yield _cell("cohen_counts", {"n": n, "k": k, "r": r, "m": m, "a": list(a)},
                                    lambda: _mismatch(congruence.count_cohen_closed(n, k, r, m),
                                                      congruence.count_cohen_bruteforce(inst)))


def convolution_counter(n: int, k: int, r: int, m: int) -> int:
    """Q_r(n, k, m) with all-ones coefficients from the exact residue histogram."""
    return congruence.count_cohen_convolution(congruence.CongruenceInstance(n, k, r, m))


def key_identity(g, rng) -> Iterator[Cell]:
    """Euler-operator identity, Stirling bridge, Taylor and exponential expansions
    with Q_r counted independently of any Ramanujan sum."""
    top_m = g["key_identity.max_m"]
    for k in range(1, g["key_identity.max_k"] + 1):
        for r in range(1, g["key_identity.max_r"] + 1):
            for n in range(k**r + 1):
                params = {"n": n, "k": k, "r": r}

                def check():
                    for m in range(0, top_m + 1):
                        lhs, rhs = analytic.key_identity_sides(n, k, r, m, convolution_counter)
                        if lhs != rhs:
                            return f"m={m}: {lhs} != {rhs}"
                    for l in range(1, top_m + 1):
                        analytic.stirling_derivative_bridge(n, k, r, l, convolution_counter)
                    poly = necklace.necklace_poly_r(n, k, r)
                    taylor = analytic.taylor_expansion_t1(n, k, r, convolution_counter)
                    if taylor != poly:
                        return f"Taylor reconstruction {taylor} != {poly}"
                    order = top_m + 1
                    expo = analytic.exponential_expansion(n, k, r, order, convolution_counter)
                    return _mismatch(expo, analytic.compose_with_exp(poly, order))
                yield _cell("key_identity", params, check)


def packing(g, rng) -> Iterator[Cell]:
    for k in range(1, g["packing.max_k"] + 1):
        for s in range(1, g["packing.max_s"] + 1):
            for b in range(k):
                def check():
                    return (_mismatch(*congruence.packing_identity_beta(k, b, s))
                            or _mismatch(*congruence.packing_identity_M(k, b, s)))
                yield _cell("packing", {"k": k, "b": b, "s": s}, check)


def dt_variant(g, rng) -> Iterator[Cell]:
    top_t = g["dt_variant.max_t"]
    for k in range(1, g["dt_variant.max_k"] + 1):
        for s in range(1, g["dt_variant.max_s"] + 1):
            for b in range(k):
                def check():
                    for t in range(top_t + 1):
                        direct = congruence.dt_variant_values(k, b, s, t)
                        via_q = congruence.dt_variant_via_cohen(k, b, s, t, lambda n, kk, m: convolution_counter(n, kk, 1, m))
                        if direct != via_q:
                            return f"t={t}: {direct} != {via_q}"
                    return None
                yield _cell("dt_variant", {"k": k, "b": b, "s": s}, check)


# (n, r, p) choices keep every series at least 2 past its abscissa of convergence
DIRICHLET_Q = [(n, 1, 4) for n in (1, 4, 6)] + [(n, 2, 2) for n in (1, 4, 6)]
DIRICHLET_M = [(n, r, p, t) for n in (1, 4, 6) for r, p in ((1, 3), (2, 2))
               for t in (1, Fraction(1, 2), Fraction(-1, 2))]
DIRICHLET_PROP5 = [(n, r, p, l) for n in (1, 4, 6) for r, p in ((1, 6), (2, 4)) for l in (0, 1, 2)]


def dirichlet(g, rng) -> Iterator[Cell]:
    K, tol = g["dirichlet.K"], g["dirichlet.tol"]

    def run(report):
        d = report.as_json()
        return None if report.passed else (
            f"discrepancy {d['discrepancy']} vs tail {d['tail_bound']}")

    for n, r, p in DIRICHLET_Q:
        yield _cell("dirichlet", {"which": "Q", "n": n, "r": r, "m": 1, "p": p},
                    lambda: run(analytic.verify_dirichlet_Q(n, r, 1, p, K, tol)))
    for n, r, p, t in DIRICHLET_M:
        yield _cell("dirichlet", {"which": "M", "n": n, "r": r, "p": p, "t": str(t)},
                    lambda: run(analytic.verify_dirichlet_M(n, r, t, p, K, tol)))
    for n, r, p, l in DIRICHLET_PROP5:
        yield _cell("dirichlet", {"which": "prop5", "n": n, "r": r, "p": p, "l": l},
                    lambda: run(analytic.verify_prop5_series(n, r, p, l, K, tol)))


def phi1_forms(g, rng) -> Iterator[Cell]:
    """Double-sum and closed forms of Phi^1 on a few symbolic arguments."""
    order = g["phi1.order"]
    args = [
        (RatPoly([0, 1]), Monomial(Fraction(1), 1)),
        (RatPoly([0, 0, 1, -3]), Monomial(Fraction(2), 1)),
        (RatPoly([0, Fraction(1, 2), 0, 5]), Monomial(Fraction(-3), 2)),
        (necklace.beta_poly(6, 2), Monomial(Fraction(6), 6)),
    ]
    for i, (x, y) in enumerate(args):
        yield _cell("phi1_forms", {"arg": i, "order": order},
                    lambda: _mismatch(moduli.phi1(x, y, order, "series"),
                                      moduli.phi1(x, y, order, "closed")))


def moduli_series(g, rng) -> Iterator[Cell]:
    G = g["moduli.max_genus"]

    def check():
        a = moduli.euler_series_punctured(G, route="beta")
        b = moduli.euler_series_punctured(G, route="necklace")
        if a.series != b.series:
            return f"assemblies differ: {a.series} vs {b.series}"
        bad = [name for name, ok in a.checks.items() if not ok]
        return f"failed checks {bad}" if bad else None
    yield _cell("moduli_series", {"max_genus": G}, check)


SUITES: Dict[str, Callable] = {
    "ramanujan_oracle": ramanujan_oracle,
    "cohen_oracle": cohen_oracle,
    "multiplicative": multiplicative,
    "kld": kld,
    "beta_necklace": beta_necklace,
    "cycle_index": cycle_index,
    "linear_counts": linear_counts,
    "cohen_counts": cohen_counts,
    "key_identity": key_identity,
    "packing": packing,
    "dt_variant": dt_variant,
    "dirichlet": dirichlet,
    "phi1_forms": phi1_forms,
    "moduli_series": moduli_series,
}


def run_suite(name: str, level: str = "smoke", overrides=None, seed: int = 0) -> SuiteResult:
    g = grid(level, overrides)
    rng = random.Random(seed)
    result = SuiteResult(name)
    result.cells.extend(SUITES[name](g, rng))
    return result


def run_all(level: str = "smoke", overrides=None, seed: int = 0,
            only: Optional[List[str]] = None) -> List[SuiteResult]:
    names = only or list(SUITES)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
    return [run_suite(name, level, overrides, seed) for name in names]
