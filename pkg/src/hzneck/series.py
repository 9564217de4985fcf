"""Dense exact polynomials and truncated (Laurent) power series over Q.

``RatPoly`` is an exact univariate polynomial.  ``TruncSeries`` is a series
known exactly for exponents in ``[offset, order)``; everything at or above
``order`` is unknown and is never read or written.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, List, NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "RatPoly",
    "TruncSeries",
    "Monomial",
    "series_log1p",
    "series_exp",
    "series_inv_1p",
    "series_recip_power",
    "compose_odd_or_power",
    "newton_series_coeffs",
    "newton_eval",
    "fraction_to_str",
    "fraction_from_str",
]


def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


def _trim(coeffs: Iterable[Scalar]) -> tuple:
    out = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class RatPoly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def monomial(cls, c: Scalar, e: int) -> "RatPoly":
        if e < 0:
            raise ValueError("negative exponent")
        return cls([0] * e + [c])

    @classmethod
    def from_dict(cls, terms: dict) -> "RatPoly":
        if not terms:
            return cls()
        out = [Fraction(0)] * (max(terms) + 1)
        for e, c in terms.items():
            out[e] += c
        return cls(out)

    @property
    def degree(self) -> int:
        """Highest nonzero exponent; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __getitem__(self, e: int) -> Fraction:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RatPoly(0)"
        terms = [f"{c}*t^{e}" for e, c in enumerate(self.coeffs) if c]
        return "RatPoly(" + " + ".join(terms) + ")"

    def __add__(self, other) -> "RatPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RatPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RatPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RatPoly":
        return RatPoly(c * a for a in self.coeffs)

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative power")
        result, base = RatPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_monomial(self, m: int) -> "RatPoly":
        """p(t) -> p(t^m)."""
        if m < 1:
            raise ValueError("substitution exponent must be >= 1")
        return RatPoly.from_dict({e * m: c for e, c in enumerate(self.coeffs) if c})

    def reverse(self, n: int) -> "RatPoly":
        """t^n p(1/t); requires deg p <= n."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds {n}")
        return RatPoly.from_dict({n - e: c for e, c in enumerate(self.coeffs) if c})

    def derivative(self) -> "RatPoly":
        return RatPoly(e * c for e, c in enumerate(self.coeffs) if e)

    def __call__(self, x):
        # sparse: necklace-type polynomials have nonzero terms only at divisors
        return sum((c * x**e for e, c in enumerate(self.coeffs) if c), Fraction(0) * x)

    def to_series(self, order: int) -> "TruncSeries":
        return TruncSeries(0, self.coeffs[:max(order, 0)], order)

    def to_json(self) -> dict:
        return {"offset": 0, "coeffs": [fraction_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "RatPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("offset", 0) != 0:
            raise ValueError("polynomial JSON must have offset 0")
        return cls(fraction_from_str(s) for s in data["coeffs"])


def _as_poly(x) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RatPoly([x])
    raise TypeError(f"cannot treat {type(x).__name__} as RatPoly")


class Monomial(NamedTuple):
    """c * t^exp, the only admissible shape for the Y argument of Phi^1 / Phi."""

    coeff: Fraction
    exp: int

    def power(self, e: int) -> "Monomial":
        return Monomial(Fraction(self.coeff) ** e, self.exp * e)


class TruncSeries:
    """Laurent series sum_{offset <= e < order} c_e t^e + O(t^order).

    Leading zero coefficients are stripped on construction, so ``offset`` is
    the valuation whenever the series is nonzero.  A zero series has
    ``offset == order`` and no coefficients.
    """

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, offset: int, coeffs: Sequence[Scalar], order: int):
        cs = [Fraction(c) for c in coeffs[: max(order - offset, 0)]]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = cs[start:]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "order", order)
        if cs:
            object.__setattr__(self, "offset", offset + start)
        else:
            object.__setattr__(self, "offset", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls(order, (), order)

    @classmethod
    def monomial(cls, c: Scalar, e: int, order: int) -> "TruncSeries":
        return cls(e, [c], order)

    @classmethod
    def from_dict(cls, terms: dict, order: int) -> "TruncSeries":
        terms = {e: c for e, c in terms.items() if e < order and c}
        if not terms:
            return cls.zero(order)
        lo = min(terms)
        cs = [Fraction(0)] * (max(terms) - lo + 1)
        for e, c in terms.items():
            cs[e - lo] += c
        return cls(lo, cs, order)

    @property
    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient, or ``order`` if zero."""
        return self.offset

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> Fraction:
        if e >= self.order:
            raise IndexError(f"exponent {e} is beyond truncation order {self.order}")
        i = e - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def terms(self) -> dict:
        return {self.offset + i: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.order == other.order
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs, self.order))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*t^{e}" for e, c in self.terms().items()) or "0"
        return f"TruncSeries({body} + O(t^{self.order}))"

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return TruncSeries(self.offset, self.coeffs, order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.monomial(other, 0, self.order)
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset)
        if lo >= order:
            return TruncSeries.zero(order)
        cs = [self[e] + other[e] if e < order else 0 for e in range(lo, order)]
        return TruncSeries(lo, cs, order)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.offset, [-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.monomial(other, 0, self.order)
        return self + (-other)

    def scale(self, c: Scalar) -> "TruncSeries":
        if c == 0:
            return TruncSeries.zero(self.order)
        return TruncSeries(self.offset, [c * a for a in self.coeffs], self.order)

    def shift(self, e: int) -> "TruncSeries":
        """Multiply by t^e; the truncation order moves with it."""
        return TruncSeries(self.offset + e, self.coeffs, self.order + e)

    def mul_monomial(self, y: Monomial) -> "TruncSeries":
        return self.shift(y.exp).scale(y.coeff)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        # exponents below min(self.order + other.offset, other.order + self.offset) are exact
        order = min(self.order + other.offset, other.order + self.offset)
        lo = self.offset + other.offset
        if self.is_zero() or other.is_zero() or lo >= order:
            return TruncSeries.zero(order)
        out = [Fraction(0)] * (order - lo)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                idx = i + j
                if idx >= len(out):
                    break
                out[idx] += a * b
        return TruncSeries(lo, out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            if self.offset < 0:
                raise ValueError("0-th power of a Laurent series with unknown order bookkeeping")
            return TruncSeries.monomial(1, 0, self.order - self.offset)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def to_json(self) -> dict:
        lo = self.offset if self.coeffs else self.order
        return {
            "offset": lo,
            "order": self.order,
            "coeffs": [fraction_to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "TruncSeries":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["offset"], [fraction_from_str(s) for s in data["coeffs"]], data["order"])


def _require_positive_valuation(x: TruncSeries, what: str) -> None:
    if not x.is_zero() and x.valuation <= 0:
        raise ValueError(f"{what} needs an argument of positive valuation, got valuation {x.valuation}")


def compose_odd_or_power(coeff: Callable[[int], Fraction], x: TruncSeries, order: int,
                         start: int = 0) -> TruncSeries:
    """sum_{s >= start} coeff(s) x^s truncated at ``order``; x must have positive valuation."""
    _require_positive_valuation(x, "series composition")
    x = x.truncate(min(order, x.order))
    total = TruncSeries.zero(order)
    if start == 0:
        total = total + TruncSeries.monomial(coeff(0), 0, order)
        start = 1
    if x.is_zero():
        return total
    power = x ** start
    s = start
    while power.valuation < order:
        c = coeff(s)
        if c:
            total = total + power.scale(c)
        power = power * x
        s += 1
    return total


def series_log1p(x: TruncSeries, order: int) -> TruncSeries:
    """log(1 + x) = sum_{s>=1} (-1)^(s+1) x^s / s."""
    _require_positive_valuation(x, "log1p")
    return compose_odd_or_power(lambda s: Fraction((-1) ** (s + 1), s), x, order, start=1)


def series_exp(x: TruncSeries, order: int) -> TruncSeries:
    """exp(x) for x of positive valuation."""
    fact = [Fraction(1)]

    def coeff(s: int) -> Fraction:
        while len(fact) <= s:
            fact.append(fact[-1] / len(fact))
        return fact[s]

    return compose_odd_or_power(coeff, x, order, start=0)


def series_inv_1p(x: TruncSeries, order: int) -> TruncSeries:
    """1 / (1 + x) as a geometric series."""
    return compose_odd_or_power(lambda s: Fraction((-1) ** s), x, order, start=0)


def series_recip_power(y: Monomial, e: int, order: int) -> TruncSeries:
    """y^(-e) for a monomial y = c t^k, as a Laurent monomial."""
    if y.coeff == 0:
        raise ZeroDivisionError("reciprocal of the zero monomial")
    if e < 1:
        raise ValueError("power must be >= 1")
    return TruncSeries.monomial(Fraction(1) / Fraction(y.coeff) ** e, -y.exp * e, order)


def newton_series_coeffs(nodes: Sequence[Scalar], values: Sequence[Scalar]) -> List[Fraction]:
    """Divided differences Delta[a_0], Delta[a_0, a_1], ..., Delta[a_0..a_n].

    Each is evaluated by the symmetric formula
    sum_j h(a_j) / prod_{p != j} (a_j - a_p).
    """
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    nodes = [Fraction(a) for a in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError("repeated interpolation node")
    out = []
    for i in range(len(nodes)):
        acc = Fraction(0)
        for j in range(i + 1):
            den = Fraction(1)
            for p in range(i + 1):
                if p != j:
                    den *= nodes[j] - nodes[p]
            acc += Fraction(values[j]) / den
        out.append(acc)
    return out


def newton_eval(nodes: Sequence[Scalar], coeffs: Sequence[Scalar], t: Scalar) -> Fraction:
    """Evaluate h(a_0) + sum_i Delta[a_0..a_i] prod_{j<i} (t - a_j) by Horner."""
    if not coeffs:
        return Fraction(0)
    t = Fraction(t)
    acc = Fraction(coeffs[-1])
    for i in range(len(coeffs) - 2, -1, -1):
        acc = acc * (t - Fraction(nodes[i])) + Fraction(coeffs[i])
    return acc
