"""Truncated q-series over Python ints and the generating functions built on them.

Every series carries an explicit degree bound N and stores exactly N + 1
coefficients.  Products of infinite Pochhammer symbols are applied one linear
factor at a time, so building a generating function to degree N costs
O(N) per factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .partitions import VARIANTS


class ParameterError(ValueError):
    """Parameters outside the regime where a generating function is defined."""


@dataclass(frozen=True)
class TruncatedSeries:
    degree_bound: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coefficients)
        if self.degree_bound < 0:
            raise ValueError("degree bound must be >= 0")
        if len(coeffs) != self.degree_bound + 1:
            raise ValueError(
                f"expected {self.degree_bound + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], N: int) -> "TruncatedSeries":
        """Pad with zeros or cut to exactly N + 1 coefficients."""
        c = list(coeffs[: N + 1])
        c.extend([0] * (N + 1 - len(c)))
        return cls(N, tuple(c))

    @classmethod
    def one(cls, N: int) -> "TruncatedSeries":
        return cls.from_coeffs([1], N)

    @classmethod
    def zero(cls, N: int) -> "TruncatedSeries":
        return cls.from_coeffs([], N)

    @classmethod
    def monomial(cls, exponent: int, N: int, coeff: int = 1) -> "TruncatedSeries":
        c = [0] * (N + 1)
        if 0 <= exponent <= N:
            c[exponent] = coeff
        return cls(N, tuple(c))

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.degree_bound:
            raise IndexError(f"coefficient {n} outside [0, {self.degree_bound}]")
        return self.coefficients[n]

    def __len__(self) -> int:
        return self.degree_bound + 1

    def _check(self, other: "TruncatedSeries") -> None:
        if self.degree_bound != other.degree_bound:
            raise ValueError(
                f"degree bounds differ: {self.degree_bound} vs {other.degree_bound}"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.degree_bound, tuple(x + y for x, y in zip(self.coefficients, other.coefficients))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.degree_bound, tuple(x - y for x, y in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.degree_bound, tuple(-x for x in self.coefficients))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k (k >= 0), dropping terms past the bound."""
        if k < 0:
            raise ValueError("shift must be >= 0")
        N = self.degree_bound
        return TruncatedSeries.from_coeffs([0] * k + list(self.coefficients[: max(0, N + 1 - k)]), N)

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.degree_bound:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(N, self.coefficients[: N + 1])

    def to_json(self) -> str:
        return json.dumps(
            {"degree_bound": self.degree_bound, "coefficients": [str(c) for c in self.coefficients]}
        )

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        obj = json.loads(text)
        return cls(int(obj["degree_bound"]), tuple(int(c) for c in obj["coefficients"]))


def series_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the shared degree bound."""
    x._check(y)
    N = x.degree_bound
    out = [0] * (N + 1)
    xs, ys = x.coefficients, y.coefficients
    for i, xi in enumerate(xs):
        if xi:
            for j in range(N + 1 - i):
                out[i + j] += xi * ys[j]
    return TruncatedSeries(N, tuple(out))


@dataclass(frozen=True)
class PochhammerFactor:
    """(q^start; q^step)_inf, or (-q^start; q^step)_inf when sign is -1.

    ``sign=+1`` means factors (1 - q^j), ``sign=-1`` means (1 + q^j);
    ``inverted`` divides by the product instead of multiplying.
    """

    start: int
    step: int
    sign: int = 1
    inverted: bool = False

    def __post_init__(self) -> None:
        if self.start < 1 or self.step < 1:
            raise ValueError("start and step must be >= 1")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def exponents(self, N: int) -> range:
        return range(self.start, N + 1, self.step)


def _times_binomial(c: list[int], j: int, s: int) -> None:
    # c <- c * (1 - s q^j), in place
    for n in range(len(c) - 1, j - 1, -1):
        c[n] -= s * c[n - j]


def _divide_binomial(c: list[int], j: int, s: int) -> None:
    # c <- c / (1 - s q^j): prefix recurrence c'_n = c_n + s c'_{n-j}
    for n in range(j, len(c)):
        c[n] += s * c[n - j]


def apply_factor(x: TruncatedSeries, f: PochhammerFactor) -> TruncatedSeries:
    c = list(x.coefficients)
    s = 1 if f.sign == 1 else -1
    for j in f.exponents(x.degree_bound):
        if f.inverted:
            _divide_binomial(c, j, s)
        else:
            _times_binomial(c, j, s)
    return TruncatedSeries(x.degree_bound, tuple(c))


def product(factors: Iterable[PochhammerFactor], N: int) -> TruncatedSeries:
    s = TruncatedSeries.one(N)
    for f in factors:
        s = apply_factor(s, f)
    return s


def _poch(start: int, step: int) -> PochhammerFactor:
    return PochhammerFactor(start, step)


def _inv(start: int, step: int) -> PochhammerFactor:
    return PochhammerFactor(start, step, inverted=True)


def _neg(start: int, step: int) -> PochhammerFactor:
    return PochhammerFactor(start, step, sign=-1)


# -- generating functions ----------------------------------------------------


def gf_gap(d: int, a: int, N: int) -> TruncatedSeries:
    """sum_k q^(d*C(k,2) + k*a) / (q;q)_k, truncated at N."""
    if d < 1 or a < 1:
        raise ParameterError(f"need d >= 1 and a >= 1, got d={d}, a={a}")
    total = [0] * (N + 1)
    total[0] = 1
    inv_qq = [1] + [0] * N  # 1/(q;q)_k
    k = 1
    # the last k with d*k(k-1)/2 + k*a <= N
    while d * k * (k - 1) // 2 + k * a <= N:
        _divide_binomial(inv_qq, k, 1)
        offset = d * k * (k - 1) // 2 + k * a
        for n in range(offset, N + 1):
            total[n] += inv_qq[n - offset]
        k += 1
    return TruncatedSeries(N, tuple(total))


def q_factors(variant: str, d: int, b: int) -> list[PochhammerFactor]:
    """Inverted Pochhammer factors of the Q_d^(b) family."""
    m = d + 3
    if m < 2:
        raise ParameterError(f"modulus d+3 must be >= 2, got d={d}")
    if not 1 <= b <= d + 2:
        raise ParameterError(f"b must satisfy 1 <= b <= d+2 = {d + 2}, got {b}")
    if variant not in VARIANTS:
        raise ParameterError(f"unknown variant {variant!r}")
    if variant == "plain":
        if 2 * b == m:
            return [_inv(b, m)]
        return [_inv(m - b, m), _inv(b, m)]
    # the single residue class b = (d+3)/2 loses its first part in both
    # excluded variants
    if 2 * b == m:
        return [_inv(2 * m - b, m)]
    if variant == "dash":
        return [_inv(2 * m - b, m), _inv(b, m)]
    return [_inv(2 * m - b, m), _inv(m + b, m)]


def gf_Q(variant: str, d: int, b: int, N: int) -> TruncatedSeries:
    return product(q_factors(variant, d, b), N)


def r_exponent(d: int, a: int) -> int:
    """Largest r with 2^r - 2^(a-1) <= d."""
    if d < 1 or a < 1:
        raise ParameterError("need d >= 1 and a >= 1")
    r = a - 1
    while 2 ** (r + 1) - 2 ** (a - 1) <= d:
        r += 1
    return r


def _fkg_factors(which: str, d: int, a: int) -> tuple[list[PochhammerFactor], int]:
    r = r_exponent(d, a)
    if r < a:
        raise ParameterError(f"need r >= a, got r={r} for d={d}, a={a}")
    if which == "f":
        return [_neg(2**i, d) for i in range(a - 1, r)], r
    if which == "k":
        return [_neg(d + 2**i, d) for i in range(a - 1, r)], r
    if which == "g":
        fs = [_neg(d + 2 ** (r - 1), 2 * d), _inv(2 ** (a - 1), 2 * d)]
        fs += [_inv(d + 2**i, 2 * d) for i in range(a, r - 1)]
        return fs, r
    raise ParameterError(f"unknown series {which!r}; expected f, k or g")


def gf_fkg(which: str, d: int, a: int, N: int) -> TruncatedSeries:
    """The auxiliary series f, k and g indexed by (d, a).

    f is a product of (-q^(2^i); q^d)_inf, k replaces 2^i by d + 2^i and
    carries the prefactor (1 - q^(d+2^(a-1))) / (1 - q^(2^(a-1))), and g is
    the mod-2d product with a single distinct-part numerator.
    """
    factors, _ = _fkg_factors(which, d, a)
    s = product(factors, N)
    if which == "k":
        h = 2 ** (a - 1)
        c = list(s.coefficients)
        _times_binomial(c, d + h, 1)
        _divide_binomial(c, h, 1)
        s = TruncatedSeries(N, tuple(c))
    return s


def gf_k_rewritten(d: int, a: int, N: int) -> TruncatedSeries:
    """k as a single mod-2d / mod-4d product with a signed numerator."""
    r = r_exponent(d, a)
    if r < a:
        raise ParameterError(f"need r >= a, got r={r}")
    fs = [
        _poch(4 * d + 2**r, 4 * d),
        _neg(d + 2 ** (r - 1), 2 * d),
        _inv(2 ** (a - 1), 2 * d),
        _inv(3 * d + 2 ** (a - 1), 2 * d),
    ]
    fs += [_inv(d + 2**i, 2 * d) for i in range(a, r - 1)]
    return product(fs, N)


def fk_difference(d: int, a: int, N: int) -> TruncatedSeries:
    """(1 + q^(2^r)) f - k."""
    r = r_exponent(d, a)
    f = gf_fkg("f", d, a, N)
    return f + f.shift(2**r) - gf_fkg("k", d, a, N)


def nonneg_check(x: TruncatedSeries) -> int | None:
    """Index of the first negative coefficient, or None."""
    for n, c in enumerate(x.coefficients):
        if c < 0:
            return n
    return None
