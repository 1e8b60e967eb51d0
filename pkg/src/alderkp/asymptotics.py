"""Meinardus-type main terms for q_d^(a)(n) and Q_d^(a)(n), and the crossover search.

All real arithmetic is done with mpmath at a caller-chosen working precision
(at least 50 significant digits by default).  Error terms are not derived
here; callers may plug in explicit bounds through the ``*_error`` hooks of
:func:`crossover_nd` and :func:`with_error`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import mpmath
from mpmath import mpf

DEFAULT_PRECISION = 50
TAIL_TARGET = mpf(10) ** -30

ErrorBound = Callable[[int], mpf]


class AsymptoticHypothesisError(ValueError):
    """Parameters outside the range where an estimate is stated."""


class NoCrossover(RuntimeError):
    """No crossover was found below the search limit."""


def solve_alpha(d: int, tolerance: mpf | float = mpf(10) ** -30, precision: int = DEFAULT_PRECISION) -> mpf:
    """The root in (0, 1) of x^d + x - 1, by bisection then Newton polishing."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    with mpmath.workdps(precision + 10):
        tol = mpf(tolerance)
        f = lambda x: x**d + x - 1
        lo, hi = mpf(0), mpf(1)
        # f is strictly increasing on [0, 1] with f(0) = -1 < 0 < 1 = f(1)
        width = min(tol, mpf(10) ** -30)
        while hi - lo > width:
            mid = (lo + hi) / 2
            if f(mid) < 0:
                lo = mid
            else:
                hi = mid
        x = (lo + hi) / 2
        for _ in range(8):
            step = f(x) / (d * x ** (d - 1) + 1)
            x -= step
            if abs(step) < mpf(10) ** -(precision + 5):
                break
        if abs(f(x)) >= tol:
            raise ArithmeticError(f"residual {f(x)} above tolerance {tol} for d={d}")
    return +x


@dataclass(frozen=True)
class MeinardusParams:
    d: int
    a: int
    alpha: mpf
    A: mpf
    C: mpf
    tail_terms: int
    tail_bound: mpf
    precision: int

    @property
    def pi2_bound(self) -> mpf:
        """pi^2 / (3d + 9), the exponent constant of the residue-class side."""
        with mpmath.workdps(self.precision):
            return mpmath.pi**2 / (3 * self.d + 9)

    def to_dict(self, digits: int = 30) -> dict:
        s = lambda x: mpmath.nstr(x, digits)
        return {
            "d": self.d,
            "a": self.a,
            "alpha": s(self.alpha),
            "A": s(self.A),
            "C": s(self.C),
            "pi2_bound": s(self.pi2_bound),
            "tail_terms": self.tail_terms,
            "tail_bound": mpmath.nstr(self.tail_bound, 5),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def a_series_tail(alpha: mpf, d: int, terms: int) -> mpf:
    """Upper bound for sum_{r > R} alpha^(rd) / r^2 with R = terms."""
    x = alpha**d
    return x ** (terms + 1) / ((terms + 1) ** 2 * (1 - x))


def meinardus_params(
    d: int, a: int, precision: int = DEFAULT_PRECISION, tail_target: mpf | float = TAIL_TARGET
) -> MeinardusParams:
    """alpha, A = (d/2) log^2 alpha + sum alpha^(rd)/r^2 and the constant C(d, a)."""
    if d < 1 or a < 1:
        raise ValueError(f"need d, a >= 1, got d={d}, a={a}")
    with mpmath.workdps(precision + 10):
        alpha = solve_alpha(d, precision=precision)
        x = alpha**d
        total = mpf(0)
        R = 0
        target = mpf(tail_target)
        while True:
            R += 1
            total += x**R / R**2
            tail = a_series_tail(alpha, d, R)
            if tail < target:
                break
        A = mpf(d) / 2 * mpmath.log(alpha) ** 2 + total
        C = (
            A ** mpf(0.25)
            / (2 * mpmath.sqrt(mpmath.pi))
            / mpmath.sqrt(alpha ** (d + 1 - 2 * a) * (d * alpha ** (d - 1) + 1))
        )
        return MeinardusParams(d, a, +alpha, +A, +C, R, +tail, precision)


def estimate_q(params: MeinardusParams, n: int) -> mpf:
    """C n^(-3/4) exp(2 sqrt(A n))."""
    if n < 1:
        raise ValueError("need n >= 1")
    with mpmath.workdps(params.precision):
        return params.C * mpf(n) ** mpf(-0.75) * mpmath.exp(2 * mpmath.sqrt(params.A * n))


def check_Q_hypotheses(d: int, a: int) -> None:
    if d < 1 or a < 1:
        raise AsymptoticHypothesisError(f"need d, a >= 1, got d={d}, a={a}")
    if not 2 * a < d + 3:
        raise AsymptoticHypothesisError(f"need a < (d+3)/2, got a={a}, d={d}")
    if math.gcd(a, d + 3) != 1:
        raise AsymptoticHypothesisError(f"need gcd(a, d+3) = 1, got gcd({a}, {d + 3}) = {math.gcd(a, d + 3)}")


def Q_constant(d: int, a: int, precision: int = DEFAULT_PRECISION, displayed: bool = False) -> mpf:
    """csc(pi a/(d+3)) / (4 * 3^(1/4) (d+3)^(1/4)).

    ``displayed=True`` returns the variant with an extra factor 1/pi in the
    denominator, which undershoots exact counts by a factor close to pi.
    """
    check_Q_hypotheses(d, a)
    with mpmath.workdps(precision):
        m = d + 3
        c = mpmath.csc(mpmath.pi * a / m) / (4 * mpf(3) ** mpf(0.25) * mpf(m) ** mpf(0.25))
        return c / mpmath.pi if displayed else c


def estimate_Q(d: int, a: int, n: int, precision: int = DEFAULT_PRECISION, displayed: bool = False) -> mpf:
    """Q_constant n^(-3/4) exp(2 pi sqrt(n / (3d + 9)))."""
    if n < 1:
        raise ValueError("need n >= 1")
    c = Q_constant(d, a, precision, displayed)
    with mpmath.workdps(precision):
        return c * mpf(n) ** mpf(-0.75) * mpmath.exp(2 * mpmath.pi * mpmath.sqrt(mpf(n) / (3 * d + 9)))


def with_error(main: mpf, n: int, error_bound: ErrorBound | None) -> tuple[mpf, mpf]:
    """(main - err(n), main + err(n)); zero-width without a hook."""
    err = mpf(0) if error_bound is None else mpf(error_bound(n))
    return main - err, main + err


@dataclass(frozen=True)
class Crossover:
    d: int
    a: int
    n_d: int
    window: tuple[int, ...]
    rigorous: bool

    def to_dict(self) -> dict:
        return {"d": self.d, "a": self.a, "n_d": self.n_d, "heuristic": not self.rigorous}


def crossover_nd(
    d: int,
    a: int,
    *,
    precision: int = 30,
    n_limit: int = 10**9,
    window_points: int = 64,
    q_error: ErrorBound | None = None,
    Q_error: ErrorBound | None = None,
) -> Crossover:
    """Smallest n where the q main term beats the Q main term, confirmed on a window.

    Without error hooks this is a heuristic; with both hooks supplied the
    comparison uses main term minus (resp. plus) the bound.  After a
    candidate n is found, ``window_points`` points spread over [n, 4n] must
    all keep q above Q with a growing gap; otherwise the search restarts
    past the first bad point.
    """
    check_Q_hypotheses(d, a)
    params = meinardus_params(d, a, precision=max(precision, 30))

    def gap(n: int) -> mpf:
        lo_q, _ = with_error(estimate_q(params, n), n, q_error)
        _, hi_Q = with_error(estimate_Q(d, a, n, precision), n, Q_error)
        return lo_q - hi_Q

    def ok(n: int) -> bool:
        return gap(n) >= 0

    with mpmath.workdps(precision):
        # the main-term log ratio is log(Cq/CQ) + 2 delta sqrt(n) with delta > 0
        delta = mpmath.sqrt(params.A) - mpmath.pi / mpmath.sqrt(3 * d + 9)
        log_c = mpmath.log(params.C / Q_constant(d, a, precision))
        guess = 1 if log_c >= 0 else int(mpmath.ceil((-log_c / (2 * delta)) ** 2))
    n = max(1, guess)
    if not ok(n):
        step = 1
        while not ok(n + step):
            step *= 2
            if n + step > n_limit:
                raise NoCrossover(f"no crossover below {n_limit} for d={d}, a={a}")
        lo, hi = n + step // 2, n + step
        while lo < hi:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid + 1
        n = lo
    while n > 1 and ok(n - 1):
        n -= 1
    while True:
        pts = sorted({n + (3 * n * i) // (window_points - 1) for i in range(window_points)})
        gaps = [gap(p) for p in pts]
        bad = next(
            (i for i in range(len(pts)) if gaps[i] < 0 or (i and gaps[i] < gaps[i - 1])), None
        )
        if bad is None:
            return Crossover(d, a, n, tuple(pts), q_error is not None and Q_error is not None)
        n = pts[bad] + 1
        if n > n_limit:
            raise NoCrossover(f"no stable crossover below {n_limit} for d={d}, a={a}")
