"""Executable injections, bijections and involutions behind the partition inequalities.

Each map takes and returns :class:`~alderkp.partitions.Partition` values;
internally the piecewise definitions index parts in increasing order
(``lam[0] <= lam[1] <= ...``), which is how the constructions are stated.
The ``*_suite`` functions run a map over its whole (small) domain and report
collisions, image-predicate failures and weight mismatches with witnesses.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .partitions import (
    EMPTY,
    ExplicitPartSpec,
    GapSpec,
    Partition,
    PartSpec,
    enumerate_gap,
    enumerate_partset,
    part_list,
    residue_spec,
)
from .qseries import ParameterError, gf_fkg, r_exponent


class MapDomainError(ValueError):
    """Input outside the map's domain, or parameters outside its hypotheses."""


class MapInvariantError(RuntimeError):
    """A branch produced an output violating the map's contract (a bug or a finding)."""


# -- binary helpers ------------------------------------------------------------


def beta(x: int, d: int) -> int:
    """Least positive residue of x mod d (in 1..d)."""
    return x % d or d


def binary_weight(x: int) -> int:
    return bin(x).count("1")


def lowest_power(x: int) -> int:
    """Smallest power of two in the binary expansion of x > 0."""
    if x <= 0:
        raise ValueError("need x > 0")
    return x & -x


# -- shared types --------------------------------------------------------------


@dataclass(frozen=True)
class MapTrace:
    input: Partition
    case: str
    output: Partition

    @property
    def weight_delta(self) -> int:
        return self.output.weight - self.input.weight

    def to_json(self) -> str:
        return json.dumps(
            {"input": list(self.input.parts), "case": self.case, "output": list(self.output.parts)}
        )


@dataclass
class InjectionReport:
    name: str
    params: dict
    domain_size: int = 0
    collisions: list[tuple[MapTrace, MapTrace]] = field(default_factory=list)
    image_failures: list[MapTrace] = field(default_factory=list)
    weight_failures: list[MapTrace] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    case_counts: Counter = field(default_factory=Counter)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.collisions or self.image_failures or self.weight_failures or self.errors)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"{self.name} {self.params}: {status} over {self.domain_size} inputs "
            f"(collisions={len(self.collisions)}, image={len(self.image_failures)}, "
            f"weight={len(self.weight_failures)}, errors={len(self.errors)})"
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "domain_size": self.domain_size,
            "case_counts": dict(sorted(self.case_counts.items())),
            "collisions": [[a.to_json(), b.to_json()] for a, b in self.collisions[:20]],
            "image_failures": [t.to_json() for t in self.image_failures[:20]],
            "weight_failures": [t.to_json() for t in self.weight_failures[:20]],
            "errors": self.errors[:20],
            "notes": self.notes,
        }


def audit_map(
    report: InjectionReport,
    domain: Iterable[Partition],
    fn: Callable[[Partition], MapTrace],
    image_ok: Callable[[Partition], bool],
    weight_delta: Callable[[Partition], int],
) -> InjectionReport:
    """Run ``fn`` over ``domain``; record collisions, image and weight failures.

    Domains passed here are materialized per target weight, so outputs are
    compared within one call.
    """
    seen: dict[Partition, MapTrace] = {}
    for lam in domain:
        report.domain_size += 1
        try:
            tr = fn(lam)
        except (MapInvariantError, MapDomainError) as exc:
            report.errors.append(f"{lam}: {exc}")
            continue
        report.case_counts[tr.case] += 1
        if tr.weight_delta != weight_delta(lam):
            report.weight_failures.append(tr)
        if not image_ok(tr.output):
            report.image_failures.append(tr)
        prev = seen.get(tr.output)
        if prev is not None:
            report.collisions.append((prev, tr))
        else:
            seen[tr.output] = tr
    return report


# -- ordered part sequences ----------------------------------------------------


@dataclass(frozen=True)
class IndexedPartSequence:
    """A strictly increasing part sequence x_1 < x_2 < ..., materialized lazily.

    With ``divisor`` m set, every term is a multiple of m and x_1 = m.
    """

    spec: PartSpec
    divisor: int | None = None

    def terms(self, bound: int) -> list[int]:
        xs = part_list(self.spec, bound)
        if self.divisor is not None and xs:
            m = self.divisor
            if xs[0] != m:
                raise MapDomainError(f"first term {xs[0]} != divisor {m}")
            bad = [x for x in xs if x % m]
            if bad:
                raise MapDomainError(f"terms not divisible by {m}: {bad[:5]}")
        return xs

    def first(self, count: int) -> list[int]:
        bound = 16
        while True:
            xs = self.terms(bound)
            if len(xs) >= count:
                return xs[:count]
            bound *= 2
            if bound > 1 << 40:
                raise MapDomainError(f"sequence has fewer than {count} terms")

    def index(self, x: int) -> int:
        """1-based position of x in the sequence."""
        xs = self.terms(x)
        if not xs or xs[-1] != x:
            raise MapDomainError(f"{x} is not a term of {self.spec.label}")
        return len(xs)


def ordered_domination(s_spec: PartSpec, t_spec: PartSpec, count: int) -> int | None:
    """First 1-based index i <= count where the i-th of S is below the i-th of T."""
    xs = IndexedPartSequence(s_spec).first(count)
    ys = IndexedPartSequence(t_spec).first(count)
    for i, (x, y) in enumerate(zip(xs, ys), start=1):
        if x < y:
            return i
    return None


# -- rebalancing injection onto a sequence of multiples -------------------------


def st_inject(S: IndexedPartSequence, T: IndexedPartSequence, lam: Partition) -> Partition:
    """Send each x_i to y_i and pay the surplus in copies of y_1 = m."""
    m = T.divisor
    if m is None:
        raise MapDomainError("target sequence needs a divisor")
    if lam.weight % m:
        raise MapDomainError(f"weight {lam.weight} not divisible by {m}")
    if not lam.parts:
        return EMPTY
    xs = S.terms(lam.parts[0])
    pos = {x: i for i, x in enumerate(xs)}
    idx = []
    for p in lam.parts:
        if p not in pos:
            raise MapDomainError(f"part {p} not in {S.spec.label}")
        idx.append(pos[p])
    ys = T.first(max(idx) + 1)
    surplus = 0
    out = []
    for i, p in zip(idx, lam.parts):
        if p < ys[i]:
            raise MapDomainError(f"x_{i + 1} = {p} < y_{i + 1} = {ys[i]}")
        surplus += p - ys[i]
        out.append(ys[i])
    out.extend([m] * (surplus // m))
    return Partition.of(out)


def st_suite(d: int = 8, max_weight: int = 80) -> InjectionReport:
    """Exhaustive audit for S = +-2 mod d+3 minus {d+1}, T = +-2 mod d+2 minus {d}."""
    s_spec, t_spec = residue_spec("dash", d, 2), residue_spec("dash", d - 1, 2)
    S, T = IndexedPartSequence(s_spec), IndexedPartSequence(t_spec, divisor=2)
    rep = InjectionReport("st-inject", {"d": d, "max_weight": max_weight})
    for w in range(0, max_weight + 1, 2):
        audit_map(
            rep,
            enumerate_partset(s_spec, w),
            lambda lam: MapTrace(lam, "rebalance", st_inject(S, T, lam)),
            lambda mu, w=w: mu.weight == w and all(t_spec.allowed(p) for p in mu.parts),
            lambda lam: 0,
        )
    return rep


# -- multiples-of-a gap partitions into gap partitions --------------------------


def _hat(x: int, a: int) -> int:
    """Least nonnegative residue of -x mod a."""
    return (-x) % a


def multiples_domain(d: int, a: int, n: int) -> list[Partition]:
    """Partitions of n + n^ into multiples of a with gaps >= d + d^."""
    total = n + _hat(n, a)
    gap = d + _hat(d, a)
    scaled = enumerate_gap(GapSpec(gap // a, 1), total // a)
    return [Partition(tuple(a * p for p in lam.parts)) for lam in scaled]


def qstar_inject(d: int, a: int, n: int, lam: Partition) -> MapTrace:
    if n < d + 2 * a:
        raise MapDomainError(f"need n >= d + 2a = {d + 2 * a}, got {n}")
    nh = _hat(n, a)
    gap = d + _hat(d, a)
    if lam.weight != n + nh or any(p % a for p in lam.parts) or not GapSpec(gap, a).admits(lam):
        raise MapDomainError(f"{lam} is not a multiples-of-{a} gap-{gap} partition of {n + nh}")
    if nh == 0:
        return MapTrace(lam, "identity", lam)
    inc = list(lam.increasing)
    k = len(inc)
    if k == 1:
        case, out = "single", [a, n - a]
    elif inc[0] == a and k == 2:
        case, out = "pair-with-a", [n]
    elif inc[0] == a:
        case, out = "drop-a", inc[1:-1] + [inc[-1] + a - nh]
    else:
        case, out = "shave-smallest", [inc[0] - nh] + inc[1:]
    return MapTrace(lam, case, Partition.of(out))


def qstar_suite(d: int, a: int, n_max: int = 60) -> InjectionReport:
    rep = InjectionReport("qstar-inject", {"d": d, "a": a, "n_max": n_max})
    target = GapSpec(d, a)
    for n in range(d + 2 * a, n_max + 1):
        audit_map(
            rep,
            multiples_domain(d, a, n),
            lambda lam, n=n: qstar_inject(d, a, n, lam),
            lambda mu, n=n: mu.weight == n and target.admits(mu),
            lambda lam, n=n: -_hat(n, a),
        )
    return rep


# -- odd-weight parity injection ----------------------------------------------------


def parity_inject(d: int, lam: Partition) -> Partition:
    """Odd-weight partitions into +-2 mod d+3 (minus d+1) -> weight + 1 into +-2 mod d+2 (minus d)."""
    if d % 2:
        raise MapDomainError(f"d must be even, got {d}")
    if lam.weight % 2 == 0:
        raise MapDomainError(f"weight {lam.weight} is even")
    S = IndexedPartSequence(residue_spec("dash", d, 2))
    T = IndexedPartSequence(residue_spec("dash", d - 1, 2), divisor=2)
    xs = S.terms(lam.parts[0])
    pos = {x: i for i, x in enumerate(xs)}
    if any(p not in pos for p in lam.parts):
        raise MapDomainError(f"{lam} has parts outside {S.spec.label}")
    idx = [pos[p] for p in lam.parts]
    ys = T.first(max(idx) + 1)
    surplus = sum(p - ys[i] for i, p in zip(idx, lam.parts))
    twos = (surplus + 1) // 2
    return Partition.of([ys[i] for i in idx] + [2] * twos)


def parity_suite(d: int, max_weight: int = 81) -> InjectionReport:
    s_spec, t_spec = residue_spec("dash", d, 2), residue_spec("dash", d - 1, 2)
    rep = InjectionReport("parity-inject", {"d": d, "max_weight": max_weight})
    for w in range(1, max_weight + 1, 2):
        audit_map(
            rep,
            enumerate_partset(s_spec, w),
            lambda lam: MapTrace(lam, "replace-plus-twos", parity_inject(d, lam)),
            lambda mu, w=w: mu.weight == w + 1 and all(t_spec.allowed(p) for p in mu.parts),
            lambda lam: 1,
        )
    return rep


# -- distinct parts versus binary-gap partitions ------------------------------------


def _check_dkl(d: int, k: int, l: int) -> None:
    if not 0 <= k <= l:
        raise MapDomainError(f"need 0 <= k <= l, got k={k}, l={l}")
    if d < 2**l - 2**k or d < 1:
        raise MapDomainError(f"need d >= 2^l - 2^k = {2**l - 2**k}, got d={d}")


def d_parts(d: int, k: int, l: int) -> ExplicitPartSpec:
    """x == 2^i (mod d) for k <= i < l."""
    return ExplicitPartSpec.residue_union(d, [2**i for i in range(k, l)], label=f"A({d},{k},{l})")


def e_parts(d: int, k: int, l: int) -> ExplicitPartSpec:
    """y == 2^k * i (mod d) for 1 <= i < 2^(l-k)."""
    return ExplicitPartSpec.residue_union(
        d, [2**k * i for i in range(1, 2 ** (l - k))], label=f"A'({d},{k},{l})"
    )


def e_gap(x: int, d: int) -> int:
    """Minimum distance from part x to the next larger part in an E-partition."""
    b = beta(x, d)
    return d * binary_weight(b) + lowest_power(b) - b


def enumerate_e(d: int, k: int, l: int, n: int) -> list[Partition]:
    """Partitions into parts from A'(d,k,l) obeying the binary gap rule."""
    parts = part_list(e_parts(d, k, l), n)
    found: list[tuple[int, ...]] = []

    def rec(rest: int, lo: int, acc: tuple[int, ...]) -> None:
        if rest == 0:
            found.append(acc[::-1])
            return
        for p in parts:
            if p > rest:
                break
            if p >= lo:
                rec(rest - p, p + e_gap(p, d), acc + (p,))

    rec(n, 1, ())
    found.sort(reverse=True)
    return [Partition(p) for p in found]


def is_e_partition(lam: Partition, d: int, k: int, l: int) -> bool:
    spec = e_parts(d, k, l)
    inc = lam.increasing
    if any(not spec.allowed(p) for p in inc):
        return False
    return all(inc[i + 1] - inc[i] >= e_gap(inc[i], d) for i in range(len(inc) - 1))


def enumerate_d(d: int, k: int, l: int, n: int) -> list[Partition]:
    from .partitions import enumerate_distinct

    return enumerate_distinct(part_list(d_parts(d, k, l), n), n)


def de_counts(d: int, k: int, l: int, n: int) -> tuple[int, int]:
    _check_dkl(d, k, l)
    return len(enumerate_d(d, k, l, n)), len(enumerate_e(d, k, l, n))


# -- the map Psi: Y(n - 2^r) -> X(n) \ Y(n) ---------------------------------------


@dataclass(frozen=True)
class _PsiContext:
    a: int
    d: int
    r: int

    @property
    def R(self) -> int:
        return 2**self.r

    @property
    def h(self) -> int:
        return 2 ** (self.a - 1)


def psi_context(a: int, d: int, n: int) -> _PsiContext:
    if a < 3:
        raise MapDomainError(f"need a >= 3, got {a}")
    if d < 2 ** (a + 2):
        raise MapDomainError(f"need d >= 2^(a+2) = {2 ** (a + 2)}, got {d}")
    r = r_exponent(d, a)
    if d == 2**r - 2 ** (a - 1):
        raise MapDomainError(f"d = 2^r - 2^(a-1) = {d} is excluded")
    lower = 2 * d + 2**r + 2 ** (a - 1) - 1
    if n < lower:
        raise MapDomainError(f"need n >= 2d + 2^r + 2^(a-1) - 1 = {lower}, got {n}")
    return _PsiContext(a, d, r)


def y_domain(a: int, d: int, m: int) -> list[Partition]:
    """Y_d^(a)(m): the E-partitions of m for A'(d, a-1, r)."""
    return enumerate_e(d, a - 1, r_exponent(d, a), m)


def in_y(a: int, d: int, lam: Partition) -> bool:
    return is_e_partition(lam, d, a - 1, r_exponent(d, a))


def _first_jump(lam: list[int], d: int) -> int:
    """Least 1-based i with a jump >= 2d between consecutive floors; s if none."""
    for i in range(len(lam) - 1):
        lo = lam[i] - beta(lam[i], d)
        hi = lam[i + 1] - beta(lam[i + 1], d)
        if hi - lo >= 2 * d:
            return i + 1
    return len(lam)


def psi_map(a: int, d: int, n: int, lam: Partition) -> MapTrace:
    """Send a partition of n - 2^r in Y to a partition of n in X \\ Y.

    Branches: Z (bump one part by 2^r), V1 (prepend 2^r), V2 (shift floors),
    and V3,1 .. V3,5 according to the floor of the second-smallest part.
    """
    ctx = psi_context(a, d, n)
    R, h = ctx.R, ctx.h
    if lam.weight != n - R or not in_y(a, d, lam):
        raise MapDomainError(f"{lam} is not in Y_{d}^({a})({n - R})")
    L = list(lam.increasing)
    s = len(L)

    # Z: a part whose residue leaves room for 2^r, followed by a 2d jump;
    # the largest part counts as followed by an unbounded jump
    for i in range(s):
        roomy = i == s - 1 or L[i + 1] - L[i] >= 2 * d
        if roomy and beta(L[i], d) + R <= d:
            mu = list(L)
            mu[i] += R
            return _psi_out(lam, "Z", mu, ctx)

    if L[0] >= 2 * d + h - 1:
        return _psi_out(lam, "V1", [R] + L, ctx)

    if s < 2:
        raise MapInvariantError(f"{lam}: single part below 2d + 2^(a-1) - 1")

    if L[0] >= d:
        i = _first_jump(L, d)
        mu = [beta(L[0], d)]
        mu += [L[j - 2] - beta(L[j - 2], d) + beta(L[j - 1], d) for j in range(2, i + 1)]
        mu.append(L[i - 1] - beta(L[i - 1], d) + R)
        mu += L[i:]
        return _psi_out(lam, "V2", mu, ctx)

    floor2 = L[1] - beta(L[1], d)
    if floor2 >= 6 * d:
        mu = [R - 1, 2 * d + beta(L[0], d), L[1] - 2 * d + 1] + L[2:]
        return _psi_out(lam, "V3,1", mu, ctx)
    if floor2 in (4 * d, 5 * d):
        mu = [L[0], d + R - 1, L[1] - d + 1] + L[2:]
        return _psi_out(lam, "V3,2", mu, ctx)
    if floor2 == 3 * d:
        mu = [h - 1, d + L[0] + 1, L[1] - d + R - h] + L[2:]
        return _psi_out(lam, "V3,3", mu, ctx)
    if floor2 == 2 * d:
        mu = list(L)
        mu[0] = R - L[0] - 1
        mu[-1] = L[-1] + 2 * L[0] + 1
        return _psi_out(lam, "V3,4", mu, ctx)
    if floor2 == d:
        i = _first_jump(L, d)
        x = 10 if beta(L[i - 2], d) in (1, 4) else 5
        mu = list(L)
        mu[i - 2] += x
        mu[i - 1] += x
        # when i = s the last part takes both adjustments
        mu[-1] += R - 2 * x
        return _psi_out(lam, "V3,5", mu, ctx)
    raise MapInvariantError(f"{lam}: no branch applies (floor of second part {floor2})")


def _psi_out(lam: Partition, case: str, mu: list[int], ctx: _PsiContext) -> MapTrace:
    if any(p <= 0 for p in mu):
        raise MapInvariantError(f"{case} produced nonpositive parts {mu} from {lam}")
    if any(mu[i] > mu[i + 1] for i in range(len(mu) - 1)):
        raise MapInvariantError(f"{case} produced unsorted parts {mu} from {lam}")
    return MapTrace(lam, case, Partition.of(mu))


def psi_suite(a: int, d: int, n_max: int, n_min: int | None = None) -> InjectionReport:
    R = psi_context(a, d, n_max).R
    lower = 2 * d + R + 2 ** (a - 1) - 1
    n_min = lower if n_min is None else max(n_min, lower)
    rep = InjectionReport("psi-map", {"a": a, "d": d, "n_min": n_min, "n_max": n_max})
    target = GapSpec(d, a)
    relaxed = [n for n in range(n_min, n_max + 1) if n < 4 * d + R]
    if relaxed:
        rep.notes.append(
            f"n in [{relaxed[0]}, {relaxed[-1]}] admitted only by the relaxed bound "
            f"n >= 2d + 2^r + 2^(a-1) - 1; n >= {4 * d + R} by the original bound"
        )
    for n in range(n_min, n_max + 1):
        audit_map(
            rep,
            y_domain(a, d, n - R),
            lambda lam, n=n: psi_map(a, d, n, lam),
            lambda mu, n=n: mu.weight == n and target.admits(mu) and not in_y(a, d, mu),
            lambda lam: R,
        )
    return rep


# -- the sign-reversing involution cascade -----------------------------------------


@dataclass(frozen=True)
class SignedPartition:
    partition: Partition
    sign: int


@dataclass(frozen=True)
class InvolutionContext:
    """Part classes of the signed set S(n) and the target set T(n)."""

    a: int
    d: int
    r: int

    @classmethod
    def build(cls, a: int, d: int, n_max: int | None = None) -> "InvolutionContext":
        if a < 1:
            raise MapDomainError(f"need a >= 1, got {a}")
        if d < 2 ** (a + 1):
            raise MapDomainError(f"need d >= 2^(a+1) = {2 ** (a + 1)}, got {d}")
        r = r_exponent(d, a)
        if d == 2**r - 2 ** (a - 1):
            # classes d + 2^(a-1) (mod 2d) and 2^r (mod 4d) collide, but only
            # from the first signed part 4d + 2^r upward
            if n_max is None or n_max >= 4 * d + 2**r:
                raise MapDomainError(f"d = 2^r - 2^(a-1) = {d} is excluded")
        return cls(a, d, r)

    @property
    def h(self) -> int:
        return 2 ** (self.a - 1)

    @property
    def R(self) -> int:
        return 2**self.r

    @property
    def alpha(self) -> int:
        return self.d + self.R - self.h

    def is_signed_part(self, p: int) -> bool:
        return p >= 4 * self.d + self.R and (p - self.R) % (4 * self.d) == 0

    def sign(self, partition: Partition) -> int:
        return -1 if sum(map(self.is_signed_part, set(partition.parts))) % 2 else 1

    def signed(self, partition: Partition) -> SignedPartition:
        return SignedPartition(partition, self.sign(partition))

    def _unrestricted(self, with_dash_class: bool) -> ExplicitPartSpec:
        d = self.d
        res = [self.h] + [d + 2**i for i in range(self.a, self.r - 1)]
        excluded: list[int] = []
        if with_dash_class:
            res.append(d + self.h)
            excluded.append(d + self.h)
        return ExplicitPartSpec.residue_union(2 * d, res, excluded)

    def _distinct(self, bound: int, signed: bool) -> list[int]:
        d = self.d
        out = list(range(d + 2 ** (self.r - 1), bound + 1, 2 * d))
        if signed:
            out += list(range(4 * d + self.R, bound + 1, 4 * d))
        return sorted(out)

    def in_s(self, partition: Partition) -> bool:
        unrestricted = self._unrestricted(True)
        distinct = set(self._distinct(partition.weight, True))
        c = Counter(partition.parts)
        for p, m in c.items():
            if p in distinct:
                if m > 1:
                    return False
            elif not unrestricted.allowed(p):
                return False
        return True

    def in_t(self, partition: Partition) -> bool:
        unrestricted = self._unrestricted(False)
        distinct = set(self._distinct(partition.weight, False))
        c = Counter(partition.parts)
        for p, m in c.items():
            if p in distinct:
                if m > 1:
                    return False
            elif not unrestricted.allowed(p):
                return False
        return True

    def enumerate_s(self, n: int) -> list[Partition]:
        return _mixed(part_list(self._unrestricted(True), n), self._distinct(n, True), n)

    def enumerate_t(self, n: int) -> list[Partition]:
        return _mixed(part_list(self._unrestricted(False), n), self._distinct(n, False), n)


def _mixed(unrestricted: list[int], distinct: list[int], n: int) -> list[Partition]:
    """Partitions of n: any multiplicity from ``unrestricted``, at most one of each ``distinct``."""
    ways = [1] + [0] * n
    for p in unrestricted:
        for m in range(p, n + 1):
            ways[m] += ways[m - p]
    found: list[tuple[int, ...]] = []

    def rec(rest: int, idx: int, acc: tuple[int, ...]) -> None:
        if ways[rest]:
            for tail in enumerate_partset(ExplicitPartSpec.finite(unrestricted), rest) if unrestricted else (
                [EMPTY] if rest == 0 else []
            ):
                found.append(acc + tail.parts)
        for j in range(idx - 1, -1, -1):
            if distinct[j] <= rest:
                rec(rest - distinct[j], j, acc + (distinct[j],))

    rec(n, len(distinct), ())
    return sorted({Partition.of(p) for p in found}, key=lambda p: p.parts, reverse=True)


def _smallest(values: Iterable[int]) -> int | None:
    best = None
    for v in values:
        if best is None or v < best:
            best = v
    return best


def _lt(x: int | None, y: int | None) -> bool:
    """x < y with None as +infinity."""
    if x is None:
        return False
    return y is None or x < y


def _le(x: int | None, y: int | None) -> bool:
    if y is None:
        return True
    return x is not None and x <= y


READINGS = ("literal", "repaired")


def _phi_level(
    ctx: InvolutionContext, t: int, pi: Partition, reading: str = "literal"
) -> tuple[Partition, str | None]:
    """One level of the cascade; returns (image, branch) with branch None at fixed points.

    ``reading="literal"`` follows the displayed branch tables: for t >= a the
    replacement parts use exponent 2^(r-a) and residue 2^a at every level.
    ``reading="repaired"`` takes them at level t (exponent 2^(r-t), residue
    2^t) and, at level a-1, does not count the y-part toward the multiplicity
    that selects z (the y-part (2^(r-a+1)y - 1)d + 2^(a-1) has the shape
    ld + 2^(a-1) itself).
    """
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}; expected one of {READINGS}")
    a, d, r = ctx.a, ctx.d, ctx.r
    if not a - 1 <= t <= r - 2:
        raise MapDomainError(f"need a-1 <= t <= r-2 = {r - 2}, got t={t}")
    h, R, alpha = ctx.h, ctx.R, ctx.alpha
    if alpha % h:
        raise MapDomainError(f"2^(a-1) = {h} must divide d = {d}")
    fours = alpha // h
    m = Counter(pi.parts)
    mh = m[h]

    def swap(remove: list[int], add: list[int], case: str) -> tuple[Partition, str]:
        c = Counter(m)
        for p in remove:
            if c[p] == 0:
                raise MapInvariantError(f"level {t} {case}: part {p} absent from {pi}")
            c[p] -= 1
        out = [p for p, k in c.items() for _ in range(k)] + add
        return Partition.of(out), case

    if t == a - 1:
        K = 2 ** (r - a + 1)
        x = _smallest((p - R) // (K * d) for p in m if p > R and (p - R) % (K * d) == 0)
        y = _smallest((p - h + d) // (K * d) for p in m if p > h and (p - h + d) % (K * d) == 0)
        z = None
        if y is not None:
            y_part = (K * y - 1) * d + h if reading == "repaired" else None
            z = _smallest(
                (p - h) // d
                for p, k in m.items()
                if p > h and (p - h) % d == 0 and (p - h) // d > y and k - (p == y_part) >= K
            )
        if x is not None and _le(x, y):
            return swap([K * x * d + R], [(K * x - 1) * d + h] + [h] * fours, "a1")
        if _lt(y, x) and mh >= fours:
            return swap([(K * y - 1) * d + h] + [h] * fours, [K * y * d + R], "a2")
        if _lt(y, x) and x is not None and mh < fours and _le(x, z):
            return swap([K * x * d + R], [x * d + h] * K, "a3")
        if _lt(y, x) and mh < fours and _lt(z, x):
            return swap([z * d + h] * K, [K * z * d + R], "a4")
        return pi, None

    K = 2 ** (r - t)
    lvl = a if reading == "literal" else t
    Kr = 2 ** (r - lvl)
    step = 2**lvl
    u = _smallest(
        (p - h + d) // (2 * K * d) for p in m if p > h and (p - h + d) % (2 * K * d) == 0
    )
    x = _smallest(
        i for i in ((p - R) // (K * d) for p in m if p > R and (p - R) % (K * d) == 0) if i % 2
    )
    y = _smallest(
        j for j in ((p - h + d) // (K * d) for p in m if p > h and (p - h + d) % (K * d) == 0) if j % 2
    )
    heavy = [
        (p - 2**t) // d
        for p, k in m.items()
        if p > 2**t and (p - 2**t) % d == 0 and ((p - 2**t) // d) % 2 and k >= K
    ]
    w = _smallest(heavy)
    z = _smallest(l for l in heavy if y is not None and l > y)

    if u is not None:
        if x is not None and _le(x, w):
            return swap([Kr * x * d + R], [x * d + step] * Kr, "t1")
        if _lt(w, x):
            return swap([w * d + step] * Kr, [Kr * w * d + R], "t2")
        return pi, None
    if x is not None and _le(x, y):
        return swap([Kr * x * d + R], [(Kr * x - 1) * d + h] + [h] * fours, "t3")
    if _lt(y, x) and mh >= fours:
        return swap([(Kr * y - 1) * d + h] + [h] * fours, [Kr * y * d + R], "t4")
    if _lt(y, x) and x is not None and mh < fours and _le(x, z):
        return swap([Kr * x * d + R], [x * d + step] * Kr, "t5")
    if _lt(y, x) and mh < fours and _lt(z, x):
        return swap([z * d + step] * Kr, [Kr * z * d + R], "t6")
    return pi, None


def stratum(ctx: InvolutionContext, pi: Partition, reading: str = "literal") -> tuple[int | None, Partition, str | None]:
    """First level t moving pi, with its image and branch; (None, pi, None) if fixed throughout."""
    for t in range(ctx.a - 1, ctx.r - 1):
        img, case = _phi_level(ctx, t, pi, reading)
        if case is not None:
            return t, img, case
    return None, pi, None


@dataclass
class InvolutionReport:
    a: int
    d: int
    n_max: int
    reading: str = "literal"
    passed: bool = True
    failures: list[str] = field(default_factory=list)
    k_minus_g: list[int] = field(default_factory=list)
    moved: Counter = field(default_factory=Counter)
    notes: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.passed = False
        if len(self.failures) < 50:
            self.failures.append(msg)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "d": self.d,
            "n_max": self.n_max,
            "reading": self.reading,
            "passed": self.passed,
            "failures": self.failures,
            "moved_by_branch": dict(sorted(self.moved.items())),
            "notes": self.notes,
        }


def kg_inequality_check(a: int, d: int, n_max: int, reading: str = "literal") -> InvolutionReport:
    """Series check K(n) >= G(n) plus a full audit of the involution cascade for n <= n_max."""
    ctx = InvolutionContext.build(a, d, n_max)
    rep = InvolutionReport(a, d, n_max, reading)
    if d == ctx.R - ctx.h:
        rep.notes.append(
            f"boundary d = 2^r - 2^(a-1) admitted: no signed part is <= {n_max}"
        )
    try:
        K = gf_fkg("k", d, a, n_max)
        G = gf_fkg("g", d, a, n_max)
    except ParameterError as exc:
        raise MapDomainError(str(exc)) from exc
    for n in range(n_max + 1):
        rep.k_minus_g.append(K[n] - G[n])
        if K[n] < G[n]:
            rep.fail(f"n={n}: K={K[n]} < G={G[n]}")
    for n in range(n_max + 1):
        _audit_level(ctx, n, K[n], G[n], rep, reading)
    return rep


def _audit_level(ctx: InvolutionContext, n: int, k_n: int, g_n: int, rep: InvolutionReport, reading: str) -> None:
    S = ctx.enumerate_s(n)
    T = ctx.enumerate_t(n)
    plus = sum(1 for p in S if ctx.sign(p) == 1)
    minus = len(S) - plus
    if plus - minus != k_n:
        rep.fail(f"n={n}: |S+| - |S-| = {plus - minus} != K = {k_n}")
    if len(T) != g_n:
        rep.fail(f"n={n}: |T| = {len(T)} != G = {g_n}")
    s_set = set(S)
    moved: set[Partition] = set()
    for pi in S:
        try:
            t, img, case = stratum(ctx, pi, reading)
        except MapInvariantError as exc:
            rep.fail(f"n={n}: {exc}")
            continue
        if t is None:
            if ctx.sign(pi) == -1:
                rep.fail(f"n={n}: negative {pi} is fixed by every level")
            continue
        moved.add(pi)
        rep.moved[case] += 1
        if img not in s_set:
            rep.fail(f"n={n}: level {t} {case} maps {pi} outside S to {img}")
            continue
        if ctx.sign(img) != -ctx.sign(pi):
            rep.fail(f"n={n}: level {t} {case} keeps the sign of {pi} -> {img}")
        try:
            t2, back, _ = stratum(ctx, img, reading)
        except MapInvariantError as exc:
            rep.fail(f"n={n}: {exc}")
            continue
        if t2 != t or back != pi:
            rep.fail(f"n={n}: level {t} not an involution at {pi} -> {img} -> {back} (level {t2})")
    for tau in T:
        if tau in moved:
            rep.fail(f"n={n}: target partition {tau} is moved")
        if tau not in s_set:
            rep.fail(f"n={n}: target partition {tau} not in S")


class StratumViolation(MapDomainError):
    """The partition is moved by an earlier level of the cascade."""


def phi_involution(
    a: int, d: int, n: int, t: int, pi: SignedPartition, reading: str = "literal"
) -> SignedPartition:
    """Apply level t of the cascade to a signed partition of n outside the earlier strata."""
    ctx = InvolutionContext.build(a, d, n)
    if pi.partition.weight != n or not ctx.in_s(pi.partition):
        raise MapDomainError(f"{pi.partition} is not in S({n})")
    if pi.sign != ctx.sign(pi.partition):
        raise MapDomainError(f"sign {pi.sign} inconsistent with parts of {pi.partition}")
    for j in range(a - 1, t):
        if _phi_level(ctx, j, pi.partition, reading)[1] is not None:
            raise StratumViolation(f"{pi.partition} already lies in stratum {j}")
    img, _ = _phi_level(ctx, t, pi.partition, reading)
    return ctx.signed(img)


def de_suite(d: int, k: int, l: int, n_max: int) -> list[int]:
    """Values n <= n_max where D and E disagree."""
    _check_dkl(d, k, l)
    return [n for n in range(n_max + 1) if len(enumerate_d(d, k, l, n)) != len(enumerate_e(d, k, l, n))]

