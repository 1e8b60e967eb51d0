"""Exact counting and enumeration of restricted integer partitions.

Two families are supported:

* gap partitions: parts >= ``a`` with successive parts differing by >= ``d``;
* part-set partitions: every part drawn from an allowed set, given either as
  a residue class ``+-b (mod modulus)`` minus a finite exclusion set, or by an
  explicit generator (unions of arithmetic progressions and the like).

Counting is done by dynamic programming over Python ints; the enumerators are
deliberately naive so they can serve as an independent oracle.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence, Union


class EnumerationBudgetExceeded(RuntimeError):
    """Raised when an enumerator produced more objects than the caller allowed."""


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    weight: int = field(init=False)

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be nonincreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def increasing(self) -> tuple[int, ...]:
        return self.parts[::-1]

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


EMPTY = Partition(())


@dataclass(frozen=True)
class GapSpec:
    """Parts >= ``a`` whose successive differences are >= ``d``."""

    d: int
    a: int = 1

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"gap d must be >= 1, got {self.d}")
        if self.a < 1:
            raise ValueError(f"minimum part a must be >= 1, got {self.a}")

    def admits(self, partition: Partition) -> bool:
        inc = partition.increasing
        if inc and inc[0] < self.a:
            return False
        return all(inc[i + 1] - inc[i] >= self.d for i in range(len(inc) - 1))


@dataclass(frozen=True)
class ResiduePartSpec:
    """Parts congruent to +-b modulo ``modulus``, minus an exclusion set."""

    modulus: int
    b: int
    excluded: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 1 <= self.b <= self.modulus - 1:
            raise ValueError(f"residue b must lie in [1, {self.modulus - 1}], got {self.b}")
        object.__setattr__(self, "excluded", frozenset(self.excluded))

    def allowed(self, x: int) -> bool:
        if x < 1 or x in self.excluded:
            return False
        r = x % self.modulus
        return r == self.b or r == self.modulus - self.b

    def parts(self, bound: int) -> list[int]:
        out = []
        k = 0
        lo, hi = self.b, self.modulus - self.b
        while k * self.modulus + min(lo, hi) <= bound:
            base = k * self.modulus
            for x in sorted({base + lo, base + hi}):
                if x <= bound and x not in self.excluded:
                    out.append(x)
            k += 1
        return out

    @property
    def label(self) -> str:
        ex = ",".join(map(str, sorted(self.excluded)))
        return f"+-{self.b} mod {self.modulus}" + (f" minus {{{ex}}}" if ex else "")


@dataclass(frozen=True)
class ExplicitPartSpec:
    """Allowed parts given by a generator ``bound -> sorted parts <= bound``."""

    generator: Callable[[int], Sequence[int]] = field(compare=False)
    label: str = "explicit"

    def parts(self, bound: int) -> list[int]:
        return list(self.generator(bound))

    def allowed(self, x: int) -> bool:
        return x >= 1 and x in self.generator(x)

    @classmethod
    def residue_union(
        cls,
        modulus: int,
        residues: Iterable[int],
        excluded: Iterable[int] = (),
        label: str | None = None,
    ) -> "ExplicitPartSpec":
        """Positive integers congruent to any of ``residues`` mod ``modulus``."""
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        classes = sorted({r % modulus for r in residues})
        banned = frozenset(excluded)

        def gen(bound: int) -> list[int]:
            out = []
            for r in classes:
                x = r if r > 0 else modulus
                while x <= bound:
                    if x not in banned:
                        out.append(x)
                    x += modulus
            return sorted(out)

        if label is None:
            label = f"{{{','.join(map(str, classes))}}} mod {modulus}"
            if banned:
                label += f" minus {{{','.join(map(str, sorted(banned)))}}}"
        return cls(gen, label)

    @classmethod
    def finite(cls, values: Iterable[int], label: str | None = None) -> "ExplicitPartSpec":
        vals = sorted(set(values))
        if any(v < 1 for v in vals):
            raise ValueError("parts must be positive")

        def gen(bound: int) -> list[int]:
            return vals[: bisect.bisect_right(vals, bound)]

        return cls(gen, label or "{" + ",".join(map(str, vals)) + "}")


PartSpec = Union[ResiduePartSpec, ExplicitPartSpec]


# -- named part sets ---------------------------------------------------------

VARIANTS = ("plain", "dash", "dashdash")


def residue_spec(variant: str, d: int, b: int) -> ResiduePartSpec:
    """Allowed parts of Q_d^(b), Q_d^(b,-) or Q_d^(b,-,-).

    ``d`` may be 0 or -1 here (modulus ``d + 3`` >= 2): such reduced moduli
    arise when parts are divided through by a common factor.
    """
    modulus = d + 3
    if modulus < 2:
        raise ValueError(f"modulus d+3 must be >= 2, got d={d}")
    if not 1 <= b <= d + 2:
        raise ValueError(f"b must satisfy 1 <= b <= d+2 = {d + 2}, got b={b}")
    if variant == "plain":
        excluded: set[int] = set()
    elif variant == "dash":
        excluded = {modulus - b}
    elif variant == "dashdash":
        excluded = {b, modulus - b}
    else:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return ResiduePartSpec(modulus, b, frozenset(excluded))


def s_ab(a: int, b: int) -> ResiduePartSpec:
    """+-a (mod b+3) without the parts a and b+3-a."""
    return ResiduePartSpec(b + 3, a, frozenset({a, b + 3 - a}))


def s_d(d: int) -> ResiduePartSpec:
    """+-1 (mod d+1) without the part d; counts Q_{d-2}^(1,-)."""
    return ResiduePartSpec(d + 1, 1, frozenset({d}))


def t_tsd(t: int, s: int, d: int) -> ExplicitPartSpec:
    """y == 2^t, d+2^(t+1), ..., d+2^(s-1) (mod 2d)."""
    if s <= t:
        raise ValueError(f"need s > t, got t={t}, s={s}")
    residues = [2**t] + [d + 2**i for i in range(t + 1, s)]
    return ExplicitPartSpec.residue_union(2 * d, residues, label=f"T(t={t},s={s},d={d})")


def part_list(spec: PartSpec, bound: int) -> list[int]:
    if bound < 0:
        raise ValueError("bound must be >= 0")
    return spec.parts(bound)


# -- counting ----------------------------------------------------------------


def count_gap(spec: GapSpec, n: int) -> int:
    """Number of partitions of ``n`` with parts >= a and gaps >= d.

    With k parts, subtracting the staircase a, a+d, ..., a+(k-1)d leaves an
    ordinary partition into at most k parts, so we sum p(m, <= k parts).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    d, a = spec.d, spec.a
    total = 1 if n == 0 else 0
    # row[m] = partitions of m into at most k parts
    row = [1] + [0] * n
    k = 1
    while k * a + d * k * (k - 1) // 2 <= n:
        for m in range(k, n + 1):
            row[m] += row[m - k]
        total += row[n - k * a - d * k * (k - 1) // 2]
        k += 1
    return total


def count_partset(spec: PartSpec, n: int) -> int:
    """rho(R; n): partitions of ``n`` with every part in the allowed set."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ways = [1] + [0] * n
    for p in part_list(spec, n):
        for m in range(p, n + 1):
            ways[m] += ways[m - p]
    return ways[n]


def count_distinct(n: int) -> int:
    """Partitions of ``n`` into distinct parts (0/1 knapsack)."""
    ways = [1] + [0] * n
    for p in range(1, n + 1):
        for m in range(n, p - 1, -1):
            ways[m] += ways[m - p]
    return ways[n]


# -- enumeration -------------------------------------------------------------


def _canonical(found: list[tuple[int, ...]]) -> list[Partition]:
    # nonincreasing tuples, reverse lexicographic: (7) before (5,2)
    found.sort(reverse=True)
    return [Partition(p) for p in found]


def enumerate_gap(spec: GapSpec, n: int, limit: int | None = None) -> list[Partition]:
    """All gap partitions of ``n``, largest first part first.

    ``limit`` caps the number of partitions produced; exceeding it raises
    :class:`EnumerationBudgetExceeded`.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    found: list[tuple[int, ...]] = []

    def rec(rest: int, smallest: int, acc: tuple[int, ...]) -> None:
        # acc holds parts in increasing order
        if rest == 0:
            found.append(acc[::-1])
            if limit is not None and len(found) > limit:
                raise EnumerationBudgetExceeded(f"more than {limit} partitions")
            return
        for p in range(smallest, rest + 1):
            rec(rest - p, p + spec.d, acc + (p,))

    rec(n, spec.a, ())
    return _canonical(found)


def enumerate_partset(spec: PartSpec, n: int, limit: int | None = None) -> list[Partition]:
    """All partitions of ``n`` into allowed parts, largest first part first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    parts = part_list(spec, n)
    found: list[tuple[int, ...]] = []

    def rec(rest: int, idx: int, acc: tuple[int, ...]) -> None:
        # acc is nonincreasing; next part index <= idx
        if rest == 0:
            found.append(acc)
            if limit is not None and len(found) > limit:
                raise EnumerationBudgetExceeded(f"more than {limit} partitions")
            return
        for j in range(idx, -1, -1):
            p = parts[j]
            if p <= rest:
                rec(rest - p, j, acc + (p,))

    rec(n, len(parts) - 1, ())
    return _canonical(found)


def enumerate_distinct(parts: Sequence[int], n: int) -> list[Partition]:
    """Partitions of ``n`` into distinct members of ``parts``."""
    pool = sorted(p for p in set(parts) if p <= n)
    found: list[tuple[int, ...]] = []

    def rec(rest: int, idx: int, acc: tuple[int, ...]) -> None:
        if rest == 0:
            found.append(acc)
            return
        for j in range(idx - 1, -1, -1):
            if pool[j] <= rest:
                rec(rest - pool[j], j, acc + (pool[j],))

    rec(n, len(pool), ())
    return _canonical(found)
