"""Face vectors that can occur at a vertex of positive curvature.

The table is derived, not transcribed: for every sorted prefix ``p`` the
curvature of ``p + (a,)`` equals ``c(p) + 1/a`` with ``c(p)`` independent of
``a``, so the admissible range of the last entry is read off exactly.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from curvlab.curvature import curvature_of_vector
from curvlab.errors import EntryBelowThree

MAX_DEGREE = 5


@dataclass(frozen=True)
class AdmissibleFamily:
    """One row of the admissible table.

    The vectors are ``prefix + (a, b)`` when ``middle`` is set (``a`` ranges
    over ``middle`` and ``b >= a``), otherwise ``prefix + (b,)``. ``b`` runs
    from ``low`` to ``high`` inclusive; ``high is None`` means unbounded.
    """

    prefix: tuple[int, ...]
    low: int
    high: int | None
    middle: tuple[int, int] | None = None

    @property
    def fixed(self) -> bool:
        return self.middle is None and self.high == self.low

    @property
    def bounded(self) -> bool:
        return self.high is not None

    @property
    def degree(self) -> int:
        return len(self.prefix) + (2 if self.middle else 1)

    def pattern(self) -> str:
        if self.fixed:
            return "(" + ",".join(map(str, self.prefix + (self.low,))) + ")"
        free = ("a", "b") if self.middle else ("a",)
        return "(" + ",".join([*map(str, self.prefix), *free]) + ")"

    def condition(self) -> str:
        if self.fixed:
            return ""
        if self.middle:
            lo, hi = self.middle
            return f"{lo}<=a<={hi}, a<=b"
        if self.high is None:
            return f"{self.low}<=a"
        return f"{self.low}<=a<={self.high}"

    def __contains__(self, fv: object) -> bool:
        if not isinstance(fv, tuple) or len(fv) != self.degree:
            return False
        k = len(self.prefix)
        if tuple(sorted(fv)) != fv or fv[:k] != self.prefix:
            return False
        last = fv[-1]
        if self.middle:
            a = fv[k]
            if not self.middle[0] <= a <= self.middle[1] or last < a:
                return False
            return True
        return last >= self.low and (self.high is None or last <= self.high)

    def instances(self, cap: int) -> Iterator[tuple[int, ...]]:
        """All member vectors whose largest entry is at most ``cap``."""
        if self.middle:
            for a in range(self.middle[0], self.middle[1] + 1):
                for b in range(a, cap + 1):
                    yield self.prefix + (a, b)
            return
        top = cap if self.high is None else min(cap, self.high)
        for b in range(self.low, top + 1):
            yield self.prefix + (b,)

    def tail_limit(self) -> Fraction:
        """Infimum of the curvature over the family (the limit b -> infinity)."""
        if self.middle:
            return min(_prefix_constant(self.prefix + (a,)) for a in range(self.middle[0], self.middle[1] + 1))
        return _prefix_constant(self.prefix)

    def to_json(self) -> dict[str, object]:
        return {
            "pattern": self.pattern(),
            "condition": self.condition(),
            "prefix": list(self.prefix),
            "middle": list(self.middle) if self.middle else None,
            "low": self.low,
            "high": self.high,
        }


def _prefix_constant(prefix: Sequence[int]) -> Fraction:
    """Curvature of ``prefix + (a,)`` minus ``1/a``."""
    k = len(prefix) + 1
    return 1 - Fraction(k, 2) + sum((Fraction(1, p) for p in prefix), Fraction(0))


def _last_entry_range(prefix: tuple[int, ...]) -> tuple[int, int | None] | None:
    low = prefix[-1]
    c = _prefix_constant(prefix)
    if c >= 0:
        return low, None
    # 1/a > -c  <=>  a < 1/(-c)
    bound = 1 / (-c)
    high = math.ceil(bound) - 1
    if high < low:
        return None
    return low, high


def _prefixes() -> Iterator[tuple[int, ...]]:
    """Sorted prefixes (length 2..4) that extend to at least one admissible vector."""

    def grow(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) >= 2 and _last_entry_range(prefix) is not None:
            yield prefix
        if len(prefix) == MAX_DEGREE - 1:
            return
        start = prefix[-1] if prefix else 3
        a = start
        while True:
            cand = prefix + (a,)
            # Smallest completion to at least three entries must still be admissible.
            width = max(3, len(cand) + 1)
            completion = cand + (a,) * (width - len(cand))
            if curvature_of_vector(completion) <= 0:
                break
            yield from grow(cand)
            a += 1

    yield from grow(())


def _raw_groups() -> list[AdmissibleFamily]:
    groups = []
    for prefix in _prefixes():
        rng = _last_entry_range(prefix)
        assert rng is not None
        groups.append(AdmissibleFamily(prefix, rng[0], rng[1]))
    return groups


def _table_order(fam: AdmissibleFamily) -> tuple[int, int, tuple[int, ...]]:
    # Rows whose prefix starts with 3 come first, ordered by degree then by
    # the second entry; the remaining rows follow lexicographically.
    first = fam.prefix[0]
    if first == 3:
        return (0, fam.degree, fam.prefix)
    return (1, 0, fam.prefix)


def enumerate_admissible() -> list[AdmissibleFamily]:
    """Admissible face-vector families in table order.

    The unbounded groups ``(3,a,b)`` with ``3 <= a <= 6`` collapse into a
    single symbolic row, and a two-member group whose prefix has length two
    is listed as two fixed rows.
    """
    groups = _raw_groups()
    merged: list[AdmissibleFamily] = []
    unbounded_3a = [g for g in groups if len(g.prefix) == 2 and g.prefix[0] == 3 and g.high is None]
    if unbounded_3a:
        mids = sorted(g.prefix[1] for g in unbounded_3a)
        assert mids == list(range(mids[0], mids[-1] + 1))
        merged.append(AdmissibleFamily((3,), mids[0], None, middle=(mids[0], mids[-1])))
    for g in groups:
        if g in unbounded_3a:
            continue
        if len(g.prefix) == 2 and g.high is not None and g.high - g.low == 1:
            merged.append(AdmissibleFamily(g.prefix, g.low, g.low))
            merged.append(AdmissibleFamily(g.prefix, g.high, g.high))
        else:
            merged.append(g)
    merged.sort(key=lambda f: (_table_order(f), f.low))
    return merged


def is_admissible(fv: Sequence[int]) -> bool:
    """Degree between 3 and 5 and strictly positive curvature."""
    entries = list(fv)
    if any(x < 3 for x in entries):
        raise EntryBelowThree(f"face vector {tuple(entries)} has an entry below 3")
    if not 3 <= len(entries) <= MAX_DEGREE:
        return False
    return curvature_of_vector(entries) > 0


def family_of(fv: Sequence[int]) -> AdmissibleFamily | None:
    key = tuple(sorted(fv))
    for fam in enumerate_admissible():
        if key in fam:
            return fam
    return None


def render_table(families: Sequence[AdmissibleFamily]) -> str:
    width = max(len(f.pattern()) for f in families)
    lines = [f"{f.pattern():<{width}}  {f.condition()}".rstrip() for f in families]
    return "\n".join(lines)
