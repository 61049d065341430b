"""Exact combinatorial curvature.

The curvature of a vertex is ``1 - deg/2 + sum(1/|f|)`` over its incident
faces counted with multiplicity. All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction

from curvlab.core_map import PlanarMap

Rational = Fraction

#: Curvature share of a vertex in a hypothetical 209-vertex graph; ``excess``
#: measures how far a vertex sits above it.
EXCESS_SHIFT = Fraction(2, 209)


def curvature_of_vector(sizes: Iterable[int]) -> Fraction:
    sizes = list(sizes)
    return 1 - Fraction(len(sizes), 2) + sum((Fraction(1, s) for s in sizes), Fraction(0))


def excess_of_vector(sizes: Iterable[int]) -> Fraction:
    return curvature_of_vector(sizes) - EXCESS_SHIFT


def curvature(m: PlanarMap, v: int) -> Fraction:
    return curvature_of_vector(m.cyclic_vtype(v))


def excess(m: PlanarMap, v: int) -> Fraction:
    return curvature(m, v) - EXCESS_SHIFT


def total_curvature(m: PlanarMap) -> Fraction:
    return sum((curvature(m, v) for v in m.vertices()), Fraction(0))


def format_rational(q: Fraction) -> str:
    """Canonical ``num/den`` form; integers keep an explicit ``/1``."""
    return f"{q.numerator}/{q.denominator}"


def rational_json(q: Fraction, digits: int = 8) -> dict[str, str]:
    """Exact value plus a decimal rendering for human readers."""
    return {"exact": format_rational(q), "decimal": f"{float(q):.{digits}g}"}


def parse_rational(text: str) -> Fraction:
    """Parse ``a/b``, integers and plain decimals such as ``-0.00521`` exactly."""
    return Fraction(text.strip())
