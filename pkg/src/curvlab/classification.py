"""Vertex types for the discharging pairing and the auxiliary map predicates.

Every admissible face vector falls into exactly one of seven classes. The
class depends on the sorted face vector only; the map is consulted solely
for the alpha/beta refinement of ``(3,11,13)`` and for deciding whether a
repeated face size is carried by one face or two.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cache

from curvlab.admissibility import is_admissible
from curvlab.core_map import FaceVector, PlanarMap
from curvlab.errors import InadmissibleVertex, NotTSVertex

HALF = Fraction(1, 2)
ALPHA_SHARE = Fraction(1, 7)
BETA_SHARE = Fraction(3, 7)

#: Marker used inside share lists for the comfortable-vertex sink.
SINK = "ddface"


class VertexClassTag(str, Enum):
    DFACE = "DFace"
    DDFACE = "DDFace"
    BIG = "Big"
    REGULAR = "Regular"
    SEMI_REGULAR = "SemiRegular"
    TS = "TS"
    POTENTIALLY_SPECIAL = "PotentiallySpecial"


@dataclass(frozen=True)
class VertexClass:
    """Class of a vertex plus the data its first-stage pairing needs.

    ``shares`` lists ``(face size or SINK, weight)`` pairs for regular and
    semi-regular vertices; a size listed twice means one share per incidence.
    ``subcase`` is one of ``"i"``..``"iv"`` for semi-regular vertices.
    """

    tag: VertexClassTag
    shares: tuple[tuple[int | str, Fraction], ...] = ()
    subcase: str | None = None
    note: str = field(default="", compare=False)

    @property
    def target_size(self) -> int | None:
        if self.tag is VertexClassTag.REGULAR:
            size = self.shares[0][0]
            assert isinstance(size, int)
            return size
        return None


def _between(x: int, lo: int, hi: int) -> bool:
    return lo <= x <= hi


_DFACE = {(5, 6, 7), (3, 3, 5, 7)}


def _is_ddface(fv: FaceVector) -> bool:
    if len(fv) == 3:
        a, b, c = fv
        if a == 3:
            if b == 3 and _between(c, 5, 10):
                return True
            if b == 5 and _between(c, 5, 10):
                return True
            if b == 6 and _between(c, 6, 10) and c != 7:
                return True
            if c in (12, 13) and _between(b, 5, 10):
                return True
            if c == 19 and b in (3, 6, 7, 8):
                return True
            return False
        if (a, b) == (4, 4):
            return _between(c, 6, 41) and c not in (7, 11, 13, 19)
        if (a, b) == (4, 6):
            return c in (6, 8, 9, 10)
        if (a, b) == (5, 5):
            return _between(c, 5, 9)
        return fv == (5, 6, 6)
    if len(fv) == 4:
        if fv == (3, 3, 3, 19):
            return True
        if fv[:3] == (3, 3, 4):
            return _between(fv[3], 8, 10)
        if fv[:3] == (3, 3, 5):
            return fv[3] in (5, 6)
    return False


def _regular_target(fv: FaceVector) -> int | None:
    """Size of the face receiving the whole unit, or None when not regular."""
    if len(fv) == 3:
        a, b, c = fv
        if a == 3:
            if 11 in (b, c) and fv != (3, 11, 11):
                other = b if c == 11 else c
                if _between(other, 6, 12) and other != 11:
                    return 11
            if b == 3 and _between(c, 13, 41) and c != 19:
                return c
            if b == 5 and c in (40, 41):
                return c
            if b in (6, 7) and _between(c, 14, 41) and c != 19:
                return c
            if b == 8 and _between(c, 14, 23) and c != 19:
                return c
            if b == 9 and _between(c, 14, 17):
                return c
            if (b, c) == (10, 14):
                return 14
            return None
        if (a, b) == (4, 4) and c in (5, 7, 11, 13, 19):
            return c
        if (a, b) == (4, 5) and _between(c, 8, 18) and c != 11:
            return 5
        if fv == (4, 6, 7):
            return 7
        if fv == (4, 6, 11):
            return 11
        if (a, b) == (4, 7) and c in (8, 9):
            return 7
        return None
    if len(fv) == 4:
        if fv[:3] == (3, 3, 3) and _between(fv[3], 13, 41) and fv[3] != 19:
            return fv[3]
        if fv == (3, 3, 4, 11):
            return 11
    return None


def _semi_regular(fv: FaceVector) -> VertexClass | None:
    SR = VertexClassTag.SEMI_REGULAR
    if len(fv) != 3:
        return None
    a, b, c = fv
    if (a, b) == (3, 5):
        if c == 11:
            return VertexClass(SR, ((11, HALF), (SINK, HALF)), "i")
        if _between(c, 14, 19):
            return VertexClass(SR, ((5, HALF), (c, HALF)), "iv")
        if _between(c, 20, 39):
            return VertexClass(SR, ((c, HALF), (SINK, HALF)), "i")
        return None
    if fv == (3, 11, 11):
        return VertexClass(SR, ((11, HALF), (11, HALF)), "ii/iii")
    if fv == (3, 11, 13):
        # alpha weights by default; ``classify`` switches to beta from the map
        return VertexClass(SR, ((11, ALPHA_SHARE), (13, 1 - ALPHA_SHARE)), "iv", "alpha")
    if fv == (4, 5, 5):
        return VertexClass(SR, ((5, HALF), (5, HALF)), "ii/iii")
    if (a, b) == (4, 5) and c in (7, 11):
        return VertexClass(SR, ((5, HALF), (c, HALF)), "iv")
    if fv == (4, 5, 19):
        return VertexClass(SR, ((5, Fraction(3, 4)), (19, Fraction(1, 4))), "iv")
    if fv == (4, 7, 7):
        return VertexClass(SR, ((7, HALF), (7, HALF)), "ii/iii")
    return None


@cache
def class_of_vector(fv: FaceVector) -> VertexClass:
    """Class of an admissible face vector (sorted or not)."""
    fv = tuple(sorted(fv))
    if any(x < 3 for x in fv) or not is_admissible(fv):
        raise InadmissibleVertex(f"face vector {fv} is not admissible")
    if fv in _DFACE:
        return VertexClass(VertexClassTag.DFACE)
    if max(fv) >= 42:
        return VertexClass(VertexClassTag.BIG)
    if _is_ddface(fv):
        return VertexClass(VertexClassTag.DDFACE)
    target = _regular_target(fv)
    if target is not None:
        return VertexClass(VertexClassTag.REGULAR, ((target, Fraction(1)),))
    semi = _semi_regular(fv)
    if semi is not None:
        return semi
    if all(x in (3, 4) for x in fv):
        return VertexClass(VertexClassTag.TS)
    return VertexClass(VertexClassTag.POTENTIALLY_SPECIAL)


def matching_tables(fv: FaceVector) -> list[VertexClassTag]:
    """Every class table whose membership test accepts ``fv`` (for partition checks)."""
    fv = tuple(sorted(fv))
    hits = []
    if fv in _DFACE:
        hits.append(VertexClassTag.DFACE)
    if max(fv) >= 42:
        hits.append(VertexClassTag.BIG)
    if _is_ddface(fv):
        hits.append(VertexClassTag.DDFACE)
    if _regular_target(fv) is not None:
        hits.append(VertexClassTag.REGULAR)
    if _semi_regular(fv) is not None:
        hits.append(VertexClassTag.SEMI_REGULAR)
    if all(x in (3, 4) for x in fv):
        hits.append(VertexClassTag.TS)
    return hits


# ---------------------------------------------------------------- map probes
def triangle_at(m: PlanarMap, v: int) -> int:
    """The unique triangle at a vertex whose face vector has a single 3."""
    tris = [f for f in m.vfaces(v) if m.face_size(f) == 3]
    if len(tris) != 1:
        raise ValueError(f"vertex {v} has {len(tris)} triangles")
    return tris[0]


def blue_edges(m: PlanarMap) -> set[int]:
    """Edges of side vector (11,13) whose endpoints both see an 11-gon across their triangle."""
    blue = set()
    for e in range(m.n_edges):
        if m.etype(e) != (11, 13):
            continue
        ends = m.endpoints(e)
        if all(m.vtype(x) == (3, 11, 13) for x in ends) and all(
            m.face_size(m.opp(x, triangle_at(m, x))) == 11 for x in ends
        ):
            blue.add(e)
    return blue


def mark_alpha_beta(m: PlanarMap) -> dict[int, str]:
    """Map every ``(3,11,13)`` vertex to ``"alpha"`` or ``"beta"``."""
    beta = set()
    for e in blue_edges(m):
        beta.update(m.endpoints(e))
    return {
        v: ("beta" if v in beta else "alpha")
        for v in m.vertices()
        if m.vtype(v) == (3, 11, 13)
    }


def classify(m: PlanarMap, v: int, marks: dict[int, str] | None = None) -> VertexClass:
    """Class of vertex ``v`` with the map-dependent refinements resolved."""
    base = class_of_vector(m.vtype(v))
    if base.tag is not VertexClassTag.SEMI_REGULAR:
        return base
    fv = m.vtype(v)
    if fv == (3, 11, 13):
        if marks is None:
            marks = mark_alpha_beta(m)
        if marks[v] == "beta":
            return VertexClass(base.tag, ((11, BETA_SHARE), (13, 1 - BETA_SHARE)), "iv", "beta")
        return base
    if base.subcase == "ii/iii":
        size = base.shares[0][0]
        carriers = [f for f in m.vfaces(v) if m.face_size(f) == size]
        sub = "ii" if len(set(carriers)) == 1 else "iii"
        return VertexClass(base.tag, base.shares, sub)
    return base


@dataclass(frozen=True)
class TSData:
    ets: frozenset[int]
    fts: frozenset[int]

    @property
    def nts(self) -> int:
        return len(self.fts)

    @property
    def mts(self) -> int:
        return len(self.ets)


def ts_data(m: PlanarMap, v: int) -> TSData:
    """Edges of v's faces away from v, and the 11/40/41-gons along them."""
    if not all(s in (3, 4) for s in m.vtype(v)):
        raise NotTSVertex(f"vertex {v} has face vector {m.vtype(v)}")
    own = set(m.vedges(v))
    ets = set()
    for f in set(m.vfaces(v)):
        ets.update(e for e in m.fedges(f) if e not in own)
    fts = set()
    for e in ets:
        for g in m.efaces(e):
            if m.face_size(g) in (11, 40, 41):
                fts.add(g)
    return TSData(frozenset(ets), frozenset(fts))


def red_triangles(m: PlanarMap) -> list[int]:
    return [
        f
        for f in m.face_ids()
        if m.face_size(f) == 3 and all(m.vtype(x) == (3, 3, 5, 7) for x in m.fverts(f))
    ]


def is_cyclic_pattern(m: PlanarMap, v: int, pattern: Sequence[int]) -> bool:
    """Whether the cyclic face sizes at ``v`` equal ``pattern`` up to rotation or reflection."""
    seq = list(m.cyclic_vtype(v))
    k = len(seq)
    if k != len(pattern):
        return False
    pat = list(pattern)
    for cand in (seq, seq[::-1]):
        for s in range(k):
            if cand[s:] + cand[:s] == pat:
                return True
    return False


def census(m: PlanarMap) -> dict[str, int]:
    marks = mark_alpha_beta(m)
    out: dict[str, int] = {}
    for v in m.vertices():
        tag = classify(m, v, marks).tag.value
        out[tag] = out.get(tag, 0) + 1
    return dict(sorted(out.items()))
