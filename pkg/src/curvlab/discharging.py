"""The discharging pairing, per-target contributions and the bound audits.

A pairing sends one unit of mass from every vertex to discharge targets:
faces whose size is not in ``{3,4,6,8,9,10,12}`` plus the two auxiliary
targets ``DFACE`` and ``SINK``. The first stage follows the vertex class;
the second stage covers TS and potentially-special vertices, whose mass
may travel to a face that does not contain them.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from curvlab.classification import (
    HALF,
    SINK,
    VertexClass,
    VertexClassTag,
    classify,
    mark_alpha_beta,
    ts_data,
)
from curvlab.core_map import PlanarMap
from curvlab.curvature import EXCESS_SHIFT, excess
from curvlab.errors import RuleConflict, UnclassifiableVertex, WrongFaceSize, ZeroMass
from curvlab.report import AuditReport, Check

DFACE = "dface"
Target = int | str

THIRD = Fraction(1, 3)
ONE = Fraction(1)

#: Sizes of real faces that never receive mass.
NON_DISCHARGE_SIZES = frozenset({3, 4, 6, 8, 9, 10, 12})

#: Lower bounds on c(target) for every target with nonzero mass, keyed by size class.
BOUND_5 = Fraction(2, 1000)
BOUND_7 = Fraction(95, 10000)
BOUND_11 = Fraction(3, 10000)
BOUND_13 = Fraction(3, 100000)
BOUND_N = Fraction(2, 10000)
BOUND_19 = Fraction(65, 10000)
BOUND_4041 = Fraction(11, 1000)
BOUND_SINK = Fraction(6, 10000)
BOUND_DFACE = -EXCESS_SHIFT


def bound_for(size_or_target: int | str) -> tuple[str, Fraction] | None:
    """``(size class, lower bound)`` for a face size or auxiliary target name."""
    s = size_or_target
    if s == SINK:
        return "ddface", BOUND_SINK
    if s == DFACE:
        return "dface", BOUND_DFACE
    assert isinstance(s, int)
    if s == 5:
        return "5", BOUND_5
    if s == 7:
        return "7", BOUND_7
    if s == 11:
        return "11", BOUND_11
    if s == 13:
        return "13", BOUND_13
    if s == 19:
        return "19", BOUND_19
    if 14 <= s <= 39:
        return "14..39", BOUND_N
    if s in (40, 41):
        return "40/41", BOUND_4041
    return None


# ------------------------------------------------------------------ pairing
@dataclass
class Pairing:
    """Sparse pairing with the rule that produced every entry.

    ``first`` and ``second`` hold the two stages separately; ``entries`` is
    their sum. Keys are ``(vertex, target)`` with targets being face ids or
    the strings ``DFACE`` / ``SINK``.
    """

    m: PlanarMap
    classes: dict[int, VertexClass] = field(default_factory=dict)
    first: dict[tuple[int, Target], Fraction] = field(default_factory=dict)
    second: dict[tuple[int, Target], Fraction] = field(default_factory=dict)
    provenance: dict[tuple[int, Target], list[str]] = field(default_factory=lambda: defaultdict(list))

    def add(self, v: int, target: Target, weight: Fraction, rule: str, stage: int) -> None:
        if weight == 0:
            return
        if weight < 0:
            raise ValueError(f"negative weight {weight} for vertex {v}")
        if isinstance(target, int) and self.m.face_size(target) in NON_DISCHARGE_SIZES:
            raise RuleConflict(
                f"rule {rule} sends mass from vertex {v} to face {target} of size {self.m.face_size(target)}"
            )
        book = self.first if stage == 1 else self.second
        key = (v, target)
        book[key] = book.get(key, Fraction(0)) + weight
        self.provenance[key].append(rule)

    @property
    def entries(self) -> dict[tuple[int, Target], Fraction]:
        out = dict(self.first)
        for key, w in self.second.items():
            out[key] = out.get(key, Fraction(0)) + w
        return out

    def value(self, v: int, target: Target) -> Fraction:
        return self.first.get((v, target), Fraction(0)) + self.second.get((v, target), Fraction(0))

    def row(self, v: int) -> dict[Target, Fraction]:
        out: dict[Target, Fraction] = {}
        for (u, t), w in self.entries.items():
            if u == v:
                out[t] = out.get(t, Fraction(0)) + w
        return out

    def row_sums(self) -> dict[int, Fraction]:
        sums = {v: Fraction(0) for v in self.m.vertices()}
        for (v, _), w in self.entries.items():
            sums[v] += w
        return sums

    def contributors(self, target: Target) -> dict[int, Fraction]:
        return {v: w for (v, t), w in self.entries.items() if t == target}

    def mass(self, target: Target) -> Fraction:
        return sum(self.contributors(target).values(), Fraction(0))

    def targets(self) -> list[Target]:
        faces = sorted({t for (_, t) in self.entries if isinstance(t, int)})
        aux = [t for t in (DFACE, SINK) if any(k[1] == t for k in self.entries)]
        return [*faces, *aux]

    def is_special_to(self, v: int, f: int) -> bool:
        return self.second.get((v, f), Fraction(0)) != 0

    def special_vertices(self, f: int) -> list[int]:
        return sorted(v for (v, t), w in self.second.items() if t == f and w != 0)

    def rules_of(self, v: int) -> list[str]:
        seen: list[str] = []
        for (u, _), rules in self.provenance.items():
            if u == v:
                for r in rules:
                    if r not in seen:
                        seen.append(r)
        return seen


# --------------------------------------------------------- geometric probes
def _index_of_size(sizes: tuple[int, ...], size: int) -> int:
    hits = [i for i, s in enumerate(sizes) if s == size]
    if len(hits) != 1:
        raise UnclassifiableVertex(f"expected exactly one face of size {size} in {sizes}")
    return hits[0]


def _shared_neighbor(m: PlanarMap, v: int, i: int, j: int) -> int:
    """Neighbour of ``v`` on the edge separating corners ``i`` and ``j``.

    Corner ``i`` lies between rotation neighbours ``i-1`` and ``i``.
    """
    k = m.degree(v)
    nb = m.rotation(v)
    if j == (i + 1) % k:
        return nb[i]
    if i == (j + 1) % k:
        return nb[j]
    raise ValueError(f"corners {i} and {j} of vertex {v} are not adjacent")


def _square_walk(m: PlanarMap, v: int, corner: int, v1: int) -> tuple[int, int, int]:
    """Vertices ``(v1, v2, v3)`` of the square in ``corner`` of ``v``, starting next to ``v1``."""
    nb = m.rotation(v)
    ahead, behind = nb[corner], nb[corner - 1]
    d = m.out_darts(v)[corner]
    opposite = m.head[m.rot[m.twin[d]]]
    if v1 == ahead:
        return v1, opposite, behind
    if v1 == behind:
        return v1, opposite, ahead
    raise ValueError(f"{v1} is not a neighbour of {v} on the square")


def _across(m: PlanarMap, a: int, b: int, face: int) -> int:
    return m.other_face(m.edge_between(a, b), face)


def _single(candidates: Iterable[int], rule: str, v: int) -> int | None:
    distinct = sorted(set(candidates))
    if len(distinct) > 1:
        raise RuleConflict(f"rule {rule}: vertex {v} is special to several faces {distinct}")
    return distinct[0] if distinct else None


def _square_probes(m: PlanarMap, v: int, tri_corner: int, sq_corner: int) -> tuple[int, int, int, int]:
    """``(f1, f2, f3, v2)`` for a triangle and square meeting at an edge of ``v``."""
    tau = m.vfaces(v)[tri_corner]
    kappa = m.vfaces(v)[sq_corner]
    v1 = _shared_neighbor(m, v, tri_corner, sq_corner)
    _, v2, v3 = _square_walk(m, v, sq_corner, v1)
    return m.opp(v, tau), _across(m, v1, v2, kappa), _across(m, v2, v3, kappa), v2


# ---------------------------------------------------------- special rules
def _rule_33a(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,3,a)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    a = max(sizes)
    sigma = faces[_index_of_size(sizes, a)]
    amount = HALF if a == 11 else ONE
    opps = [m.opp(v, faces[i]) for i, s in enumerate(sizes) if s == 3]
    target = _single((f for f in opps if m.face_size(f) == 11), name, v)
    p.add(v, target if target is not None else SINK, amount, name, 2)
    if a == 11:
        p.add(v, sigma, HALF, name, 1)


def _rule_34a(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,4,a)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    a = sorted(sizes)[2]
    it = _index_of_size(sizes, 3)
    ik = _index_of_size(sizes, 4)
    isg = _index_of_size(sizes, a)
    f1, f2, f3, _ = _square_probes(m, v, it, ik)
    if a == 6:
        hits = sorted({f for f in (f1, f2, f3) if m.face_size(f) == 11})
        if len(hits) == 3:
            raise RuleConflict(f"rule {name}: vertex {v} sees three 11-faces")
        for f in hits:
            p.add(v, f, HALF, name, 2)
        p.add(v, SINK, Fraction(2 - len(hits), 2), name, 2)
        return
    amount = ONE if a in (8, 9, 10, 12) else HALF
    target = _single((f for f in (f1, f2) if m.face_size(f) == 11), name, v)
    p.add(v, target if target is not None else SINK, amount, name, 2)
    if a not in (6, 8, 9, 10, 12):
        p.add(v, faces[isg], HALF, name, 1)


def _rule_3ab(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,a,b)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    _, a, b = sorted(sizes)
    far = m.opp(v, faces[_index_of_size(sizes, 3)])
    n = m.face_size(far)
    if (a, b) == (6, 7):
        amount = ONE
        special = n in (40, 41)
    else:
        amount = HALF if (a, b) in ((7, 8), (7, 9)) else ONE
        special = 14 <= n <= 41 and n != 19
    p.add(v, far if special else SINK, amount, name, 2)
    if (a, b) in ((7, 8), (7, 9)):
        p.add(v, faces[_index_of_size(sizes, 7)], HALF, name, 1)


def _rule_456(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(4,5,6)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    ik = _index_of_size(sizes, 4)
    i6 = _index_of_size(sizes, 6)
    kappa = faces[ik]
    v1 = _shared_neighbor(m, v, ik, i6)
    _, v2, _ = _square_walk(m, v, ik, v1)
    f1 = _across(m, v1, v2, kappa)
    p.add(v, f1 if m.face_size(f1) == 11 else SINK, HALF, name, 2)
    p.add(v, faces[_index_of_size(sizes, 5)], HALF, name, 1)


def _rule_333a(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,3,3,a)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    a = max(sizes)
    isg = _index_of_size(sizes, a)
    opps = [m.opp(v, faces[(isg + j) % 4]) for j in (1, 2, 3)]
    f2 = opps[1]
    if a == 5:
        hit = m.face_size(f2) in (11, 40, 41)
        p.add(v, f2 if hit else SINK, ONE, name, 2)
    elif 6 <= a <= 10:
        p.add(v, f2 if m.face_size(f2) == 11 else SINK, ONE, name, 2)
    else:
        r = THIRD if a == 11 else HALF
        hits = sorted({f for f in opps if m.face_size(f) == 11})
        if len(hits) == 3:
            raise RuleConflict(f"rule {name}: vertex {v} sees three 11-faces")
        if len(hits) == 2:
            for f in hits:
                p.add(v, f, r, name, 2)
        elif len(hits) == 1:
            p.add(v, hits[0], r, name, 2)
            p.add(v, SINK, r, name, 2)
        else:
            p.add(v, SINK, 2 * r, name, 2)
        if a == 11:
            p.add(v, faces[isg], THIRD, name, 1)


def _rule_334a(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,3,4,a)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    a = max(sizes)
    ik = _index_of_size(sizes, 4)
    isg = _index_of_size(sizes, a)
    beside = [(ik - 1) % 4, (ik + 1) % 4]
    # cyclic <3,3,4,a>: the square touches the a-face and one triangle
    adjacent_form = isg in beside
    if a == 6:
        hits: list[int] = []
        if adjacent_form:
            it = beside[0] if beside[1] == isg else beside[1]
            f1, f2, f3, _ = _square_probes(m, v, it, ik)
            hits = sorted({f for f in (f1, f2, f3) if m.face_size(f) == 11})
            if len(hits) == 3:
                raise RuleConflict(f"rule {name}: vertex {v} sees three 11-faces")
        for f in hits:
            p.add(v, f, HALF, name, 2)
        p.add(v, SINK, Fraction(2 - len(hits), 2), name, 2)
        return
    r = HALF if a == 5 else Fraction(3, 4)
    target = None
    if adjacent_form:
        it = beside[0] if beside[1] == isg else beside[1]
        f1, f2, _, _ = _square_probes(m, v, it, ik)
        target = _single((f for f in (f1, f2) if m.face_size(f) == 11), name, v)
    p.add(v, target if target is not None else SINK, r, name, 2)
    p.add(v, faces[isg], 1 - r, name, 1)


_A_3445 = frozenset((4, 5, a) for a in range(14, 20))


def _rule_3445(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,4,4,5)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    it = _index_of_size(sizes, 3)
    isg = _index_of_size(sizes, 5)
    if (it + 2) % 4 == isg:
        nb = m.rotation(v)
        w1, w2 = nb[isg], nb[isg - 1]
        f1 = m.opp(v, faces[it])
        if m.face_size(f1) == 11 and m.vtype(w1) not in _A_3445 and m.vtype(w2) not in _A_3445:
            p.add(v, f1, ONE, name, 2)
            return
    p.add(v, faces[isg], ONE, name, 1)


_A_33335 = frozenset({(3, 4, 5), (3, 3, 4, 5), (3, 4, 4, 5)})


def _rule_33335(p: Pairing, v: int) -> None:
    m = p.m
    name = "rule:(3,3,3,3,5)"
    sizes = m.cyclic_vtype(v)
    faces = m.vfaces(v)
    isg = _index_of_size(sizes, 5)
    nb = m.rotation(v)
    w1, w4 = nb[isg], nb[isg - 1]
    f2 = m.opp(v, faces[(isg + 2) % 5])
    f3 = m.opp(v, faces[(isg + 3) % 5])
    cands = []
    if m.vtype(w1) in _A_33335 and m.face_size(f2) == 11:
        cands.append(f2)
    if m.vtype(w4) in _A_33335 and m.face_size(f3) == 11:
        cands.append(f3)
    cands.extend(f for f in (f2, f3) if m.face_size(f) in (40, 41))
    target = _single(cands, name, v)
    p.add(v, target if target is not None else SINK, ONE, name, 2)


def _rule_ts(p: Pairing, v: int) -> None:
    name = "rule:TS"
    data = ts_data(p.m, v)
    if data.nts > 3:
        raise RuleConflict(f"rule {name}: vertex {v} borders {data.nts} large faces")
    for f in sorted(data.fts):
        p.add(v, f, THIRD, name, 2)
    p.add(v, SINK, Fraction(3 - data.nts, 3), name, 2)


def _special_rule(fv: tuple[int, ...]):
    if len(fv) == 3:
        x, a, b = fv
        if (x, a) == (3, 3) and b in (11, 12):
            return _rule_33a
        if (x, a) == (3, 4) and 5 <= b <= 41:
            return _rule_34a
        if x == 3 and 6 <= a <= 10 and 7 <= b <= 10:
            return _rule_3ab
        if fv == (4, 5, 6):
            return _rule_456
    elif len(fv) == 4:
        if fv[:3] == (3, 3, 3) and 5 <= fv[3] <= 12:
            return _rule_333a
        if fv[:3] == (3, 3, 4) and fv[3] in (5, 6, 7):
            return _rule_334a
        if fv == (3, 4, 4, 5):
            return _rule_3445
    elif fv == (3, 3, 3, 3, 5):
        return _rule_33335
    return None


def special_rule_name(fv: tuple[int, ...]) -> str | None:
    """Name of the second-stage rule governing a potentially-special face vector."""
    rule = _special_rule(tuple(sorted(fv)))
    if rule is None:
        return None
    return {
        _rule_33a: "rule:(3,3,a)",
        _rule_34a: "rule:(3,4,a)",
        _rule_3ab: "rule:(3,a,b)",
        _rule_456: "rule:(4,5,6)",
        _rule_333a: "rule:(3,3,3,a)",
        _rule_334a: "rule:(3,3,4,a)",
        _rule_3445: "rule:(3,4,4,5)",
        _rule_33335: "rule:(3,3,3,3,5)",
    }[rule]


# ------------------------------------------------------------ first stage
def _by_incidence(p: Pairing, v: int, shares: tuple[tuple[int | str, Fraction], ...], rule: str) -> None:
    """Spread each size's total share evenly over the incidences of that size."""
    m = p.m
    total: dict[int | str, Fraction] = {}
    for size, w in shares:
        total[size] = total.get(size, Fraction(0)) + w
    faces = m.vfaces(v)
    sizes = m.cyclic_vtype(v)
    for size, w in total.items():
        if size == SINK:
            p.add(v, SINK, w, rule, 1)
            continue
        slots = [faces[i] for i, s in enumerate(sizes) if s == size]
        if not slots:
            raise UnclassifiableVertex(f"vertex {v} has no face of size {size}")
        for f in slots:
            p.add(v, f, w / len(slots), rule, 1)


def build_pairing(m: PlanarMap) -> Pairing:
    """Full pairing for every vertex of ``m``."""
    p = Pairing(m)
    marks = mark_alpha_beta(m)
    for v in m.vertices():
        cls = classify(m, v, marks)
        p.classes[v] = cls
        tag = cls.tag
        if tag is VertexClassTag.DFACE:
            p.add(v, DFACE, ONE, "table:dface", 1)
        elif tag in (VertexClassTag.DDFACE, VertexClassTag.BIG):
            p.add(v, SINK, ONE, f"table:{tag.value.lower()}", 1)
        elif tag is VertexClassTag.REGULAR:
            _by_incidence(p, v, cls.shares, "table:regular")
        elif tag is VertexClassTag.SEMI_REGULAR:
            label = "table:semi-regular" + (f"-{cls.note}" if cls.note else "")
            _by_incidence(p, v, cls.shares, label)
        elif tag is VertexClassTag.TS:
            _rule_ts(p, v)
        else:
            rule = _special_rule(m.vtype(v))
            if rule is None:
                raise UnclassifiableVertex(f"no special rule covers vertex {v} with face vector {m.vtype(v)}")
            rule(p, v)
    return p


# ----------------------------------------------------------- contributions
@dataclass(frozen=True)
class FaceContribution:
    target: Target
    mass: Fraction
    c: Fraction
    c_plus: Fraction
    c_minus: Fraction


def face_contribution(m: PlanarMap, p: Pairing, t: Target) -> FaceContribution:
    """``pi(t)``, ``c(t)`` and its split by the sign of the vertex excess."""
    mass = Fraction(0)
    plus = Fraction(0)
    minus = Fraction(0)
    for v, w in p.contributors(t).items():
        mass += w
        cv = excess(m, v)
        if cv >= 0:
            plus += cv * w
        else:
            minus += cv * w
    return FaceContribution(t, mass, plus + minus, plus, minus)


def dface_closed_form(m: PlanarMap) -> Fraction:
    """``c(DFACE)`` from the count of vertices paired to it."""
    z = sum(1 for v in m.vertices() if m.vtype(v) in ((5, 6, 7), (3, 3, 5, 7)))
    return Fraction(-2 * z, 210 * 209)


def all_contributions(m: PlanarMap, p: Pairing) -> dict[Target, FaceContribution]:
    return {t: face_contribution(m, p, t) for t in p.targets()}


def _bound_key(label: str) -> int | str:
    return {"ddface": SINK, "dface": DFACE, "14..39": 14, "40/41": 40}.get(label) or int(label)


def _target_key(m: PlanarMap, t: Target) -> int | str:
    return t if isinstance(t, str) else m.face_size(t)


def global_audit(m: PlanarMap, p: Pairing | None = None) -> AuditReport:
    """Row sums, the global identity, and the per-target lower bounds."""
    if p is None:
        p = build_pairing(m)
    report = AuditReport()
    report.info["vertices"] = m.n_vertices

    bad_rows = [(v, s) for v, s in p.row_sums().items() if s != 1]
    report.add(
        "pairing",
        Check(
            "pairing.row-sums",
            not bad_rows,
            "every vertex sends total mass 1" if not bad_rows else f"{len(bad_rows)} vertices with row sum != 1",
            witnesses=[{"vertex": v, "row_sum": s} for v, s in bad_rows],
        ),
    )
    negative = [k for k, w in p.entries.items() if w < 0]
    report.add("pairing", Check("pairing.nonnegative", not negative, witnesses=[list(k) for k in negative]))

    contribs = all_contributions(m, p)
    total = sum((c.c for c in contribs.values()), Fraction(0))
    expected = Fraction(2 * (209 - m.n_vertices), 209)
    report.add(
        "pairing",
        Check(
            "pairing.global-identity",
            total == expected,
            "sum of contributions equals 2(209-V)/209",
            values={"sum": total, "expected": expected},
        ),
    )

    closed = dface_closed_form(m)
    actual = contribs[DFACE].c if DFACE in contribs else Fraction(0)
    report.add(
        "pairing",
        Check("pairing.dface-closed-form", actual == closed, values={"c": actual, "closed_form": closed}),
    )

    per_class: dict[str, list[dict[str, object]]] = {}
    broken: dict[str, list[dict[str, object]]] = {}
    orphan: list[dict[str, object]] = []
    for t, fc in contribs.items():
        if fc.mass == 0:
            continue
        key = _target_key(m, t)
        bound = bound_for(key)
        if bound is None:
            orphan.append({"target": t, "size": key})
            continue
        label, lo = bound
        per_class.setdefault(label, []).append({"target": t, "c": fc.c})
        if fc.c < lo:
            broken.setdefault(label, []).append(
                {
                    "target": t,
                    "size": key,
                    "c": fc.c,
                    "bound": lo,
                    "contributors": {
                        str(v): {"vtype": list(m.vtype(v)), "weight": w, "excess": excess(m, v)}
                        for v, w in sorted(p.contributors(t).items())
                    },
                }
            )
    for label, rows in sorted(per_class.items()):
        lowest = min(r["c"] for r in rows)  # type: ignore[type-var]
        report.add(
            "bounds",
            Check(
                f"bounds.{label}",
                label not in broken,
                f"{len(rows)} targets, minimum c = {lowest}",
                values={"minimum": lowest, "bound": bound_for(_bound_key(label))[1], "targets": len(rows)},  # type: ignore[index]
                witnesses=broken.get(label, []),
            ),
        )
    if orphan:
        report.add("bounds", Check("bounds.unbounded-size", False, "mass reached a face with no bound", witnesses=orphan))
    z_count = sum(1 for v in m.vertices() if p.value(v, DFACE) != 0)
    report.add(
        "bounds",
        Check(
            "bounds.dface-count",
            z_count <= 210,
            f"{z_count} vertices paired to the dface target",
            values={"Z": z_count},
        ),
    )
    return report


# --------------------------------------------------------- edge refinement
@dataclass(frozen=True)
class EdgeRefinement:
    face: int
    size: int
    shares: dict[tuple[int, int | str], Fraction]
    edge_totals: dict[int | str, Fraction]
    face_total: Fraction
    uncovered: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return not self.uncovered and sum(self.edge_totals.values(), Fraction(0)) == self.face_total


BUCKET = "bucket"


def edge_refinement(m: PlanarMap, p: Pairing, f: int) -> EdgeRefinement:
    """Localise ``pi(., f)`` onto the edges of ``f`` whose other side is a triangle.

    For sizes 40 and 41 the vertices special to ``f`` other than
    ``(3,6,7)`` and ``(3,7,7)`` go to an extra ``BUCKET`` slot.
    """
    n = m.face_size(f)
    if not (14 <= n <= 41) or n == 19:
        raise WrongFaceSize(f"edge refinement needs 14 <= |f| <= 41 with |f| != 19, got {n}")
    if p.mass(f) == 0:
        raise ZeroMass(f"face {f} receives no mass")
    on_face = set(m.fverts(f))
    domain = [e for e in m.fedges(f) if m.etype(e) == (3, n)]
    domain_set = set(domain)
    contributors = p.contributors(f)
    shares: dict[tuple[int, int | str], Fraction] = {}
    uncovered = []
    for v, w in contributors.items():
        fv = m.vtype(v)
        if v in on_face:
            mine = [e for e in set(m.vedges(v)) if e in domain_set]
            if fv in ((3, 3, n), (3, 3, 3, n)):
                for e in mine:
                    shares[(v, e)] = shares.get((v, e), Fraction(0)) + w / 2
                if len(mine) != 2:
                    uncovered.append(v)
            elif fv.count(3) == 1 and n in fv:
                for e in mine:
                    shares[(v, e)] = shares.get((v, e), Fraction(0)) + w
                if len(mine) != 1:
                    uncovered.append(v)
            else:
                uncovered.append(v)
            continue
        if not p.is_special_to(v, f):
            uncovered.append(v)
            continue
        if n in (40, 41) and fv not in ((3, 6, 7), (3, 7, 7)):
            shares[(v, BUCKET)] = shares.get((v, BUCKET), Fraction(0)) + w
            continue
        tau = [t for t in m.vfaces(v) if m.face_size(t) == 3 and m.opp(v, t) == f]
        if len(tau) != 1:
            uncovered.append(v)
            continue
        e_v = next(e for e in m.fedges(tau[0]) if v not in m.endpoints(e))
        if e_v not in domain_set:
            uncovered.append(v)
            continue
        shares[(v, e_v)] = shares.get((v, e_v), Fraction(0)) + w
    totals: dict[int | str, Fraction] = {e: Fraction(0) for e in domain}
    if n in (40, 41):
        totals[BUCKET] = Fraction(0)
    for (v, e), w in shares.items():
        totals[e] += excess(m, v) * w
    face_total = sum((excess(m, v) * w for v, w in contributors.items()), Fraction(0))
    return EdgeRefinement(f, n, shares, totals, face_total, tuple(sorted(uncovered)))


def refinement_audit(m: PlanarMap, p: Pairing | None = None) -> AuditReport:
    """Check the edge decomposition on every eligible face."""
    if p is None:
        p = build_pairing(m)
    report = AuditReport()
    bad = []
    count = 0
    for f in m.face_ids():
        n = m.face_size(f)
        if not (14 <= n <= 41) or n == 19 or p.mass(f) == 0:
            continue
        count += 1
        ref = edge_refinement(m, p, f)
        if not ref.consistent:
            bad.append({"face": f, "size": n, "uncovered": list(ref.uncovered), "c": ref.face_total})
    report.add(
        "refinement",
        Check("refinement.decomposition", not bad, f"{count} eligible faces", values={"faces": count}, witnesses=bad),
    )
    return report


def face_side_profile(m: PlanarMap, f: int) -> list[tuple[int, int]]:
    """Side vectors of the edges of ``f`` in boundary order."""
    return [m.etype(e) for e in m.fedges(f)]
