"""Red-triangle chains: detection, the 4m/10m/6m count laws, and the surgery
that replaces one side of a closed chain by a mirror image of the other.

A red triangle is a triangle whose three vertices all have face vector
``(3,3,5,7)``. Such a triangle normally has one *vertex joint* (a vertex of
cyclic type ``<3,5,3,7>``, shared with the next red triangle) and one *edge
joint* (its ``(3,3)`` edge, shared with another red triangle). Following the
joints alternately traces a chain.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from curvlab.classification import red_triangles
from curvlab.core_map import PlanarMap, map_from_faces
from curvlab.errors import AsymmetricBoundary, BrokenChain, OpenChain
from curvlab.report import AuditReport, Check

RED_VECTOR = (3, 3, 5, 7)


def _is_joint_vertex(m: PlanarMap, v: int) -> bool:
    cyc = m.cyclic_vtype(v)
    if sorted(cyc) != list(RED_VECTOR):
        return False
    i = cyc.index(5)
    return cyc[(i + 2) % 4] == 7


@dataclass(frozen=True)
class ChainBreak:
    """Where a chain cannot be continued."""

    triangle: int
    joint: str  # "vertex" or "edge"
    reason: str

    def to_json(self) -> dict[str, object]:
        return {"triangle": self.triangle, "joint": self.joint, "reason": self.reason}


@dataclass
class Chain:
    """Red triangles in chain order.

    ``joints[k]`` links ``triangles[k]`` to ``triangles[k+1]`` (cyclically
    for closed chains) and is ``("edge", e)`` or ``("vertex", v)``.
    """

    triangles: list[int]
    joints: list[tuple[str, int]]
    closed: bool
    breaks: list[ChainBreak] = field(default_factory=list)
    vertices: frozenset[int] = frozenset()
    edges: frozenset[int] = frozenset()

    @property
    def length(self) -> int:
        return len(self.triangles)

    L = length

    @property
    def m(self) -> int:
        return self.length // 4

    def count_laws(self) -> dict[str, bool]:
        """The closed-chain identities L = 4m, |E| = 10m, |V| = 6m."""
        m = self.m
        return {
            "length-multiple-of-4": self.length % 4 == 0,
            "triangles-4m": self.length == 4 * m,
            "edges-10m": len(self.edges) == 10 * m,
            "vertices-6m": len(self.vertices) == 6 * m,
        }

    def to_json(self) -> dict[str, object]:
        return {
            "closed": self.closed,
            "length": self.length,
            "m": self.m if self.closed else None,
            "triangles": list(self.triangles),
            "joints": [list(j) for j in self.joints],
            "n_vertices": len(self.vertices),
            "n_edges": len(self.edges),
            "count_laws": self.count_laws() if self.closed else None,
            "breaks": [b.to_json() for b in self.breaks],
        }


def _joints_of(m: PlanarMap, t: int) -> tuple[int | None, int | None, list[ChainBreak]]:
    problems: list[ChainBreak] = []
    vs = [v for v in m.fverts(t) if _is_joint_vertex(m, v)]
    es = [e for e in m.fedges(t) if m.face_size(m.other_face(e, t)) == 3]
    v = vs[0] if len(vs) == 1 else None
    e = es[0] if len(es) == 1 else None
    if v is None:
        problems.append(ChainBreak(t, "vertex", f"{len(vs)} vertices of cyclic type <3,5,3,7>"))
    if e is None:
        problems.append(ChainBreak(t, "edge", f"{len(es)} edges of type (3,3)"))
    return v, e, problems


def _other_triangle_at(m: PlanarMap, v: int, t: int) -> int:
    return next(f for f in m.vfaces(v) if f != t and m.face_size(f) == 3)


def find_chains(m: PlanarMap, strict: bool = False) -> list[Chain]:
    """Partition the red triangles of ``m`` into maximal chains.

    Open segments are returned with ``closed=False`` and a ``breaks`` entry
    at each end. With ``strict=True`` the first break raises BrokenChain.
    """
    reds = red_triangles(m)
    red = set(reds)
    vj: dict[int, int | None] = {}
    ej: dict[int, int | None] = {}
    issues: dict[int, list[ChainBreak]] = {}
    for t in reds:
        vj[t], ej[t], issues[t] = _joints_of(m, t)

    def step(t: int, kind: str) -> tuple[int | None, ChainBreak | None]:
        if kind == "vertex":
            v = vj[t]
            if v is None:
                return None, issues[t][0]
            nxt = _other_triangle_at(m, v, t)
            if nxt not in red:
                return None, ChainBreak(t, "vertex", f"triangle {nxt} at vertex {v} is not red")
            if vj[nxt] != v:
                return None, ChainBreak(t, "vertex", f"triangle {nxt} does not use vertex {v} as its joint")
            return nxt, None
        e = ej[t]
        if e is None:
            return None, next(b for b in issues[t] if b.joint == "edge")
        nxt = m.other_face(e, t)
        if nxt not in red:
            return None, ChainBreak(t, "edge", f"triangle {nxt} across edge {e} is not red")
        if ej[nxt] != e:
            return None, ChainBreak(t, "edge", f"triangle {nxt} does not use edge {e} as its joint")
        return nxt, None

    def joint_id(t: int, kind: str) -> int:
        value = vj[t] if kind == "vertex" else ej[t]
        assert value is not None
        return value

    seen: set[int] = set()
    chains: list[Chain] = []
    for start in reds:
        if start in seen:
            continue
        # walk backwards over the vertex joint to find an end (if any)
        first, first_kind = start, "edge"
        kind = "vertex"
        cur = start
        closed = False
        while True:
            nxt, _ = step(cur, kind)
            if nxt is None:
                first, first_kind = cur, "edge" if kind == "vertex" else "vertex"
                break
            cur = nxt
            kind = "edge" if kind == "vertex" else "vertex"
            if cur == start and kind == "vertex":
                closed = True
                break
        tris = [first]
        joints: list[tuple[str, int]] = []
        breaks: list[ChainBreak] = []
        if not closed:
            _, tail_break = step(first, "edge" if first_kind == "vertex" else "vertex")
            if tail_break is not None:
                breaks.append(tail_break)
        kind = first_kind
        cur = first
        while True:
            nxt, brk = step(cur, kind)
            if nxt is None:
                if brk is not None:
                    breaks.append(brk)
                break
            joints.append((kind, joint_id(cur, kind)))
            if nxt == first:
                break
            tris.append(nxt)
            cur = nxt
            kind = "edge" if kind == "vertex" else "vertex"
        seen.update(tris)
        verts = frozenset(v for t in tris for v in m.fverts(t))
        edges = frozenset(e for t in tris for e in m.fedges(t))
        chain = Chain(tris, joints, closed, breaks, verts, edges)
        if strict and breaks:
            raise BrokenChain(f"chain through triangle {first}: {breaks[0].reason}")
        chains.append(chain)
    return chains


def chain_audit(m: PlanarMap, chains: list[Chain] | None = None) -> AuditReport:
    chains = find_chains(m) if chains is None else chains
    report = AuditReport()
    report.info["chains"] = len(chains)
    for i, c in enumerate(chains):
        if c.closed:
            laws = c.count_laws()
            report.add(
                "chains",
                Check(
                    f"chains.count-laws[{i}]",
                    all(laws.values()),
                    f"closed chain of length {c.length}",
                    values={"L": c.length, "m": c.m, "V": len(c.vertices), "E": len(c.edges), **laws},
                ),
            )
        else:
            # open segments are reported, not judged
            report.add(
                "chains",
                Check(
                    f"chains.open-segment[{i}]",
                    True,
                    f"open segment of {c.length} triangles",
                    values={"L": c.length},
                    witnesses=[b.to_json() for b in c.breaks],
                ),
            )
    return report


# ------------------------------------------------------------------ surgery
@dataclass
class _Side:
    faces: list[int]
    interior: set[int]
    cycle: list[int]  # boundary vertices in the order the side's faces traverse them


def _sides(m: PlanarMap, c: Chain) -> list[_Side]:
    chain_faces = set(c.triangles)
    label: dict[int, int] = {}
    groups: list[list[int]] = []
    for f0 in m.face_ids():
        if f0 in chain_faces or f0 in label:
            continue
        label[f0] = len(groups)
        group = [f0]
        queue = deque([f0])
        while queue:
            f = queue.popleft()
            for e in m.fedges(f):
                if e in c.edges:
                    continue
                g = m.other_face(e, f)
                if g not in label:
                    label[g] = label[f0]
                    group.append(g)
                    queue.append(g)
        groups.append(group)
    if len(groups) != 2:
        raise AsymmetricBoundary(f"chain support leaves {len(groups)} regions, expected 2")
    sides = []
    for group in groups:
        members = set(group)
        interior = {v for f in group for v in m.fverts(f)} - c.vertices
        succ: dict[int, int] = {}
        for f in group:
            for d in m.face_darts(f):
                if m.edge_of[d] in c.edges:
                    u, w = m.origin[d], m.head[d]
                    if u in succ:
                        raise AsymmetricBoundary(f"boundary of a region passes vertex {u} twice")
                    succ[u] = w
        start = min(succ)
        cycle = [start]
        while succ[cycle[-1]] != start:
            cycle.append(succ[cycle[-1]])
            if len(cycle) > len(succ):
                raise AsymmetricBoundary("region boundary is not a simple cycle")
        if len(cycle) != len(succ):
            raise AsymmetricBoundary("region boundary is not a single cycle")
        sides.append(_Side(sorted(members), interior, cycle))
    return sides


def _corner_sizes(m: PlanarMap, v: int, faces: set[int]) -> tuple[int, ...]:
    """Sizes of the given faces around ``v`` in rotation order, starting after a chain face."""
    around = m.vfaces(v)
    k = len(around)
    start = next(i for i in range(k) if around[i] not in faces and around[(i + 1) % k] in faces)
    out = []
    for j in range(1, k + 1):
        f = around[(start + j) % k]
        if f not in faces:
            break
        out.append(m.face_size(f))
    return tuple(out)


def _boundary_map(m: PlanarMap, src: _Side, dst: _Side) -> dict[int, int]:
    """A direction-reversing match of the two boundary cycles that keeps the
    face sizes seen at every boundary vertex."""
    if len(src.cycle) != len(dst.cycle):
        raise AsymmetricBoundary(f"boundary lengths differ: {len(src.cycle)} vs {len(dst.cycle)}")
    n = len(src.cycle)
    src_faces, dst_faces = set(src.faces), set(dst.faces)
    sig_src = [_corner_sizes(m, v, src_faces) for v in src.cycle]
    sig_dst = [_corner_sizes(m, v, dst_faces) for v in dst.cycle]
    for shift in range(n):
        if all(sig_src[i][::-1] == sig_dst[(shift - i) % n] for i in range(n)):
            return {src.cycle[i]: dst.cycle[(shift - i) % n] for i in range(n)}
    raise AsymmetricBoundary("no orientation-reversing match between the two region boundaries")


def chain_surgery(m: PlanarMap, c: Chain) -> PlanarMap:
    """Replace the side of ``c`` with fewer interior vertices by a mirrored
    copy of the other side. Ties keep the side containing the lowest face id.

    The result has ``2*n1 + 6m`` vertices, where ``n1`` counts the interior
    vertices of the kept side.
    """
    if not c.closed:
        raise OpenChain("surgery needs a closed chain")
    sides = _sides(m, c)
    keep, drop = sorted(sides, key=lambda s: (-len(s.interior), s.faces[0]))
    glue = _boundary_map(m, keep, drop)
    fresh: dict[int, int] = {}
    next_id = m.n_vertices
    for v in sorted(keep.interior):
        fresh[v] = next_id
        next_id += 1
    image = {**glue, **fresh}
    faces: list[list[int]] = [list(m.fverts(t)) for t in c.triangles]
    faces += [list(m.fverts(f)) for f in keep.faces]
    faces += [[image[v] for v in reversed(m.fverts(f))] for f in keep.faces]
    used = sorted({v for f in faces for v in f})
    dense = {v: i for i, v in enumerate(used)}
    return map_from_faces([[dense[v] for v in f] for f in faces])


def side_sizes(m: PlanarMap, c: Chain) -> tuple[int, int]:
    """Interior vertex counts of the two regions, larger first."""
    a, b = (len(s.interior) for s in _sides(m, c))
    return max(a, b), min(a, b)
