"""Sphere maps stored as rotation systems.

A map is given by the counterclockwise cyclic order of neighbours at every
vertex. Each undirected edge contributes two darts; ``twin`` swaps them and
``rot`` advances to the next dart around the common origin. Faces are the
orbits of ``rot . twin``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence

from curvlab.errors import (
    LoopEdge,
    MapError,
    MultiEdge,
    NonSymmetricAdjacency,
    NotATriangle,
    NotConnected,
    NotIncident,
    NotSphere,
    UnknownId,
)

FaceVector = tuple[int, ...]
SideVector = tuple[int, int]
RotationInput = Sequence[Sequence[int]] | Mapping[int, Sequence[int]]


class PlanarMap:
    """Immutable connected simple graph 2-cell embedded in the sphere.

    Vertices, edges and faces are dense integer ids. Vertex ids follow the
    input order, edge ids follow the first dart of each edge, and face ids
    follow the order in which dart orbits are discovered.
    """

    __slots__ = (
        "_rotation",
        "_labels",
        "_offset",
        "origin",
        "head",
        "twin",
        "rot",
        "edge_of",
        "edges",
        "face_of",
        "faces",
        "_dart_index",
    )

    def __init__(self, rotation: list[tuple[int, ...]], labels: list[int]):
        self._rotation = rotation
        self._labels = labels
        n = len(rotation)
        offset = [0] * (n + 1)
        for v in range(n):
            offset[v + 1] = offset[v] + len(rotation[v])
        self._offset = offset
        n_darts = offset[n]

        origin = [0] * n_darts
        head = [0] * n_darts
        dart_index: dict[tuple[int, int], int] = {}
        for v, nbrs in enumerate(rotation):
            for i, w in enumerate(nbrs):
                d = offset[v] + i
                origin[d] = v
                head[d] = w
                dart_index[(v, w)] = d
        twin = [dart_index[(head[d], origin[d])] for d in range(n_darts)]
        rot = [0] * n_darts
        for v, nbrs in enumerate(rotation):
            k = len(nbrs)
            for i in range(k):
                rot[offset[v] + i] = offset[v] + (i + 1) % k

        edge_of = [-1] * n_darts
        edges: list[tuple[int, int]] = []
        for d in range(n_darts):
            if edge_of[d] < 0:
                edge_of[d] = edge_of[twin[d]] = len(edges)
                edges.append((origin[d], head[d]))

        face_of = [-1] * n_darts
        faces: list[tuple[int, ...]] = []
        for d in range(n_darts):
            if face_of[d] >= 0:
                continue
            orbit = []
            x = d
            while face_of[x] < 0:
                face_of[x] = len(faces)
                orbit.append(x)
                x = rot[twin[x]]
            faces.append(tuple(orbit))

        self.origin = origin
        self.head = head
        self.twin = twin
        self.rot = rot
        self.edge_of = edge_of
        self.edges = edges
        self.face_of = face_of
        self.faces = faces
        self._dart_index = dart_index

    # ------------------------------------------------------------------ sizes
    @property
    def n_vertices(self) -> int:
        return len(self._rotation)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_darts(self) -> int:
        return len(self.origin)

    @property
    def labels(self) -> list[int]:
        """Vertex labels as they appeared in the input (identity for dense input)."""
        return list(self._labels)

    def vertices(self) -> range:
        return range(self.n_vertices)

    def face_ids(self) -> range:
        return range(self.n_faces)

    # ------------------------------------------------------------- id checks
    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n_vertices:
            raise UnknownId(f"unknown vertex {v!r}")

    def _check_face(self, f: int) -> None:
        if not isinstance(f, int) or not 0 <= f < self.n_faces:
            raise UnknownId(f"unknown face {f!r}")

    def _check_edge(self, e: int) -> None:
        if not isinstance(e, int) or not 0 <= e < self.n_edges:
            raise UnknownId(f"unknown edge {e!r}")

    # --------------------------------------------------------- vertex queries
    def rotation(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in counterclockwise order."""
        self._check_vertex(v)
        return self._rotation[v]

    neighbors = rotation

    def rotation_system(self) -> list[tuple[int, ...]]:
        return list(self._rotation)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._rotation[v])

    def out_darts(self, v: int) -> range:
        self._check_vertex(v)
        return range(self._offset[v], self._offset[v + 1])

    def dart(self, u: int, v: int) -> int:
        """The dart from ``u`` to ``v``; raises UnknownId when they are not adjacent."""
        try:
            return self._dart_index[(u, v)]
        except KeyError:
            raise UnknownId(f"no edge between {u!r} and {v!r}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._dart_index

    def edge_between(self, u: int, v: int) -> int:
        return self.edge_of[self.dart(u, v)]

    def vfaces(self, v: int) -> tuple[int, ...]:
        """Faces around ``v`` in rotation order, with multiplicity.

        Entry ``i`` is the face in the corner that ends at the ``i``-th
        neighbour of the rotation.
        """
        return tuple(self.face_of[d] for d in self.out_darts(v))

    def cyclic_vtype(self, v: int) -> FaceVector:
        return tuple(len(self.faces[f]) for f in self.vfaces(v))

    def vtype(self, v: int) -> FaceVector:
        return tuple(sorted(self.cyclic_vtype(v)))

    def vedges(self, v: int) -> tuple[int, ...]:
        return tuple(self.edge_of[d] for d in self.out_darts(v))

    # ----------------------------------------------------------- edge queries
    def endpoints(self, e: int) -> tuple[int, int]:
        self._check_edge(e)
        return self.edges[e]

    def edge_darts(self, e: int) -> tuple[int, int]:
        u, v = self.endpoints(e)
        d = self._dart_index[(u, v)]
        return d, self.twin[d]

    def efaces(self, e: int) -> tuple[int, int]:
        d, t = self.edge_darts(e)
        return self.face_of[d], self.face_of[t]

    def etype(self, e: int) -> SideVector:
        f, g = self.efaces(e)
        a, b = len(self.faces[f]), len(self.faces[g])
        return (a, b) if a <= b else (b, a)

    def other_face(self, e: int, f: int) -> int:
        """The face across ``e`` from ``f``."""
        g, h = self.efaces(e)
        if g == f:
            return h
        if h == f:
            return g
        raise NotIncident(f"edge {e} does not lie on face {f}")

    # ----------------------------------------------------------- face queries
    def face_size(self, f: int) -> int:
        self._check_face(f)
        return len(self.faces[f])

    def face_darts(self, f: int) -> tuple[int, ...]:
        self._check_face(f)
        return self.faces[f]

    def fverts(self, f: int) -> tuple[int, ...]:
        return tuple(self.origin[d] for d in self.face_darts(f))

    def fedges(self, f: int) -> tuple[int, ...]:
        return tuple(self.edge_of[d] for d in self.face_darts(f))

    def opp(self, v: int, t: int) -> int:
        """Face across the edge of triangle ``t`` that avoids ``v``."""
        darts = self.face_darts(t)
        self._check_vertex(v)
        if len(darts) != 3:
            raise NotATriangle(f"face {t} has size {len(darts)}")
        if v not in (self.origin[x] for x in darts):
            raise NotIncident(f"vertex {v} is not on face {t}")
        d = next(x for x in darts if v not in (self.origin[x], self.head[x]))
        return self.face_of[self.twin[d]]

    def face_census(self) -> dict[int, int]:
        census: dict[int, int] = {}
        for darts in self.faces:
            census[len(darts)] = census.get(len(darts), 0) + 1
        return dict(sorted(census.items()))

    def vertex_census(self) -> dict[FaceVector, int]:
        census: dict[FaceVector, int] = {}
        for v in self.vertices():
            fv = self.vtype(v)
            census[fv] = census.get(fv, 0) + 1
        return dict(sorted(census.items()))

    def max_face_size(self) -> int:
        return max(len(d) for d in self.faces)

    def __repr__(self) -> str:
        return f"PlanarMap(V={self.n_vertices}, E={self.n_edges}, F={self.n_faces})"


def _normalise(rotation_lists: RotationInput) -> tuple[list[tuple[int, ...]], list[int]]:
    if isinstance(rotation_lists, Mapping):
        labels = list(rotation_lists.keys())
        raw = [list(rotation_lists[k]) for k in labels]
    else:
        raw = [list(r) for r in rotation_lists]
        labels = list(range(len(raw)))
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise MapError("duplicate vertex label")
    rotation = []
    for lab, nbrs in zip(labels, raw):
        row = []
        for w in nbrs:
            if w not in index:
                raise UnknownId(f"vertex {lab!r} lists undeclared neighbour {w!r}")
            row.append(index[w])
        rotation.append(tuple(row))
    return rotation, labels


def build_map(rotation_lists: RotationInput) -> PlanarMap:
    """Build and validate a sphere map from counterclockwise neighbour lists.

    ``rotation_lists`` is either a sequence indexed by vertex or a mapping
    from labels to neighbour labels; labels are renumbered densely in input
    order.
    """
    rotation, labels = _normalise(rotation_lists)
    n = len(rotation)
    if n == 0:
        raise NotConnected("empty map")
    for v, nbrs in enumerate(rotation):
        seen = set()
        for w in nbrs:
            if w == v:
                raise LoopEdge(f"vertex {labels[v]} lists itself")
            if w in seen:
                raise MultiEdge(f"vertex {labels[v]} lists {labels[w]} twice")
            seen.add(w)
    for v, nbrs in enumerate(rotation):
        for w in nbrs:
            if v not in rotation[w]:
                raise NonSymmetricAdjacency(
                    f"{labels[v]} lists {labels[w]} but not conversely"
                )

    seen_v = [False] * n
    seen_v[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in rotation[v]:
            if not seen_v[w]:
                seen_v[w] = True
                queue.append(w)
    if not all(seen_v):
        missing = labels[seen_v.index(False)]
        raise NotConnected(f"vertex {missing} is unreachable")

    m = PlanarMap(rotation, labels)
    chi = m.n_vertices - m.n_edges + m.n_faces
    if n > 1 and chi != 2:
        raise NotSphere(f"V - E + F = {chi}, expected 2")
    return m


def map_from_faces(face_cycles: Iterable[Sequence[int]]) -> PlanarMap:
    """Build a sphere map from its face boundaries.

    Each cycle lists the vertices of one face. Orientations are made
    consistent automatically, so cycles may be written in either direction.
    Vertex ids must be ``0..n-1``.
    """
    cycles = [list(c) for c in face_cycles]
    edge_slots: dict[frozenset[int], list[tuple[int, int]]] = {}
    for fi, cyc in enumerate(cycles):
        k = len(cyc)
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            edge_slots.setdefault(frozenset((a, b)), []).append((fi, i))
    for key, slots in edge_slots.items():
        if len(slots) != 2:
            raise MapError(f"edge {sorted(key)} lies on {len(slots)} face sides")

    def directed(fi: int, i: int, flip: bool) -> tuple[int, int]:
        cyc = cycles[fi]
        a, b = cyc[i], cyc[(i + 1) % len(cyc)]
        return (b, a) if flip else (a, b)

    flip: list[bool | None] = [None] * len(cycles)
    for start in range(len(cycles)):
        if flip[start] is not None:
            continue
        flip[start] = False
        queue = deque([start])
        while queue:
            fi = queue.popleft()
            cyc = cycles[fi]
            for i in range(len(cyc)):
                a, b = directed(fi, i, bool(flip[fi]))
                for gj, j in edge_slots[frozenset((a, b))]:
                    if (gj, j) == (fi, i):
                        continue
                    want = directed(gj, j, False) != (b, a)
                    if flip[gj] is None:
                        flip[gj] = want
                        queue.append(gj)
                    elif flip[gj] != want:
                        raise NotSphere("face boundaries cannot be oriented consistently")

    nxt: dict[int, dict[int, int]] = {}
    for fi, cyc in enumerate(cycles):
        seq = cyc[::-1] if flip[fi] else cyc
        k = len(seq)
        for i in range(k):
            u, v, w = seq[i - 1], seq[i], seq[(i + 1) % k]
            nxt.setdefault(v, {})[u] = w
    n = max(nxt) + 1
    rotation: list[list[int]] = []
    for v in range(n):
        succ = nxt.get(v)
        if not succ:
            raise NotConnected(f"vertex {v} lies on no face")
        start = min(succ)
        order = [start]
        while True:
            w = succ[order[-1]]
            if w == start:
                break
            order.append(w)
        if len(order) != len(succ):
            raise MapError(f"faces around vertex {v} do not form a single disc")
        rotation.append(order)
    return build_map(rotation)


def is_prism(m: PlanarMap) -> bool:
    """True for the prism of some order N >= 3 (the cube is the prism of order 4)."""
    n = m.n_vertices
    if n < 6 or n % 2:
        return False
    order = n // 2
    target = tuple(sorted((4, 4, order)))
    return all(m.vtype(v) == target for v in m.vertices())


def is_antiprism(m: PlanarMap) -> bool:
    """True for the antiprism of some order N >= 3 (the octahedron has order 3)."""
    n = m.n_vertices
    if n < 6 or n % 2:
        return False
    order = n // 2
    target = tuple(sorted((3, 3, 3, order)))
    return all(m.vtype(v) == target for v in m.vertices())


def relabel(m: PlanarMap, perm: Sequence[int]) -> PlanarMap:
    """Return the same map with vertex ``v`` renamed ``perm[v]``."""
    n = m.n_vertices
    rows: list[list[int]] = [[] for _ in range(n)]
    for v in m.vertices():
        rows[perm[v]] = [perm[w] for w in m.rotation(v)]
    return build_map(rows)


def mirror(m: PlanarMap) -> PlanarMap:
    """The orientation-reversed map (every rotation reversed)."""
    return build_map([list(reversed(m.rotation(v))) for v in m.vertices()])


def dart_isomorphic(a: PlanarMap, b: PlanarMap) -> bool:
    """Orientation-preserving isomorphism test for rotation systems."""
    if (a.n_vertices, a.n_edges, a.n_faces) != (b.n_vertices, b.n_edges, b.n_faces):
        return False
    if a.n_darts == 0:
        return True
    for start in range(b.n_darts):
        if _extend_iso(a, b, 0, start):
            return True
    return False


def _extend_iso(a: PlanarMap, b: PlanarMap, da: int, db: int) -> bool:
    phi = [-1] * a.n_darts
    used = [False] * b.n_darts
    stack = [(da, db)]
    while stack:
        x, y = stack.pop()
        if phi[x] >= 0:
            if phi[x] != y:
                return False
            continue
        if used[y]:
            return False
        phi[x] = y
        used[y] = True
        stack.append((a.twin[x], b.twin[y]))
        stack.append((a.rot[x], b.rot[y]))
    return all(p >= 0 for p in phi)
