"""Rotation systems for prisms, antiprisms, the Platonic solids and the
208-vertex chain graphs with a prescribed large face."""

from __future__ import annotations

from collections.abc import Sequence

from curvlab.core_map import PlanarMap, build_map, map_from_faces
from curvlab.errors import NTooSmall, SizeOutOfRange


class _Labeler:
    def __init__(self) -> None:
        self.count = 0

    def __call__(self) -> int:
        self.count += 1
        return self.count - 1


def prism(n: int) -> PlanarMap:
    if n < 3:
        raise NTooSmall(f"prism order must be at least 3, got {n}")
    top = list(range(n))
    bottom = [n + i for i in range(n)]
    faces = [top, bottom[::-1]]
    faces += [[top[i], bottom[i], bottom[(i + 1) % n], top[(i + 1) % n]] for i in range(n)]
    return map_from_faces(faces)


def antiprism(n: int) -> PlanarMap:
    if n < 3:
        raise NTooSmall(f"antiprism order must be at least 3, got {n}")
    top = list(range(n))
    bottom = [n + i for i in range(n)]
    faces = [top, bottom[::-1]]
    for i in range(n):
        j = (i + 1) % n
        faces.append([top[i], bottom[i], top[j]])
        faces.append([top[j], bottom[i], bottom[j]])
    return map_from_faces(faces)


def tetrahedron() -> PlanarMap:
    return build_map([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])


def cube() -> PlanarMap:
    return prism(4)


def octahedron() -> PlanarMap:
    return antiprism(3)


def icosahedron() -> PlanarMap:
    ring_a = list(range(5))
    ring_b = list(range(5, 10))
    north, south = 10, 11
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append([north, ring_a[i], ring_a[j]])
        faces.append([ring_a[i], ring_b[i], ring_a[j]])
        faces.append([ring_a[j], ring_b[i], ring_b[j]])
        faces.append([south, ring_b[j], ring_b[i]])
    return map_from_faces(faces)


def dual(m: PlanarMap) -> PlanarMap:
    """Face-vertex dual; faces of the result are listed around the old vertices."""
    return map_from_faces([list(m.vfaces(v)) for v in m.vertices()])


def dodecahedron() -> PlanarMap:
    return dual(icosahedron())


PLATONIC = {
    "tetrahedron": tetrahedron,
    "cube": cube,
    "octahedron": octahedron,
    "dodecahedron": dodecahedron,
    "icosahedron": icosahedron,
}


# ------------------------------------------------------------ chain graphs
def _chain_side(
    label: _Labeler,
    tips: Sequence[int],
    mids: Sequence[int],
    pentagon_at: Sequence[bool],
) -> tuple[list[list[int]], list[int]]:
    """Faces on one side of a closed diamond chain, and that side's big face.

    ``mids[k]`` is the middle vertex of diamond ``k`` on this side and
    ``tips[k]`` the tip shared by diamonds ``k-1`` and ``k``. The face at
    tip ``k`` is a pentagon when ``pentagon_at[k]`` holds and a heptagon
    otherwise; pentagons and heptagons must alternate.
    """
    n = len(tips)
    hang = [label() for _ in range(n)]
    far: dict[int, tuple[int, int]] = {}
    apex: dict[int, int] = {}
    for k in range(n):
        if pentagon_at[k]:
            apex[k] = label()
        else:
            far[k] = (label(), label())
    faces: list[list[int]] = []
    big: list[int] = []
    for k in range(n):
        prev_hang, this_hang = hang[k - 1], hang[k]
        rim = [prev_hang, mids[k - 1], tips[k], mids[k], this_hang]
        if pentagon_at[k]:
            z = apex[k]
            x_prev = far[(k - 1) % n][0]
            y_next = far[(k + 1) % n][1]
            faces.append(rim)
            faces += [[x_prev, prev_hang, z], [prev_hang, this_hang, z], [this_hang, y_next, z]]
            big.append(z)
        else:
            x, y = far[k]
            faces.append(rim + [x, y])
            big += [y, x]
    return faces, big


def graph208_chain() -> PlanarMap:
    """The 208-vertex graph built around a closed chain of 52 red triangles."""
    motifs = 26
    label = _Labeler()
    tips = [label() for _ in range(motifs)]
    upper = [label() for _ in range(motifs)]
    lower = [label() for _ in range(motifs)]
    faces: list[list[int]] = []
    for k in range(motifs):
        nxt = tips[(k + 1) % motifs]
        faces.append([tips[k], upper[k], lower[k]])
        faces.append([upper[k], nxt, lower[k]])
    side1, big1 = _chain_side(label, tips, upper, [k % 2 == 0 for k in range(motifs)])
    side2, big2 = _chain_side(label, tips, lower, [k % 2 == 1 for k in range(motifs)])
    faces += side1 + side2 + [big1, big2]
    return map_from_faces(faces)


# ----------------------------------------------------------- open chains
PENTAGON_CAP = 4
HEXAGON_CAP = 2


def g_family_plan(n: int) -> tuple[int, int, int]:
    """``(m, left, right)`` with ``n = 3m + left + right`` and ``m`` maximal.

    ``m`` counts the interior tips of the open chain and ``left``/``right``
    are the numbers of outer-face vertices added by each cap (4 for the
    pentagon cap, 2 for the hexagon cap).
    """
    if not 8 <= n <= 41:
        raise SizeOutOfRange(f"face size must lie in 8..41, got {n}")
    for left, right in ((HEXAGON_CAP, HEXAGON_CAP), (PENTAGON_CAP, HEXAGON_CAP), (PENTAGON_CAP, PENTAGON_CAP)):
        rest = n - left - right
        if rest % 3 == 0 and rest >= 0:
            m = rest // 3
            if m >= 1 or (left, right) == (PENTAGON_CAP, PENTAGON_CAP):
                return m, left, right
    raise SizeOutOfRange(f"no chain decomposition for {n}")  # pragma: no cover


def _open_chain_faces(m: int, left: int, right: int) -> list[list[int]]:
    label = _Labeler()
    d = m + 1  # diamonds
    tips = [label() for _ in range(d + 1)]
    mids = ([label() for _ in range(d)], [label() for _ in range(d)])
    hang = ([label() for _ in range(d)], [label() for _ in range(d)])
    faces: list[list[int]] = []
    for k in range(d):
        if not (k == 0 and left == HEXAGON_CAP):
            faces.append([tips[k], mids[0][k], mids[1][k]])
        if not (k == d - 1 and right == HEXAGON_CAP):
            faces.append([mids[0][k], tips[k + 1], mids[1][k]])

    # side s has a pentagon at interior tip k when k + s is odd
    def is_pentagon(s: int, k: int) -> bool:
        return (k + s) % 2 == 1

    apex: dict[tuple[int, int], int] = {}
    far: dict[tuple[int, int], tuple[int, int]] = {}
    for s in (0, 1):
        for k in range(1, d):
            if is_pentagon(s, k):
                apex[(s, k)] = label()
            else:
                far[(s, k)] = (label(), label())

    # cap vertices on each side: the connector forming a triangle with the
    # first hanging vertex, and the rim of the cap on the outer face
    caps: dict[str, dict[str, object]] = {}
    for end, kind in (("left", left), ("right", right)):
        if kind == PENTAGON_CAP:
            c = (label(), label())
            sv = (label(), label())
            caps[end] = {"kind": kind, "c": c, "link": sv, "outer": [sv[0], c[0], c[1], sv[1]]}
        else:
            c = (label(), label())
            caps[end] = {"kind": kind, "c": c, "link": c, "outer": [c[0], c[1]]}

    for s in (0, 1):
        h, mid = hang[s], mids[s]
        for k in range(1, d):
            rim = [h[k - 1], mid[k - 1], tips[k], mid[k], h[k]]
            if is_pentagon(s, k):
                z = apex[(s, k)]
                left_link = far[(s, k - 1)][0] if k - 1 >= 1 else caps["left"]["link"][s]  # type: ignore[index]
                right_link = far[(s, k + 1)][1] if k + 1 <= d - 1 else caps["right"]["link"][s]  # type: ignore[index]
                faces.append(rim)
                faces += [[left_link, h[k - 1], z], [h[k - 1], h[k], z], [h[k], right_link, z]]
            else:
                x, y = far[(s, k)]
                faces.append(rim + [x, y])
                if k == 1:
                    faces.append([caps["left"]["link"][s], h[0], y])  # type: ignore[index]
                if k == d - 1:
                    faces.append([h[d - 1], caps["right"]["link"][s], x])  # type: ignore[index]
        if d == 1:
            faces.append([caps["left"]["link"][s], h[0], caps["right"]["link"][s]])  # type: ignore[index]

    for end, k_tip, k_mid in (("left", 0, 0), ("right", d, d - 1)):
        cap = caps[end]
        c = cap["c"]
        if cap["kind"] == PENTAGON_CAP:
            link = cap["link"]
            faces.append([tips[k_tip], c[0], c[1]])  # type: ignore[index]
            for s in (0, 1):
                faces.append([hang[s][k_mid], mids[s][k_mid], tips[k_tip], c[s], link[s]])  # type: ignore[index]
        else:
            faces.append([c[0], hang[0][k_mid], mids[0][k_mid], mids[1][k_mid], hang[1][k_mid], c[1]])  # type: ignore[index]

    outer: list[int] = []
    for k in range(1, d):
        outer += [apex[(0, k)]] if is_pentagon(0, k) else [far[(0, k)][1], far[(0, k)][0]]
    outer += caps["right"]["outer"]  # type: ignore[operator]
    for k in range(d - 1, 0, -1):
        outer += [apex[(1, k)]] if is_pentagon(1, k) else [far[(1, k)][0], far[(1, k)][1]]
    outer += list(reversed(caps["left"]["outer"]))  # type: ignore[arg-type]
    faces.append(outer)
    return faces


def g_family(n: int) -> PlanarMap:
    """A PCC graph with a face of size exactly ``n`` (8 <= n <= 41)."""
    m, left, right = g_family_plan(n)
    faces = _open_chain_faces(m, left, right)
    # a hexagon cap leaves its end tip unused; renumber densely
    used = sorted({v for f in faces for v in f})
    dense = {v: i for i, v in enumerate(used)}
    return map_from_faces([[dense[v] for v in f] for f in faces])


# ------------------------------------------------- 3,4,11,13 graph on 208
def graph208_eleven_thirteen() -> PlanarMap:
    """The 208-vertex graph with 3-, 4-, 11- and 13-sided faces.

    Its 11-gons are arranged like the triangles of a tetrakis hexahedron:
    a 13-gon sits at every cube vertex, a square at every cube face
    centre, and the four vertical cube edges carry a square shared by the
    apex clusters of the two 13-gons at their ends.
    """
    cube_map = prism(4)
    matched = {frozenset((i, 4 + i)) for i in range(4)}
    label = _Labeler()
    cube_faces = {f: list(cube_map.fverts(f)) for f in cube_map.face_ids()}

    def face_on(g: int, a: int, b: int) -> int:
        return next(f for f, vs in cube_faces.items() if g in vs and a in vs and b in vs)

    # per cube vertex: apex, u1..u12, x, y, w1..w5, and the ring order
    apex: dict[int, int] = {}
    u: dict[int, list[int]] = {}
    xy: dict[int, tuple[int, int]] = {}
    w: dict[int, list[int]] = {}
    ring: dict[int, list[tuple[str, int]]] = {}
    for g in cube_map.vertices():
        nb = list(cube_map.rotation(g))
        s = next(i for i, h in enumerate(nb) if frozenset((g, h)) in matched)
        nb = nb[s:] + nb[:s]
        order: list[tuple[str, int]] = []
        for i in range(3):
            order.append(("edge", nb[i]))
            order.append(("face", face_on(g, nb[i], nb[(i + 1) % 3])))
        ring[g] = order
        apex[g] = label()
        u[g] = [-1] + [label() for _ in range(12)]
        xy[g] = (label(), label())
        w[g] = [-1] + [label() for _ in range(5)]

    pole_p: dict[tuple[frozenset[int], int], int] = {}
    pole_q: dict[tuple[int, int], int] = {}
    for f, vs in cube_faces.items():
        for i in range(4):
            pole_p[(frozenset((vs[i], vs[(i + 1) % 4])), f)] = label()
            pole_q[(f, vs[i])] = label()

    faces: list[list[int]] = []
    for g in cube_map.vertices():
        v, uu, (x, y), ww = apex[g], u[g], xy[g], w[g]
        faces.append([v] + uu[1:])
        faces += [[v, uu[1], x], [v, x, y], [v, y, uu[12]]]
        faces += [[uu[2 * j], uu[2 * j + 1], ww[j]] for j in range(1, 6)]

    for a, b in (tuple(e) for e in matched):
        faces.append([xy[a][0], xy[a][1], xy[b][0], xy[b][1]])

    for f, vs in cube_faces.items():
        faces.append([pole_p[(frozenset((vs[i], vs[(i + 1) % 4])), f)] for i in range(4)])
        for i in range(4):
            before = frozenset((vs[i - 1], vs[i]))
            after = frozenset((vs[i], vs[(i + 1) % 4]))
            faces.append([pole_p[(before, f)], pole_p[(after, f)], pole_q[(f, vs[i])]])

    # 11-gons: one per (cube edge, cube face) incidence
    for g1 in cube_map.vertices():
        for j in (1, 3, 5):
            g2 = ring[g1][j - 1][1]
            face = ring[g1][j][1]
            k = next(
                i + 1
                for i in range(6)
                if ring[g2][i] == ("face", face) and ring[g2][(i + 1) % 6] == ("edge", g1)
            )
            first = xy[g1][0] if j == 1 else w[g1][j - 1]
            last = xy[g2][1] if k == 6 else w[g2][k]
            faces.append(
                [
                    first,
                    u[g1][2 * j - 1],
                    u[g1][2 * j],
                    w[g1][j],
                    pole_q[(face, g1)],
                    pole_p[(frozenset((g1, g2)), face)],
                    pole_q[(face, g2)],
                    w[g2][k - 1],
                    u[g2][2 * k - 1],
                    u[g2][2 * k],
                    last,
                ]
            )
    return map_from_faces(faces)


# ------------------------------------------------ faces revisiting a vertex
def _fan_blob(base: int, rim: int) -> tuple[list[list[int]], list[int], int]:
    """A triangulated disc whose boundary walk has ``rim`` edges.

    Vertex ``base`` sees a single inner triangle; the rest of the disc is a
    fan around one interior hub. Returns the faces, the boundary walk
    starting at ``base`` and the next unused label.
    """
    v, a, b = base, base + 1, base + 2
    inner = [base + 3 + i for i in range(rim - 3)]
    hub = base + 3 + len(inner)
    path = [a, *inner, b]
    faces = [[v, a, b], [b, a, hub]]
    faces += [[path[i], path[i + 1], hub] for i in range(len(path) - 1)]
    return faces, [v, b, *inner[::-1], a], hub + 1


def bridged_pair(left_rim: int, right_rim: int) -> PlanarMap:
    """Two fan discs joined by a bridge.

    The outer face walks both rims and crosses the bridge twice, so it has
    ``left_rim + right_rim + 2`` sides and meets each bridge end twice.
    Rims of 4 and 4 or 4 and 5 give PCC graphs with faces of size 10 and 11.
    """
    if min(left_rim, right_rim) < 3:
        raise NTooSmall("each rim needs at least 3 edges")
    f1, walk1, nxt = _fan_blob(0, left_rim)
    f2, walk2, _ = _fan_blob(nxt, right_rim)
    outer = [*walk1, 0, *walk2, nxt]
    return map_from_faces(f1 + f2 + [outer])
