"""PCC validation: the defining conditions plus structural consequences
that every PCC map must satisfy."""

from __future__ import annotations

from curvlab.core_map import PlanarMap, is_antiprism, is_prism
from curvlab.curvature import curvature, total_curvature
from curvlab.report import AuditReport, Check

MAX_FACE = 41
LARGE = 20


def _repeated_vertex_faces(m: PlanarMap) -> list[dict[str, int]]:
    bad = []
    for f in m.face_ids():
        verts = m.fverts(f)
        if len(set(verts)) != len(verts) and not 7 <= len(verts) <= 11:
            bad.append({"face": f, "size": len(verts)})
    return bad


def _large_faces_apart(m: PlanarMap) -> list[dict[str, object]]:
    """Adjacent vertices on large faces must share that face along their edge."""
    large_at = {
        v: {f for f in m.vfaces(v) if m.face_size(f) >= LARGE} for v in m.vertices()
    }
    bad = []
    for e in range(m.n_edges):
        u, w = m.endpoints(e)
        fu, fw = large_at[u], large_at[w]
        if not fu or not fw:
            continue
        ok = len(fu) == 1 and fu == fw and e in m.fedges(next(iter(fu)))
        if not ok:
            bad.append({"edge": [u, w], "faces_u": sorted(fu), "faces_w": sorted(fw)})
    return bad


def _small_face_sharing(m: PlanarMap) -> list[dict[str, object]]:
    """A face of size at most 6 borders at most one large face, along one edge."""
    bad = []
    for k in m.face_ids():
        if m.face_size(k) > 6:
            continue
        touching = {
            (e, m.other_face(e, k))
            for e in m.fedges(k)
            if m.face_size(m.other_face(e, k)) >= LARGE
        }
        if len(touching) > 1:
            bad.append({"face": k, "shared": sorted(touching)})
    return bad


def validate_pcc(m: PlanarMap) -> AuditReport:
    """Report on the PCC conditions and the structural lemmas they imply."""
    report = AuditReport()
    report.info.update({"V": m.n_vertices, "E": m.n_edges, "F": m.n_faces})

    nonpositive = [v for v in m.vertices() if curvature(m, v) <= 0]
    report.add(
        "validation",
        Check(
            "pcc.positive-curvature",
            not nonpositive,
            "K(v) > 0 at every vertex" if not nonpositive else f"{len(nonpositive)} vertices with K <= 0",
            witnesses=[{"vertex": v, "vtype": list(m.vtype(v)), "K": curvature(m, v)} for v in nonpositive],
        ),
    )
    low = [v for v in m.vertices() if m.degree(v) < 3]
    report.add(
        "validation",
        Check("pcc.min-degree", not low, "every vertex has degree >= 3", witnesses=low),
    )
    shape = "prism" if is_prism(m) else "antiprism" if is_antiprism(m) else None
    report.add(
        "validation",
        Check(
            "pcc.not-prism-or-antiprism",
            shape is None,
            "not a prism or an antiprism" if shape is None else f"the map is a {shape}",
            values={"shape": shape},
        ),
    )
    big = [f for f in m.face_ids() if m.face_size(f) > MAX_FACE]
    report.add(
        "validation",
        Check(
            "pcc.max-face-size",
            not big,
            f"largest face has {m.max_face_size()} sides",
            values={"max_face": m.max_face_size(), "limit": MAX_FACE},
            witnesses=[{"face": f, "size": m.face_size(f)} for f in big],
        ),
    )
    total = total_curvature(m)
    report.add(
        "curvature",
        Check("curvature.total-is-two", total == 2, values={"total": total}),
    )
    # The structural checks only make sense once the defining conditions hold.
    if nonpositive or low or shape is not None:
        return report
    for check_id, finder, text in (
        ("structure.repeated-vertex-faces", _repeated_vertex_faces, "faces revisiting a vertex have 7..11 sides"),
        ("structure.large-faces-apart", _large_faces_apart, "adjacent vertices on large faces share one"),
        ("structure.small-face-sharing", _small_face_sharing, "small faces touch at most one large face edge"),
    ):
        found = finder(m)
        report.add("validation", Check(check_id, not found, text, witnesses=found))
    return report
