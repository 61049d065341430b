from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab import generators as gen
from curvlab.core_map import (
    build_map,
    dart_isomorphic,
    is_antiprism,
    is_prism,
    map_from_faces,
    mirror,
    relabel,
)
from curvlab.errors import LoopEdge, MultiEdge, NonSymmetricAdjacency, NotConnected, NotSphere, UnknownId
from oracles import census_from_rotation

TETRA = {0: [1, 2, 3], 1: [0, 3, 2], 2: [0, 1, 3], 3: [0, 2, 1]}


def rotation_dict(m):
    labels = m.labels
    return {labels[v]: [labels[w] for w in m.rotation(v)] for v in m.vertices()}


def test_tetrahedron_counts():
    m = build_map(TETRA)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (4, 6, 4)
    assert m.n_vertices - m.n_edges + m.n_faces == 2
    assert all(m.face_size(f) == 3 for f in m.face_ids())


def test_prism3_counts():
    m = gen.prism(3)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (6, 9, 5)


def test_torus_rotation_rejected():
    # K4 with a non-planar rotation at one vertex traces too few faces
    bad = {0: [1, 2, 3], 1: [0, 2, 3], 2: [0, 1, 3], 3: [0, 1, 2]}
    with pytest.raises(NotSphere):
        build_map(bad)


@pytest.mark.parametrize(
    "rot, err",
    [
        ({0: [1, 2], 1: [2], 2: [0, 1]}, NonSymmetricAdjacency),
        ({0: [0, 1, 2], 1: [0, 2], 2: [0, 1]}, LoopEdge),
        ({0: [1, 1, 2], 1: [0, 0, 2], 2: [0, 1]}, MultiEdge),
        ({0: [1], 1: [0], 2: [3], 3: [2]}, NotConnected),
    ],
)
def test_malformed_rotations(rot, err):
    with pytest.raises(err):
        build_map(rot)


def test_unknown_vertex_id():
    with pytest.raises(UnknownId):
        build_map(TETRA).rotation(99)


def test_vtype_examples():
    assert gen.cube().vtype(0) == (4, 4, 4)
    a5 = gen.antiprism(5)
    assert all(a5.vtype(v) == (3, 3, 3, 5) for v in a5.vertices())


def test_multi_incidence_kept(maps):
    m = maps["bridged-4-4"]
    repeated = [(v, f) for v in m.vertices() for f in set(m.vfaces(v)) if m.vfaces(v).count(f) == 2]
    assert repeated, "the bridged graph has a face meeting a vertex twice"
    v, f = repeated[0]
    assert m.vtype(v).count(m.face_size(f)) >= 2


def test_face_walk_lengths(maps):
    for m in maps.values():
        for f in m.face_ids():
            assert len(m.fverts(f)) == len(m.fedges(f)) == m.face_size(f)


def test_vfaces_cardinality_is_degree(maps):
    for m in maps.values():
        assert all(len(m.vfaces(v)) == m.degree(v) for v in m.vertices())


def test_censuses_match_independent_face_trace(maps):
    for name, m in maps.items():
        sizes, vectors = census_from_rotation(rotation_dict(m))
        assert dict(sizes) == m.face_census(), name
        assert dict(vectors) == m.vertex_census(), name


def test_opp_on_tetrahedron():
    m = build_map(TETRA)
    for v in m.vertices():
        for t in m.vfaces(v):
            o = m.opp(v, t)
            assert o != t and m.face_size(o) == 3 and v not in m.fverts(o)


def test_opp_antiprism():
    # hand trace on the ring a_i / b_i: at a_1 the middle triangle (b_0, b_1, a_1)
    # faces the bottom hexagon across b_0 b_1; the two side triangles face triangles
    m = gen.antiprism(6)
    for v in m.vertices():
        sizes = m.cyclic_vtype(v)
        faces = m.vfaces(v)
        k = len(sizes)
        for i in range(k):
            if sizes[i] != 3:
                continue
            middle = sizes[i - 1] == 3 and sizes[(i + 1) % k] == 3
            assert m.face_size(m.opp(v, faces[i])) == (6 if middle else 3)


def test_prism_antiprism_predicates():
    assert is_prism(gen.prism(7)) and not is_antiprism(gen.prism(7))
    assert is_antiprism(gen.antiprism(7)) and not is_prism(gen.antiprism(7))
    assert is_prism(gen.cube())
    assert not is_prism(gen.icosahedron()) and not is_antiprism(gen.icosahedron())


@given(st.integers(min_value=3, max_value=30))
@settings(max_examples=25, deadline=None)
def test_prism_family_euler(n):
    for m in (gen.prism(n), gen.antiprism(n)):
        assert m.n_vertices - m.n_edges + m.n_faces == 2


@given(st.permutations(list(range(12))))
@settings(max_examples=20, deadline=None)
def test_relabel_is_isomorphic(perm):
    m = gen.icosahedron()
    assert dart_isomorphic(m, relabel(m, perm))


def test_mirror_isomorphic_for_achiral_map():
    m = gen.dodecahedron()
    assert dart_isomorphic(m, mirror(m))
    assert not dart_isomorphic(gen.prism(5), gen.antiprism(5))


def test_map_from_faces_round_trip():
    m = gen.icosahedron()
    again = map_from_faces([list(m.fverts(f)) for f in m.face_ids()])
    assert dart_isomorphic(m, again)
