from __future__ import annotations

import pytest

from curvlab import generators as gen
from curvlab.core_map import dart_isomorphic
from curvlab.errors import ParseError, WriteError
from curvlab.rotmap import (
    HEADER,
    export_dot,
    export_rotmap,
    format_dot,
    format_rotmap,
    import_rotmap,
    parse_rotmap,
)
from conftest import DATA


def test_round_trip(tmp_path, chain_graph):
    path = tmp_path / "g.rot"
    export_rotmap(chain_graph, path, comment="two\nlines")
    back = import_rotmap(path)
    assert dart_isomorphic(chain_graph, back)
    assert path.read_text().splitlines()[:3] == [HEADER, "# two", "# lines"]


def test_v_prefix_and_comments():
    text = "rotmap 1\n# tetrahedron\nv0: 1 2 3\nv1: 0 3 2  # trailing\n2: 0 1 3\n3: 0 2 1\n"
    m = parse_rotmap(text)
    assert m.n_faces == 4


@pytest.mark.parametrize(
    "text, line, column, needle",
    [
        ("rotmap 2\n0: 1\n", 1, 1, "header"),
        ("rotmap 1\n0: 1\n1: 0 9\n", 3, 6, "undeclared neighbour 9"),
        ("rotmap 1\nx: 1\n", 2, 1, "bad vertex id"),
        ("rotmap 1\n0: 1 a\n1: 0\n", 2, 6, "bad neighbour"),
        ("rotmap 1\n0: 1\n0: 1\n", 3, 1, "defined twice"),
        ("rotmap 1\n0 1 2\n", 2, None, "expected"),
    ],
)
def test_parse_errors(text, line, column, needle):
    with pytest.raises(ParseError) as info:
        parse_rotmap(text)
    assert info.value.line == line
    if column is not None:
        assert info.value.column == column
    assert needle in str(info.value)


def test_error_names_the_vertex():
    with pytest.raises(ParseError, match="vertex 1 lists undeclared neighbour 9"):
        parse_rotmap("rotmap 1\n0: 1\n1: 0 9\n")


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        import_rotmap(tmp_path / "nope.rot")


def test_write_error(tmp_path):
    with pytest.raises(WriteError):
        export_rotmap(gen.cube(), tmp_path / "missing-dir" / "x.rot")


def test_dot(tmp_path):
    text = format_dot(gen.cube())
    assert text.startswith("graph G {") and text.count(" -- ") == 12
    export_dot(gen.cube(), tmp_path / "c.dot")
    assert (tmp_path / "c.dot").read_text() == text


def test_shipped_eleven_thirteen_file(eleven_graph):
    m = eleven_graph
    assert (m.n_vertices, m.n_edges, m.n_faces) == (208, 336, 130)
    assert m.face_census() == {3: 88, 4: 10, 11: 24, 13: 8}


def test_format_is_stable():
    assert format_rotmap(gen.tetrahedron()) == format_rotmap(parse_rotmap(format_rotmap(gen.tetrahedron())))


def test_shipped_files_parse():
    for path in DATA.glob("*.rot"):
        import_rotmap(path)
