from __future__ import annotations

from functools import cache
from pathlib import Path

import pytest

from curvlab import generators as gen
from curvlab.core_map import PlanarMap, map_from_faces
from curvlab.rotmap import import_rotmap

DATA = Path(__file__).resolve().parents[1] / "src" / "curvlab" / "data"


def cantellate(m: PlanarMap) -> PlanarMap:
    """Replace every vertex by a small face and every edge by a square."""
    corner: dict[tuple[int, int], int] = {}

    def c(f: int, v: int) -> int:
        return corner.setdefault((f, v), len(corner))

    faces = [[c(f, v) for v in m.fverts(f)] for f in m.face_ids()]
    for e in range(m.n_edges):
        u, v = m.endpoints(e)
        f, h = m.efaces(e)
        faces.append([c(f, u), c(f, v), c(h, v), c(h, u)])
    faces += [[c(f, v) for f in m.vfaces(v)] for v in m.vertices()]
    return map_from_faces(faces)


@cache
def corpus() -> dict[str, PlanarMap]:
    """Every PCC map the package can produce or ships."""
    maps = {
        "tetrahedron": gen.tetrahedron(),
        "icosahedron": gen.icosahedron(),
        "dodecahedron": gen.dodecahedron(),
        "g208": gen.graph208_chain(),
        "g208-11-13": gen.graph208_eleven_thirteen(),
        "bridged-4-4": gen.bridged_pair(4, 4),
        "bridged-4-5": gen.bridged_pair(4, 5),
        "rhombicuboctahedron": cantellate(gen.cube()),
    }
    for n in range(8, 42):
        maps[f"gN-{n}"] = gen.g_family(n)
    for path in sorted(DATA.glob("*.rot")):
        maps[f"file:{path.name}"] = import_rotmap(path)
    return maps


@cache
def g208() -> PlanarMap:
    return gen.graph208_chain()


@cache
def g208_eleven() -> PlanarMap:
    return import_rotmap(DATA / "graph208_3_4_11_13.rot")


@pytest.fixture(scope="session")
def maps() -> dict[str, PlanarMap]:
    return corpus()


@pytest.fixture(scope="session")
def chain_graph() -> PlanarMap:
    return g208()


@pytest.fixture(scope="session")
def eleven_graph() -> PlanarMap:
    return g208_eleven()


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, note = ACCEPTANCE[n]
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))
