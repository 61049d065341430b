from __future__ import annotations

import pytest

from curvlab import generators as gen
from curvlab.chains import chain_audit, chain_surgery, find_chains, side_sizes
from curvlab.classification import red_triangles
from curvlab.core_map import dart_isomorphic
from curvlab.curvature import total_curvature
from curvlab.errors import BrokenChain, OpenChain
from curvlab.validate import validate_pcc


def test_closed_chain_laws(chain_graph):
    chains = find_chains(chain_graph)
    assert len(chains) == 1
    c = chains[0]
    assert c.closed and c.length == 52 and c.m == 13
    assert len(c.vertices) == 6 * 13 and len(c.edges) == 10 * 13
    assert all(c.count_laws().values())
    assert sorted(c.triangles) == sorted(red_triangles(chain_graph))


def test_joints_alternate(chain_graph):
    c = find_chains(chain_graph)[0]
    kinds = [k for k, _ in c.joints]
    assert all(kinds[i] != kinds[(i + 1) % len(kinds)] for i in range(len(kinds)))
    for kind, x in c.joints:
        if kind == "edge":
            assert chain_graph.etype(x) == (3, 3)


def test_opp_keeps_red(chain_graph):
    m = chain_graph
    red = set(red_triangles(m))
    c = find_chains(m)[0]
    for kind, v in c.joints:
        if kind == "vertex":
            for t in m.vfaces(v):
                if t in red:
                    assert m.opp(v, t) in red


def test_no_chain_in_icosahedron():
    assert find_chains(gen.icosahedron()) == []


@pytest.mark.parametrize("n, length", [(10, 2), (25, 12), (41, 20)])
def test_open_segments(n, length):
    m = gen.g_family(n)
    chains = find_chains(m)
    assert [(c.closed, c.length, len(c.breaks)) for c in chains] == [(False, length, 2)]
    report = chain_audit(m, chains)
    assert report.passed and report.has_check("chains.open-segment[0]")
    with pytest.raises(BrokenChain):
        find_chains(m, strict=True)


def test_surgery(chain_graph):
    c = find_chains(chain_graph)[0]
    n1, n2 = side_sizes(chain_graph, c)
    assert n1 == n2 == 65
    out = chain_surgery(chain_graph, c)
    assert out.n_vertices == 2 * n1 + 6 * c.m == 208
    assert validate_pcc(out).passed
    assert total_curvature(out) == 2
    again = find_chains(out)
    assert [(x.closed, x.length) for x in again] == [(True, c.length)]
    assert dart_isomorphic(out, chain_graph)


def test_surgery_needs_closed_chain():
    m = gen.g_family(25)
    with pytest.raises(OpenChain):
        chain_surgery(m, find_chains(m)[0])
