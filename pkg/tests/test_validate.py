from __future__ import annotations

from curvlab import generators as gen
from curvlab.validate import validate_pcc


def test_corpus_is_pcc(maps):
    for name, m in maps.items():
        report = validate_pcc(m)
        assert report.passed, (name, [c.check_id for c in report.failures()])


def test_prism_rejected():
    report = validate_pcc(gen.prism(5))
    assert report.verdict == "fail"
    assert [c.check_id for c in report.failures()] == ["pcc.not-prism-or-antiprism"]


def test_antiprism_rejected():
    report = validate_pcc(gen.antiprism(9))
    assert not report.check("pcc.not-prism-or-antiprism").passed


def test_dodecahedron_passes():
    report = validate_pcc(gen.dodecahedron())
    assert report.passed
    assert report.has_check("structure.large-faces-apart")


def test_structural_checks_skipped_for_non_pcc():
    report = validate_pcc(gen.prism(6))
    assert not report.has_check("structure.repeated-vertex-faces")


def test_report_json_round_trip(chain_graph):
    import json

    report = validate_pcc(chain_graph)
    data = json.loads(report.dumps())
    assert data["verdict"] == "pass"
    assert data["sections"]["curvature"][0]["values"]["total"] == {"exact": "2/1", "decimal": "2"}


def test_max_face_over_corpus(maps):
    assert max(m.max_face_size() for m in maps.values()) == 41
