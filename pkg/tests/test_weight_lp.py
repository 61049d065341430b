from __future__ import annotations

import time
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab.curvature import excess_of_vector as ex
from curvlab.discharging import BOUND_5, BOUND_11, BOUND_13, BOUND_4041, global_audit
from curvlab.errors import Infeasible, ParseError, Unbounded, UnknownFaceVector, UnknownWeight
from curvlab.weight_lp import (
    DEFAULT_WEIGHTS,
    certify_rows,
    flipped,
    load_rows,
    load_scenarios,
    parse_rows,
    parse_scenarios,
    parse_weights,
    simplex,
    solve,
    verify_certificate,
    verify_paper_weights,
)
from oracles import max_min_margin_float


@pytest.fixture(scope="module")
def scenarios():
    return load_scenarios()


# ----------------------------------------------------------------- parsing
def test_five_gon_case_a4(scenarios):
    c = scenarios.find("face5 A=4")
    assert c.expr.terms == {"s4519": 4 * ex((4, 5, 19))}
    assert c.expr.const == ex((3, 4, 4, 5))
    assert c.lhs(DEFAULT_WEIGHTS) == 3 * ex((4, 5, 19)) + ex((3, 4, 4, 5))
    assert c.quoted == F(2, 1000)


def test_thirteen_gon_case_ab12(scenarios):
    c = scenarios.find("face13 A+B=12")
    e = ex((3, 11, 13))
    assert c.expr.const == 12 * e + ex((4, 4, 13))
    assert c.expr.terms == {"alpha": -4 * e, "beta": -8 * e}


def test_empty_scenarios():
    s = parse_scenarios("# nothing\n\n")
    assert len(s) == 0
    sol = solve(s)
    assert sol.feasible and sol.margin is None


def test_expression_syntax():
    s = parse_scenarios(
        "t let k = 2*weight(w) - 1/2\n"
        "t one: -k + 3 - -1 > 0\n"
        "t two: 0.5*k*2 + excess(3,3,3) > -1/3 @ 0.1\n",
        weights={"w"},
    )
    one, two = s.constraints
    assert one.expr.const == F(9, 2) and one.expr.terms == {"w": -2}
    assert two.expr.const == F(-1, 2) + ex((3, 3, 3)) and two.expr.terms == {"w": 2}
    assert two.bound == F(-1, 3) and two.quoted == F(1, 10)


@pytest.mark.parametrize(
    "text, err, needle",
    [
        ("face5 x: 2*weight(zz) > 0\n", UnknownWeight, "zz"),
        ("face5 x: excess(3,7,42) > 0\n", UnknownFaceVector, "(3, 7, 42)"),
        ("face5 x: excess(2,7,9) > 0\n", UnknownFaceVector, "(2, 7, 9)"),
        ("face5 x: weight(alpha)*weight(beta) > 0\n", ParseError, "not linear"),
        ("face5 x: c9 > 0\n", ParseError, "undefined name"),
        ("face5 x: 1/0 > 0\n", ParseError, "bad number"),
        ("face5 x 1 > 0\n", ParseError, "expected"),
        ("face5 x: 1 > 0\nface5 x: 2 > 0\n", ParseError, "repeats"),
    ],
)
def test_scenario_errors(text, err, needle):
    with pytest.raises(err, match=None) as info:
        parse_scenarios(text)
    assert needle in str(info.value)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_scenarios("face5 ok: 1 > 0\nface5 x: 2 + c9 > 0\n")
    assert (info.value.line, info.value.column) == (2, 14)


def test_let_is_scoped_to_its_target():
    with pytest.raises(ParseError):
        parse_scenarios("face5 let c = 1\nface7 x: c > 0\n")


def test_weights_file():
    w = parse_weights("# shares\nalpha = 1/5\nbeta=0.25\n")
    assert w == {"alpha": F(1, 5), "beta": F(1, 4)}
    with pytest.raises(ParseError):
        parse_weights("alpha = 3/2\n")
    with pytest.raises(ParseError):
        parse_weights("alpha 1/2\n")


# ----------------------------------------------------------------- simplex
def test_simplex_textbook():
    res = simplex([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3])
    assert res.x == [3, 1] and res.value == 11
    assert verify_certificate([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3], res.x, res.y) == []


def test_bland_terminates_on_cycling_example():
    # the classic degenerate instance that cycles under the largest-coefficient rule
    c = [F(3, 4), -20, F(1, 2), -6]
    A = [[F(1, 4), -8, -1, 9], [F(1, 2), -12, F(-1, 2), 3], [0, 0, 1, 0]]
    b = [0, 0, 1]
    res = simplex(c, A, b)
    assert res.value == F(5, 4)
    assert verify_certificate(c, A, b, res.x, res.y) == []


def test_simplex_phase_one():
    # x + y >= 2 written as -x - y <= -2, minimise x + 2y
    res = simplex([-1, -2], [[-1, -1], [1, 0]], [-2, 5])
    assert res.value == -2 and res.x == [2, 0]


def test_simplex_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        simplex([1], [[1]], [-1])
    with pytest.raises(Unbounded):
        simplex([1], [[-1]], [1])


def test_certificate_rejects_a_bad_dual():
    assert verify_certificate([3, 2], [[1, 1]], [4], [4, 0], [F(1)]) != []


@given(
    st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
        min_size=1,
        max_size=6,
    ),
    st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_random_boxed_lps_certify(rows, cost):
    A = [list(map(F, r)) for r in rows] + [[F(int(i == j)) for j in range(3)] for i in range(3)]
    b = [F(abs(sum(r)) + 1) for r in rows] + [F(1)] * 3
    res = simplex(cost, A, b)
    assert verify_certificate(list(map(F, cost)), A, b, res.x, res.y) == []


# ---------------------------------------------------------- default shares
def test_default_shares_match_the_pairing():
    from curvlab.classification import class_of_vector

    assert dict(class_of_vector((4, 5, 19)).shares)[5] == DEFAULT_WEIGHTS["s4519"]
    assert dict(class_of_vector((3, 11, 13)).shares)[11] == DEFAULT_WEIGHTS["alpha"]


def test_default_weights_feasible(scenarios):
    report = verify_paper_weights(scenarios)
    assert report.passed, [c.check_id for c in report.failures()]
    low = report.info["min lhs by target"]
    assert low["face5"] > BOUND_5
    assert low["face4041"] > BOUND_4041
    assert low["face11"] > BOUND_11
    assert low["face13"] > BOUND_13
    assert low["face13"] < 10 * BOUND_13


def test_final_margins_agree_with_the_eleven_thirteen_graph(scenarios, eleven_graph):
    # the tightest 11-gon and 13-gon cases are realised by the shipped graph
    report = global_audit(eleven_graph)
    assert report.check("bounds.11").values["minimum"] == scenarios.find("face11 C>=6").lhs(DEFAULT_WEIGHTS)
    assert report.check("bounds.13").values["minimum"] == scenarios.find("face13 A+B=12").lhs(DEFAULT_WEIGHTS)
    assert scenarios.find("face13 A+B=12").lhs(DEFAULT_WEIGHTS) == F(1, 8151)


def test_optimum_matches_float_oracle(scenarios):
    sol = solve(scenarios)
    assert sol.certified and sol.feasible
    names = scenarios.weight_names
    rows = [(c.expr.const, c.expr.terms) for c in scenarios.constraints]
    best, _ = max_min_margin_float(rows, [c.bound for c in scenarios.constraints], names)
    assert abs(float(sol.margin) - best) < 1e-12
    assert all(c.margin(sol.weights) >= sol.margin for c in scenarios.constraints)
    assert sol.binding and set(sol.multipliers) <= {c.name for c in scenarios.constraints}
    assert sum(sol.multipliers.values()) == 1


def test_single_constraint_optimum():
    s = parse_scenarios("t only: weight(w) > 1/2\n", weights={"w"})
    sol = solve(s)
    assert sol.weights == {"w": 1} and sol.margin == F(1, 2)


def test_alpha_half_breaks_the_eleven_gon_case(scenarios):
    changed = {"alpha": F(1, 2)}
    assert [c.name for c in flipped(scenarios, changed)] == ["face11 A=4 C=4 D=3"]
    t0 = time.perf_counter()
    with pytest.raises(Infeasible) as info:
        solve(scenarios, fixed=changed)
    assert time.perf_counter() - t0 < 1
    assert info.value.violated == ["face11 A=4 C=4 D=3"]
    # a larger alpha share only relieves the 13-gon
    c = scenarios.find("face13 A+B=12")
    assert c.margin({**DEFAULT_WEIGHTS, **changed}) > c.margin(DEFAULT_WEIGHTS)


def test_irreducible_subset_with_two_members():
    s = parse_scenarios("t a: weight(w) > 3/4\nt b: 1 - weight(w) > 1/2\nt c: 1 > 0\n", weights={"w"})
    with pytest.raises(Infeasible) as info:
        solve(s)
    assert info.value.violated == ["t a", "t b"]


# -------------------------------------------------------------- row bounds
def test_all_rows_certified():
    rows = load_rows()
    report = certify_rows(rows)
    assert report.passed, [c.check_id for c in report.failures()]
    assert len(rows) == 95


def test_quoted_rows():
    rows = {r.check_id: r for r in load_rows()}
    alpha = rows["rows.face11.(3,11,13) *1/7"].minimum()
    assert alpha[0] == ex((3, 11, 13)) / 7 and alpha[0] > F(-121, 100000)
    split = rows["rows.face5.(4,5,19) *3/4"].minimum()
    assert split[0] > F(-521, 100000)
    edge = rows["rows.face4041.(3,7,41) *1"].minimum()
    assert edge[0] == ex((3, 7, 41)) and edge[0] > F(-9, 1000)


def test_row_instances():
    (row,) = parse_rows("face5 (4,5,a) a=8..13 a!=11 * 1 > 0.017\n")
    assert row.instances() == [(4, 5, a) for a in (8, 9, 10, 12, 13)]
    (ts,) = parse_rows("sink TS * 1/3 > 0.024\n")
    assert (3, 4, 4, 4) in ts.instances() and (4, 4, 4, 4) not in ts.instances()
    (big,) = parse_rows("faceN (3,3,N) * 1 > 0.182\n")
    assert big.minimum()[1] == (3, 3, 39)


def test_failing_rows_are_reported():
    report = certify_rows(parse_rows("face7 (4,4,7) * 1 > 0.134\nface5 (3,7,a) a=42..45 * 1 > 0\n"))
    assert [c.passed for c in report.sections["bounds"]] == [False, False]


@pytest.mark.parametrize(
    "text",
    ["face99 (3,4,5) * 1 > 0\n", "face5 (3,4,a) * 1 > 0\n", "face5 (3,4,5) a=x * 1 > 0\n", "face5 (3,4,5) 1 > 0\n"],
)
def test_row_parse_errors(text):
    with pytest.raises(ParseError):
        parse_rows(text)
