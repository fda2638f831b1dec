"""LP construction, duality, odd-set rows, TUM sweep, vertex structure."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

import helpers
from matchcore.caps import CapExceededError
from matchcore.formulations import (
    ConstraintMatrix,
    build_dual,
    build_odd_set_primal,
    build_primal,
    check_half_integrality,
    constraint_matrix,
    incidence_matrix,
    is_totally_unimodular,
    primal_var,
    vertex_dual_var,
)
from matchcore.games import GameKind, make_instance
from matchcore.lp import LpSolution, Status, solve
from matchcore.oracle import max_weight

F = Fraction


def bipartite_shaped_general(rng, max_side=3, max_edges=6):
    g = helpers.random_bipartite(rng, GameKind.ASSIGNMENT, max_side, max_edges)
    return make_instance(GameKind.GENERAL, g.side_u + g.side_v, [],
                         [(e.u, e.v, e.weight) for e in g.edges])


def test_single_edge_assignment_primal():
    sol = solve(build_primal(helpers.single_edge()))
    assert sol.status is Status.OPTIMAL and sol.value == 5


def test_skewed_capacity_primal_value():
    assert solve(build_primal(helpers.two_team_b_matching())).value == 4


def test_unit_triangle_fractional_value():
    # The half-integral point (1/2, 1/2, 1/2) is feasible with value 3/2,
    # and summing the three degree rows bounds any solution by 3/2.
    g = helpers.unit_triangle()
    lp = build_primal(g)
    half = (F(1, 2), F(1, 2), F(1, 2))
    assert lp.is_feasible(half) and lp.evaluate(half) == F(3, 2)
    assert solve(lp).value == F(3, 2)


def test_skewed_capacity_dual_solution():
    g = helpers.two_team_b_matching()
    sol = solve(build_dual(g))
    assert sol.value == 4
    assert sol[vertex_dual_var("u")] == 1
    assert sol[vertex_dual_var("v1")] == 0
    assert sol[vertex_dual_var("v2")] == 2


def test_mixed_bounds_dual_value():
    sol = solve(build_dual(helpers.hk_mixed_bounds()))
    assert sol.status is Status.OPTIMAL and sol.value == 10


def test_single_edge_dual_is_a_deterministic_vertex():
    lp = build_dual(helpers.single_edge())
    sol = solve(lp)
    assert sol.value == 5
    pair = (sol[vertex_dual_var("a")], sol[vertex_dual_var("b")])
    assert pair in ((F(5), F(0)), (F(0), F(5)))
    assert solve(lp).values == sol.values


def test_strong_duality_across_kinds():
    rng = random.Random(11)
    for _ in range(120):
        kind = rng.choice(helpers.ALL_BIPARTITE + (GameKind.GENERAL,))
        g = (helpers.random_general(rng, max_vertices=5, max_edges=7)
             if kind is GameKind.GENERAL
             else helpers.random_bipartite(rng, kind, max_side=3, max_edges=6))
        p = solve(build_primal(g))
        d = solve(build_dual(g))
        assert p.status is Status.OPTIMAL and d.status is Status.OPTIMAL
        assert p.value == d.value
        if kind is not GameKind.GENERAL:
            assert p.value == max_weight(g)[0]
        else:
            assert p.value >= max_weight(g)[0]


def test_odd_set_program_on_unit_triangle():
    g = helpers.unit_triangle()
    assert solve(build_odd_set_primal(g)).value == 1


def test_odd_set_program_on_pendant_triangle():
    g = helpers.triangle_pendant()
    assert solve(build_odd_set_primal(g)).value == max_weight(g)[0] == 2


def test_odd_set_program_matches_integral_worth():
    rng = random.Random(23)
    for _ in range(40):
        g = helpers.random_general(rng, max_vertices=6, max_edges=8)
        assert solve(build_odd_set_primal(g)).value == max_weight(g)[0]


def test_odd_set_program_no_effect_on_bipartite_shape():
    rng = random.Random(29)
    for _ in range(25):
        g = bipartite_shaped_general(rng)
        assert solve(build_odd_set_primal(g)).value == solve(build_primal(g)).value


def test_odd_set_cap_and_kind_guard():
    with pytest.raises(ValueError):
        build_odd_set_primal(helpers.two_team_b_matching())
    big = helpers.seven_ring()
    from matchcore.caps import EnumerationCaps
    with pytest.raises(CapExceededError):
        build_odd_set_primal(big, EnumerationCaps(max_vertices=5))


# ---------------------------------------------------------------------------
# Total unimodularity.
# ---------------------------------------------------------------------------

def naive_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = F(0)
    for j in range(len(rows)):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * naive_det(minor)
    return total


def naive_tum(matrix):
    m, n = matrix.shape
    entries = [list(r) for r in matrix.entries]
    for k in range(1, min(m, n) + 1):
        for rsel in combinations(range(m), k):
            for csel in combinations(range(n), k):
                d = naive_det([[entries[i][j] for j in csel] for i in rsel])
                if d not in (-1, 0, 1):
                    return False
    return True


def test_identity_matrix_is_tum():
    eye = ConstraintMatrix(
        tuple(tuple(F(int(i == j)) for j in range(4)) for i in range(4)),
        ("r0", "r1", "r2", "r3"), ("c0", "c1", "c2", "c3"))
    assert is_totally_unimodular(eye)


def test_bipartite_incidence_is_tum_and_triangle_is_not():
    rng = random.Random(31)
    for _ in range(20):
        g = helpers.random_bipartite(rng, GameKind.ASSIGNMENT, max_side=3,
                                     max_edges=6)
        assert is_totally_unimodular(incidence_matrix(g))
    assert not is_totally_unimodular(incidence_matrix(helpers.unit_triangle()))


def test_tum_agrees_with_naive_sweep():
    rng = random.Random(37)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        entries = tuple(tuple(F(rng.choice((0, 1)))
                              for _ in range(n)) for _ in range(m))
        mat = ConstraintMatrix(entries,
                               tuple(f"r{i}" for i in range(m)),
                               tuple(f"c{j}" for j in range(n)))
        assert is_totally_unimodular(mat) == naive_tum(mat)


def test_tum_cap():
    big = ConstraintMatrix(
        tuple(tuple(F(1) for _ in range(9)) for _ in range(9)),
        tuple(f"r{i}" for i in range(9)), tuple(f"c{j}" for j in range(9)))
    with pytest.raises(CapExceededError):
        is_totally_unimodular(big)


# ---------------------------------------------------------------------------
# Half-integral vertex structure.
# ---------------------------------------------------------------------------

def test_unit_triangle_half_integral_vertex():
    g = helpers.unit_triangle()
    sol = solve(build_primal(g))
    report = check_half_integrality(sol, g)
    assert report.ok
    assert report.matched_edges == ()
    assert len(report.half_cycles) == 1
    assert len(report.half_cycles[0]) == 3


def test_bipartite_shape_vertices_are_integral():
    rng = random.Random(41)
    for _ in range(25):
        g = bipartite_shaped_general(rng)
        sol = solve(build_primal(g))
        report = check_half_integrality(sol, g)
        assert report.ok
        assert not report.half_cycles


def test_seven_ring_constructed_half_cycle_vertex():
    g = helpers.seven_ring()
    lp = build_primal(g)
    cycle = ["v1", "v2", "v7", "v3", "v4", "v5", "v6"]
    on_cycle = {frozenset(p) for p in zip(cycle, cycle[1:] + cycle[:1])}
    values = {primal_var(e.key): (F(1, 2) if frozenset(e.key) in on_cycle else F(0))
              for e in g.edges}
    ordered = tuple(values[primal_var(e.key)] for e in g.edges)
    assert lp.is_feasible(ordered)
    assert lp.evaluate(ordered) == 4
    sol = LpSolution(Status.OPTIMAL, lp.variables, F(4), ordered)
    report = check_half_integrality(sol, g)
    assert report.ok
    assert report.matched_edges == ()
    assert [len(c) for c in report.half_cycles] == [7]


def test_half_integrality_rejects_non_vertex():
    g = helpers.unit_triangle()
    lp = build_primal(g)
    mid = (F(1, 4), F(1, 4), F(1, 4))
    assert lp.is_feasible(mid)
    sol = LpSolution(Status.OPTIMAL, lp.variables, lp.evaluate(mid), mid)
    with pytest.raises(ValueError):
        check_half_integrality(sol, g)


def test_constraint_matrix_labels():
    g = helpers.two_team_b_matching()
    mat = constraint_matrix(build_primal(g))
    assert mat.row_labels == ("cap[u]", "cap[v1]", "cap[v2]")
    assert mat.col_labels == ("x[u,v1]", "x[u,v2]")
    assert all(v in (0, 1) for row in mat.entries for v in row)
