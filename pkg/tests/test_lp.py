import numpy as np
import pytest
from scipy.optimize import linprog

from deskfair.generators import gen_random
from deskfair.lp import (
    LinearProgram,
    LpStatus,
    NotOptimal,
    build_group_relaxation,
    integrality_check,
    snap_binary,
    solve_lp,
    to_mps,
)
from deskfair.metrics import group_objective
from deskfair.oracle import enumerate_optimal

from conftest import random_instance


def test_relaxation_triangle(triangle):
    lp = build_group_relaxation(triangle)
    assert np.allclose(lp.c, [1.0, 1.0, 1.0])  # each paper splits two authors' halves
    assert lp.A.shape == (3, 3)
    assert np.allclose(lp.b, [1.0, 1.0, 1.0])
    assert np.allclose(lp.lo, 0.0) and np.allclose(lp.hi, 1.0)
    # each row caps the two papers of one author
    assert np.allclose(lp.A.sum(axis=1), 2.0)


def test_relaxation_single_author():
    from deskfair.instance import validate_instance

    inst = validate_instance({
        "x": 2,
        "authors": ["a1"],
        "papers": [{"id": "p1", "authors": ["a1"]}, {"id": "p2", "authors": ["a1"]}],
    })
    lp = build_group_relaxation(inst)
    assert np.allclose(lp.c, [0.5, 0.5])
    assert np.allclose(lp.A, [[1.0, 1.0]])
    assert np.allclose(lp.b, [2.0])


def test_relaxation_case_study(cvpr26):
    lp = build_group_relaxation(cvpr26)
    assert np.allclose(lp.c[:25], 1 / 26)
    assert np.isclose(lp.c[25], 1 / 26 + 1.0)


def test_solve_triangle_fractional_vertex(triangle):
    sol = solve_lp(build_group_relaxation(triangle))
    assert sol.status is LpStatus.OPTIMAL
    assert np.isclose(sol.objective_value, 1.5, atol=1e-9)
    assert np.allclose(sol.r.values, 0.5, atol=1e-9)
    assert not sol.is_integral
    assert not integrality_check(sol)


def test_solve_slack_cap_keeps_everything():
    inst = gen_random(3, 5, 2, 0.5, 4).with_cap(5)
    sol = solve_lp(build_group_relaxation(inst))
    assert np.allclose(sol.r.values, 1.0, atol=1e-9)
    assert np.isclose(sol.objective_value, inst.n, atol=1e-9)
    assert integrality_check(sol)


def test_solve_case_study_integral(cvpr26):
    sol = solve_lp(build_group_relaxation(cvpr26))
    assert sol.status is LpStatus.OPTIMAL
    assert np.isclose(sol.objective_value, 1 + 25 / 26, atol=1e-9)
    assert integrality_check(sol)
    values = np.asarray(sol.r.values)
    assert np.isclose(values[25], 1.0, atol=1e-6)  # the shared paper survives
    assert np.isclose(values[:25].sum(), 24.0, atol=1e-6)  # one solo paper drops


def test_snap_binary(cvpr26):
    sol = solve_lp(build_group_relaxation(cvpr26))
    keep = snap_binary(sol)
    assert keep.is_binary
    assert sum(keep.values) == 25


def test_integrality_check_requires_optimal():
    lp = LinearProgram(
        c=np.array([1.0]),
        A=np.array([[1.0]]),
        b=np.array([-1.0]),
        lo=np.array([0.0]),
        hi=np.array([1.0]),
    )
    sol = solve_lp(lp)
    assert sol.status is LpStatus.INFEASIBLE
    with pytest.raises(NotOptimal):
        integrality_check(sol)


def test_fixed_bounds_steer_the_solution(triangle):
    lp = build_group_relaxation(triangle)
    forced = lp.with_bounds([1.0, 0.0, 0.0], [1.0, 1.0, 1.0])
    sol = solve_lp(forced)
    assert sol.status is LpStatus.OPTIMAL
    assert np.allclose(sol.r.values, [1.0, 0.0, 0.0], atol=1e-9)
    assert np.isclose(sol.objective_value, 1.0, atol=1e-9)


def test_fixed_bounds_can_be_infeasible(triangle):
    lp = build_group_relaxation(triangle)
    # keeping p1 and p2 gives a1 two papers under cap 1
    sol = solve_lp(lp.with_bounds([1.0, 1.0, 0.0], [1.0, 1.0, 1.0]))
    assert sol.status is LpStatus.INFEASIBLE


def test_bound_sanity():
    with pytest.raises(ValueError):
        LinearProgram(
            c=np.array([1.0]),
            A=np.array([[1.0]]),
            b=np.array([1.0]),
            lo=np.array([1.0]),
            hi=np.array([0.0]),
        )


def test_determinism(triangle):
    lp = build_group_relaxation(triangle)
    a = solve_lp(lp)
    b = solve_lp(lp)
    assert a.iteration_count == b.iteration_count
    assert a.r.values == b.r.values
    assert a.objective_value == b.objective_value


def test_solution_respects_constraints_on_randoms():
    for seed in range(60):
        inst = random_instance(seed)
        lp = build_group_relaxation(inst)
        sol = solve_lp(lp)
        assert sol.status is LpStatus.OPTIMAL
        r = np.asarray(sol.r.values)
        assert np.all(lp.A @ r <= lp.b + 1e-9)
        assert np.all(r >= -1e-9) and np.all(r <= 1 + 1e-9)


def test_lp_upper_bounds_exact_optimum_on_randoms():
    for seed in range(40):
        inst = random_instance(seed, max_m=9)
        sol = solve_lp(build_group_relaxation(inst))
        best = enumerate_optimal(inst)
        ilp = float(group_objective(inst, best.best_group_witness))
        assert sol.objective_value >= ilp - 1e-9


def test_against_reference_solver_on_randoms():
    for seed in range(40):
        inst = random_instance(seed)
        lp = build_group_relaxation(inst)
        ours = solve_lp(lp)
        ref = linprog(-lp.c, A_ub=lp.A, b_ub=lp.b, bounds=[(0, 1)] * inst.m, method="highs")
        assert ref.status == 0
        assert abs(ours.objective_value - (-ref.fun)) < 1e-7


def test_mps_dump_layout(triangle):
    text = to_mps(build_group_relaxation(triangle))
    for section in ("NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"):
        assert section in text
    assert " N  OBJ" in text and " L  R1" in text
    assert text.count("UP BND") == 3 and text.count("LO BND") == 3
    assert text.endswith("ENDATA\n")
