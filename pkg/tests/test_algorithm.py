import csv
import io

import pytest
from hypothesis import given, settings

from pcenter.algorithm import step1, two_step_solve
from pcenter.bounds import Bounds, clamp_distances, initial_bounds, lb_star
from pcenter.errors import AlgorithmError, InvalidBoundsError
from pcenter.formulations import FORMULATIONS, build, extract_radius
from pcenter.instance import Instance, graph_to_instance, parse_orlib
from pcenter.solver import brute_force_radius, solve_mip

from conftest import instances, synthetic_pmed_text


def check_trace(trace):
    its = trace.iterations
    assert [r.iteration for r in its] == list(range(1, len(its) + 1))
    assert all(a.lb <= b.lb for a, b in zip(its, its[1:]))
    assert all(a.ub >= b.ub for a, b in zip(its, its[1:]))
    # the loop stops exactly when the LP value no longer lifts lb
    assert its[-1].lifted_lb <= its[-1].lb
    assert all(r.lifted_lb > r.lb for r in its[:-1])
    if trace.formulation != "cp2":
        assert its[-1].lp_value <= its[-1].lb + 1e-6 * max(1, its[-1].lb)


def test_constant_instance(solver):
    inst = Instance([[7, 7], [7, 7]], 1)
    _, b, trace = step1("cp1", inst, solver=solver)
    assert len(trace.iterations) == 1
    assert b.lb == 7


@pytest.mark.parametrize("name", sorted(FORMULATIONS))
def test_t3(t3, solver, name):
    _, b, trace = step1(name, t3, initial_bounds(t3), solver)
    assert b.lb == 4
    check_trace(trace)
    radius, trace = two_step_solve(name, t3, solver=solver)
    assert radius == 4
    assert trace.t1 <= trace.t2


@given(instances(max_n=8, max_m=8, high=25))
@settings(max_examples=30, deadline=None)
def test_two_step_matches_oracle(inst):
    radius, _ = brute_force_radius(inst)
    for name in ("p1", "p2", "cp1", "cp2"):
        got, trace = two_step_solve(name, inst)
        assert got == radius
        check_trace(trace)
        assert trace.final_bounds.lb <= radius <= trace.final_bounds.ub
    assert two_step_solve("cp1", inst, use_reduction=False)[0] == radius


def test_step1_output_keeps_the_optimum():
    inst = Instance([[0, 9, 4, 6], [9, 0, 5, 3], [4, 5, 0, 8], [6, 3, 8, 0], [2, 7, 7, 1]], 2)
    radius, _ = brute_force_radius(inst)
    reduced, b, _ = step1("cp1", inst)
    assert brute_force_radius(reduced)[0] == radius
    assert b.lb <= radius <= b.ub


def test_invalid_upper_bound(t3):
    with pytest.raises((AlgorithmError, InvalidBoundsError)):
        two_step_solve("cp1", t3, Bounds(0, 2))


def test_iteration_cap(t3):
    with pytest.raises(AlgorithmError):
        step1("p1", Instance([[0, 1, 2, 3], [3, 0, 1, 2], [2, 3, 0, 1], [1, 2, 3, 0]], 1), max_iterations=1, use_reduction=False)


def test_trace_csv(t3, tmp_path):
    _, trace = two_step_solve("cp1", t3)
    text = trace.to_csv(tmp_path / "trace.csv")
    assert (tmp_path / "trace.csv").read_bytes() == text.encode()
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["iteration", "lb", "ub", "n_clients", "n_facilities", "lp_value"]
    assert rows[0]["lb"] == "0" and rows[0]["ub"] == "4"
    assert "\r" not in text


def test_synthetic_pmed_graph(solver):
    inst = graph_to_instance(parse_orlib(synthetic_pmed_text(n=100, extra_edges=100, p=5, seed=1)))
    b = initial_bounds(inst)
    # reference: plain CP1 solve from the first LP-lifted lb, no reduction involved
    lifted = lb_star("cp1", inst, b, solver)
    m = build("cp1", clamp_distances(inst, Bounds(lifted, b.ub)))
    direct = extract_radius(m, solve_mip(m, solver).assignment)
    for name in ("cp1", "cp2"):
        radius, trace = two_step_solve(name, inst, b, solver)
        assert radius == direct
        check_trace(trace)
        assert trace.iterations[-1].n_clients <= 100
