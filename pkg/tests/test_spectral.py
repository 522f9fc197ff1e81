import math

import numpy as np
import pytest

from dgs.exceptions import (
    DisconnectedGraphError,
    EnergyTooHighError,
    NegativeFunctionError,
    NotASupersolutionError,
    PreconditionError,
    ZeroFunctionError
)
from dgs.models import VertexSubset
from dgs.services.fixture_service import FixtureService
from dgs.services.form_service import FormContext, FormService
from dgs.services.graph_service import GraphService
from dgs.services.spectral_service import SpectralService
from dgs.utils.sampling import make_rng, random_function

from conftest import path_graph, unit_graph


def test_ground_energy_of_a_path(p3):
    result = SpectralService.ground_energy(p3)
    assert result.E0 == pytest.approx(0.0, abs=1e-9)
    assert result.second_energy == pytest.approx(1.0)
    assert result.method == "dense"
    assert np.allclose(result.ground_state, result.ground_state[0])
    assert result.residual <= 1e-9


def test_dense_spectrum_of_small_graphs(p3, star3):
    values, _ = SpectralService.dense_spectrum(p3)
    assert np.allclose(values, [0.0, 1.0, 3.0])

    values, vectors = SpectralService.dense_spectrum(star3)
    assert np.allclose(values, [0.0, 1.0, 1.0, 4.0])
    top = vectors[:, 3] / vectors[0, 3]
    assert np.allclose(top, [1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3])


def test_ground_energy_with_a_potential():
    g = unit_graph(2, [(0, 1)], c=[1.0, 0.0])
    result = SpectralService.ground_energy(g)
    assert result.E0 == pytest.approx((3.0 - math.sqrt(5.0)) / 2.0, abs=1e-9)
    assert all(value > 0 for value in result.ground_state)


def test_lanczos_path_on_a_long_path():
    g = path_graph(40)
    result = SpectralService.ground_energy(g)
    assert result.method == "lanczos"
    assert result.E0 == pytest.approx(0.0, abs=1e-9)
    assert result.second_energy == pytest.approx(2.0 - 2.0 * math.cos(math.pi / 40), rel=1e-6)


def test_iterative_matches_dense_oracle(random_graphs):
    for g in random_graphs:
        result = SpectralService.ground_energy(g)
        values, _ = SpectralService.dense_spectrum(g)
        assert result.E0 == pytest.approx(float(values[0]), abs=1e-9 * (1.0 + abs(float(values[0]))))
        assert min(result.ground_state) > 0
        assert result.residual <= 1e-9


def test_ground_energy_is_a_lower_bound_for_the_rayleigh_quotient(random_graphs):
    rng = make_rng(9)
    for g in random_graphs[:6]:
        ctx = FormContext.of(g)
        e0 = SpectralService.ground_energy(g).E0
        for _ in range(50):
            u = random_function(g, rng)
            assert FormService.form_Q(ctx, u) / FormService.inner_m(ctx, u, u) >= e0 - 1e-9


def test_ground_energy_rejects_bad_input():
    with pytest.raises(DisconnectedGraphError):
        SpectralService.ground_energy(unit_graph(3, [(0, 1)]))
    with pytest.raises(PreconditionError):
        SpectralService.ground_energy(path_graph(3), tol=0.0)


def test_resolvent_solve_on_a_path(p3):
    u = SpectralService.resolvent_solve(p3, -1.0, [1.0, 0.0, 0.0])
    assert np.allclose(u, [5 / 8, 1 / 4, 1 / 8], atol=1e-10)


def test_resolvent_recovers_a_constructed_solution(random_graphs):
    for g in random_graphs[:6]:
        E = -1.0
        ones = np.ones(g.vertex_count)
        phi = FormService.apply_L(FormContext.of(g), ones) - E * ones
        u = SpectralService.resolvent_solve(g, E, phi)
        assert np.allclose(u, ones, atol=1e-8)


def test_resolvent_guards(p3):
    with pytest.raises(EnergyTooHighError):
        SpectralService.resolvent_solve(p3, 0.0, [1.0, 0.0, 0.0])
    with pytest.raises(EnergyTooHighError):
        SpectralService.resolvent_solve(p3, 0.5, [1.0, 0.0, 0.0])
    with pytest.raises(NegativeFunctionError):
        SpectralService.resolvent_solve(p3, -1.0, [1.0, -1.0, 0.0])
    with pytest.raises(ZeroFunctionError):
        SpectralService.resolvent_solve(p3, -1.0, [0.0, 0.0, 0.0])


def test_construct_supersolution_on_an_edge(k2):
    certificate = SpectralService.construct_supersolution(k2, -1.0, 0, VertexSubset.of(k2, [0]))
    assert np.allclose(certificate.w, [1.0, 2.0], atol=1e-10)
    assert certificate.window == [0]
    assert certificate.min_slack == pytest.approx(0.0, abs=1e-9)
    assert certificate.window_residual <= 1e-9


def test_construct_supersolution_on_a_longer_path(p5):
    W = GraphService.ball(p5, 2, 1)
    certificate = SpectralService.construct_supersolution(p5, -0.5, 2, W)
    w = np.asarray(certificate.w)
    assert w[2] == 1.0
    assert np.all(w > 0)
    assert certificate.min_slack >= -1e-9
    assert np.allclose(w, w[::-1], atol=1e-10)
    assert SpectralService.is_supersolution(p5, w, -0.5, W)


def test_construct_supersolution_preconditions(p3):
    with pytest.raises(PreconditionError):
        SpectralService.construct_supersolution(p3, -1.0, 2, VertexSubset.of(p3, [0, 1]))
    with pytest.raises(PreconditionError):
        SpectralService.construct_supersolution(p3, -1.0, 0, VertexSubset.full(p3))
    with pytest.raises(EnergyTooHighError):
        SpectralService.construct_supersolution(p3, 0.5, 0, VertexSubset.of(p3, [0]))


def test_star_leaves_shrink_towards_the_center():
    for leaves in (1, 3, 10):
        g = FixtureService.fixture(f"star:{leaves}")
        certificate = SpectralService.construct_supersolution(g, -1.0, 0, VertexSubset.of(g, [0]))
        assert np.allclose(certificate.w[1:], (leaves + 1) / leaves, atol=1e-10)


def test_solution_predicates(p3):
    ones = np.ones(3)
    assert SpectralService.is_solution(p3, ones, 0.0)
    assert not SpectralService.is_solution(p3, ones, -1.0)
    assert SpectralService.is_supersolution(p3, ones, -1.0)
    assert not SpectralService.is_supersolution(p3, ones, 1.0)

    line = np.array([1.0, 2.0, 3.0])
    assert SpectralService.solution_residual(p3, line, 0.0) == pytest.approx(1.0)
    assert SpectralService.solution_residual(p3, line, 0.0, VertexSubset.of(p3, [1])) == 0.0
    assert SpectralService.is_solution(p3, line, 0.0, VertexSubset.of(p3, [1]))
    assert SpectralService.solution_residual(p3, line, 0.0, VertexSubset.empty(p3)) == 0.0


def test_explicit_tolerance_is_absolute(p3):
    line = np.array([1.0, 2.0, 3.0])
    assert not SpectralService.is_solution(p3, line, 0.0, tol=0.3)
    assert SpectralService.is_solution(p3, line, 0.0, tol=1.0)
    assert not SpectralService.is_solution(p3, line, 0.0)

    assert not SpectralService.is_supersolution(p3, line, 0.0, tol=0.5)
    assert SpectralService.is_supersolution(p3, line, 0.0, tol=1.0)

    # large values widen only the default allowance
    big = 1e8 * np.ones(3)
    assert SpectralService.is_solution(p3, big + np.array([0.0, 0.0, 1e-3]), 0.0)
    assert not SpectralService.is_solution(p3, big + np.array([0.0, 0.0, 1e-3]), 0.0, tol=1e-6)


def test_weyl_residual(p3):
    assert SpectralService.weyl_residual(p3, 0.0, [1.0, 0.0, 0.0]) == pytest.approx(math.sqrt(2.0))
    assert SpectralService.weyl_residual(p3, 0.0, [2.0, 2.0, 2.0]) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ZeroFunctionError):
        SpectralService.weyl_residual(p3, 0.0, [0.0, 0.0, 0.0])


def test_exhaustion_on_the_integer_line_is_stable():
    E = -0.25
    table = SpectralService.exhaustion_diagnostic(FixtureService.family("z"), E, [4, 8, 12], core_radius=3)
    assert [row.radius for row in table.rows] == [4, 8, 12]
    assert table.rows[0].sup_difference is None
    for row in table.rows[1:]:
        assert row.sup_difference <= 1e-8

    k = math.acosh(1.0 - E / 2.0)
    for label, value in table.rows[-1].core_values.items():
        assert value == pytest.approx(math.cosh(k * int(label)), abs=1e-8)


def test_exhaustion_on_stars_reports_shrinking_leaves():
    table = SpectralService.exhaustion_diagnostic(FixtureService.family("star"), -1.0, [2, 4, 8], core_radius=1)
    assert [row.vertex_count for row in table.rows] == [3, 5, 9]
    assert [len(row.core_values) for row in table.rows] == [3, 5, 9]

    leaf = [row.core_values["1"] for row in table.rows]
    assert leaf == pytest.approx([1.5, 1.25, 1.125], abs=1e-10)
    assert all(later < earlier for earlier, later in zip(leaf, leaf[1:]))
    assert all(row.core_values["0"] == 1.0 for row in table.rows)
    assert [row.sup_difference for row in table.rows[1:]] == pytest.approx([0.25, 0.125], abs=1e-10)


def test_exhaustion_core_may_cover_the_truncation():
    table = SpectralService.exhaustion_diagnostic(FixtureService.family("z"), -1.0, [2, 4], core_radius=3)
    assert sorted(table.rows[0].core_values, key=int) == ["-2", "-1", "0", "1", "2"]
    assert len(table.rows[1].core_values) == 7
    assert table.rows[1].sup_difference <= 1e-8


def test_energy_limit_approaches_the_ground_state(p5):
    table = SpectralService.energy_limit_diagnostic(p5, 2, [-0.03, -1.0, -0.3, -0.1])
    assert [row.E for row in table.rows] == [-1.0, -0.3, -0.1, -0.03]
    distances = [row.distance for row in table.rows]
    assert all(later < earlier for earlier, later in zip(distances, distances[1:]))
    assert all(row.min_slack >= -1e-9 for row in table.rows)


def test_energy_bound_from_supersolution(p3):
    report = SpectralService.energy_bound_from_supersolution(p3, [1.0, 1.0, 1.0], -1.0, trials=40, seed=1)
    assert report.holds
    assert report.min_defect >= 0.0
    assert report.E0 == pytest.approx(0.0, abs=1e-9)

    at_ground = SpectralService.energy_bound_from_supersolution(p3, [1.0, 1.0, 1.0], 0.0, trials=40, seed=1)
    assert at_ground.holds
    assert at_ground.min_defect == pytest.approx(0.0, abs=1e-9)

    with pytest.raises(NotASupersolutionError):
        SpectralService.energy_bound_from_supersolution(p3, [1.0, 1.0, 1.0], 1.0)
    with pytest.raises(NegativeFunctionError):
        SpectralService.energy_bound_from_supersolution(p3, [1.0, 0.0, 1.0], -1.0)


def test_positivity_battery_on_a_star(star3):
    report = SpectralService.positivity_battery(star3, 0, [-1.0, -0.5, -0.1])
    assert report.passed
    assert report.perron_positive
    assert all(entry.positive for entry in report.supersolutions)
    assert [round(state.eigenvalue, 9) for state in report.excited_states] == [1.0, 1.0, 4.0]
    assert all(state.sign_change for state in report.excited_states)


def test_gsr_check_passes(random_graphs):
    for g in (random_graphs[0], random_graphs[3]):
        report = SpectralService.gsr_check(g, trials=60, seed=4, below=2)
        assert report.passed
        assert report.max_abs_defect <= report.tolerance
        assert len(report.supersolution_energies) == 2
        assert report.min_supersolution_defect >= -1e-8


def test_lanczos_matches_dense_oracle_on_fifty_graphs(lanczos_graphs):
    assert len(lanczos_graphs) == 50
    for g in lanczos_graphs:
        assert 16 < g.vertex_count <= 64
        result = SpectralService.ground_energy(g)
        values, _ = SpectralService.dense_spectrum(g)
        assert result.method == "lanczos"
        assert result.E0 == pytest.approx(float(values[0]), abs=1e-9 * (1.0 + abs(float(values[0]))))
        assert result.residual <= 1e-9


def test_gsr_check_on_twenty_graphs_and_ten_energies(random_graphs):
    for seed, g in enumerate(random_graphs):
        report = SpectralService.gsr_check(g, trials=100, seed=seed, below=10, spacing=0.05)
        assert report.passed
        assert report.trials == 100
        assert report.max_abs_defect <= report.tolerance
        assert len(report.supersolution_energies) == 10
        assert max(report.supersolution_energies) < report.E0


def test_weyl_residual_bounds_the_distance_to_the_spectrum(random_graphs):
    rng = make_rng(13)
    for g in random_graphs:
        values, _ = SpectralService.dense_spectrum(g)
        for _ in range(10):
            E = float(rng.uniform(values[0] - 1.0, values[-1] + 1.0))
            u = random_function(g, rng)
            distance = float(np.min(np.abs(values - E)))
            assert SpectralService.weyl_residual(g, E, u) >= distance - 1e-9 * (1.0 + abs(E))
