import numpy as np
import pytest

from dgs.exceptions import (
    DisconnectedGraphError,
    EnergyTooHighError,
    NegativeFunctionError,
    NotAdjacentError,
    NotASupersolutionError,
    PreconditionError,
    SizeGuardError
)
from dgs.models import VertexSubset
from dgs.schemas import HarnackMethod, MinimumPrincipleOutcome
from dgs.services.graph_service import GraphService
from dgs.services.harnack_service import HarnackService
from dgs.services.spectral_service import SpectralService

from conftest import path_graph


def test_edge_factor_examples(p3):
    assert HarnackService.edge_factor(p3, 0.0, 0, 1) == 1.0
    assert HarnackService.edge_factor(p3, 0.0, 1, 0) == 2.0
    assert HarnackService.edge_factor(p3, -1.0, 1, 2) == 3.0
    with pytest.raises(EnergyTooHighError):
        HarnackService.edge_factor(p3, 1.0, 0, 1)
    with pytest.raises(NotAdjacentError):
        HarnackService.edge_factor(p3, 0.0, 0, 2)


def test_harnack_constant_on_a_path(p3):
    report = HarnackService.harnack_constant(p3, VertexSubset.full(p3), 0.0)
    assert report.constant == pytest.approx(2.0)
    assert report.worst_pair == (0, 2)
    assert report.witness_path == [0, 1, 2]
    assert report.method is HarnackMethod.DIJKSTRA

    assert HarnackService.harnack_constant(p3, VertexSubset.full(p3), -1.0).constant == pytest.approx(6.0)


def test_harnack_constant_decreases_with_energy(p5):
    W = VertexSubset.full(p5)
    constants = [HarnackService.harnack_constant(p5, W, E).constant for E in (-1.0, -0.5, 0.0, 0.5)]
    assert all(later < earlier for earlier, later in zip(constants, constants[1:]))


def test_sub_unit_factors_need_enumeration(p3):
    W = VertexSubset.full(p3)
    report = HarnackService.harnack_constant(p3, W, 0.5)
    assert report.method is HarnackMethod.EXACT_ENUMERATION
    assert report.constant == pytest.approx(1.5)
    assert report.worst_pair == (1, 0)
    assert report.witness_path == [1, 0]
    with pytest.raises(PreconditionError):
        HarnackService.harnack_constant(p3, W, 0.5, method="dijkstra")
    with pytest.raises(PreconditionError):
        HarnackService.harnack_constant(p3, W, 0.0, method="bellman-ford")


def test_dijkstra_matches_enumeration(random_graphs):
    small = [g for g in random_graphs if g.vertex_count <= 13]
    assert small
    for g in small:
        W = VertexSubset.full(g)
        for E in (-0.5, 0.0):
            fast = HarnackService.harnack_constant(g, W, E)
            exact = HarnackService.harnack_constant(g, W, E, method="enumerate")
            assert fast.method is HarnackMethod.DIJKSTRA
            assert fast.constant == pytest.approx(exact.constant, rel=1e-12)


def test_enumeration_size_guard():
    g = path_graph(20)
    with pytest.raises(SizeGuardError):
        HarnackService.harnack_constant(g, VertexSubset.full(g), 0.5)
    assert HarnackService.harnack_constant(g, VertexSubset.full(g), 0.0).constant > 1.0


def test_window_checks(p3):
    single = HarnackService.harnack_constant(p3, VertexSubset.of(p3, [1]), 0.0)
    assert single.constant == 1.0
    assert single.witness_path == [1]
    with pytest.raises(DisconnectedGraphError):
        HarnackService.harnack_constant(p3, VertexSubset.of(p3, [0, 2]), 0.0)
    with pytest.raises(PreconditionError):
        HarnackService.harnack_constant(p3, VertexSubset.empty(p3), 0.0)


def test_harnack_inequality_holds_for_constructed_supersolutions(p5):
    W = GraphService.ball(p5, 2, 1)
    for E in (-1.0, -0.5, -0.1):
        w = SpectralService.construct_supersolution(p5, E, 2, W).w
        check = HarnackService.harnack_verify(p5, W, E, w)
        assert check.holds
        assert check.ratio <= check.constant


def test_harnack_verify_gates(p3):
    W = VertexSubset.full(p3)
    check = HarnackService.harnack_verify(p3, W, -1.0, [1.0, 1.0, 1.0])
    assert check.holds and check.ratio == 1.0
    with pytest.raises(NegativeFunctionError):
        HarnackService.harnack_verify(p3, W, -1.0, [1.0, -1.0, 1.0])
    with pytest.raises(NotASupersolutionError):
        HarnackService.harnack_verify(p3, W, -1.0, [1.0, 3.0, 1.0])


def test_minimum_principle(p3):
    W = VertexSubset.full(p3)
    assert HarnackService.minimum_principle_check(p3, W, [1.0, 1.0, 1.0], -1.0) is MinimumPrincipleOutcome.ALL_POSITIVE
    assert HarnackService.minimum_principle_check(p3, W, [0.0, 0.0, 0.0], -1.0) is MinimumPrincipleOutcome.ALL_ZERO
    with pytest.raises(NotASupersolutionError):
        HarnackService.minimum_principle_check(p3, W, [0.0, 1.0, 0.0], 0.0)
    with pytest.raises(DisconnectedGraphError):
        HarnackService.minimum_principle_check(p3, VertexSubset.of(p3, [0, 2]), [1.0, 1.0, 1.0], 0.0)


def test_vertex_bound_on_a_path(p3):
    bound = HarnackService.vertex_bound(p3, 0, 2, (-1.0, 0.0))
    assert bound.constant == pytest.approx(6.0)
    assert bound.path == [0, 1, 2]
    assert bound.energy == -1.0


def test_vertex_bound_brackets_supersolutions(p5):
    bound = HarnackService.vertex_bound(p5, 0, 4, (-0.5, -0.1))
    for E in (-0.5, -0.3, -0.1):
        phi = np.zeros(5)
        phi[4] = 1.0
        u = SpectralService.resolvent_solve(p5, E, phi)
        w = u / u[0]
        assert 1.0 / bound.constant <= w[4] <= bound.constant


def test_vertex_bound_interval_checks(p3):
    with pytest.raises(PreconditionError):
        HarnackService.vertex_bound(p3, 0, 2, (0.0, -1.0))
    with pytest.raises(PreconditionError):
        HarnackService.vertex_bound(p3, 0, 2, (float("-inf"), 0.0))
    with pytest.raises(EnergyTooHighError):
        HarnackService.vertex_bound(p3, 0, 2, (-1.0, 0.5))


def _interior(g, x0):
    return GraphService.ball(g, x0, GraphService.eccentricity(g, x0) - 1)


def test_harnack_constant_is_monotone_on_an_energy_grid(random_graphs):
    for g in random_graphs[:8]:
        W = _interior(g, 0)
        constants = [HarnackService.harnack_constant(g, W, E).constant for E in np.linspace(-1.0, 0.0, 10)]
        assert all(later <= earlier * (1.0 + 1e-12) for earlier, later in zip(constants, constants[1:]))
        assert constants[-1] >= 1.0


def test_harnack_inequality_on_random_graphs(random_graphs):
    for g in random_graphs:
        W = _interior(g, 0)
        e0 = SpectralService.ground_energy(g).E0
        for E in (-0.5, -0.1):
            w = SpectralService.construct_supersolution(g, E, 0, W, e0=e0).w
            check = HarnackService.harnack_verify(g, W, E, w)
            assert check.holds
            assert check.min_value > 0.0


def test_minimum_principle_across_many_certificates(random_graphs):
    outcomes = []
    for g in random_graphs:
        n = g.vertex_count
        e0 = SpectralService.ground_energy(g).E0
        for k in range(25):
            x0 = k % n
            W = GraphService.ball(g, x0, 1)
            if W.is_full(g):
                W = GraphService.ball(g, x0, 0)
            E = -0.1 - 0.1 * (k % 5)
            certificate = SpectralService.construct_supersolution(g, E, x0, W, e0=e0)
            assert certificate.window_residual <= 1e-6 * max(certificate.w)
            outcomes.append(HarnackService.minimum_principle_check(g, W, certificate.w, E))
    assert len(outcomes) >= 500
    assert all(outcome is MinimumPrincipleOutcome.ALL_POSITIVE for outcome in outcomes)
