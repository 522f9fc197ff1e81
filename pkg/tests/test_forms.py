import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from dgs.exceptions import NegativeFunctionError
from dgs.models import WeightedGraph
from dgs.services.form_service import FormContext, FormService
from dgs.services.spectral_service import SpectralService
from dgs.utils.sampling import make_rng, random_compact_function, random_function
from dgs.utils.tolerance import scaled_tolerance

from conftest import unit_graph


def test_apply_L_examples(ctx_p3):
    assert np.allclose(FormService.apply_L(ctx_p3, [1.0, 2.0, 3.0]), [-1.0, 0.0, 1.0])
    assert np.allclose(FormService.apply_L(ctx_p3, [4.0, 4.0, 4.0]), 0.0)

    k2 = unit_graph(2, [(0, 1)], c=[1.0, 0.0])
    assert np.allclose(FormService.apply_L(FormContext.of(k2), [1.0, 1.0]), [1.0, 0.0])


def test_apply_L_divides_by_the_measure():
    g = WeightedGraph.build(m=[2.0, 4.0], edges=[(0, 1, 2.0)])
    assert np.allclose(FormService.apply_L(FormContext.of(g), [1.0, 0.0]), [1.0, -0.5])


def test_form_Q_examples(ctx_p3):
    assert FormService.form_Q(ctx_p3, [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]) == 1.0
    assert FormService.form_Q(ctx_p3, [2.0, 2.0, 2.0]) == 0.0

    k2 = FormContext.of(unit_graph(2, [(0, 1)], c=[1.0, 0.0]))
    assert FormService.form_Q(k2, [1.0, 0.0], [0.0, 1.0]) == -1.0


def test_inner_product_examples():
    ctx = FormContext.of(unit_graph(2, [(0, 1)]))
    assert FormService.inner_m(ctx, [3.0, 4.0], [3.0, 4.0]) == 25.0
    assert FormService.norm_m(ctx, [3.0, 4.0]) == 5.0
    assert FormService.inner_m(ctx, [1.0, -1.0], [1.0, 1.0]) == 0.0

    weighted = FormContext.of(unit_graph(2, [(0, 1)], m=[2.0, 1.0]))
    assert FormService.inner_m(weighted, [1.0, 1.0], [1.0, 1.0]) == 3.0


def test_gs_transform(k2):
    ctx = FormContext.of(unit_graph(2, [(0, 1)], c=[0.5, 0.0]))
    same = FormService.gs_transform(ctx, [1.0, 1.0])
    assert same.graph.weight(0, 1) == 1.0
    assert np.all(same.graph.c == 0.0)

    scaled = FormService.gs_transform(FormContext.of(k2), [2.0, 3.0])
    assert scaled.graph.weight(0, 1) == 6.0

    with pytest.raises(NegativeFunctionError):
        FormService.gs_transform(FormContext.of(k2), [0.0, 1.0])


def test_form_Qw_examples(ctx_p3, p3):
    ones = np.ones(3)
    u = np.array([1.0, 0.0, 0.0])
    assert FormService.form_Qw(ctx_p3, ones, u) == 1.0
    assert FormService.form_Qw(ctx_p3, ones, u) == FormService.form_Q(ctx_p3, u)
    w = np.array([1.0, 2.0, 5.0])
    assert FormService.form_Qw(ctx_p3, w, 3.5 * w) == pytest.approx(0.0, abs=1e-12)

    # Q_w(u) is the form of the transformed graph evaluated at u / w
    transformed = FormService.gs_transform(ctx_p3, w)
    v = np.array([0.3, -1.2, 2.0])
    assert FormService.form_Qw(ctx_p3, w, v) == pytest.approx(FormService.form_Q(transformed, v / w), rel=1e-12)


def test_gsr_defect_examples(ctx_p3):
    ones = np.ones(3)
    rng = make_rng(3)
    for _ in range(10):
        u = rng.normal(size=3)
        assert FormService.gsr_defect(ctx_p3, ones, 0.0, u) == pytest.approx(0.0, abs=1e-12)
    assert FormService.gsr_defect(ctx_p3, ones, -1.0, [1.0, 0.0, 0.0]) == pytest.approx(1.0)


def test_gsr_defect_vanishes_at_the_ground_state(random_graphs):
    rng = make_rng(11)
    for g in random_graphs[:8]:
        ctx = FormContext.of(g)
        result = SpectralService.ground_energy(g)
        psi = np.asarray(result.ground_state)
        for _ in range(100):
            u = random_function(g, rng)
            q = FormService.form_Q(ctx, u)
            qw = FormService.form_Qw(ctx, psi, u)
            mass = result.E0 * FormService.inner_m(ctx, u, u)
            assert abs(q - qw - mass) <= scaled_tolerance(q, qw, mass, base=1e-6)


def test_gsr_defect_equals_the_weighted_slack(random_graphs):
    rng = make_rng(5)
    for g in random_graphs[:5]:
        ctx = FormContext.of(g)
        w = rng.uniform(0.5, 2.0, size=g.vertex_count)
        for E in (-1.0, 0.0, 0.3):
            u = random_function(g, rng)
            direct = FormService.gsr_defect(ctx, w, E, u)
            closed = FormService.supersolution_weighted_defect(ctx, w, E, u)
            assert direct == pytest.approx(closed, abs=1e-9 * (1.0 + abs(direct)))


def test_pairing_residual_examples(ctx_p3):
    first, second = FormService.pairing_residual(ctx_p3, [1.0, 2.0, 3.0], [1.0, 0.0, 0.0])
    assert first <= 1e-12 and second <= 1e-12
    w = np.array([0.2, -0.7, 1.1])
    _, second = FormService.pairing_residual(ctx_p3, w, w)
    assert second <= 1e-12
    assert FormService.form_Q(ctx_p3, w) >= 0.0


def test_pairing_residual_on_a_random_graph(random_graphs):
    g = max(random_graphs, key=lambda graph: graph.vertex_count)
    ctx = FormContext.of(g)
    rng = make_rng(2)
    for _ in range(20):
        w = random_compact_function(g, rng)
        v = random_function(g, rng)
        first, second = FormService.pairing_residual(ctx, w, v)
        scale = 1.0 + FormService.norm_m(ctx, w) * FormService.norm_m(ctx, v) * 10
        assert first <= 1e-10 * scale
        assert second <= 1e-10 * scale


@hypothesis_settings(deadline=None, max_examples=60)
@given(seed=st.integers(min_value=0, max_value=10_000), scale=st.floats(min_value=0.1, max_value=5.0))
def test_form_is_positive_and_markovian(seed, scale):
    rng = make_rng(seed)
    n = 8
    edges = [(x, y, float(rng.uniform(0.1, 3.0))) for x in range(n) for y in range(x + 1, n) if rng.random() < 0.4]
    g = WeightedGraph.build(m=rng.uniform(0.5, 2.0, n), c=rng.uniform(0.0, 1.0, n), edges=edges)
    ctx = FormContext.of(g)
    u = random_function(g, rng, scale=scale)
    q = FormService.form_Q(ctx, u)
    assert q >= -scaled_tolerance(q)
    assert FormService.contraction_defect(ctx, u) <= scaled_tolerance(q)
    assert FormService.contraction_defect(ctx, np.clip(u, 0.0, 1.0)) == pytest.approx(0.0, abs=1e-15)


def test_contraction_of_a_unit_step(ctx_p3):
    u = np.array([2.0, 0.5, -1.0])
    assert FormService.form_Q(ctx_p3, u) == pytest.approx(1.5 ** 2 + 1.5 ** 2)
    assert FormService.contraction_defect(ctx_p3, u) == pytest.approx(0.5 ** 2 + 0.5 ** 2 - 4.5)


def test_norm_is_sqrt_of_inner(ctx_p3):
    u = [1.0, 2.0, 2.0]
    assert FormService.norm_m(ctx_p3, u) == pytest.approx(math.sqrt(9.0))
