import math
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np
import pytest
from click.testing import CliRunner

from dgs.models import WeightedGraph
from dgs.services.fixture_service import FixtureService
from dgs.services.form_service import FormContext


def unit_graph(n: int, pairs: Iterable[Tuple[int, int]], m: Optional[Sequence[float]] = None,
               c: Optional[Sequence[float]] = None) -> WeightedGraph:
    return WeightedGraph.build(
        m=np.ones(n) if m is None else m,
        c=c,
        edges=[(x, y, 1.0) for x, y in pairs]
    )


def path_graph(n: int) -> WeightedGraph:
    return unit_graph(n, [(i, i + 1) for i in range(n - 1)])


def z_segment(radius: int) -> Tuple[WeightedGraph, int]:
    return FixtureService.build_fixture(FixtureService.parse_fixture(f"z:{radius}"))


@pytest.fixture
def k2() -> WeightedGraph:
    return unit_graph(2, [(0, 1)])


@pytest.fixture
def p3() -> WeightedGraph:
    return path_graph(3)


@pytest.fixture
def p5() -> WeightedGraph:
    return path_graph(5)


@pytest.fixture
def star3() -> WeightedGraph:
    return FixtureService.fixture("star:3")


@pytest.fixture
def ctx_p3(p3) -> FormContext:
    return FormContext.of(p3)


@pytest.fixture
def z60() -> Tuple[WeightedGraph, int]:
    return z_segment(60)


@pytest.fixture
def cos_solution() -> Callable[[WeightedGraph], np.ndarray]:
    def build(g: WeightedGraph, theta: float = math.pi / 3) -> np.ndarray:
        return np.cos(theta * np.array([int(label) for label in g.labels], dtype=float))
    return build


@pytest.fixture(scope="session")
def random_graphs() -> Sequence[WeightedGraph]:
    """Seeded connected random graphs with weighted edges, measures and potentials."""
    graphs = []
    for seed in range(20):
        n = 6 + (seed * 7) % 40
        spec = FixtureService.parse_fixture(
            f"random:{n}:0.15",
            seed=seed,
            weights="uniform:0.5:2",
            measure="uniform:0.5:2",
            potential="uniform:0:0.5" if seed % 2 else None
        )
        graphs.append(FixtureService.build_fixture(spec)[0])
    return graphs


@pytest.fixture(scope="session")
def lanczos_graphs() -> Sequence[WeightedGraph]:
    """Fifty seeded random graphs with 17 to 64 vertices, all above the dense cutoff."""
    graphs = []
    for seed in range(50):
        n = 17 + (seed * 13) % 48
        spec = FixtureService.parse_fixture(
            f"random:{n}:0.1",
            seed=100 + seed,
            weights="uniform:0.5:2",
            measure="uniform:0.5:2",
            potential="uniform:0:1" if seed % 3 == 0 else None
        )
        graphs.append(FixtureService.build_fixture(spec)[0])
    return graphs


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
