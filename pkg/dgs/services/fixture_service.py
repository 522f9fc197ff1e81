"""
Generated graphs and closed-form solutions for the command line.

Fixtures:   path:N  cycle:N  star:N  z:R  random:N:P[:raw]
Overrides:  a constant ("2.5") or a seeded draw ("uniform:LO:HI")
Solutions:  cos:THETA  geometric:T  file:PATH

On a z-segment the vertices carry the integer labels -R..R, stored at
indices 0..2R; cos and geometric solutions are evaluated at those labels.
"""
import logging
import math
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np

from dgs.exceptions import FixtureSpecError, InvalidFunctionError
from dgs.models import Edge, GraphFunction, WeightedGraph
from dgs.schemas import FixtureFamily, FixtureSpec
from dgs.services.graph_service import GraphService
from dgs.utils.sampling import make_rng

logger = logging.getLogger(__name__)


def _integer(token: str, what: str, minimum: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FixtureSpecError(f"{what} {token!r} is not an integer") from None
    if value < minimum:
        raise FixtureSpecError(f"{what} must be >= {minimum}, got {value}")
    return value


def _real(token: str, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FixtureSpecError(f"{what} {token!r} is not a number") from None
    if not math.isfinite(value):
        raise FixtureSpecError(f"{what} {token!r} is not finite")
    return value


class FixtureService:

    @staticmethod
    def parse_fixture(
        text: str,
        seed: int = 0,
        weights: Optional[str] = None,
        measure: Optional[str] = None,
        potential: Optional[str] = None
    ) -> FixtureSpec:
        parts = text.strip().split(":")
        try:
            family = FixtureFamily(parts[0])
        except ValueError:
            raise FixtureSpecError(f"unknown fixture family {parts[0]!r}") from None

        probability = None
        raw = False
        if family is FixtureFamily.RANDOM:
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "raw"):
                raise FixtureSpecError("random fixtures read random:N:P or random:N:P:raw")
            probability = _real(parts[2], "edge probability")
            if not 0.0 <= probability <= 1.0:
                raise FixtureSpecError(f"edge probability must lie in [0, 1], got {probability}")
            raw = len(parts) == 4
        elif len(parts) != 2:
            raise FixtureSpecError(f"{family.value} fixtures read {family.value}:N")

        minimum = {FixtureFamily.CYCLE: 3, FixtureFamily.Z_SEGMENT: 0, FixtureFamily.STAR: 0}.get(family, 1)
        size = _integer(parts[1], "fixture size", minimum)
        return FixtureSpec(
            family=family, size=size, probability=probability, raw=raw, seed=seed,
            weights=weights, measure=measure, potential=potential
        )

    @staticmethod
    def _draw(spec_text: Optional[str], count: int, rng: np.random.Generator, what: str) -> Optional[np.ndarray]:
        if spec_text is None:
            return None
        if spec_text.startswith("uniform:"):
            parts = spec_text.split(":")
            if len(parts) != 3:
                raise FixtureSpecError(f"{what} override reads uniform:LO:HI")
            low, high = _real(parts[1], f"{what} lower bound"), _real(parts[2], f"{what} upper bound")
            if low > high:
                raise FixtureSpecError(f"{what} override has LO > HI")
            return rng.uniform(low, high, size=count)
        return np.full(count, _real(spec_text, f"{what} override"))

    @staticmethod
    def _topology(spec: FixtureSpec, rng: np.random.Generator) -> Tuple[int, List[Tuple[int, int]], List[str]]:
        n = spec.size
        if spec.family is FixtureFamily.PATH:
            return n, [(i, i + 1) for i in range(n - 1)], []
        if spec.family is FixtureFamily.CYCLE:
            return n, [(i, (i + 1) % n) for i in range(n)], []
        if spec.family is FixtureFamily.STAR:
            return n + 1, [(0, leaf) for leaf in range(1, n + 1)], []
        if spec.family is FixtureFamily.Z_SEGMENT:
            count = 2 * n + 1
            return count, [(i, i + 1) for i in range(count - 1)], [str(i - n) for i in range(count)]

        pairs = [(x, y) for x in range(n) for y in range(x + 1, n) if rng.random() < spec.probability]
        if not spec.raw:
            skeleton = WeightedGraph.build(m=np.ones(n), edges=[(x, y, 1.0) for x, y in pairs])
            parts = GraphService.components(skeleton)
            pairs += [(parts[i][0], parts[i + 1][0]) for i in range(len(parts) - 1)]
        return n, pairs, []

    @staticmethod
    def build_fixture(spec: FixtureSpec) -> Tuple[WeightedGraph, int]:
        """(graph, default x0); x0 is the center for stars and z-segments, vertex 0 otherwise."""
        rng = make_rng(spec.seed)
        n, pairs, labels = FixtureService._topology(spec, rng)
        weights = FixtureService._draw(spec.weights, len(pairs), rng, "weight")
        measure = FixtureService._draw(spec.measure, n, rng, "measure")
        potential = FixtureService._draw(spec.potential, n, rng, "potential")

        edges: List[Edge] = [
            (x, y, 1.0 if weights is None else float(weights[k])) for k, (x, y) in enumerate(pairs)
        ]
        graph = WeightedGraph.build(
            m=np.ones(n) if measure is None else measure,
            c=potential,
            edges=edges,
            labels=labels
        )
        x0 = spec.size if spec.family is FixtureFamily.Z_SEGMENT else 0
        logger.debug(
            "Fixture built",
            extra={"family": spec.family.value, "vertex_count": graph.vertex_count, "edge_count": graph.edge_count}
        )
        return graph, x0

    @staticmethod
    def fixture(text: str, seed: int = 0) -> WeightedGraph:
        return FixtureService.build_fixture(FixtureService.parse_fixture(text, seed=seed))[0]

    @staticmethod
    def family(name: str) -> Callable[[int], Tuple[WeightedGraph, int]]:
        """Nested truncations for the exhaustion diagnostic: z-segments of radius r or stars with r leaves."""
        if name == "z":
            return lambda r: FixtureService.build_fixture(FixtureSpec(family=FixtureFamily.Z_SEGMENT, size=r))
        if name == "star":
            return lambda r: FixtureService.build_fixture(FixtureSpec(family=FixtureFamily.STAR, size=r))
        raise FixtureSpecError(f"unknown exhaustion family {name!r}; use 'z' or 'star'")

    @staticmethod
    def _positions(g: WeightedGraph) -> np.ndarray:
        try:
            return np.array([int(label) for label in g.labels], dtype=float)
        except ValueError:
            raise FixtureSpecError("closed-form solutions need integer vertex labels") from None

    @staticmethod
    def solution_energy(text: str) -> Optional[float]:
        """E belonging to a cos or geometric solution on the integer line; None for files."""
        kind, _, argument = text.partition(":")
        if kind == "cos":
            return 2.0 - 2.0 * math.cos(_real(argument, "theta"))
        if kind == "geometric":
            t = _real(argument, "ratio")
            if t == 0:
                raise FixtureSpecError("geometric ratio must be nonzero")
            return 2.0 - t - 1.0 / t
        return None

    @staticmethod
    def parse_solution(text: str, g: WeightedGraph) -> GraphFunction:
        kind, _, argument = text.partition(":")
        if kind == "cos":
            return np.cos(_real(argument, "theta") * FixtureService._positions(g))
        if kind == "geometric":
            t = _real(argument, "ratio")
            if t == 0:
                raise FixtureSpecError("geometric ratio must be nonzero")
            return np.power(t, FixtureService._positions(g))
        if kind == "file":
            return FixtureService.load_function(argument, g)
        raise FixtureSpecError(f"unknown solution spec {text!r}; use cos:THETA, geometric:T or file:PATH")

    @staticmethod
    def load_function(path: str, g: WeightedGraph) -> GraphFunction:
        """One 'label value' pair per line; '#' starts a comment; every vertex must be listed."""
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except (OSError, UnicodeDecodeError) as e:
            raise InvalidFunctionError(f"cannot read function file {path}: {e}") from None
        values = np.full(g.vertex_count, np.nan)
        for line_no, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidFunctionError(f"line {line_no}: expected 'label value'")
            try:
                value = float(parts[1])
            except ValueError:
                raise InvalidFunctionError(f"line {line_no}: {parts[1]!r} is not a number") from None
            values[g.index_of(parts[0])] = value
        missing = np.flatnonzero(np.isnan(values))
        if missing.size:
            raise InvalidFunctionError(f"no value for vertex {g.labels[missing[0]]!r}")
        return values
