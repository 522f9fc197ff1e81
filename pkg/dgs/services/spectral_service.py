"""
Ground state energy, resolvent solves and super-solutions.

E0 is the bottom of the spectrum of the generalized pencil (K, diag m) with
K = D - B + C. Small graphs go straight to the dense solver; larger ones use
shift-invert Lanczos followed by inverse-iteration polishing so that the
reported residual ||L~psi - E0 psi||_m is certified against the tolerance.
"""
import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from dgs.config import settings
from dgs.exceptions import (
    ConvergenceError,
    EnergyTooHighError,
    NegativeFunctionError,
    NotASupersolutionError,
    PreconditionError,
    SizeGuardError,
    ZeroFunctionError
)
from dgs.models import GraphFunction, VertexSubset, WeightedGraph, as_graph_function
from dgs.schemas import (
    EnergyBoundReport,
    EnergyLimitRow,
    EnergyLimitTable,
    ExcitedState,
    GsrCheckReport,
    ExhaustionRow,
    ExhaustionTable,
    PositivityBatteryReport,
    SpectralResult,
    SupersolutionCertificate,
    SupersolutionSample
)
from dgs.services.form_service import FormContext, FormService
from dgs.services.graph_service import GraphService
from dgs.utils.cg import conjugate_gradient
from dgs.utils.sampling import make_rng, random_function
from dgs.utils.tolerance import scaled_tolerance

logger = logging.getLogger(__name__)

GraphFamily = Callable[[int], Tuple[WeightedGraph, int]]


def _mass(g: WeightedGraph) -> scipy.sparse.csc_matrix:
    return scipy.sparse.diags(g.m).tocsc()


def _residual(ctx: FormContext, psi: np.ndarray) -> Tuple[float, float]:
    """(Rayleigh quotient, ||L~psi - E psi||_m) for a psi with ||psi||_m = 1."""
    energy = FormService.form_Q(ctx, psi) / FormService.inner_m(ctx, psi, psi)
    return energy, FormService.norm_m(ctx, FormService.apply_L(ctx, psi) - energy * psi)


def _normalize(ctx: FormContext, psi: np.ndarray) -> np.ndarray:
    psi = psi / FormService.norm_m(ctx, psi)
    return -psi if psi[0] < 0 else psi


def _vertex_scale(g: WeightedGraph, w: np.ndarray, E: float) -> np.ndarray:
    """Per-vertex magnitude of the terms entering (L~ - E)w(x)."""
    neighbor_part = g.b @ np.abs(w)
    return 1.0 + (neighbor_part + (g.degrees + g.c + g.m * abs(E)) * np.abs(w)) / g.m


class SpectralService:

    @staticmethod
    def dense_spectrum(g: WeightedGraph) -> Tuple[np.ndarray, np.ndarray]:
        """All eigenvalues (ascending) and m-orthonormal eigenvectors (columns)."""
        if g.vertex_count > settings.dense_oracle_limit:
            raise SizeGuardError(g.vertex_count, settings.dense_oracle_limit, what="graph")
        return scipy.linalg.eigh(g.stiffness().toarray(), np.diag(g.m))

    @staticmethod
    def _polish(
        g: WeightedGraph,
        ctx: FormContext,
        psi: np.ndarray,
        shift: float,
        tol: float
    ) -> Tuple[np.ndarray, float, float, int]:
        """Inverse iteration at a fixed shift below E0 until the residual meets tol."""
        energy, residual = _residual(ctx, psi)
        if residual <= tol:
            return psi, energy, residual, 0
        mass = _mass(g)
        lu = scipy.sparse.linalg.splu((g.stiffness() - shift * mass).tocsc())
        for step in range(1, settings.max_iterations + 1):
            psi = _normalize(ctx, lu.solve(g.m * psi))
            energy, residual = _residual(ctx, psi)
            if residual <= tol:
                return psi, energy, residual, step
        raise ConvergenceError(
            f"inverse iteration did not reach residual {tol:g}",
            iterations=settings.max_iterations,
            residual=residual
        )

    @staticmethod
    def ground_energy(g: WeightedGraph, tol: Optional[float] = None) -> SpectralResult:
        tol = settings.eigen_tol if tol is None else tol
        if tol <= 0:
            raise PreconditionError(f"tolerance must be > 0, got {tol}")
        GraphService.require_connected(g)
        ctx = FormContext.of(g)
        n = g.vertex_count

        if n <= settings.dense_cutoff:
            values, vectors = SpectralService.dense_spectrum(g)
            psi = _normalize(ctx, vectors[:, 0])
            second = float(values[1]) if n > 1 else None
            shift = float(values[0]) - max(1.0, abs(float(values[0])))
            if second is not None:
                shift = float(values[0]) - 0.1 * (second - float(values[0]))
            method = "dense"
        else:
            scale = float(np.max((g.degrees + g.c) / g.m))
            sigma = -0.01 * (1.0 + scale)
            values, vectors = scipy.sparse.linalg.eigsh(
                g.stiffness().tocsc(),
                k=2,
                M=_mass(g),
                sigma=sigma,
                which="LM",
                v0=np.ones(n),
                tol=0.0
            )
            order = np.argsort(values)
            values, vectors = values[order], vectors[:, order]
            psi = _normalize(ctx, vectors[:, 0])
            second = float(values[1])
            gap = max(second - float(values[0]), tol)
            shift = float(values[0]) - 0.1 * gap
            method = "lanczos"

        psi, energy, residual, iterations = SpectralService._polish(g, ctx, psi, shift, tol)

        if np.any(psi <= 0):
            raise ConvergenceError(
                "ground state is not strictly positive",
                iterations=iterations,
                residual=residual
            )
        logger.info(
            "Ground state computed",
            extra={"vertex_count": n, "E0": energy, "residual": residual, "method": method}
        )
        return SpectralResult(
            E0=energy,
            ground_state=psi.tolist(),
            residual=residual,
            iterations=iterations,
            second_energy=second,
            method=method
        )

    @staticmethod
    def resolvent_solve(
        g: WeightedGraph,
        E: float,
        phi: GraphFunction,
        tol: Optional[float] = None,
        e0: Optional[float] = None
    ) -> GraphFunction:
        """u with (L~ - E)u = phi for E below E0; u > 0 on connected graphs."""
        tol = settings.solver_tol if tol is None else tol
        phi = as_graph_function(g, phi)
        negative = np.flatnonzero(phi < 0)
        if negative.size:
            raise NegativeFunctionError(int(negative[0]), float(phi[negative[0]]))
        if not np.any(phi > 0):
            raise ZeroFunctionError("right-hand side phi vanishes identically")

        if e0 is None:
            e0 = SpectralService.ground_energy(g).E0
        threshold = e0 - max(tol, settings.resolvent_margin)
        if E > threshold:
            raise EnergyTooHighError(E, threshold, detail=f"E = {E!r} is not below E0 = {e0!r} by the required margin")

        ctx = FormContext.of(g)
        result = conjugate_gradient(
            lambda v: FormService.apply_L(ctx, v) - E * v,
            phi,
            g.m,
            tol=tol,
            max_iterations=settings.max_iterations
        )
        u = result.x
        if np.any(u <= 0):
            raise ConvergenceError(
                "resolvent solution is not strictly positive",
                iterations=result.iterations,
                residual=result.residual_norm / result.rhs_norm
            )
        return u

    @staticmethod
    def construct_supersolution(
        g: WeightedGraph,
        E: float,
        x0: int,
        W: VertexSubset,
        tol: Optional[float] = None,
        e0: Optional[float] = None
    ) -> SupersolutionCertificate:
        x0 = g.check_vertex(x0)
        if x0 not in W:
            raise PreconditionError(f"normalization vertex {x0} is not in the window")
        if W.is_full(g):
            raise PreconditionError("window covers every vertex; phi needs support outside it")
        if e0 is None:
            e0 = SpectralService.ground_energy(g).E0

        phi = W.complement(g).indicator(g)
        u = SpectralService.resolvent_solve(g, E, phi, tol=tol, e0=e0)
        w = u / u[x0]

        ctx = FormContext.of(g)
        window = W.sorted()
        slack = (FormService.apply_L(ctx, w) - E * w)[window]
        min_slack = float(np.min(slack))
        window_residual = float(np.max(np.abs(slack)))
        allowed = settings.identity_tol * _vertex_scale(g, w, E)[window]
        if np.any(slack < -allowed):
            raise NotASupersolutionError(min_slack, E)
        # phi vanishes on W, so w solves (L~ - E)w = 0 there up to the solver residual
        solver_tol = settings.solver_tol if tol is None else tol
        solver_slack = 10.0 * solver_tol * FormService.norm_m(ctx, phi) / (np.sqrt(g.m[window]) * u[x0])
        if np.any(np.abs(slack) > allowed + solver_slack):
            raise ConvergenceError(
                "resolvent solution is not a solution on the window",
                iterations=0,
                residual=window_residual
            )
        logger.debug(
            "Super-solution constructed",
            extra={
                "E": E,
                "x0": x0,
                "window_size": len(window),
                "min_slack": min_slack,
                "window_residual": window_residual
            }
        )
        return SupersolutionCertificate(
            w=w.tolist(),
            E=E,
            E0=e0,
            x0=x0,
            window=window,
            slack=slack.tolist(),
            min_slack=min_slack,
            window_residual=window_residual
        )

    @staticmethod
    def solution_residual(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        W: Optional[VertexSubset] = None
    ) -> float:
        """max over W of |(L~ - E)w|."""
        w = as_graph_function(g, w)
        members = W.sorted() if W is not None else list(range(g.vertex_count))
        if not members:
            return 0.0
        residual = FormService.apply_L(FormContext.of(g), w) - E * w
        return float(np.max(np.abs(residual[members])))

    @staticmethod
    def _allowed_residual(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        W: Optional[VertexSubset],
        tol: Optional[float]
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Residual on W with its allowance: absolute when tol is given, scaled per vertex otherwise."""
        w = as_graph_function(g, w)
        members = W.sorted() if W is not None else list(range(g.vertex_count))
        residual = FormService.apply_L(FormContext.of(g), w) - E * w
        if tol is not None:
            return residual[members], np.full(len(members), float(tol))
        return residual[members], settings.identity_tol * _vertex_scale(g, w, E)[members]

    @staticmethod
    def is_solution(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        W: Optional[VertexSubset] = None,
        tol: Optional[float] = None
    ) -> bool:
        residual, allowed = SpectralService._allowed_residual(g, w, E, W, tol)
        return bool(np.all(np.abs(residual) <= allowed))

    @staticmethod
    def is_supersolution(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        W: Optional[VertexSubset] = None,
        tol: Optional[float] = None
    ) -> bool:
        residual, allowed = SpectralService._allowed_residual(g, w, E, W, tol)
        return bool(np.all(residual >= -allowed))

    @staticmethod
    def weyl_residual(g: WeightedGraph, E: float, u: GraphFunction) -> float:
        """||(L~ - E)u||_m / ||u||_m, an upper bound for dist(E, spectrum)."""
        ctx = FormContext.of(g)
        u = as_graph_function(g, u)
        norm = FormService.norm_m(ctx, u)
        if norm == 0.0:
            raise ZeroFunctionError("Weyl residual of the zero function is undefined")
        return FormService.norm_m(ctx, FormService.apply_L(ctx, u) - E * u) / norm

    @staticmethod
    def _interior_window(g: WeightedGraph, x0: int) -> VertexSubset:
        radius = GraphService.eccentricity(g, x0)
        if radius < 1:
            raise PreconditionError("graph has no vertex outside x0 to carry phi")
        return GraphService.ball(g, x0, radius - 1)

    @staticmethod
    def exhaustion_diagnostic(
        family: GraphFamily,
        E: float,
        radii: Sequence[int],
        core_radius: int
    ) -> ExhaustionTable:
        """
        Super-solutions on growing truncations, normalized at x0 and compared
        on the core ball(x0, core_radius). Truncation r is family(r) = (graph, x0);
        phi is supported on the outermost sphere around x0, and the core may reach
        into it, so star leaves are reported too.
        """
        rows: List[ExhaustionRow] = []
        previous = None
        for radius in radii:
            g, x0 = family(radius)
            W = SpectralService._interior_window(g, x0)
            core = GraphService.ball(g, x0, core_radius)
            certificate = SpectralService.construct_supersolution(g, E, x0, W)
            values = {g.label_of(x): certificate.w[x] for x in core.sorted()}
            difference = None
            if previous is not None:
                shared = [label for label in values if label in previous]
                difference = max((abs(values[label] - previous[label]) for label in shared), default=0.0)
            rows.append(
                ExhaustionRow(
                    radius=radius,
                    vertex_count=g.vertex_count,
                    core_values=values,
                    sup_difference=difference
                )
            )
            previous = values
        return ExhaustionTable(E=E, core_radius=core_radius, rows=rows)

    @staticmethod
    def energy_limit_diagnostic(g: WeightedGraph, x0: int, energies: Iterable[float]) -> EnergyLimitTable:
        """Super-solutions for E increasing to E0 against the ground state, all normalized at x0."""
        x0 = g.check_vertex(x0)
        spectral = SpectralService.ground_energy(g)
        psi = np.asarray(spectral.ground_state)
        target = psi / psi[x0]
        W = SpectralService._interior_window(g, x0)

        rows: List[EnergyLimitRow] = []
        for E in sorted(energies):
            certificate = SpectralService.construct_supersolution(g, E, x0, W, e0=spectral.E0)
            rows.append(
                EnergyLimitRow(
                    E=E,
                    gap=spectral.E0 - E,
                    distance=float(np.max(np.abs(np.asarray(certificate.w) - target))),
                    min_slack=certificate.min_slack
                )
            )
        return EnergyLimitTable(E0=spectral.E0, x0=x0, rows=rows)

    @staticmethod
    def energy_bound_from_supersolution(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        trials: int = 100,
        seed: Optional[int] = None
    ) -> EnergyBoundReport:
        """A positive super-solution at E forces E <= E0; checked through the ground state representation."""
        w = as_graph_function(g, w)
        negative = np.flatnonzero(w <= 0)
        if negative.size:
            raise NegativeFunctionError(int(negative[0]), float(w[negative[0]]))
        if not SpectralService.is_supersolution(g, w, E):
            residual = FormService.apply_L(FormContext.of(g), w) - E * w
            raise NotASupersolutionError(float(np.min(residual)), E)

        ctx = FormContext.of(g)
        rng = make_rng(seed)
        min_defect = np.inf
        holds = True
        worst_tol = 0.0
        for _ in range(trials):
            u = random_function(g, rng)
            q = FormService.form_Q(ctx, u)
            qw = FormService.form_Qw(ctx, w, u)
            mass = E * FormService.inner_m(ctx, u, u)
            defect = q - qw - mass
            tolerance = scaled_tolerance(q, qw, mass)
            if defect < min_defect:
                min_defect, worst_tol = defect, tolerance
            holds = holds and defect >= -tolerance

        e0 = SpectralService.ground_energy(g).E0
        holds = holds and E <= e0 + scaled_tolerance(e0, E)
        return EnergyBoundReport(
            E=E,
            E0=e0,
            trials=trials,
            min_defect=float(min_defect) if trials else 0.0,
            tolerance=worst_tol,
            holds=holds
        )

    @staticmethod
    def positivity_battery(g: WeightedGraph, x0: int, energies_below: Iterable[float]) -> PositivityBatteryReport:
        """
        Finite-scale check of the equivalence between E <= E0, existence of a
        positive solution and existence of a positive super-solution.
        """
        x0 = g.check_vertex(x0)
        spectral = SpectralService.ground_energy(g)
        W = SpectralService._interior_window(g, x0)

        samples: List[SupersolutionSample] = []
        for E in energies_below:
            certificate = SpectralService.construct_supersolution(g, E, x0, W, e0=spectral.E0)
            w = np.asarray(certificate.w)
            samples.append(
                SupersolutionSample(
                    E=E,
                    min_slack=certificate.min_slack,
                    min_value=float(np.min(w)),
                    positive=bool(np.all(w > 0))
                )
            )

        psi = np.asarray(spectral.ground_state)
        perron_positive = bool(np.all(psi > 0)) and SpectralService.is_solution(g, psi, spectral.E0)

        values, vectors = SpectralService.dense_spectrum(g)
        cutoff = spectral.E0 + scaled_tolerance(spectral.E0, float(values[-1]))
        excited: List[ExcitedState] = []
        for k in np.flatnonzero(values > cutoff):
            v = vectors[:, k]
            eps = settings.identity_tol * float(np.max(np.abs(v)))
            excited.append(
                ExcitedState(
                    eigenvalue=float(values[k]),
                    min_value=float(np.min(v)),
                    max_value=float(np.max(v)),
                    sign_change=bool(np.min(v) < -eps and np.max(v) > eps)
                )
            )

        passed = (
            all(sample.positive for sample in samples)
            and perron_positive
            and all(state.sign_change for state in excited)
        )
        return PositivityBatteryReport(
            E0=spectral.E0,
            supersolutions=samples,
            perron_residual=spectral.residual,
            perron_positive=perron_positive,
            excited_states=excited,
            passed=passed
        )

    @staticmethod
    def gsr_check(
        g: WeightedGraph,
        trials: int = 100,
        seed: Optional[int] = None,
        below: int = 0,
        spacing: float = 0.1
    ) -> GsrCheckReport:
        """
        Ground state representation at (E0, ground state) on random u, and its
        inequality form on resolvent super-solutions at E0 - k * spacing, k = 1..below.
        """
        spectral = SpectralService.ground_energy(g)
        psi = np.asarray(spectral.ground_state)
        ctx = FormContext.of(g)
        rng = make_rng(seed)

        max_defect = 0.0
        worst_tol = scaled_tolerance()
        passed = True
        for _ in range(trials):
            u = random_function(g, rng)
            q = FormService.form_Q(ctx, u)
            qw = FormService.form_Qw(ctx, psi, u)
            mass = spectral.E0 * FormService.inner_m(ctx, u, u)
            defect = abs(q - qw - mass)
            tolerance = scaled_tolerance(q, qw, mass)
            if defect > max_defect:
                max_defect, worst_tol = defect, tolerance
            passed = passed and defect <= tolerance

        energies = [spectral.E0 - k * spacing for k in range(1, below + 1)]
        min_super = None
        if energies:
            W = SpectralService._interior_window(g, 0)
            for E in energies:
                w = np.asarray(SpectralService.construct_supersolution(g, E, 0, W, e0=spectral.E0).w)
                for _ in range(max(1, trials // max(1, below))):
                    u = random_function(g, rng)
                    q = FormService.form_Q(ctx, u)
                    qw = FormService.form_Qw(ctx, w, u)
                    mass = E * FormService.inner_m(ctx, u, u)
                    defect = q - qw - mass
                    min_super = defect if min_super is None else min(min_super, defect)
                    passed = passed and defect >= -scaled_tolerance(q, qw, mass)

        logger.info(
            "Ground state representation checked",
            extra={"vertex_count": g.vertex_count, "max_abs_defect": max_defect, "passed": passed}
        )
        return GsrCheckReport(
            E0=spectral.E0,
            trials=trials,
            max_abs_defect=max_defect,
            tolerance=worst_tol,
            supersolution_energies=energies,
            min_supersolution_defect=min_super,
            passed=passed
        )
