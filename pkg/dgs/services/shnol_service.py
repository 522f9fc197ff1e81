"""
Boundary measures, boundary norms and Shnol-type evidence for generalized
eigenfunctions.

For A subset V with complement A^c, write s_A(y) = sum_{z in A} b(y, z). Then

    mu_A(x) = sum_{y in A^c} b(x, y) s_A(y) / m(y)      (x in dA)
    nu_A(x) = (sum_{y in A^c} b(x, y)^2 / m(y))^(1/2)   (x in dA)

and symmetrically for A^c. Only vertices of dA^c (resp. dA) contribute, so
the sums over A^c are the boundary sums of the definitions.
"""
import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from dgs.config import settings
from dgs.exceptions import NotASolutionError, PreconditionError, WeightedGraphError, ZeroFunctionError
from dgs.models import GraphFunction, VertexSubset, WeightedGraph, as_graph_function
from dgs.schemas import (
    BoundaryReport,
    BoundedShnolReport,
    BracketRow,
    CbBound,
    CheegerComparison,
    DefectBoundReport,
    ShnolReport,
    ShnolRow,
    SubexpRow,
    WeightedNorm
)
from dgs.services.form_service import FormContext, FormService
from dgs.services.graph_service import GraphService
from dgs.services.spectral_service import SpectralService
from dgs.utils.sampling import make_rng, random_compact_function
from dgs.utils.tolerance import scaled_tolerance

logger = logging.getLogger(__name__)

DEFAULT_DELTAS = (1.0, 0.5, 0.25, 0.125)


def _one_side(g: WeightedGraph, inside: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(mu, nu) of the set with the given indicator, as dense vectors (zero off its boundary)."""
    outside = 1.0 - inside
    crossing = g.b @ inside
    mu = (g.b @ (outside * crossing / g.m)) * inside
    squared = g.b.multiply(g.b).tocsr()
    nu = np.sqrt(squared @ (outside / g.m)) * inside
    return mu, nu


def _require_solution_on(g: WeightedGraph, w: np.ndarray, E: float, A: VertexSubset, tol: Optional[float]) -> None:
    if not SpectralService.is_solution(g, w, E, A, tol=tol):
        residual = SpectralService.solution_residual(g, w, E, A)
        raise NotASolutionError(residual, E, detail=f"w is not a solution at E = {E!r} on the {len(A)} vertices required")


class ShnolService:

    @staticmethod
    def boundary_measures(g: WeightedGraph, A: VertexSubset) -> BoundaryReport:
        inside = A.indicator(g)
        mu_in, nu_in = _one_side(g, inside)
        mu_out, nu_out = _one_side(g, 1.0 - inside)
        dA, dAc = GraphService.boundary(g, A)
        return BoundaryReport(
            A=A.sorted(),
            mu_on_dA={x: float(mu_in[x]) for x in dA},
            mu_on_dAc={x: float(mu_out[x]) for x in dAc},
            nu_on_dA={x: float(nu_in[x]) for x in dA},
            nu_on_dAc={x: float(nu_out[x]) for x in dAc}
        )

    @staticmethod
    def boundary_norms(g: WeightedGraph, A: VertexSubset, w: GraphFunction) -> Tuple[float, float]:
        """(p(w, A), q(w, A))."""
        w = as_graph_function(g, w)
        inside = A.indicator(g)
        mu_in, nu_in = _one_side(g, inside)
        mu_out, nu_out = _one_side(g, 1.0 - inside)
        p = math.sqrt(float(np.sum(w * w * (mu_in + mu_out))))
        q = float(np.sum(np.abs(w) * (nu_in + nu_out)))
        return p, q

    @staticmethod
    def restricted_defect(
        g: WeightedGraph,
        E: float,
        w: GraphFunction,
        A: VertexSubset,
        tol: Optional[float] = None
    ) -> Tuple[GraphFunction, GraphFunction]:
        """
        (L~ - E)(w 1_A) two ways: through the boundary formula and directly.
        The boundary formula needs the solution property at the vertices of A only.
        """
        w = as_graph_function(g, w)
        _require_solution_on(g, w, E, A, tol)
        inside = A.indicator(g)
        outside = 1.0 - inside
        via_formula = (inside * (g.b @ (w * outside)) - outside * (g.b @ (w * inside))) / g.m
        restricted = w * inside
        direct = FormService.apply_L(FormContext.of(g), restricted) - E * restricted
        return via_formula, direct

    @staticmethod
    def defect_bound_check(
        g: WeightedGraph,
        E: float,
        w: GraphFunction,
        A: VertexSubset,
        trials: int = 50,
        seed: Optional[int] = None,
        tol: Optional[float] = None
    ) -> DefectBoundReport:
        """||(L~ - E)w_A||_m <= p and sum |(L~ - E)w_A v| m <= min(p, q) ||v||_m for random compactly supported v."""
        ctx = FormContext.of(g)
        _, defect = ShnolService.restricted_defect(g, E, w, A, tol=tol)
        p, q = ShnolService.boundary_norms(g, A, w)
        l2 = FormService.norm_m(ctx, defect)
        holds = l2 <= p + scaled_tolerance(p, base=tol)

        rng = make_rng(seed)
        bound_norm = min(p, q)
        max_ratio = 0.0
        for _ in range(trials):
            v = random_compact_function(g, rng)
            pairing = float(np.sum(np.abs(defect * v) * g.m))
            bound = bound_norm * FormService.norm_m(ctx, v)
            allowed = scaled_tolerance(pairing, bound, base=tol)
            holds = holds and pairing <= bound + allowed
            if bound > 0:
                max_ratio = max(max_ratio, pairing / bound)
            elif pairing > allowed:
                max_ratio = math.inf

        return DefectBoundReport(
            p=p,
            q=q,
            l2_defect=l2,
            l2_ratio=l2 / p if p > 0 else 0.0,
            max_pairing_ratio=max_ratio,
            trials=trials,
            holds=holds
        )

    @staticmethod
    def shnol_sequence(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        x0: int,
        max_radius: int,
        tol: Optional[float] = None
    ) -> ShnolReport:
        """
        p, q and Weyl residuals of w_n = w 1_{B_n} for the balls B_n around x0.
        Needs the solution property on B_{max_radius + 1}, so that the boundary
        sums of every ball only see exact-solution vertices.
        """
        w = as_graph_function(g, w)
        x0 = g.check_vertex(x0)
        if max_radius < 0:
            raise PreconditionError(f"max_radius must be >= 0, got {max_radius}")
        checked = GraphService.ball(g, x0, max_radius + 1)
        _require_solution_on(g, w, E, checked, tol)
        ctx = FormContext.of(g)

        rows: List[ShnolRow] = []
        for n in range(max_radius + 1):
            ball = GraphService.ball(g, x0, n)
            w_n = w * ball.indicator(g)
            norm = FormService.norm_m(ctx, w_n)
            p, q = ShnolService.boundary_norms(g, ball, w)
            if norm > 0:
                rows.append(ShnolRow(
                    n=n, norm=norm, p=p, q=q, quot_p=p / norm, quot_q=q / norm,
                    weyl=SpectralService.weyl_residual(g, E, w_n)
                ))
            else:
                rows.append(ShnolRow(n=n, norm=norm, p=p, q=q))
        if all(row.norm == 0.0 for row in rows):
            raise ZeroFunctionError("w vanishes on every ball")

        oracle_distance = None
        if g.vertex_count <= settings.dense_oracle_limit:
            values, _ = SpectralService.dense_spectrum(g)
            oracle_distance = float(np.min(np.abs(values - E)))

        final = rows[-1].quot_p
        evidence = final is not None and final <= settings.shnol_evidence_threshold
        logger.info(
            "Shnol sequence computed",
            extra={"E": E, "x0": x0, "max_radius": max_radius, "final_quotient": final, "evidence": evidence}
        )
        return ShnolReport(
            E=E,
            x0=x0,
            rows=rows,
            interior_residual=SpectralService.solution_residual(g, w, E, checked),
            oracle_distance=oracle_distance,
            spectral_evidence=evidence
        )

    @staticmethod
    def cheeger_compare(g: WeightedGraph, A: VertexSubset) -> CheegerComparison:
        """q(1_A) <= Q(1_A) <= p(1_A)^2 and p(1_A)^2 / deg_A(dA^c) <= Q(1_A) <= deg_A(dA) q(1_A)."""
        if not g.is_unweighted:
            raise WeightedGraphError()
        one_a = A.indicator(g)
        p1, q1 = ShnolService.boundary_norms(g, A, one_a)
        p1sq = p1 * p1
        Q1 = FormService.form_Q(FormContext.of(g), one_a)

        crossing_out = g.b @ (1.0 - one_a)
        crossing_in = g.b @ one_a
        dA, dAc = GraphService.boundary(g, A)
        degA_dA = int(max((crossing_out[x] for x in dA), default=0))
        degA_dAc = int(max((crossing_in[x] for x in dAc), default=0))

        allowed = scaled_tolerance(q1, Q1, p1sq)
        chain = q1 <= Q1 + allowed and Q1 <= p1sq + allowed
        reverse = Q1 <= degA_dA * q1 + allowed
        if degA_dAc > 0:
            reverse = reverse and p1sq / degA_dAc <= Q1 + allowed
        return CheegerComparison(
            q1=q1, Q1=Q1, p1sq=p1sq, degA_dA=degA_dA, degA_dAc=degA_dAc,
            chain_holds=chain, reverse_chain_holds=reverse
        )

    @staticmethod
    def laplace_bound(g: WeightedGraph) -> CbBound:
        ratios = g.degrees / g.m
        vertex = int(np.argmax(ratios))
        return CbBound(C_b=float(ratios[vertex]), attained_at=vertex)

    @staticmethod
    def subexp_radius(J: Sequence[float], step: int, delta: float, start: int = 0) -> Optional[int]:
        """Smallest r with J(r + step) <= e^delta J(r); J[i] is J(start + i). None if no such r in the window."""
        values = np.asarray(J, dtype=float)
        if values.size == 0:
            raise PreconditionError("J is empty")
        if step <= 0 or delta <= 0:
            raise PreconditionError("step and delta must be positive")
        if np.any(values < 0):
            raise PreconditionError("J must be nonnegative")
        growth = math.exp(delta)
        for i in range(values.size - step):
            if values[i + step] <= growth * values[i]:
                return start + i
        return None

    @staticmethod
    def bounded_shnol_run(
        g: WeightedGraph,
        w: GraphFunction,
        E: float,
        x0: int,
        alphas: Iterable[float],
        deltas: Iterable[float] = DEFAULT_DELTAS,
        max_radius: Optional[int] = None,
        tol: Optional[float] = None
    ) -> BoundedShnolReport:
        """Subexponential growth evidence and the ball-norm bracketing for bounded Laplacians."""
        w = as_graph_function(g, w)
        x0 = g.check_vertex(x0)
        ctx = FormContext.of(g)
        bound = ShnolService.laplace_bound(g)
        cb2 = bound.C_b ** 2

        distances = GraphService.distances_from(g, x0)
        outer = GraphService.eccentricity(g, x0)
        max_radius = outer - 1 if max_radius is None else max_radius
        if not 0 <= max_radius <= outer - 1:
            raise PreconditionError(f"max_radius must lie in [0, {outer - 1}], got {max_radius}")
        _require_solution_on(g, w, E, GraphService.ball(g, x0, max_radius), tol)

        reachable = np.isfinite(distances)
        J = [FormService.inner_m(ctx, w * (distances <= r), w * (distances <= r)) for r in range(outer + 1)]

        norms: List[WeightedNorm] = []
        for alpha in alphas:
            damped = np.where(reachable, np.exp(-alpha * np.where(reachable, distances, 0.0)) * w, 0.0)
            total = FormService.inner_m(ctx, damped, damped)
            rim = damped * (distances == outer)
            share = FormService.inner_m(ctx, rim, rim) / total if total > 0 else 0.0
            norms.append(WeightedNorm(
                alpha=alpha, norm=math.sqrt(total), tail_share=share,
                settled=share <= settings.tail_share_threshold
            ))

        brackets: List[BracketRow] = []
        for n in range(max_radius + 1):
            p, q = ShnolService.boundary_norms(g, GraphService.ball(g, x0, n), w)
            lower = J[n - 1] if n >= 1 else 0.0
            limit = cb2 * (J[n + 1] - lower)
            # only the p version is a theorem; q^2 is reported alongside
            brackets.append(BracketRow(
                n=n, p_squared=p * p, q_squared=q * q, bound=limit,
                holds=p * p <= limit + scaled_tolerance(p * p, limit, base=tol)
            ))

        rows: List[SubexpRow] = []
        for delta in deltas:
            radius = ShnolService.subexp_radius(J, 2, delta)
            if radius is None or radius + 1 > max_radius:
                rows.append(SubexpRow(delta=delta))
                continue
            n_k = radius + 1
            ball = GraphService.ball(g, x0, n_k)
            p, _ = ShnolService.boundary_norms(g, ball, w)
            rows.append(SubexpRow(
                delta=delta,
                radius=radius,
                n_k=n_k,
                quotient_bound=cb2 * math.expm1(delta),
                normalized_bound=math.expm1(delta) / J[n_k],
                observed_quotient=p / math.sqrt(J[n_k]) if J[n_k] > 0 else None
            ))

        return BoundedShnolReport(
            C_b=bound.C_b,
            max_radius=max_radius,
            weighted_norms=norms,
            bracketing=brackets,
            bracketing_holds=all(row.holds for row in brackets),
            subexp=rows,
            subexponential=all(row.radius is not None for row in rows)
        )
