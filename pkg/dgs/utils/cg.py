"""
Conjugate gradients in a weighted inner product.

Solves A x = rhs for an operator A that is self-adjoint and positive definite
with respect to <u, v>_w = sum u(x) v(x) w(x). The formal graph operator
(1/m)(D - B + C) is self-adjoint in the m-weighted product, so the resolvent
system (L - E)u = phi is solved here without symmetrizing it first.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from dgs.exceptions import ConvergenceError

logger = logging.getLogger(__name__)

# recompute the true residual every so often to shed accumulated rounding
RESIDUAL_REFRESH = 50


@dataclass(frozen=True)
class CGResult:
    x: np.ndarray
    iterations: int
    residual_norm: float
    rhs_norm: float


def conjugate_gradient(
    apply_operator: Callable[[np.ndarray], np.ndarray],
    rhs: np.ndarray,
    weights: np.ndarray,
    tol: float,
    max_iterations: int,
    x0: Optional[np.ndarray] = None
) -> CGResult:
    """Iterate until ||rhs - A x||_w <= tol * ||rhs||_w."""

    def inner(a: np.ndarray, b: np.ndarray) -> float:
        return float(np.dot(a * b, weights))

    rhs_norm = inner(rhs, rhs) ** 0.5
    x = np.zeros_like(rhs) if x0 is None else x0.astype(float).copy()
    if rhs_norm == 0.0:
        return CGResult(x=x, iterations=0, residual_norm=0.0, rhs_norm=0.0)

    r = rhs - apply_operator(x)
    d = r.copy()
    delta_new = inner(r, r)
    target = (tol * rhs_norm) ** 2

    i = 0
    while delta_new > target:
        if i >= max_iterations:
            raise ConvergenceError(
                f"conjugate gradients did not converge in {max_iterations} iterations",
                iterations=i,
                residual=delta_new ** 0.5 / rhs_norm
            )
        q = apply_operator(d)
        curvature = inner(d, q)
        if curvature <= 0.0:
            raise ConvergenceError(
                "operator is not positive definite in the weighted inner product",
                iterations=i,
                residual=delta_new ** 0.5 / rhs_norm
            )
        alpha = delta_new / curvature
        x += alpha * d
        if (i + 1) % RESIDUAL_REFRESH == 0:
            r = rhs - apply_operator(x)
        else:
            r -= alpha * q
        delta_old = delta_new
        delta_new = inner(r, r)
        d = r + (delta_new / delta_old) * d
        i += 1

    residual = rhs - apply_operator(x)
    residual_norm = inner(residual, residual) ** 0.5
    logger.debug(
        "CG converged",
        extra={"iterations": i, "relative_residual": residual_norm / rhs_norm}
    )
    return CGResult(x=x, iterations=i, residual_norm=residual_norm, rhs_norm=rhs_norm)
