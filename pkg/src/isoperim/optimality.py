"""First-order optimality diagnostics for perimeter-at-fixed-area.

At a constrained minimizer the perimeter gradient is a scalar multiple of
the area gradient. This module fits that multiplier by least squares,
measures the residual, and reports the regularity metrics that a critical
polygon must drive to zero: equal edges (edge_cv), equal angles
(angle_cv), and a constant tan(theta_i / 2) (tan_half_spread).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import edge_lengths, interior_angles, vertex_array
from .gradients import area_gradient, perimeter_gradient

# A vertex counts as straight when its interior angle is within this of pi.
STRAIGHT_TOL = 1e-9


class VertexKind(enum.Enum):
    CONVEX = "convex"
    REFLEX = "reflex"
    STRAIGHT = "straight"


@dataclass(frozen=True)
class KktReport:
    """Multiplier fit and regularity diagnostics for one polygon.

    ``per_vertex_misalignment`` holds |cross(w_i, v_i)| / (|w_i| |v_i|)
    per vertex (NaN where either gradient vanishes). ``tan_half_spread``
    is max - min of tan(theta_i / 2), reported as inf when any interior
    angle reaches pi, where the metric stops being meaningful.
    """

    lambda_hat: float
    residual_norm: float
    residual_relative: float
    per_vertex_misalignment: np.ndarray
    edge_cv: float
    angle_cv: float
    tan_half_spread: float


@dataclass(frozen=True)
class RegularReference:
    """Closed forms for the regular n-gon of a given area.

    lambda_star is the multiplier in grad(perimeter) = lambda *
    grad(area): from |w_i| = 2 cos(theta/2) and |v_i| = edge * sin(theta/2)
    it equals 2 / (edge * tan(theta/2)), the reciprocal of the apothem.
    """

    n: int
    area: float
    edge: float
    angle: float
    perimeter: float
    lambda_star: float


def best_fit_lambda(perim_grad, area_grad) -> float:
    """Least-squares multiplier: argmin over lambda of
    |grad_perim - lambda * grad_area|^2 over all 2n coordinates."""
    w = np.asarray(perim_grad, dtype=float)
    v = np.asarray(area_grad, dtype=float)
    denom = float(np.sum(v * v))
    if denom == 0.0:
        raise ValueError("area gradient is identically zero; multiplier undefined")
    return float(np.sum(w * v)) / denom


def _coefficient_of_variation(values: np.ndarray) -> float:
    mean = float(np.mean(values))
    if mean == 0.0:
        return math.inf
    return float(np.std(values)) / mean


def kkt_residual(p, area_grad=None, perim_grad=None) -> KktReport:
    """Full first-order report for a polygon.

    Precomputed gradients may be passed to avoid recomputation; they must
    be the analytic gradients of ``p``.
    """
    v = area_gradient(p) if area_grad is None else np.asarray(area_grad, dtype=float)
    w = perimeter_gradient(p) if perim_grad is None else np.asarray(perim_grad, dtype=float)

    lam = best_fit_lambda(w, v)
    residual = w - lam * v
    residual_norm = float(np.sqrt(np.sum(residual * residual)))
    norm_w = float(np.sqrt(np.sum(w * w)))
    if norm_w > 0.0:
        residual_relative = residual_norm / norm_w
    else:
        residual_relative = 0.0 if residual_norm == 0.0 else math.inf

    norm_v_i = np.hypot(v[:, 0], v[:, 1])
    norm_w_i = np.hypot(w[:, 0], w[:, 1])
    cross = np.abs(w[:, 0] * v[:, 1] - w[:, 1] * v[:, 0])
    with np.errstate(invalid="ignore", divide="ignore"):
        misalignment = np.where(
            (norm_v_i > 0.0) & (norm_w_i > 0.0), cross / (norm_w_i * norm_v_i), np.nan
        )

    angles = interior_angles(p)
    if np.any(angles >= math.pi):
        tan_half_spread = math.inf
    else:
        tan_half = np.tan(angles / 2.0)
        tan_half_spread = float(np.max(tan_half) - np.min(tan_half))

    return KktReport(
        lambda_hat=lam,
        residual_norm=residual_norm,
        residual_relative=residual_relative,
        per_vertex_misalignment=misalignment,
        edge_cv=_coefficient_of_variation(edge_lengths(p)),
        angle_cv=_coefficient_of_variation(angles),
        tan_half_spread=tan_half_spread,
    )


def classify_vertices(p, tol: float = STRAIGHT_TOL) -> list[VertexKind]:
    """Label each vertex CONVEX, REFLEX, or STRAIGHT by its interior angle.

    STRAIGHT means the angle is within ``tol`` of pi, which is where the
    perimeter gradient vanishes.
    """
    vertex_array(p)
    labels = []
    for theta in interior_angles(p):
        if abs(theta - math.pi) <= tol:
            labels.append(VertexKind.STRAIGHT)
        elif theta < math.pi:
            labels.append(VertexKind.CONVEX)
        else:
            labels.append(VertexKind.REFLEX)
    return labels


def regular_reference(n: int, area: float) -> RegularReference:
    """Closed-form edge, angle, perimeter, and multiplier of the regular
    n-gon with the given area, from area = (n/4) edge^2 tan(theta/2)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if area <= 0:
        raise ValueError(f"need positive area, got {area}")
    angle = (n - 2) * math.pi / n
    tan_half = math.tan(angle / 2.0)
    edge = math.sqrt(4.0 * area / (n * tan_half))
    return RegularReference(
        n=n,
        area=area,
        edge=edge,
        angle=angle,
        perimeter=n * edge,
        lambda_star=2.0 / (edge * tan_half),
    )


def half_apothem(n: int, area: float) -> float:
    """Half the apothem of the regular n-gon, edge * tan(theta/2) / 4.

    Recorded as a reference value only: this quantity circulates as a
    closed form for the area-constraint multiplier, but it does not
    satisfy grad(perimeter) = lambda * grad(area) (on the unit square it
    gives 0.25 while the fitted multiplier is 2.0). Use
    ``regular_reference(n, area).lambda_star`` instead.
    """
    ref = regular_reference(n, area)
    return ref.edge * math.tan(ref.angle / 2.0) / 4.0
