"""Projected-gradient solver: minimize perimeter at fixed area.

Each iteration moves along the component of the negative perimeter
gradient orthogonal to the area gradient (the multiplier residual), then
restores the area constraint exactly by similarity scaling about the
centroid. Steps are accepted under an Armijo sufficient-decrease test,
and candidates that self-intersect or shrink an edge below a fraction of
the mean edge are rejected. Iterates converge to the regular n-gon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    Polygon,
    PolygonError,
    centroid,
    convex_hull,
    edge_lengths,
    is_simple,
    perimeter,
    signed_area,
)
from .gradients import area_gradient, perimeter_gradient
from .optimality import best_fit_lambda, kkt_residual

# Backtracking gives up once the trial step shrinks below this times the
# initial step, at which point the iteration is declared stalled.
_MIN_STEP_FACTOR = 1e-16


@dataclass(frozen=True)
class OptimizerConfig:
    """Solver hyperparameters.

    ``step_init`` is the initial trial step as a fraction of the current
    mean edge length; it is reset after every accepted step. ``seed`` is
    carried for start generators only; the solver itself is deterministic.
    """

    area_target: float = 1.0
    max_iters: int = 10000
    step_init: float = 0.1
    armijo_c: float = 1e-4
    armijo_shrink: float = 0.5
    kkt_tol: float = 1e-8
    min_edge_frac: float = 1e-3
    convexify_every: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.area_target <= 0:
            raise ValueError("area_target must be positive")
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")
        if self.step_init <= 0:
            raise ValueError("step_init must be positive")
        if not 0.0 < self.armijo_c < 1.0:
            raise ValueError("armijo_c must lie in (0, 1)")
        if not 0.0 < self.armijo_shrink < 1.0:
            raise ValueError("armijo_shrink must lie in (0, 1)")
        if self.kkt_tol <= 0:
            raise ValueError("kkt_tol must be positive")
        if self.min_edge_frac <= 0:
            raise ValueError("min_edge_frac must be positive")
        if self.convexify_every < 0:
            raise ValueError("convexify_every must be nonnegative (0 disables)")


@dataclass(frozen=True)
class IterationRecord:
    """State after one accepted step (iter 0 records the projected start)."""

    iter: int
    perimeter: float
    area: float
    residual_relative: float
    lambda_hat: float
    step_len: float
    edge_cv: float
    angle_cv: float


@dataclass(frozen=True)
class StepResult:
    accepted: bool
    polygon: Polygon
    record: IterationRecord


@dataclass(frozen=True)
class OptimizeResult:
    polygon: Polygon
    trace: list[IterationRecord]
    converged: bool


def project_area(p: Polygon, area_target: float) -> Polygon:
    """Scale about the centroid so the signed area equals ``area_target``.

    A similarity, so angles and edge ratios are unchanged.
    """
    if area_target <= 0:
        raise ValueError(f"need positive target area, got {area_target}")
    area = signed_area(p)
    if area <= 0:
        raise ValueError(f"cannot project polygon with signed area {area:g}")
    factor = math.sqrt(area_target / area)
    c = centroid(p)
    pts = p.vertices if isinstance(p, Polygon) else np.asarray(p, dtype=float)
    return Polygon(c + factor * (pts - c), orient=False)


def descent_direction(p: Polygon) -> np.ndarray:
    """Negative multiplier residual -(w - lambda_hat * v).

    Orthogonal to the area gradient by the least-squares choice of the
    multiplier (first-order area preservation) and a descent direction
    for the perimeter: <d, grad perimeter> = -|d|^2.
    """
    v = area_gradient(p)
    w = perimeter_gradient(p)
    lam = best_fit_lambda(w, v)
    return -(w - lam * v)


def _record_for(p: Polygon, iteration: int, step_len: float, report=None) -> IterationRecord:
    rep = kkt_residual(p) if report is None else report
    return IterationRecord(
        iter=iteration,
        perimeter=perimeter(p),
        area=signed_area(p),
        residual_relative=rep.residual_relative,
        lambda_hat=rep.lambda_hat,
        step_len=step_len,
        edge_cv=rep.edge_cv,
        angle_cv=rep.angle_cv,
    )


def _try_candidate(p: Polygon, d: np.ndarray, step_len: float, cfg: OptimizerConfig):
    """Build the projected candidate; None when guards reject it."""
    try:
        moved = Polygon(p.vertices + step_len * d, orient=False)
        candidate = project_area(moved, cfg.area_target)
    except (PolygonError, ValueError):
        return None
    lengths = edge_lengths(candidate)
    if float(np.min(lengths)) < cfg.min_edge_frac * float(np.mean(lengths)):
        return None
    if not is_simple(candidate):
        return None
    return candidate


def step(p: Polygon, cfg: OptimizerConfig, step_len: float, iteration: int = 0) -> StepResult:
    """One trial step of the given length.

    The candidate is p + step_len * d re-projected to the target area;
    it is accepted iff it is simple, keeps every edge above
    min_edge_frac times the mean edge, and satisfies the Armijo test
    L(candidate) <= L(p) - armijo_c * step_len * |d|^2. Rejection is a
    normal outcome: the polygon is returned unchanged.
    """
    d = descent_direction(p)
    candidate = _try_candidate(p, d, step_len, cfg)
    if candidate is not None:
        decrease = cfg.armijo_c * step_len * float(np.sum(d * d))
        if perimeter(candidate) <= perimeter(p) - decrease:
            return StepResult(True, candidate, _record_for(candidate, iteration, step_len))
    return StepResult(False, p, _record_for(p, iteration, step_len))


def optimize(p0: Polygon, cfg: OptimizerConfig) -> OptimizeResult:
    """Run the projected-gradient descent from ``p0``.

    The start is projected to the target area first. Iteration stops when
    residual_relative falls below ``cfg.kkt_tol`` (converged) or after
    ``cfg.max_iters`` accepted steps. The trace holds one record per
    accepted step, plus the projected start at iter 0; the area equals
    the target in every record and the perimeter is non-increasing.
    """
    if not isinstance(p0, Polygon):
        p0 = Polygon(p0)
    if not is_simple(p0):
        raise ValueError("starting polygon is not simple")
    if signed_area(p0) <= 0:
        raise ValueError("starting polygon must have positive area")

    p = project_area(p0, cfg.area_target)
    report = kkt_residual(p)
    trace = [_record_for(p, 0, 0.0, report)]
    converged = report.residual_relative <= cfg.kkt_tol

    iteration = 0
    while not converged and iteration < cfg.max_iters:
        iteration += 1

        if cfg.convexify_every > 0 and iteration % cfg.convexify_every == 0:
            p_conv = _convexify_preserving_count(p, cfg.area_target, p.n)
            if p_conv is not None:
                p = p_conv
                report = kkt_residual(p)
                if report.residual_relative <= cfg.kkt_tol:
                    converged = True
                    break

        v = area_gradient(p)
        w = perimeter_gradient(p)
        lam = best_fit_lambda(w, v)
        d = -(w - lam * v)
        d_sq = float(np.sum(d * d))
        perim_p = perimeter(p)

        step_len = cfg.step_init * float(np.mean(edge_lengths(p)))
        step_floor = step_len * _MIN_STEP_FACTOR
        accepted = None
        while step_len > step_floor:
            candidate = _try_candidate(p, d, step_len, cfg)
            if candidate is not None and perimeter(candidate) <= perim_p - cfg.armijo_c * step_len * d_sq:
                accepted = candidate
                break
            step_len *= cfg.armijo_shrink
        if accepted is None:
            break  # line search stalled; report non-convergence

        p = accepted
        report = kkt_residual(p)
        trace.append(_record_for(p, iteration, step_len, report))
        converged = report.residual_relative <= cfg.kkt_tol

    return OptimizeResult(polygon=p, trace=trace, converged=converged)


def convexify(p: Polygon, area_target: float) -> Polygon:
    """Convex hull of the vertices, re-projected to the target area.

    The hull never increases the perimeter and never decreases the area,
    so the re-projection factor is at most one and the combined operation
    strictly shrinks the perimeter of a non-convex input. The vertex
    count may drop; callers needing a fixed n should re-pad with
    :func:`insert_midpoint`.
    """
    hull = convex_hull(p)
    return project_area(hull, area_target)


def _convexify_preserving_count(p: Polygon, area_target: float, n: int):
    """Convexify then re-pad midpoints on longest edges back to n vertices."""
    try:
        q = convexify(p, area_target)
    except PolygonError:
        return None
    while q.n < n:
        q = insert_midpoint(q, longest_edge_index(q))
    return q


def insert_midpoint(p: Polygon, i: int) -> Polygon:
    """Insert the midpoint of edge (a_i, a_{i+1}) as a new straight vertex.

    Area and perimeter are unchanged; the result has n + 1 vertices.
    """
    pts = p.vertices if isinstance(p, Polygon) else np.asarray(p, dtype=float)
    n = len(pts)
    i = i % n
    mid = 0.5 * (pts[i] + pts[(i + 1) % n])
    return Polygon(np.insert(pts, i + 1, mid, axis=0), orient=False)


def longest_edge_index(p) -> int:
    """Index of the longest edge; ties resolve to the lowest index."""
    return int(np.argmax(edge_lengths(p)))
