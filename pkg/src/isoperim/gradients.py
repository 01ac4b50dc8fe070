"""Analytic per-vertex gradients of polygon area and perimeter.

The gradient of the area with respect to vertex i is half the quarter-turn
(clockwise) of the diagonal from vertex i-1 to vertex i+1; it is orthogonal
to that diagonal and points outward for CCW polygons. The gradient of the
perimeter is the sum of the two unit vectors pointing into vertex i from
its neighbours; it lies on the interior angle bisector with magnitude
2 cos(theta_i / 2), vanishing exactly at straight vertices.

A central finite-difference oracle is included for verification; it shares
no arithmetic with the analytic formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import signed_area, perimeter, vertex_array

DEFAULT_FD_STEP = 1e-6

_FUNCTIONALS = {"area": signed_area, "perimeter": perimeter}


@dataclass(frozen=True)
class GradientField:
    """Per-vertex area gradients (``area_grad``) and perimeter gradients
    (``perim_grad``), each of shape (n, 2), indexed like the vertices."""

    area_grad: np.ndarray
    perim_grad: np.ndarray


def area_gradient(p) -> np.ndarray:
    """d(signed area)/d(vertex i) = 0.5 * quarter-turn of (a[i+1] - a[i-1]).

    The quarter turn is hard-coded as (dy, -dx) so the magnitude identity
    |grad_i| = 0.5 * |a[i+1] - a[i-1]| holds bit-for-bit.
    """
    pts = vertex_array(p)
    diag = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
    return 0.5 * np.column_stack((diag[:, 1], -diag[:, 0]))


def perimeter_gradient(p) -> np.ndarray:
    """d(perimeter)/d(vertex i): sum of unit vectors from both neighbours
    into vertex i. Zero exactly when the neighbours and the vertex are
    collinear in order (a straight vertex)."""
    pts = vertex_array(p)
    back = pts - np.roll(pts, 1, axis=0)
    fwd = np.roll(pts, -1, axis=0) - pts
    len_back = np.hypot(back[:, 0], back[:, 1])
    len_fwd = np.hypot(fwd[:, 0], fwd[:, 1])
    if np.any(len_back == 0.0) or np.any(len_fwd == 0.0):
        raise ValueError("perimeter gradient undefined: zero-length edge")
    return back / len_back[:, None] - fwd / len_fwd[:, None]


def gradient_field(p) -> GradientField:
    return GradientField(area_grad=area_gradient(p), perim_grad=perimeter_gradient(p))


def fd_gradient(functional: str, p, h: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Central finite differences of a polygon functional, one coordinate
    at a time: (f(x + h) - f(x - h)) / (2h).

    Parameters
    ----------
    functional : {"area", "perimeter"}
    h : positive step; every edge must be longer than 2h so perturbed
        vertex lists stay valid.
    """
    if functional not in _FUNCTIONALS:
        raise ValueError(f"unknown functional {functional!r}; expected 'area' or 'perimeter'")
    if h <= 0:
        raise ValueError(f"need positive step, got {h}")
    f = _FUNCTIONALS[functional]
    pts = vertex_array(p)
    edges = np.roll(pts, -1, axis=0) - pts
    if np.min(np.hypot(edges[:, 0], edges[:, 1])) <= 2.0 * h:
        raise ValueError(
            f"edge shorter than 2h={2.0 * h:g}: perturbation could collapse consecutive vertices"
        )
    grad = np.zeros_like(pts)
    work = pts.copy()
    for i in range(len(pts)):
        for k in range(2):
            orig = work[i, k]
            work[i, k] = orig + h
            f_plus = f(work)
            work[i, k] = orig - h
            f_minus = f(work)
            work[i, k] = orig
            grad[i, k] = (f_plus - f_minus) / (2.0 * h)
    return grad


@dataclass(frozen=True)
class GradcheckReport:
    """Analytic-vs-finite-difference agreement. ``max_rel_err_perim`` is
    relative to a unit scale (perimeter gradient components are O(1))."""

    max_abs_err_area: float
    max_rel_err_perim: float
    passed: bool


def gradcheck(p, h: float = DEFAULT_FD_STEP, tol: float = 1e-6) -> GradcheckReport:
    """Compare analytic gradients against the finite-difference oracle."""
    err_area = float(np.max(np.abs(area_gradient(p) - fd_gradient("area", p, h))))
    err_perim = float(np.max(np.abs(perimeter_gradient(p) - fd_gradient("perimeter", p, h))))
    return GradcheckReport(
        max_abs_err_area=err_area,
        max_rel_err_perim=err_perim,
        passed=err_area <= tol and err_perim <= tol,
    )
