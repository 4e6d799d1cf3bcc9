"""Grid numerics: finite differences and cumulative quadrature.

Everything here works on strictly increasing, possibly non-uniform grids and
is fourth-order accurate, so downstream error budgets are dominated by grid
resolution rather than by the numerics.
"""

from __future__ import annotations

import numpy as np


def fd_weights(x: np.ndarray, x0: float, m: int) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at x0 on nodes x.

    Fornberg's recursion; exact for polynomials of degree < len(x).
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    if m >= n:
        raise ValueError("need more than m nodes for an m-th derivative")
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def fd_derivative(x: np.ndarray, y: np.ndarray, order: int = 1) -> np.ndarray:
    """m-th derivative of sampled data, 4th-order accurate on non-uniform grids.

    Uses sliding Fornberg stencils of ``order + 4`` nodes, shifted one-sidedly
    near the ends.  ``y`` may have trailing dimensions, e.g. shape (n, 3).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    npts = order + 4
    if n < npts:
        raise ValueError(f"need at least {npts} samples for order-{order} derivative")
    out = np.empty_like(y)
    for i in range(n):
        s = min(max(i - npts // 2, 0), n - npts)
        w = fd_weights(x[s : s + npts], x[i], order)
        out[i] = np.tensordot(w, y[s : s + npts], axes=(0, 0))
    return out


def _cubic_interval_weights(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-interval quadrature weights from sliding cubic fits.

    Returns (windows, weights) where windows[i] is the 4-node index window for
    interval [x[i], x[i+1]] and weights[i] integrates samples on that window
    exactly for cubics.
    """
    n = len(x)
    starts = np.clip(np.arange(n - 1) - 1, 0, n - 4)
    windows = starts[:, None] + np.arange(4)[None, :]
    # Scale each window to unit size for conditioning.
    left = x[:-1]
    scale = x[windows[:, -1]] - x[windows[:, 0]]
    t = (x[windows] - left[:, None]) / scale[:, None]
    b = (x[1:] - left) / scale
    # Solve V^T w = moments, where V[j,k] = t_j^k and moments[k] integrates t^k.
    powers = np.arange(4)
    vt = t[:, None, :] ** powers[None, :, None]
    moments = b[:, None] ** (powers[None, :] + 1) / (powers[None, :] + 1)
    w = np.linalg.solve(vt, moments[..., None])[..., 0] * scale[:, None]
    return windows, w


def cumulative_integral(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cumulative integral of samples, 4th-order accurate, starting at 0.

    ``y`` may have trailing dimensions; integration runs along axis 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 4:
        raise ValueError("need at least 4 samples")
    if np.any(np.diff(x) <= 0):
        raise ValueError("grid must be strictly increasing")
    windows, w = _cubic_interval_weights(x)
    increments = np.einsum("ij,ij...->i...", w, y[windows])
    out = np.zeros_like(y)
    out[1:] = np.cumsum(increments, axis=0)
    return out


def integral(x: np.ndarray, y: np.ndarray) -> float | np.ndarray:
    """Definite integral over the whole grid (4th-order accurate)."""
    return cumulative_integral(x, y)[-1]
