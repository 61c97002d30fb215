"""Scalar bisection and golden-section minimization on bracketed intervals."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from pbeauty.errors import ConvergenceError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, int, float]:
    """Find a zero of ``f`` in ``[a, b]`` by bisection.

    ``f(a)`` and ``f(b)`` must have opposite signs (or one of them be zero).
    Stops once ``|f(x)| <= tol`` or the bracket has collapsed to adjacent
    floats. Returns ``(x, iterations, |f(x)|)``.
    """
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a, 0, 0.0
    if fb == 0.0:
        return b, 0, 0.0
    if (fa > 0) == (fb > 0):
        raise ValueError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")

    for it in range(1, max_iter + 1):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if abs(fm) <= tol:
            return mid, it, abs(fm)
        if mid == a or mid == b:
            # bracket exhausted at float resolution
            break
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    raise ConvergenceError(
        f"bisection did not reach |f| <= {tol} within {max_iter} iterations"
    )


def golden_min(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Golden-section search for a minimum of a unimodal ``f`` on ``[a, b]``.

    The endpoints are included as candidates so that a minimum sitting on
    the boundary is still reported. Returns ``(x_min, f(x_min))``.
    """
    best_x, best_f = a, f(a)
    fb = f(b)
    if fb < best_f:
        best_x, best_f = b, fb

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def grid_then_golden(
    f: Callable[[float], float],
    f_vec: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    grid: int = 1024,
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Global minimum on ``[a, b]``: coarse grid scan, then golden refinement
    around the best grid point."""
    if grid < 3:
        raise ValueError("grid needs at least 3 points")
    xs = np.linspace(a, b, grid)
    i = int(np.argmin(f_vec(xs)))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, grid - 1)]
    return golden_min(f, float(lo), float(hi), tol=tol)


def bisect_log(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    rtol: float = 4e-16,
    max_iter: int = 400,
) -> tuple[float, int, float]:
    """Bisection in ``log x`` on a positive bracket ``0 < a < b``.

    Meant for roots that may sit many orders of magnitude below ``b``.
    Stops when ``|f(x)| <= tol`` and the bracket is relatively narrower
    than ``rtol``, or when it can no longer shrink.
    """
    if not (0.0 < a < b):
        raise ValueError(f"need 0 < a < b, got [{a}, {b}]")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a, 0, 0.0
    if fb == 0.0:
        return b, 0, 0.0
    if (fa > 0) == (fb > 0):
        raise ValueError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    for it in range(1, max_iter + 1):
        mid = math.sqrt(a) * math.sqrt(b)
        if not (a < mid < b):
            mid = 0.5 * (a + b)
        if not (a < mid < b):
            x, fx = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
            if abs(fx) <= tol:
                return x, it, abs(fx)
            break
        fm = f(mid)
        if fm == 0.0 or (abs(fm) <= tol and (b - a) <= rtol * mid):
            return mid, it, abs(fm)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    raise ConvergenceError(
        f"log-bisection did not reach |f| <= {tol} within {max_iter} iterations"
    )
