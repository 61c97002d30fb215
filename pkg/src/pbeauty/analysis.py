"""Advantage functions, their roots, and the critical (N, m) curve.

Sign convention throughout: a positive advantage means the player using
``m`` more steps is strictly closer to the target than the resident
k-player.

The advantage functions are evaluated in the rearranged form
``2(1 - p) + (p**m - 1) * w`` with ``p**m - 1`` taken through ``expm1``.
Both terms vanish at ``p = 1``, so this keeps full relative precision in
the neighbourhood of the endpoint root, which is where the critical curve
is decided.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from pbeauty.errors import DomainError, NoRootError
from pbeauty.numerics import bisect, bisect_log, grid_then_golden

TIE_TOL = 1e-15
RIGHT_MARGIN = 1e-9
DEFAULT_TOL = 1e-12
MAX_ITER = 200


class Favors(enum.Enum):
    HIGHER_STEP = "higher"
    LOWER_STEP = "lower"
    TIE = "tie"


@dataclass(frozen=True)
class AdvantageSign:
    value: float
    favors: Favors

    @classmethod
    def of(cls, value: float, scale: float = 1.0) -> "AdvantageSign":
        """Classify ``value``; ``scale`` is a positive factor it carries
        beyond the O(1) advantage, so ties are judged on ``value / scale``."""
        if abs(value) <= TIE_TOL * scale:
            return cls(value, Favors.TIE)
        return cls(value, Favors.HIGHER_STEP if value > 0 else Favors.LOWER_STEP)


@dataclass(frozen=True)
class RootResult:
    """A located root of an advantage function.

    ``excess`` is ``p_star - 1/2`` carried at full relative precision; for
    large ``m`` it drops below the spacing of doubles near 1/2, so ``p_star``
    alone rounds to 0.5.
    """

    p_star: float
    bracket: tuple[float, float]
    iterations: int
    residual: float
    excess: float


@dataclass(frozen=True)
class CriticalCurvePoint:
    N: int
    m_star: Optional[float]


def _check_p(p: float) -> None:
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p}")


def _check_m(m: float) -> None:
    if not (m > 0.0):
        raise DomainError(f"m must be positive, got {m}")


def _check_N(N: int, least: int = 1) -> None:
    if int(N) != N or N < least:
        raise DomainError(f"N must be an integer >= {least}, got {N}")


# -- head to head ----------------------------------------------------------

def _check_h2h(k: float, m: float, p: float, c: float) -> None:
    _check_m(m)
    _check_p(p)
    if not c > 0:
        raise DomainError(f"c must be positive, got {c}")
    if not k >= 0:
        raise DomainError(f"k must be >= 0, got {k}")


def head_to_head_closed_form(k: float, m: float, p: float, c: float) -> tuple[float, float]:
    """The textbook expressions for the two distances in a k vs k+m match.

    These assume the higher-step guess lies below the target. When
    ``p**m > p / (2 - p)`` it does not, and the second value comes out
    negative. Use :func:`head_to_head_distances` for actual distances.
    """
    _check_h2h(k, m, p, c)
    scale = c * p**k
    d_low = scale * (1 - p / 2 - p ** (m + 1) / 2)
    d_high = scale * (p / 2 + p ** (m + 1) / 2 - p**m)
    return d_low, d_high


def head_to_head_distances(k: float, m: float, p: float, c: float) -> tuple[float, float]:
    """``(|guess_k - target|, |guess_{k+m} - target|)`` for a two-player match."""
    _check_h2h(k, m, p, c)
    g_low = c * p**k
    g_high = c * p ** (k + m)
    t = p * (g_low + g_high) / 2
    return abs(g_low - t), abs(g_high - t)


def head_to_head_margin(k: float, m: float, p: float, c: float) -> AdvantageSign:
    _check_h2h(k, m, p, c)
    scale = c * p**k
    return AdvantageSign.of(scale * (1 - p) * (1 + p**m), scale)


# -- infinite population ---------------------------------------------------

def _pm1(p, m):
    """``p**m - 1`` without cancellation; works on floats and arrays."""
    return np.expm1(m * np.log(p))


def phi_infinite(p: float, m: float) -> float:
    """Advantage ``1 - 2p + p**m`` of a lone (k+m)-player in a huge population."""
    _check_p(p)
    _check_m(m)
    return float(2 * (1 - p) + _pm1(p, m))


def phi_infinite_factored(p: float, m: int) -> float:
    """``(1 - p)(1 - p - ... - p**(m-1))``; identical to phi_infinite for integer m.

    ``p = 1`` is accepted here since it is the degenerate root of both factors.
    """
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    if not (0.0 < p <= 1.0):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    m = int(m)
    tail = math.fsum(p**j for j in range(1, m))
    return (1 - p) * (1 - tail)


def phi_infinite_limit(p: float) -> float:
    _check_p(p)
    return 1 - 2 * p


def p_min(m: float) -> float:
    """Interior minimizer ``(2/m)**(1/(m-1))`` of phi_infinite."""
    if not m > 1:
        raise DomainError(f"p_min needs m > 1, got {m}")
    return (2 / m) ** (1 / (m - 1))


def p_star_infinite(m: float, tol: float = DEFAULT_TOL) -> RootResult:
    """Root of phi_infinite in (1/2, 1), bracketed by ``[1/2, p_min(m)]``.

    The search runs on the offset ``p - 1/2`` in log coordinates, which
    stays resolvable up to ``m`` of about 1070; beyond that the offset
    underflows and is reported as 0.
    """
    if not m > 2:
        raise NoRootError(f"phi_infinite has no root in (1/2, 1) for m={m} <= 2")
    if not tol > 0:
        raise DomainError("tol must be positive")
    hi = p_min(m)

    base = 2.0**-m
    if base / 2 == 0.0:
        # offset below the smallest subnormal: p* is 1/2 to double precision
        return RootResult(0.5, (0.5, hi), 0, 0.0, 0.0)

    def phi_shifted(d: float) -> float:
        # phi_infinite(1/2 + d) = 2**-m * (1 + 2d)**m - 2d, split so that the
        # leading terms cancel exactly at d = 2**-(m+1)
        grow = m * math.log1p(2 * d)
        if grow > 1.0:
            return math.exp(grow - m * math.log(2)) - 2 * d
        return base * math.expm1(grow) + (base - 2 * d)

    # phi_shifted > 0 at 2**-(m+1), since (1/2 + d)**m > 2**-m = 2d there
    d_lo = base / 2
    d, it, res = bisect_log(phi_shifted, d_lo, hi - 0.5, tol=tol, max_iter=MAX_ITER)
    return RootResult(0.5 + d, (0.5, hi), it, res, d)


# -- finite population -----------------------------------------------------

def _phi_finite_raw(p, N, m):
    return 2 * (1 - p) + _pm1(p, m) * (1 - 2 * p / (N + 1))


def phi_finite(p: float, N: int, m: float) -> float:
    """Advantage of one (k+m)-player entering a population of ``N`` k-players."""
    _check_p(p)
    _check_N(N)
    _check_m(m)
    return float(_phi_finite_raw(p, N, m))


def phi_finite_limit_m(p: float, N: int) -> float:
    """Large-``m`` limit ``1 - 2Np/(N+1)``; zero at ``p = 1/2 + 1/(2N)``."""
    _check_p(p)
    _check_N(N)
    return 1 - 2 * N * p / (N + 1)


def _interior_min(N: int, m: float, grid: int, refine_tol: float) -> tuple[float, float]:
    return grid_then_golden(
        lambda p: float(_phi_finite_raw(p, N, m)),
        lambda ps: _phi_finite_raw(ps, N, m),
        0.5,
        1.0 - RIGHT_MARGIN,
        grid=grid,
        tol=refine_tol,
    )


def exists_interior_root(
    N: int, m: float, grid: int = 1024, refine_tol: float = 1e-12
) -> bool:
    """Whether phi_finite dips below zero somewhere in (1/2, 1).

    phi_finite is positive at 1/2 and zero at 1, so a strictly negative
    interior minimum is equivalent to a root in the open interval.
    """
    _check_N(N, least=2)
    _check_m(m)
    if m <= 2:
        # phi_finite > phi_infinite >= (1 - p)**2 for m <= 2
        return False
    return _interior_min(N, m, grid, refine_tol)[1] < 0.0


def p_star_finite(
    N: int, m: float, tol: float = DEFAULT_TOL, grid: int = 1024
) -> Optional[RootResult]:
    """Unique root of phi_finite in (1/2, 1), or None when there is none."""
    _check_N(N, least=2)
    _check_m(m)
    if not tol > 0:
        raise DomainError("tol must be positive")
    if m <= 2:
        return None
    p_lo, f_lo = _interior_min(N, m, grid, 1e-12)
    if not f_lo < 0.0:
        return None
    x, it, res = bisect(
        lambda p: float(_phi_finite_raw(p, N, m)), 0.5, p_lo, tol=tol, max_iter=MAX_ITER
    )
    return RootResult(x, (0.5, p_lo), it, res, x - 0.5)


def advantage(p: float, m: float, N: Optional[int] = None) -> AdvantageSign:
    """Signed advantage, using the infinite-population form when ``N`` is None."""
    value = phi_infinite(p, m) if N is None else phi_finite(p, N, m)
    return AdvantageSign.of(value)


# -- critical curve --------------------------------------------------------

def m_star(N: int, tol: float = 1e-6, m_max: float = 100.0) -> Optional[float]:
    """Smallest step gap giving phi_finite an interior root at population ``N``.

    Returned as the upper end of the final bisection bracket, so the value
    itself always has a root. None when even ``m_max`` has none.
    """
    _check_N(N, least=2)
    if not m_max > 2:
        raise DomainError(f"m_max must exceed 2, got {m_max}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    if not exists_interior_root(N, m_max):
        return None
    lo, hi = 2.0, float(m_max)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if exists_interior_root(N, mid):
            hi = mid
        else:
            lo = mid
    return hi


def m_star_curve(
    Ns, tol: float = 1e-6, m_max: float = 100.0, jobs: int = 1
) -> list[CriticalCurvePoint]:
    """m_star over several population sizes, in input order."""
    Ns = [int(n) for n in Ns]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            values = list(ex.map(partial(m_star, tol=tol, m_max=m_max), Ns))
    else:
        values = [m_star(n, tol=tol, m_max=m_max) for n in Ns]
    return [CriticalCurvePoint(n, v) for n, v in zip(Ns, values)]


def n_star(m: float, N_max: int = 10**6) -> Optional[int]:
    """Smallest population size ``N <= N_max`` whose phi_finite has an interior root."""
    if not m > 2:
        raise NoRootError(f"no population size gives a root for m={m} <= 2")
    _check_N(N_max, least=2)
    if exists_interior_root(2, m):
        return 2
    # gallop to a bracket (no root at lo, root at hi), then bisect on integers
    lo, hi = 2, 4
    while True:
        if hi >= N_max:
            hi = N_max
            if not exists_interior_root(hi, m):
                return None
            break
        if exists_interior_root(hi, m):
            break
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exists_interior_root(mid, m):
            hi = mid
        else:
            lo = mid
    return hi
