"""Discrete replicator dynamics for mixed populations of level-k players."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from pbeauty.errors import DomainError
from pbeauty.model import GameConfig, PlayerType, PopulationState, guess, mixed_target

WIN_TOL = 1e-12
TRAJ_SIMPLEX_TOL = 1e-9


class PayoutKind(enum.Enum):
    ALL_OR_NOTHING = "all_or_nothing"
    INVERSE_DISTANCE = "inverse_distance"


@dataclass(frozen=True)
class PayoutScheme:
    """How a generation's guesses are turned into fitness.

    ``epsilon`` floors distances for the inverse-distance payout; None means
    ``1e-9 * c`` for whatever game it is used with.
    """

    kind: PayoutKind = PayoutKind.INVERSE_DISTANCE
    selection_strength: float = 0.5
    epsilon: Optional[float] = None

    def __post_init__(self) -> None:
        if not isinstance(self.kind, PayoutKind):
            object.__setattr__(self, "kind", PayoutKind(self.kind))
        if not (0.0 < self.selection_strength <= 1.0):
            raise DomainError(
                f"selection_strength must lie in (0, 1], got {self.selection_strength}"
            )
        if self.epsilon is not None and not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")

    def eps_for(self, cfg: GameConfig) -> float:
        return 1e-9 * cfg.c if self.epsilon is None else self.epsilon


@dataclass(frozen=True)
class Fixation:
    winner: PlayerType
    generation: int


@dataclass
class Trajectory:
    ks: tuple[float, ...]
    steps: list[tuple[float, ...]] = field(default_factory=list)
    target_series: list[float] = field(default_factory=list)
    fixation: Optional[Fixation] = None

    @property
    def final(self) -> tuple[float, ...]:
        return self.steps[-1]


def _target(ks: Sequence[float], xs: Sequence[float], cfg: GameConfig) -> float:
    return cfg.p * math.fsum(x * guess(k, cfg) for k, x in zip(ks, xs))


def _payouts(ks, xs, cfg: GameConfig, scheme: PayoutScheme) -> list[float]:
    support = [i for i, x in enumerate(xs) if x > 0]
    if not support:
        raise DomainError("population has no type with positive frequency")
    t = _target(ks, xs, cfg)
    dist = [abs(guess(k, cfg) - t) for k in ks]
    out = [0.0] * len(ks)
    if scheme.kind is PayoutKind.ALL_OR_NOTHING:
        best = min(dist[i] for i in support)
        winners = [i for i in support if dist[i] - best <= WIN_TOL]
        for i in winners:
            out[i] = 1.0 / len(winners)
    else:
        eps = scheme.eps_for(cfg)
        for i in support:
            out[i] = 1.0 / (dist[i] + eps)
    return out


def _fitness(ks, xs, cfg: GameConfig, scheme: PayoutScheme) -> list[float]:
    raw = _payouts(ks, xs, cfg, scheme)
    top = max(raw)
    s = scheme.selection_strength
    return [1.0 - s + s * (u / top) for u in raw]


def _check_simplex(xs: Sequence[float], tol: float) -> None:
    if any(x < 0 for x in xs) or abs(math.fsum(xs) - 1.0) > tol:
        raise AssertionError(f"frequencies left the simplex: {xs}")


def _step(ks, xs, cfg: GameConfig, scheme: PayoutScheme) -> tuple[float, ...]:
    _check_simplex(xs, TRAJ_SIMPLEX_TOL)
    f = _fitness(ks, xs, cfg, scheme)
    weighted = [x * fi for x, fi in zip(xs, f)]
    total = math.fsum(weighted)
    new = tuple(w / total for w in weighted)
    _check_simplex(new, TRAJ_SIMPLEX_TOL)
    return new


def payouts(pop: PopulationState, cfg: GameConfig, scheme: PayoutScheme) -> dict[float, float]:
    """Raw payout per type, keyed by step count.

    All-or-nothing splits a unit prize among the types closest to the
    target. Inverse-distance pays ``1 / (distance + epsilon)``. Types with
    zero frequency receive nothing and cannot win.
    """
    return dict(zip(pop.ks, _payouts(pop.ks, pop.freqs(), cfg, scheme)))


def fitness(pop: PopulationState, cfg: GameConfig, scheme: PayoutScheme) -> dict[float, float]:
    """``1 - s + s * payout / max_payout`` per type."""
    return dict(zip(pop.ks, _fitness(pop.ks, pop.freqs(), cfg, scheme)))


def replicator_step(
    pop: PopulationState, cfg: GameConfig, scheme: PayoutScheme
) -> PopulationState:
    new = _step(pop.ks, pop.freqs(), cfg, scheme)
    return PopulationState(pop.ks, new, "freqs")


def _fixated(xs: Sequence[float], threshold: float) -> Optional[int]:
    for i, x in enumerate(xs):
        if x >= 1.0 - threshold:
            return i
    return None


def simulate(
    initial: PopulationState,
    cfg: GameConfig,
    scheme: PayoutScheme,
    max_steps: int = 10**5,
    fixation_threshold: float = 1e-6,
) -> Trajectory:
    """Iterate the replicator map until one type holds at least
    ``1 - fixation_threshold`` of the population, or ``max_steps`` runs out."""
    if max_steps < 1:
        raise DomainError(f"max_steps must be >= 1, got {max_steps}")
    if not (0.0 < fixation_threshold < 0.5):
        raise DomainError(f"fixation_threshold must lie in (0, 0.5), got {fixation_threshold}")

    ks = initial.ks
    xs = initial.freqs()
    traj = Trajectory(ks)
    for gen in range(max_steps + 1):
        traj.steps.append(xs)
        traj.target_series.append(_target(ks, xs, cfg))
        winner = _fixated(xs, fixation_threshold)
        if winner is not None:
            traj.fixation = Fixation(PlayerType(ks[winner]), gen)
            break
        if gen == max_steps:
            break
        xs = _step(ks, xs, cfg, scheme)
    return traj


def invasion_series(k: float, m: float, N: int, cfg: GameConfig) -> list[float]:
    """Target guess as the number of (k+m)-players grows from 0 to N."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    return [mixed_target(k, m, N, M, cfg) for M in range(N + 1)]
