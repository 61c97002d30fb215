"""Game parameters, level-k player types, populations and target guesses."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping, Union

from pbeauty.errors import DomainError

#: two step counts closer than this denote the same player type
K_TOL = 1e-12
SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class GameConfig:
    """Contraction multiplier ``p`` and interval center ``c`` (interval [0, 2c])."""

    p: float
    c: float = 50.0

    def __post_init__(self) -> None:
        if not (0.0 < self.p < 1.0):
            raise DomainError(f"p must lie in (0, 1), got {self.p}")
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise DomainError(f"c must be positive, got {self.c}")


@dataclass(frozen=True, order=True)
class PlayerType:
    """A level-k player; ``k`` is a real number of reasoning steps."""

    k: float

    def __post_init__(self) -> None:
        if not (self.k >= 0.0 and math.isfinite(self.k)):
            raise DomainError(f"k must be a finite number >= 0, got {self.k}")

    def same_as(self, other: "PlayerType") -> bool:
        return abs(self.k - other.k) <= K_TOL


TypeKey = Union[PlayerType, float, int]


def _as_k(key: TypeKey) -> float:
    return key.k if isinstance(key, PlayerType) else PlayerType(float(key)).k


def _merge(items: Mapping[TypeKey, float]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Collapse keys equal within K_TOL, sorted by k."""
    pairs = sorted((_as_k(key), float(w)) for key, w in items.items())
    ks: list[float] = []
    ws: list[float] = []
    for k, w in pairs:
        if ks and abs(k - ks[-1]) <= K_TOL:
            ws[-1] += w
        else:
            ks.append(k)
            ws.append(w)
    return tuple(ks), tuple(ws)


@dataclass(frozen=True)
class PopulationState:
    """Player types with either integer counts or simplex frequencies.

    Build with :meth:`from_counts` or :meth:`from_freqs`; ``ks`` is sorted
    ascending and ``weights`` is aligned with it.
    """

    ks: tuple[float, ...]
    weights: tuple[float, ...]
    kind: Literal["counts", "freqs"]

    def __post_init__(self) -> None:
        if len(self.ks) == 0:
            raise DomainError("population is empty")
        if len(self.ks) != len(self.weights):
            raise DomainError("ks and weights differ in length")
        if self.kind == "counts":
            for w in self.weights:
                if w != int(w) or w < 1:
                    raise DomainError(f"counts must be integers >= 1, got {w}")
            if sum(self.weights) < 2:
                raise DomainError("a counts population needs N >= 2 players")
        elif self.kind == "freqs":
            if any(not (w >= 0.0) for w in self.weights):
                raise DomainError("frequencies must be non-negative")
            if abs(math.fsum(self.weights) - 1.0) > SIMPLEX_TOL:
                raise DomainError(
                    f"frequencies sum to {math.fsum(self.weights)!r}, not 1"
                )
        else:
            raise DomainError(f"unknown population kind {self.kind!r}")

    @classmethod
    def from_counts(cls, counts: Mapping[TypeKey, int]) -> "PopulationState":
        ks, ws = _merge(counts)
        return cls(ks, tuple(int(w) if w == int(w) else w for w in ws), "counts")

    @classmethod
    def from_freqs(cls, freqs: Mapping[TypeKey, float]) -> "PopulationState":
        ks, ws = _merge(freqs)
        return cls(ks, ws, "freqs")

    @property
    def N(self) -> int:
        if self.kind != "counts":
            raise DomainError("N is only defined for a counts population")
        return int(sum(self.weights))

    @property
    def types(self) -> tuple[PlayerType, ...]:
        return tuple(PlayerType(k) for k in self.ks)

    def freqs(self) -> tuple[float, ...]:
        total = math.fsum(self.weights)
        return tuple(w / total for w in self.weights)

    def to_freqs(self) -> "PopulationState":
        if self.kind == "freqs":
            return self
        return PopulationState(self.ks, self.freqs(), "freqs")

    def as_dict(self) -> dict[float, float]:
        return dict(zip(self.ks, self.weights))


def guess(k: float, cfg: GameConfig) -> float:
    """The level-k guess ``c * p**k``."""
    if not (k >= 0.0 and math.isfinite(k)):
        raise DomainError(f"k must be a finite number >= 0, got {k}")
    return cfg.c * cfg.p**k


def target(pop: PopulationState, cfg: GameConfig) -> float:
    """``p`` times the population's mean guess (own guess included)."""
    freqs = pop.freqs()
    mean = math.fsum(x * guess(k, cfg) for k, x in zip(pop.ks, freqs))
    return cfg.p * mean


def mixed_target(k: float, m: float, N: int, M: int, cfg: GameConfig) -> float:
    """Target when ``M`` of ``N`` players use ``k + m`` steps and the rest use ``k``."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not (0 <= M <= N):
        raise DomainError(f"need 0 <= M <= N, got M={M}, N={N}")
    if not m > 0:
        raise DomainError(f"m must be positive, got {m}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    # (N + M(p**m - 1)) / N, arranged to avoid cancellation at M = N
    return cfg.c * cfg.p ** (k + 1) * ((N - M) + M * cfg.p**m) / N
