"""Evolutionary analysis of the p-beauty contest under level-k reasoning."""

from pbeauty.errors import ConvergenceError, DomainError, NoRootError
from pbeauty.model import (
    GameConfig,
    PlayerType,
    PopulationState,
    guess,
    mixed_target,
    target,
)
from pbeauty.analysis import (
    AdvantageSign,
    CriticalCurvePoint,
    Favors,
    RootResult,
    advantage,
    exists_interior_root,
    head_to_head_closed_form,
    head_to_head_distances,
    head_to_head_margin,
    m_star,
    m_star_curve,
    n_star,
    p_min,
    p_star_finite,
    p_star_infinite,
    phi_finite,
    phi_finite_limit_m,
    phi_infinite,
    phi_infinite_factored,
    phi_infinite_limit,
)
from pbeauty.dynamics import (
    PayoutKind,
    PayoutScheme,
    Trajectory,
    fitness,
    invasion_series,
    payouts,
    replicator_step,
    simulate,
)

__version__ = "0.1.0"
