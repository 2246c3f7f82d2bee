"""Composable security-parameter budgets, kept in log space.

Every failure probability is stored as ``log2(1/eps)``.  The post-selection
reduction rescales the collective security level by ``(N+1)^(d^4-1)``, which
for block sizes up to 10^15 drives ``eps`` far below anything binary64 can
represent on a linear scale; every downstream formula only ever consumes
``log(1/eps)``, so no linear-scale probability is materialized anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InvalidWeights, MissingWeight

# Weight sums must match 1 to this absolute tolerance.
WEIGHT_SUM_TOL = 1e-12

# The error-correction failure rides on top of the split total; capping it at
# eps_total/100 keeps the achieved failure probability within 1% of nominal.
_MIN_EC_MARGIN_LOG2 = math.log2(100.0)


@dataclass(frozen=True)
class LogEpsilon:
    """A failure probability eps in (0, 1], stored as log2(1/eps)."""

    log2_inv: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.log2_inv):
            raise DomainError(f"log2(1/eps) must be finite, got {self.log2_inv}")
        if self.log2_inv < 0:
            raise DomainError(
                f"log2(1/eps) must be >= 0 (eps <= 1), got {self.log2_inv}"
            )

    @classmethod
    def from_probability(cls, eps: float) -> "LogEpsilon":
        if not 0.0 < eps <= 1.0:
            raise DomainError(f"eps must be in (0, 1], got {eps}")
        return cls(-math.log2(eps))

    @property
    def ln_inv(self) -> float:
        """ln(1/eps), for formulas written in natural logs."""
        return self.log2_inv * math.log(2.0)

    @property
    def log2_two_over(self) -> float:
        """log2(2/eps) = 1 + log2(1/eps)."""
        return 1.0 + self.log2_inv

    def scaled(self, weight: float) -> "LogEpsilon":
        """eps * weight for a weight in (0, 1]."""
        if not 0.0 < weight <= 1.0:
            raise DomainError(f"weight must be in (0, 1], got {weight}")
        return LogEpsilon(self.log2_inv - math.log2(weight))

    def divided(self, count: int) -> "LogEpsilon":
        """eps / count for a positive integer count."""
        if count < 1:
            raise DomainError(f"count must be >= 1, got {count}")
        return LogEpsilon(self.log2_inv + math.log2(count))

    def added(self, other: "LogEpsilon") -> "LogEpsilon":
        """eps_1 + eps_2, evaluated without leaving log space."""
        a, b = sorted((self.log2_inv, other.log2_inv))
        # eps_a dominates; eps_a + eps_b = eps_a * (1 + 2^(a - b)).
        return LogEpsilon(a - math.log2(1.0 + 2.0 ** (a - b)))


def collective_epsilon_from_coherent(
    eps_coh: LogEpsilon, n_signals: int, d_signal: int
) -> LogEpsilon:
    """Collective-attack security level implied by a coherent-attack target.

    The post-selection reduction costs a factor ``(N+1)^(d^4-1)``:
    ``log2(1/eps_col) = log2(1/eps_coh) + (d^4-1) * log2(N+1)``.

    Parameters
    ----------
    eps_coh : LogEpsilon
        Tolerated failure probability against coherent attacks.
    n_signals : int
        Block size N (number of received signals).  N = 0 is accepted and
        makes the rescaling factor exactly 1.
    d_signal : int
        Dimension of each exchanged signal (2 for qubits).
    """
    if n_signals < 0:
        raise DomainError(f"n_signals must be >= 0, got {n_signals}")
    if d_signal < 2:
        raise DomainError(f"d_signal must be >= 2, got {d_signal}")
    exponent = d_signal**4 - 1
    return LogEpsilon(eps_coh.log2_inv + exponent * math.log2(n_signals + 1.0))


@dataclass(frozen=True)
class EpsilonBudget:
    """Fixed-weight split of a security level across protocol phases.

    ``eps_col`` is the user-facing failure target being split: the collective
    security level for the collective bound, or the coherent one for the
    post-selection and de Finetti bounds.  The weights allocate it to privacy
    amplification (``w_pa``), smooth-min-entropy estimation (``w_bar``) and
    parameter estimation (``w_pe``, shared by ``n_pe`` estimates); the
    de Finetti reduction adds ``w_def``.  Splitting by weights keeps the sum
    constraint satisfied by construction, and restricts an optimizer to a
    simplex.

    The error-correction failure ``eps_ec`` is set by the choice of code and
    is charged on top of the split; it must not exceed ``eps_col / 100`` so
    the achieved total stays within 1% of nominal.
    """

    eps_col: LogEpsilon
    eps_ec: LogEpsilon
    w_pa: float
    w_bar: float
    w_pe: float
    n_pe: int
    w_def: float | None = None

    def __post_init__(self) -> None:
        weights = [self.w_pa, self.w_bar, self.w_pe]
        names = ["w_pa", "w_bar", "w_pe"]
        if self.w_def is not None:
            weights.append(self.w_def)
            names.append("w_def")
        for name, w in zip(names, weights):
            if not (math.isfinite(w) and w > 0.0):
                raise InvalidWeights(f"{name} must be a positive real, got {w}")
        total = math.fsum(weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidWeights(
                f"weights must sum to 1 within {WEIGHT_SUM_TOL}, got {total!r}"
            )
        if self.n_pe < 1:
            raise InvalidWeights(f"n_pe must be a positive integer, got {self.n_pe}")
        if self.eps_ec.log2_inv < self.eps_col.log2_inv + _MIN_EC_MARGIN_LOG2:
            raise InvalidWeights(
                "eps_ec must be at most eps_col/100 so the achieved failure "
                "probability exceeds the nominal one by at most 1%"
            )


@dataclass(frozen=True)
class ResolvedEpsilons:
    """Per-phase security levels produced by resolving a budget.

    ``eps_col`` is the total that was split, ``achieved_total`` the actual
    failure probability including the error-correction slack riding on top.
    """

    eps_pa: LogEpsilon
    eps_bar: LogEpsilon
    eps_pe: LogEpsilon
    eps_ec: LogEpsilon
    n_pe: int
    eps_col: LogEpsilon
    achieved_total: LogEpsilon
    eps_def: LogEpsilon | None = None

    def as_dict(self) -> dict[str, LogEpsilon]:
        out = {
            "eps_pa": self.eps_pa,
            "eps_bar": self.eps_bar,
            "eps_pe": self.eps_pe,
            "eps_ec": self.eps_ec,
        }
        if self.eps_def is not None:
            out["eps_def"] = self.eps_def
        return out


def split_components(
    eps_col: LogEpsilon, budget: EpsilonBudget, include_def: bool
) -> ResolvedEpsilons:
    """Split ``eps_col`` by the budget's weights.

    Separated from :func:`resolve_budget` so the post-selection path can split
    a rescaled collective level while the budget keeps carrying the
    user-facing one.
    """
    if include_def and budget.w_def is None:
        raise MissingWeight("the de Finetti mode requires w_def in the budget")
    if not include_def and budget.w_def is not None:
        raise InvalidWeights(
            "w_def is only meaningful for the de Finetti mode; with it present "
            "the remaining weights cannot sum to 1"
        )
    return ResolvedEpsilons(
        eps_pa=eps_col.scaled(budget.w_pa),
        eps_bar=eps_col.scaled(budget.w_bar),
        eps_pe=eps_col.scaled(budget.w_pe).divided(budget.n_pe),
        eps_ec=budget.eps_ec,
        n_pe=budget.n_pe,
        eps_col=eps_col,
        achieved_total=eps_col.added(budget.eps_ec),
        eps_def=eps_col.scaled(budget.w_def) if include_def else None,
    )


def resolve_budget(budget: EpsilonBudget, mode: str) -> ResolvedEpsilons:
    """Resolve a budget into per-phase security levels for a bound mode.

    ``mode`` is one of ``"collective"``, ``"postselection"`` or
    ``"definetti"``.  The first two split ``budget.eps_col`` directly (for
    post-selection the caller is expected to have placed the rescaled
    collective level there, or to use :func:`split_components`); the
    de Finetti mode additionally carves out ``eps_def`` and requires
    ``w_def``.
    """
    if mode not in ("collective", "postselection", "definetti"):
        raise DomainError(f"unknown mode {mode!r}")
    return split_components(budget.eps_col, budget, include_def=mode == "definetti")
