"""Frame-misalignment dynamics and their smearing of the correlations.

The protocol averages correlators over the N signal emission times; a
time-varying misalignment angle beta(t) therefore replaces cos/sin by the
mean phasor (1/N) sum_k e^{i beta(k tau)}.  Two drift laws have closed
forms: a constant angular velocity (a geometric sum) and a +/-theta random
walk (expected phasor (cos theta)^N).  Brute-force oracles for both live
alongside the closed forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ScaleError

# Above this the direct-summation oracle refuses to run.
DIRECT_SUM_MAX_N = 10**7

# Trials are simulated in fixed-size blocks, each on its own counter-based
# stream; block boundaries never depend on worker count.
_MC_BLOCK = 4096

RNG_ALGORITHM = "philox4x64"

_LN_COS_SERIES_CUTOFF = 1e-4


class DriftKind(enum.Enum):
    FIXED = "fixed"
    CONSTANT_VELOCITY = "constant"
    RANDOM_WALK = "walk"


@dataclass(frozen=True)
class DriftModel:
    """Misalignment dynamics with a per-signal step angle in radians."""

    kind: DriftKind
    theta_step: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta_step):
            raise DomainError(f"theta_step must be finite, got {self.theta_step}")
        if abs(self.theta_step) >= math.pi:
            raise DomainError(f"|theta_step| must be < pi, got {self.theta_step}")
        if self.kind is DriftKind.FIXED and self.theta_step != 0.0:
            raise DomainError("fixed frames cannot have a step angle")

    @classmethod
    def fixed(cls) -> "DriftModel":
        return cls(DriftKind.FIXED)

    @classmethod
    def constant_velocity(cls, theta_step: float) -> "DriftModel":
        return cls(DriftKind.CONSTANT_VELOCITY, theta_step)

    @classmethod
    def random_walk(cls, theta_step: float) -> "DriftModel":
        return cls(DriftKind.RANDOM_WALK, theta_step)


@dataclass(frozen=True)
class Phasor:
    """Mean of e^{i beta} over the signal emission times."""

    c_bar: float
    s_bar: float

    def __post_init__(self) -> None:
        if self.c_bar**2 + self.s_bar**2 > 1.0 + 1e-12:
            raise DomainError(
                f"phasor ({self.c_bar}, {self.s_bar}) has magnitude above 1"
            )

    @property
    def magnitude_sq(self) -> float:
        return self.c_bar**2 + self.s_bar**2


def _ln_abs_cos(theta: float) -> float:
    """ln|cos theta| for |theta| < pi, stable near theta = 0 and |theta| = pi.

    A truncated series handles |theta| < 1e-4, where cos theta rounds so
    close to 1 that the direct log loses the decay entirely; elsewhere
    log1p(-2 sin^2(x/2)) keeps full precision, reflecting x across pi/2
    when the cosine is negative.  Returns -inf at |theta| = pi/2.
    """
    t = abs(theta)
    if t < _LN_COS_SERIES_CUTOFF:
        t2 = t * t
        return -t2 / 2.0 - t2 * t2 / 12.0 - t2 * t2 * t2 / 45.0
    if t > math.pi / 2.0:
        t = math.pi - t
    arg = max(-2.0 * math.sin(t / 2.0) ** 2, -1.0)
    return math.log1p(arg)


def mean_phasor(model: DriftModel, n_signals: int) -> Phasor:
    """Mean phasor over n_signals equally spaced emission times.

    Fixed frames give (1, 0).  Constant velocity evaluates the geometric sum
    (1/N) sum_{k=0}^{N-1} e^{ik theta} through its Dirichlet-kernel form
    e^{i(N-1)theta/2} sin(N theta/2) / (N sin(theta/2)), which is free of
    the cancellation the raw (1 - e^{i theta N}) quotient suffers at small
    theta.  The random walk returns the expected phasor ((cos theta)^N, 0),
    computed as exp(N ln cos theta) so the decay survives theta values whose
    cosine rounds to 1.
    """
    if n_signals < 1:
        raise DomainError(f"N must be >= 1, got {n_signals}")
    if model.kind is DriftKind.FIXED:
        return Phasor(1.0, 0.0)
    theta = model.theta_step
    if theta == 0.0:
        return Phasor(1.0, 0.0)
    if model.kind is DriftKind.CONSTANT_VELOCITY:
        amplitude = math.sin(n_signals * theta / 2.0) / (
            n_signals * math.sin(theta / 2.0)
        )
        phase = (n_signals - 1) * theta / 2.0
        return Phasor(amplitude * math.cos(phase), amplitude * math.sin(phase))
    # Random walk: expectation of the endpoint phasor after N +/-theta steps.
    magnitude = math.exp(n_signals * _ln_abs_cos(theta))
    if math.cos(theta) < 0.0 and n_signals % 2 == 1:
        magnitude = -magnitude
    return Phasor(magnitude, 0.0)


def smeared_c(c0: float, model: DriftModel, n_signals: int) -> float:
    """Correlation parameter after drift smearing, C(T_N) = C0 (c^2 + s^2).

    Fixed frames keep C0.  Constant velocity gives
    C0 (sin(N theta/2) / (N sin(theta/2)))^2, algebraically identical to
    C0 (1 - cos(theta N)) / (N^2 (1 - cos theta)) but without the
    small-theta cancellation.  The random walk gives C0 (cos theta)^{2N}.
    The result lies in [0, C0].
    """
    if not 0.0 <= c0 <= 2.0:
        raise DomainError(f"C0 must lie in [0, 2], got {c0}")
    if n_signals < 1:
        raise DomainError(f"N must be >= 1, got {n_signals}")
    theta = model.theta_step
    if model.kind is DriftKind.FIXED or theta == 0.0:
        return c0
    if model.kind is DriftKind.CONSTANT_VELOCITY:
        ratio = math.sin(n_signals * theta / 2.0) / (
            n_signals * math.sin(theta / 2.0)
        )
        return c0 * ratio * ratio
    return c0 * math.exp(2.0 * n_signals * _ln_abs_cos(theta))


def random_walk_distribution(n_steps: int, dist: int) -> float:
    """Probability of a net displacement ``dist`` after n_steps +/-1 steps.

    P_N(d) = 2^-N binom(N, (N+d)/2) for |d| <= N with d and N of equal
    parity, else 0.  Evaluated through log-gamma so large N cannot overflow.
    """
    if n_steps < 1:
        raise DomainError(f"N must be >= 1, got {n_steps}")
    if abs(dist) > n_steps or (n_steps + dist) % 2 != 0:
        return 0.0
    ups = (n_steps + dist) // 2
    log_p = (
        math.lgamma(n_steps + 1)
        - math.lgamma(ups + 1)
        - math.lgamma(n_steps - ups + 1)
        - n_steps * math.log(2.0)
    )
    return math.exp(log_p)


def direct_sum_phasor(theta_step: float, n_signals: int) -> Phasor:
    """Brute-force mean phasor for constant-velocity drift.

    Literally evaluates (1/N) sum_{k=0}^{N-1} (cos k theta, sin k theta)
    with compensated summation.  Capped at N = 10^7; this is an oracle for
    the closed form, not a production path.
    """
    if n_signals < 1:
        raise DomainError(f"N must be >= 1, got {n_signals}")
    if n_signals > DIRECT_SUM_MAX_N:
        raise ScaleError(
            f"direct summation capped at N = {DIRECT_SUM_MAX_N}, got {n_signals}"
        )
    c_parts: list[float] = []
    s_parts: list[float] = []
    for start in range(0, n_signals, 2**20):
        stop = min(start + 2**20, n_signals)
        angles = theta_step * np.arange(start, stop, dtype=np.float64)
        c_parts.append(math.fsum(np.cos(angles)))
        s_parts.append(math.fsum(np.sin(angles)))
    return Phasor(math.fsum(c_parts) / n_signals, math.fsum(s_parts) / n_signals)


@dataclass(frozen=True)
class MonteCarloPhasor:
    """Empirical step-averaged phasor of simulated random walks.

    ``c_bar``/``s_bar`` average (cos beta_k, sin beta_k) over steps
    k = 0..N-1 and over trials, with per-component standard errors.
    ``analytic_c_step_avg`` is the exact expectation of that average, the
    geometric sum (1/N) sum_k (cos theta)^k; ``analytic_c_endpoint`` is the
    expected endpoint phasor (cos theta)^N that the closed-form drift model
    uses.  The two differ, which is why both are reported.
    """

    c_bar: float
    s_bar: float
    se_c: float
    se_s: float
    trials: int
    n_signals: int
    theta_step: float
    seed: int
    analytic_c_step_avg: float
    analytic_c_endpoint: float
    algorithm: str = RNG_ALGORITHM


def _step_average_expectation(theta: float, n_signals: int) -> float:
    """(1/N) sum_{k=0}^{N-1} (cos theta)^k, evaluated stably."""
    if theta == 0.0:
        return 1.0
    log_c = _ln_abs_cos(theta)
    cos_t = math.cos(theta)
    if cos_t == 1.0 and log_c == 0.0:
        return 1.0
    if cos_t >= 0.0:
        # (1 - c^N) / (N (1 - c)) with both differences formed stably.
        one_minus_c = 2.0 * math.sin(theta / 2.0) ** 2
        return -math.expm1(n_signals * log_c) / (n_signals * one_minus_c)
    # cos theta < 0: 1 - c is safely above 1, no cancellation anywhere.
    c_pow_n = math.exp(n_signals * log_c) * (-1.0 if n_signals % 2 else 1.0)
    return (1.0 - c_pow_n) / (n_signals * (1.0 - cos_t))


def sample_random_walk_phasor(
    theta_step: float, n_signals: int, trials: int, seed: int
) -> MonteCarloPhasor:
    """Monte Carlo estimate of the step-averaged random-walk phasor.

    Simulates ``trials`` independent +/-theta walks of N steps starting
    aligned (beta_0 = 0), averages (cos beta_k, sin beta_k) over the steps
    of each walk, and reports the mean over trials with standard errors.
    Trials are partitioned into fixed blocks, each drawing from a Philox
    stream keyed by (seed, block), so results are bit-identical for a given
    seed regardless of how the blocks are scheduled.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if n_signals < 1:
        raise DomainError(f"N must be >= 1, got {n_signals}")
    c_sum = 0.0
    c_sq_sum = 0.0
    s_sum = 0.0
    s_sq_sum = 0.0
    for block_start in range(0, trials, _MC_BLOCK):
        block = min(_MC_BLOCK, trials - block_start)
        rng = np.random.Generator(
            np.random.Philox(key=np.array([seed, block_start], dtype=np.uint64))
        )
        if theta_step == 0.0 or n_signals == 1:
            walk_c = np.ones(block)
            walk_s = np.zeros(block)
        else:
            steps = rng.integers(0, 2, size=(block, n_signals - 1)) * 2 - 1
            betas = np.empty((block, n_signals))
            betas[:, 0] = 0.0
            np.cumsum(steps * theta_step, axis=1, out=betas[:, 1:])
            walk_c = np.cos(betas).mean(axis=1)
            walk_s = np.sin(betas).mean(axis=1)
        c_sum += float(walk_c.sum())
        c_sq_sum += float((walk_c**2).sum())
        s_sum += float(walk_s.sum())
        s_sq_sum += float((walk_s**2).sum())
    c_mean = c_sum / trials
    s_mean = s_sum / trials
    if trials > 1:
        c_var = max(c_sq_sum - trials * c_mean**2, 0.0) / (trials - 1)
        s_var = max(s_sq_sum - trials * s_mean**2, 0.0) / (trials - 1)
        se_c = math.sqrt(c_var / trials)
        se_s = math.sqrt(s_var / trials)
    else:
        se_c = se_s = 0.0
    return MonteCarloPhasor(
        c_bar=c_mean,
        s_bar=s_mean,
        se_c=se_c,
        se_s=se_s,
        trials=trials,
        n_signals=n_signals,
        theta_step=theta_step,
        seed=seed,
        analytic_c_step_avg=_step_average_expectation(theta_step, n_signals),
        analytic_c_endpoint=mean_phasor(
            DriftModel.random_walk(theta_step), n_signals
        ).c_bar
        if theta_step != 0.0
        else 1.0,
    )
