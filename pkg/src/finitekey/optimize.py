"""Constrained maximization of the key rate over its free parameters.

The objective has branch points (the eavesdropper bound switches branches,
worst-case correlators floor at zero, de Finetti configurations turn
infeasible) and integer parameters, so the search is derivative-free: a
coarse log-spaced product grid over the transformed parameters followed by
local grid refinement around the incumbent.  Everything is deterministic for
a fixed seed.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .drift import DriftKind, DriftModel, mean_phasor
from .epsilons import EpsilonBudget, LogEpsilon, resolve_budget
from .errors import DomainError, KeyRateError, NoPositiveRate
from .protocols import (
    RfiObservation,
    SiftingPlan,
    bb84_worst_case,
    canonical_correlators,
    rfi_worst_case,
)
from .rates import (
    RateBreakdown,
    collective_rate,
    definetti_rate,
    postselection_components,
    postselection_rate,
)

PROTOCOLS = ("bb84", "rfi")
BOUNDS = ("collective", "postselection", "definetti")

# Search box for the key-basis probability.  The upper end must get close
# enough to 1 that the sifting factor p_z^2 can approach the asymptotic
# limit; 0.995 leaves a 1% sifting loss at most.
PZ_MIN = 0.05
PZ_MAX = 0.995

_STICK_LO, _STICK_HI = 0.02, 0.98
_FRAC_LO, _FRAC_HI = 1e-7, 0.45

_WORKERS_ENV = "FINITEKEY_WORKERS"


@dataclass(frozen=True)
class Observation:
    """Observed statistics fed to the optimizer.

    ``c0`` is the initial correlation parameter of the frame-independent
    protocol; BB84 only uses the error rate ``q``.
    """

    q: float
    c0: float | None = None


@dataclass(frozen=True)
class SearchConfig:
    grid_points_per_dim: int = 5
    refinement_rounds: int = 4
    multistart_count: int = 1
    seed: int = 0
    tolerance: float = 0.01

    def __post_init__(self) -> None:
        if self.grid_points_per_dim < 3:
            raise DomainError("grid_points_per_dim must be >= 3")
        if self.refinement_rounds < 1:
            raise DomainError("refinement_rounds must be >= 1")
        if self.multistart_count < 1:
            raise DomainError("multistart_count must be >= 1")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be > 0")


@dataclass(frozen=True)
class OptResult:
    """Best rate found, with the parameters that achieve it."""

    r_star: float
    breakdown: RateBreakdown | None
    params: dict
    evaluations: int
    n_star: int | None = None


def smeared_rfi_observation(
    observation: Observation, drift: DriftModel, n_signals: int
) -> RfiObservation:
    """Frame-independent observation after averaging the drift over N signals."""
    if observation.c0 is None:
        raise DomainError("the rfi protocol needs an initial correlation c0")
    phasor = mean_phasor(drift, n_signals)
    corr = canonical_correlators(observation.c0, phasor.c_bar, phasor.s_bar)
    return RfiObservation(observation.q, corr)


def evaluate_point(
    protocol: str,
    bound: str,
    n_signals: int,
    observation: Observation,
    drift: DriftModel,
    eps_coh: LogEpsilon,
    eps_ec: LogEpsilon,
    p_z: float,
    weights: tuple[float, ...],
    m: int | None = None,
    k: int | None = None,
) -> RateBreakdown:
    """Rate at one fully specified parameter point.

    ``weights`` is (w_pa, w_bar, w_pe) or, for the de Finetti bound,
    (w_pa, w_bar, w_pe, w_def).  ``eps_coh`` is the user-facing security
    target: the collective level for the collective bound, the coherent one
    otherwise.  Raises the underlying validation errors for infeasible
    points; never clamps.
    """
    if protocol not in PROTOCOLS:
        raise DomainError(f"unknown protocol {protocol!r}")
    if bound not in BOUNDS:
        raise DomainError(f"unknown bound {bound!r}")
    if protocol == "bb84" and drift.kind is not DriftKind.FIXED:
        raise DomainError("drift models only apply to the rfi protocol")
    plan = SiftingPlan(n_signals, p_z)
    w_def = weights[3] if len(weights) == 4 else None
    budget = EpsilonBudget(
        eps_col=eps_coh,
        eps_ec=eps_ec,
        w_pa=weights[0],
        w_bar=weights[1],
        w_pe=weights[2],
        n_pe=5 if protocol == "rfi" else 1,
        w_def=w_def,
    )

    if bound == "definetti":
        if m is None or k is None:
            raise DomainError("the de Finetti bound needs m and k")
        comps = resolve_budget(budget, "definetti")
        if protocol == "rfi":
            obs = smeared_rfi_observation(observation, drift, n_signals)
            return definetti_rate("rfi", obs, plan, n_signals, comps, m, k)
        return definetti_rate("bb84", observation.q, plan, n_signals, comps, m, k)

    if bound == "collective":
        comps = resolve_budget(budget, "collective")
    else:
        comps = postselection_components(eps_coh, n_signals, 2, budget)

    if protocol == "rfi":
        obs = smeared_rfi_observation(observation, drift, n_signals)
        evaluation = rfi_worst_case(obs, plan, comps.eps_pe)
    else:
        evaluation = bb84_worst_case(observation.q, plan, comps.eps_pe)

    if bound == "collective":
        return collective_rate(evaluation, n_signals, comps)
    return postselection_rate(evaluation, n_signals, eps_coh, budget, 2)


def _stick_weights(coords: tuple[float, ...]) -> tuple[float, ...]:
    """Map stick-breaking coordinates in (0,1) to simplex weights."""
    if len(coords) == 2:
        a, b = coords
        return (a, (1.0 - a) * b, (1.0 - a) * (1.0 - b))
    a, b, c = coords
    rest = (1.0 - a) * (1.0 - b)
    return (a, (1.0 - a) * b, rest * c, rest * (1.0 - c))


@dataclass
class _Searcher:
    """Nested log-grid maximizer of r_raw over the transformed parameters."""

    protocol: str
    bound: str
    n_signals: int
    observation: Observation
    drift: DriftModel
    eps_coh: LogEpsilon
    eps_ec: LogEpsilon
    cfg: SearchConfig
    fixed_pz: float | None
    evaluations: int = 0
    best_raw: float = -math.inf
    best_breakdown: RateBreakdown | None = field(default=None)
    best_params: dict | None = None
    best_key: tuple | None = None
    best_x: tuple | None = None

    def __post_init__(self) -> None:
        self.dims: list[tuple[float, float]] = []
        self.n_stick = 3 if self.bound == "definetti" else 2
        if self.fixed_pz is None:
            self.dims.append((math.log(1.0 - PZ_MAX), math.log(1.0 - PZ_MIN)))
        for _ in range(self.n_stick):
            self.dims.append((math.log(_STICK_LO), math.log(_STICK_HI)))
        if self.bound == "definetti":
            self.dims.append((math.log(_FRAC_LO), math.log(_FRAC_HI)))
            self.dims.append((math.log(_FRAC_LO), math.log(_FRAC_HI)))

    def _decode(self, x: tuple[float, ...]) -> tuple[float, tuple[float, ...], int | None, int | None]:
        i = 0
        if self.fixed_pz is None:
            p_z = 1.0 - math.exp(x[0])
            i = 1
        else:
            p_z = self.fixed_pz
        coords = tuple(math.exp(v) for v in x[i : i + self.n_stick])
        weights = _stick_weights(coords)
        m = k = None
        if self.bound == "definetti":
            n_sifted = SiftingPlan(self.n_signals, p_z).n_sifted
            m = max(1, round(math.exp(x[-2]) * n_sifted))
            k = max(1, round(math.exp(x[-1]) * n_sifted))
        return p_z, weights, m, k

    def _consider(self, x: tuple[float, ...]) -> None:
        p_z, weights, m, k = self._decode(x)
        self.evaluations += 1
        try:
            breakdown = evaluate_point(
                self.protocol,
                self.bound,
                self.n_signals,
                self.observation,
                self.drift,
                self.eps_coh,
                self.eps_ec,
                p_z,
                weights,
                m,
                k,
            )
        except KeyRateError:
            return
        key = (p_z, *weights, m if m is not None else -1, k if k is not None else -1)
        if breakdown.r_raw > self.best_raw or (
            breakdown.r_raw == self.best_raw
            and (self.best_key is None or key < self.best_key)
        ):
            self.best_raw = breakdown.r_raw
            self.best_breakdown = breakdown
            self.best_key = key
            params = {
                "p_z": p_z,
                "w_pa": weights[0],
                "w_bar": weights[1],
                "w_pe": weights[2],
            }
            if len(weights) == 4:
                params["w_def"] = weights[3]
            if m is not None:
                params["m"] = m
                params["k"] = k
            self.best_params = params
            self.best_x = x

    def _scan(self, axes: list[list[float]]) -> None:
        # Deterministic row-major product scan.
        idx = [0] * len(axes)
        while True:
            self._consider(tuple(axes[d][idx[d]] for d in range(len(axes))))
            d = len(axes) - 1
            while d >= 0:
                idx[d] += 1
                if idx[d] < len(axes[d]):
                    break
                idx[d] = 0
                d -= 1
            if d < 0:
                return

    def run(self) -> OptResult:
        g = self.cfg.grid_points_per_dim
        # Base grid: points at fractions i/g of each range, i = 1..g.  The
        # candidate set for 2g contains the one for g, so densifying the
        # grid can only improve the incumbent.
        axes = [
            [lo + (hi - lo) * i / g for i in range(1, g + 1)] for lo, hi in self.dims
        ]
        self._scan(axes)
        if self.cfg.multistart_count > 1:
            rng = np.random.Generator(
                np.random.Philox(key=np.array([self.cfg.seed, 0], dtype=np.uint64))
            )
            for _ in range(self.cfg.multistart_count - 1):
                shifted = []
                for (lo, hi), axis in zip(self.dims, axes):
                    off = (rng.random() - 0.5) * (hi - lo) / g
                    shifted.append([min(hi, max(lo, v + off)) for v in axis])
                self._scan(shifted)
        if self.best_breakdown is None:
            # Nothing feasible anywhere on the base grid.
            return OptResult(
                r_star=0.0,
                breakdown=None,
                params={"no_feasible_point": True},
                evaluations=self.evaluations,
            )
        spacings = [(hi - lo) / g for lo, hi in self.dims]
        for _ in range(self.cfg.refinement_rounds):
            center = self.best_x
            axes = []
            for d, (lo, hi) in enumerate(self.dims):
                h = spacings[d]
                a = max(lo, center[d] - h)
                b = min(hi, center[d] + h)
                axes.append([a + (b - a) * i / (g - 1) for i in range(g)])
                spacings[d] = (b - a) / (g - 1)
            self._scan(axes)
        return OptResult(
            r_star=self.best_breakdown.r,
            breakdown=self.best_breakdown,
            params=self.best_params,
            evaluations=self.evaluations,
        )


def optimize_rate(
    protocol: str,
    bound: str,
    n_signals: int,
    observation: Observation,
    drift: DriftModel,
    eps_coh: LogEpsilon,
    eps_ec: LogEpsilon,
    cfg: SearchConfig,
    p_z: float | None = None,
) -> OptResult:
    """Maximize the key rate over the free parameters at a fixed block size.

    Free parameters are the budget weight simplex, the key-basis probability
    (unless pinned with ``p_z``), and for the de Finetti bound the integer
    split (m, k).  Infeasible points are skipped; if no point is feasible the
    result carries ``r_star = 0`` and a ``no_feasible_point`` flag.  The raw
    (unclamped) rate is the search objective so the direction of improvement
    survives even when every rate is negative.
    """
    if n_signals < 1:
        raise DomainError(f"N must be >= 1, got {n_signals}")
    if p_z is not None and not PZ_MIN <= p_z <= PZ_MAX:
        raise DomainError(f"p_z must lie in [{PZ_MIN}, {PZ_MAX}], got {p_z}")
    # Surface input-level budget problems (e.g. eps_ec too close to the
    # target) immediately rather than as a silently empty search.
    EpsilonBudget(
        eps_col=eps_coh,
        eps_ec=eps_ec,
        w_pa=0.25,
        w_bar=0.25,
        w_pe=0.5 if bound != "definetti" else 0.25,
        n_pe=5 if protocol == "rfi" else 1,
        w_def=0.25 if bound == "definetti" else None,
    )
    searcher = _Searcher(
        protocol=protocol,
        bound=bound,
        n_signals=n_signals,
        observation=observation,
        drift=drift,
        eps_coh=eps_coh,
        eps_ec=eps_ec,
        cfg=cfg,
        fixed_pz=p_z,
    )
    return searcher.run()


@dataclass(frozen=True)
class SweepRow:
    n_signals: int
    result: OptResult | None
    status: str


def _row_status(result: OptResult) -> str:
    if result.params.get("no_feasible_point"):
        return "no_feasible_point"
    if result.r_star <= 0.0:
        return "nonpositive"
    return "ok"


def _sweep_one(args: tuple) -> SweepRow:
    n_signals, protocol, bound, observation, drift, eps_coh, eps_ec, cfg, p_z = args
    try:
        result = optimize_rate(
            protocol, bound, n_signals, observation, drift, eps_coh, eps_ec, cfg, p_z
        )
    except KeyRateError as exc:
        return SweepRow(n_signals, None, f"error:{type(exc).__name__}")
    return SweepRow(n_signals, result, _row_status(result))


def worker_count() -> int:
    """Worker count from the environment; 1 (serial) when unset or invalid."""
    raw = os.environ.get(_WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sweep_n(
    grid: list[int],
    protocol: str,
    bound: str,
    observation: Observation,
    drift: DriftModel,
    eps_coh: LogEpsilon,
    eps_ec: LogEpsilon,
    cfg: SearchConfig,
    p_z: float | None = None,
    workers: int | None = None,
) -> list[SweepRow]:
    """Independent optimize_rate per block size, in grid order.

    Rows are independent, so they may be computed in parallel; the output
    order and content never depend on the worker count.
    """
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("the N grid must be strictly increasing")
    jobs = [
        (n, protocol, bound, observation, drift, eps_coh, eps_ec, cfg, p_z)
        for n in grid
    ]
    if workers is None:
        workers = worker_count()
    if workers <= 1 or len(jobs) < 2:
        return [_sweep_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_one, jobs))


def optimal_block_size(
    n_min: int,
    n_max: int,
    protocol: str,
    bound: str,
    observation: Observation,
    drift: DriftModel,
    eps_coh: LogEpsilon,
    eps_ec: LogEpsilon,
    cfg: SearchConfig,
    p_z: float | None = None,
) -> OptResult:
    """Find the block size maximizing the optimized rate.

    Golden-section search on log N, cross-checked against a 64-point
    log-grid scan because unimodality is not guaranteed (drift smearing
    oscillates); the better of the two answers wins.  Fixed frames make the
    rate nondecreasing in N, so that case reports the N_max boundary with a
    flag instead of searching.  Raises NoPositiveRate when the whole bracket
    is rateless.
    """
    if n_min < 1 or n_min >= n_max:
        raise DomainError(f"need 1 <= n_min < n_max, got [{n_min}, {n_max}]")
    if drift.kind is DriftKind.FIXED:
        result = optimize_rate(
            protocol, bound, n_max, observation, drift, eps_coh, eps_ec, cfg, p_z
        )
        params = dict(result.params)
        params["boundary"] = "n_max"
        return replace(result, params=params, n_star=n_max)

    cache: dict[int, OptResult] = {}
    evaluations = 0

    def rate_at(log_n: float) -> float:
        n = int(round(math.exp(log_n)))
        n = min(max(n, n_min), n_max)
        if n not in cache:
            cache[n] = optimize_rate(
                protocol, bound, n, observation, drift, eps_coh, eps_ec, cfg, p_z
            )
        return cache[n].r_star

    lo, hi = math.log(n_min), math.log(n_max)
    for log_n in np.linspace(lo, hi, 64):
        rate_at(float(log_n))

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    tol = math.log1p(cfg.tolerance)
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = rate_at(c), rate_at(d)
    while b - a > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = rate_at(d)
        else:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = rate_at(c)

    best_n = None
    best: OptResult | None = None
    for n in sorted(cache):
        evaluations += cache[n].evaluations
        if best is None or cache[n].r_star > best.r_star:
            best, best_n = cache[n], n
    if best is None or best.r_star <= 0.0:
        raise NoPositiveRate(
            f"no positive rate anywhere in [{n_min}, {n_max}] for this drift"
        )
    return replace(best, n_star=best_n, evaluations=evaluations)
