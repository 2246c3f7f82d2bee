"""Finite-block secret-key fractions with itemized overhead terms.

Three bounds are implemented: the collective-attack rate, the coherent-attack
rate obtained from it by the post-selection reduction, and the coherent-attack
rate obtained from the exponential de Finetti reduction.  Every subtracted
overhead is reported separately so a breakdown always reconstructs the raw
rate exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import (
    binary_entropy,
    definetti_pe_deviation,
    definetti_t,
    eve_information,
)
from .epsilons import (
    EpsilonBudget,
    LogEpsilon,
    ResolvedEpsilons,
    collective_epsilon_from_coherent,
    split_components,
)
from .errors import DomainError, InfeasibleTraceOut
from .protocols import (
    ProtocolEvaluation,
    RfiObservation,
    SiftingPlan,
    shrink_toward_zero,
)


@dataclass(frozen=True)
class RateBreakdown:
    """A key rate in bits per received signal, with every overhead itemized.

    ``r_raw`` may be negative; ``r`` clamps it at zero.  The raw value always
    satisfies

        r_raw = sifting_factor * (entropy_gap - ec_term - pa_term
                                  - smoothing_term - traceout_term)
                - postselection_term

    ``traceout_term`` is only nonzero for the de Finetti bound and
    ``postselection_term`` only for the post-selection bound.
    ``achieved_epsilon_total`` is the user-facing failure probability actually
    achieved, including the error-correction slack on top of the split total;
    ``log2_inv_eps_col`` records the collective level the components were
    split from (the rescaled one under post-selection).
    """

    r_raw: float
    r: float
    n: int
    n_signals: int
    sifting_factor: float
    entropy_gap: float
    ec_term: float
    pa_term: float
    smoothing_term: float
    postselection_term: float
    traceout_term: float
    achieved_epsilon_total: LogEpsilon
    log2_inv_eps_col: float
    q_prime: float | None = None
    c_prime: float | None = None

    def reconstruct_r_raw(self) -> float:
        return (
            self.sifting_factor
            * (
                self.entropy_gap
                - self.ec_term
                - self.pa_term
                - self.smoothing_term
                - self.traceout_term
            )
            - self.postselection_term
        )


def _assemble(
    evaluation: ProtocolEvaluation,
    n_signals: int,
    comps: ResolvedEpsilons,
    smoothing_term: float,
    postselection_term: float = 0.0,
    traceout_term: float = 0.0,
    achieved_total: LogEpsilon | None = None,
    n_override: int | None = None,
) -> RateBreakdown:
    n = evaluation.n if n_override is None else n_override
    sifting = n / n_signals
    gap = evaluation.min_h_a_given_e - evaluation.h_a_given_b
    ec_term = comps.eps_ec.log2_two_over / n
    pa_term = 2.0 * comps.eps_pa.log2_inv / n
    r_raw = (
        sifting * (gap - ec_term - pa_term - smoothing_term - traceout_term)
        - postselection_term
    )
    return RateBreakdown(
        r_raw=r_raw,
        r=max(r_raw, 0.0),
        n=n,
        n_signals=n_signals,
        sifting_factor=sifting,
        entropy_gap=gap,
        ec_term=ec_term,
        pa_term=pa_term,
        smoothing_term=smoothing_term,
        postselection_term=postselection_term,
        traceout_term=traceout_term,
        achieved_epsilon_total=(
            comps.achieved_total if achieved_total is None else achieved_total
        ),
        log2_inv_eps_col=comps.eps_col.log2_inv,
        q_prime=evaluation.q_prime,
        c_prime=evaluation.c_prime,
    )


def collective_rate(
    evaluation: ProtocolEvaluation, n_signals: int, comps: ResolvedEpsilons
) -> RateBreakdown:
    """Secret key fraction against collective attacks.

    r = (n/N) [ min H(A|E) - H(A|B) - (1/n) log2(2/eps_ec)
                - (2/n) log2(1/eps_pa)
                - (2d+3) sqrt(log2(2/eps_bar) / n) ]

    with d the key alphabet size.  Negative values are reported in ``r_raw``
    and clamped only in ``r``.
    """
    if evaluation.n > n_signals:
        raise DomainError(
            f"raw key n={evaluation.n} cannot exceed N={n_signals}"
        )
    d = evaluation.d_alphabet
    smoothing = (2 * d + 3) * math.sqrt(comps.eps_bar.log2_two_over / evaluation.n)
    return _assemble(evaluation, n_signals, comps, smoothing)


def postselection_rate(
    evaluation: ProtocolEvaluation,
    n_signals: int,
    eps_coh: LogEpsilon,
    budget: EpsilonBudget,
    d_signal: int,
) -> RateBreakdown:
    """Coherent-attack rate through the post-selection reduction.

    Computes the collective rate with every component resolved from the
    rescaled level eps_col = eps_coh (N+1)^-(d^4-1), then subtracts the
    purification correction 2 (d^4-1) log2(N+1) / N.  The evaluation passed
    in must have been worst-cased with the eps_pe from that same rescaled
    level (see :func:`postselection_components`).
    """
    comps = postselection_components(eps_coh, n_signals, d_signal, budget)
    d = evaluation.d_alphabet
    smoothing = (2 * d + 3) * math.sqrt(comps.eps_bar.log2_two_over / evaluation.n)
    correction = (
        2.0 * (d_signal**4 - 1) * math.log2(n_signals + 1.0) / n_signals
    )
    return _assemble(
        evaluation,
        n_signals,
        comps,
        smoothing,
        postselection_term=correction,
        achieved_total=eps_coh.added(budget.eps_ec),
    )


def postselection_components(
    eps_coh: LogEpsilon, n_signals: int, d_signal: int, budget: EpsilonBudget
) -> ResolvedEpsilons:
    """Per-phase levels for the post-selection bound at block size N.

    The budget's weights split the rescaled collective level; the budget's
    own ``eps_col`` (the coherent target) is ignored here.
    """
    eps_col = collective_epsilon_from_coherent(eps_coh, n_signals, d_signal)
    return split_components(eps_col, budget, include_def=False)


def definetti_rate(
    protocol: str,
    observation: float | RfiObservation,
    plan: SiftingPlan,
    n_signals: int,
    comps: ResolvedEpsilons,
    m: int,
    k: int,
    d_signal: int = 2,
) -> RateBreakdown:
    """Coherent-attack rate through the exponential de Finetti reduction.

    Of the N_s sifted signals, m estimate parameters and k are traced out,
    leaving a raw key n = N_s - m - k.  The reduction's overhead
    t = (N_s/k)(2 ln(2/eps_def) + d^4 ln k) must satisfy t <= m/2 and
    t <= n; otherwise InfeasibleTraceOut is raised so an optimizer can skip
    the (m, k) pair.  The rate is

        r = (n/N) [ min H(A|E) - H(A|B) - (1/n) log2(2/eps_ec)
                    - (2/n) log2(1/eps_pa) - (2/n)(m+k) log2(d^2)
                    - (5d/2 + 4) sqrt(log2(2/eps_bar)/n + h(t/n)) ]

    with worst-case estimates built from the reduction's own deviation bound.
    """
    if comps.eps_def is None:
        raise DomainError("de Finetti rate needs components resolved with w_def")
    if protocol not in ("bb84", "rfi"):
        raise DomainError(f"unknown protocol {protocol!r}")
    if m < 1 or k < 1:
        raise DomainError(f"m and k must be positive integers, got m={m}, k={k}")
    n_sifted = plan.n_sifted
    n = n_sifted - m - k
    if n <= 0:
        raise InfeasibleTraceOut(
            f"m + k = {m + k} leaves no raw key out of N_s = {n_sifted}"
        )
    t = definetti_t(n_sifted, k, d_signal, comps.eps_def)
    if t > m / 2.0:
        raise InfeasibleTraceOut(f"t = {t} exceeds m/2 = {m / 2.0}")
    if t > n:
        raise InfeasibleTraceOut(f"t = {t} exceeds the raw key n = {n}")

    if protocol == "bb84":
        q = float(observation)
        if not 0.0 <= q < 0.5:
            raise DomainError(f"Q must lie in [0, 0.5), got {q}")
        q_prime = q + definetti_pe_deviation(m, t, d_signal, comps.eps_pe)
        if q_prime >= 0.5:
            raise DomainError(
                f"worst-case Q' = {q_prime} reaches 1/2; no key is extractable"
            )
        evaluation = ProtocolEvaluation(
            min_h_a_given_e=min(max(1.0 - binary_entropy(q_prime), 0.0), 1.0),
            h_a_given_b=binary_entropy(q),
            n=n,
            n_pe=1,
            d_alphabet=2,
            q_prime=q_prime,
            c_prime=None,
        )
    else:
        obs = observation
        delta_n = definetti_pe_deviation(n, t, d_signal, comps.eps_pe)
        delta_m = definetti_pe_deviation(m, t, d_signal, comps.eps_pe)
        q_prime = obs.q + delta_n
        shrunk = [
            shrink_toward_zero(v, delta_m) for v in obs.correlators.as_tuple()
        ]
        c_prime = math.fsum(v * v for v in shrunk)
        evaluation = ProtocolEvaluation(
            min_h_a_given_e=1.0 - eve_information(q_prime, c_prime),
            h_a_given_b=binary_entropy(obs.q),
            n=n,
            n_pe=5,
            d_alphabet=2,
            q_prime=q_prime,
            c_prime=c_prime,
        )

    # Every d in the de Finetti overheads is the exchanged-system dimension.
    smoothing = (2.5 * d_signal + 4.0) * math.sqrt(
        comps.eps_bar.log2_two_over / n + binary_entropy(t / n)
    )
    traceout = 2.0 * (m + k) * math.log2(float(d_signal**2)) / n
    return _assemble(
        evaluation,
        n_signals,
        comps,
        smoothing,
        traceout_term=traceout,
        n_override=n,
    )


def asymptotic_rate_rfi(q: float, c: float) -> float:
    """Asymptotic key fraction of the frame-independent protocol.

    1 - I_E(Q, C) - h(Q), reported raw (may be nonpositive).
    """
    return 1.0 - eve_information(q, c) - binary_entropy(q)
