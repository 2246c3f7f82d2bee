"""Scalar information-theoretic primitives.

Binary entropy, the eavesdropper-information bound for the
reference-frame-independent protocol, worst-case parameter-estimation
deviations, and the overhead quantities of the exponential de Finetti
reduction.  All entropies are in bits.
"""

from __future__ import annotations

import math

from .epsilons import LogEpsilon
from .errors import DomainError, UnphysicalInput

# Inputs this close to a domain boundary are treated as rounding noise and
# clamped; anything further out is an error.
DOMAIN_SLACK = 1e-12

# Largest QBER for which the eavesdropper bound is proven (about 15.9%).
Q_VALIDITY_MAX = 0.159

_LN2 = math.log(2.0)


def binary_entropy(x: float) -> float:
    """Binary entropy h(x) = -x log2 x - (1-x) log2 (1-x), in bits.

    h(0) = h(1) = 0 exactly.  Arguments within 1e-12 of [0, 1] are clamped to
    absorb upstream rounding; anything further out raises DomainError.
    """
    if not math.isfinite(x):
        raise DomainError(f"binary_entropy argument must be finite, got {x}")
    if x < 0.0:
        if x < -DOMAIN_SLACK:
            raise DomainError(f"binary_entropy argument {x} below 0")
        x = 0.0
    elif x > 1.0:
        if x > 1.0 + DOMAIN_SLACK:
            raise DomainError(f"binary_entropy argument {x} above 1")
        x = 1.0
    if x == 0.0 or x == 1.0:
        return 0.0
    # log1p keeps the (1-x) term accurate when x is tiny.
    return -(x * math.log2(x) + (1.0 - x) * math.log1p(-x) / _LN2)


def pe_deviation(k: int, eps_pe: LogEpsilon) -> float:
    """Worst-case deviation of a parameter estimated from k samples.

    delta(k) = sqrt( (ln(1/eps_pe) + 2 ln(k+1)) / (2k) ), the law-of-large-
    numbers fluctuation bound at confidence eps_pe.
    """
    if k < 1:
        raise DomainError(f"sample count must be >= 1, got {k}")
    return math.sqrt((eps_pe.ln_inv + 2.0 * math.log(k + 1.0)) / (2.0 * k))


def _eve_branch(q: float, c: float) -> tuple[float, float]:
    """Maximizing (u_max, v) pair for the eavesdropper bound."""
    s = math.sqrt(c / 2.0)
    one_minus_q = 1.0 - q
    if s <= one_minus_q:
        return s / one_minus_q, 0.0
    v = math.sqrt(c / 2.0 - one_minus_q * one_minus_q) / q
    if v > 1.0:
        if v > 1.0 + DOMAIN_SLACK:
            raise UnphysicalInput(
                f"(Q={q}, C={c}) admits no state in the bound's domain (v={v})"
            )
        v = 1.0
    return 1.0, v


def eve_information(q: float, c: float) -> float:
    """Upper bound on Eve's information for the frame-independent protocol.

    With s = sqrt(C/2): if s <= 1-Q the maximum sits at u_max = s/(1-Q) with
    v = 0, otherwise at u_max = 1 with v = sqrt(C/2 - (1-Q)^2)/Q.  Returns

        I_E = (1-Q) h((1+u_max)/2) + Q h((1+v)/2)

    where the Q-weighted term is 0 when Q = 0 (its prefactor vanishes and v
    is otherwise 0/0).  Valid for 0 <= Q <= 0.159; larger Q is a hard error
    because the bound is not proven there.  Raises UnphysicalInput when the
    (Q, C) pair would need v > 1.
    """
    if not 0.0 <= q <= Q_VALIDITY_MAX:
        raise DomainError(
            f"Q={q} outside the bound's validity range [0, {Q_VALIDITY_MAX}]"
        )
    if not -DOMAIN_SLACK <= c <= 2.0 + DOMAIN_SLACK:
        raise DomainError(f"C={c} outside [0, 2]")
    c = min(max(c, 0.0), 2.0)
    if q == 0.0:
        s = math.sqrt(c / 2.0)
        return binary_entropy((1.0 + s) / 2.0)
    u_max, v = _eve_branch(q, c)
    return (1.0 - q) * binary_entropy((1.0 + u_max) / 2.0) + q * binary_entropy(
        (1.0 + v) / 2.0
    )


def definetti_t(n_sifted: int, k: int, d_signal: int, eps_def: LogEpsilon) -> float:
    """Overhead t of the exponential de Finetti reduction.

    t = (N_s / k) * (2 ln(2/eps_def) + d^4 ln k), tracing out k of the N_s
    sifted systems.  Real-valued; feasibility against m/2 is checked by the
    rate formula, not here.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if n_sifted < k:
        raise DomainError(f"need k <= N_s, got k={k}, N_s={n_sifted}")
    if d_signal < 2:
        raise DomainError(f"d_signal must be >= 2, got {d_signal}")
    ln_two_over = _LN2 * (1.0 + eps_def.log2_inv)
    return (n_sifted / k) * (2.0 * ln_two_over + d_signal**4 * math.log(k))


def definetti_pe_deviation(
    m: int, t: float, d_signal: int, eps_pe: LogEpsilon
) -> float:
    """Worst-case estimation deviation under the de Finetti reduction.

    delta = (1/(d-1)) * sqrt( (1+ln 2) h(t/m)
                              + (ln(1/eps_pe) + d ln(m/2+1)) / m )

    with h the binary entropy in bits.  Requires 0 <= t/m <= 1.
    """
    if m < 1:
        raise DomainError(f"sample count must be >= 1, got {m}")
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if d_signal < 2:
        raise DomainError(f"d_signal must be >= 2, got {d_signal}")
    ratio = t / m
    if ratio > 1.0:
        raise DomainError(f"t/m = {ratio} exceeds 1")
    inner = (1.0 + _LN2) * binary_entropy(ratio) + (
        eps_pe.ln_inv + d_signal * math.log(m / 2.0 + 1.0)
    ) / m
    return math.sqrt(inner) / (d_signal - 1)
