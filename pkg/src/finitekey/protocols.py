"""Protocol adapters: observations plus sifting into entropy bounds.

Turns raw observed statistics and a basis-choice plan into the quantities the
rate formulas consume: the worst-case conditional-entropy bound min H(A|E),
the error-correction cost H(A|B), sifted counts, and the number of estimated
parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import binary_entropy, eve_information, pe_deviation
from .epsilons import LogEpsilon
from .errors import DomainError

_C_SLACK = 1e-12


@dataclass(frozen=True)
class Correlators:
    """The four cross-basis correlators v1..v4, each in [-1, 1]."""

    v1: float
    v2: float
    v3: float
    v4: float

    def __post_init__(self) -> None:
        for name, v in zip(("v1", "v2", "v3", "v4"), self.as_tuple()):
            if not (math.isfinite(v) and abs(v) <= 1.0 + _C_SLACK):
                raise DomainError(f"{name} must lie in [-1, 1], got {v}")
        if self.c > 2.0 + _C_SLACK:
            raise DomainError(f"C = sum v_j^2 = {self.c} exceeds 2")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.v1, self.v2, self.v3, self.v4)

    @property
    def c(self) -> float:
        """Frame-invariant correlation parameter C = v1^2+v2^2+v3^2+v4^2."""
        return self.v1**2 + self.v2**2 + self.v3**2 + self.v4**2


@dataclass(frozen=True)
class RfiObservation:
    """Observed QBER and correlators of the frame-independent protocol."""

    q: float
    correlators: Correlators

    def __post_init__(self) -> None:
        if not 0.0 <= self.q <= 1.0:
            raise DomainError(f"Q must lie in [0, 1], got {self.q}")

    @property
    def c(self) -> float:
        return self.correlators.c


@dataclass(frozen=True)
class SiftingPlan:
    """Basis-choice probabilities and the resulting sifted counts.

    The key basis is chosen with probability ``p_z``; the two others share
    the remainder equally, p = (1 - p_z)/2.  Of N received signals the raw
    key keeps n = N p_z^2 coincidences and each correlator is estimated from
    m = N p^2.  Counts are rounded to the nearest integer, floored at 1.
    """

    n_signals: int
    p_z: float

    def __post_init__(self) -> None:
        if self.n_signals < 1:
            raise DomainError(f"N must be >= 1, got {self.n_signals}")
        if not 0.0 < self.p_z < 1.0:
            raise DomainError(f"p_z must lie in (0, 1), got {self.p_z}")

    @property
    def p(self) -> float:
        return (1.0 - self.p_z) / 2.0

    @property
    def n(self) -> int:
        """Raw-key length."""
        return max(1, round(self.n_signals * self.p_z**2))

    @property
    def m(self) -> int:
        """Samples per estimated correlator."""
        return max(1, round(self.n_signals * self.p**2))

    @property
    def m_paired(self) -> int:
        """Coincidences of a single non-key basis with itself, N(1-p_z)^2.

        This is the estimation sample count for a two-basis protocol where
        the whole non-key probability goes to one basis.
        """
        return max(1, round(self.n_signals * (1.0 - self.p_z) ** 2))

    @property
    def n_sifted(self) -> int:
        """Total sifted count N(p_z^2 + 2 p^2), used by the de Finetti split."""
        return max(1, round(self.n_signals * (self.p_z**2 + 2.0 * self.p**2)))


@dataclass(frozen=True)
class ProtocolEvaluation:
    """Worst-case entropy quantities ready for a rate formula."""

    min_h_a_given_e: float
    h_a_given_b: float
    n: int
    n_pe: int
    d_alphabet: int
    q_prime: float
    c_prime: float | None = None

    def __post_init__(self) -> None:
        limit = math.log2(self.d_alphabet)
        if not -_C_SLACK <= self.min_h_a_given_e <= limit + _C_SLACK:
            raise DomainError(
                f"min H(A|E) = {self.min_h_a_given_e} outside [0, log2(d)]"
            )
        if self.h_a_given_b < 0.0:
            raise DomainError(f"H(A|B) must be >= 0, got {self.h_a_given_b}")


def canonical_correlators(c0: float, c_bar: float, s_bar: float) -> Correlators:
    """Correlators of the canonical initial state after frame smearing.

    The ideal-state assignment puts the initial correlation entirely on the
    diagonal pair, v1(0) = a, v4(0) = -a with a = sqrt(C0/2) and
    v2(0) = v3(0) = 0; averaging the frame rotation replaces cos/sin of the
    misalignment angle by the phasor components, giving
    (a c_bar, -a s_bar, -a s_bar, -a c_bar).  The resulting C equals
    C0 (c_bar^2 + s_bar^2) exactly.
    """
    if not 0.0 <= c0 <= 2.0:
        raise DomainError(f"C0 must lie in [0, 2], got {c0}")
    if c_bar**2 + s_bar**2 > 1.0 + _C_SLACK:
        raise DomainError(
            f"phasor ({c_bar}, {s_bar}) has magnitude above 1"
        )
    a = math.sqrt(c0 / 2.0)
    return Correlators(a * c_bar, -a * s_bar, -a * s_bar, -a * c_bar)


def shrink_toward_zero(value: float, delta: float) -> float:
    """Reduce a correlator's magnitude by delta, flooring at zero.

    Worst-casing means weaker correlations; flipping the sign would be
    unphysical, so the magnitude floors at 0.
    """
    return math.copysign(max(abs(value) - delta, 0.0), value)


def rfi_worst_case(
    obs: RfiObservation, plan: SiftingPlan, eps_pe: LogEpsilon
) -> ProtocolEvaluation:
    """Worst-case evaluation of the reference-frame-independent protocol.

    The QBER is estimated on the full raw key, so it is charged the n-sample
    deviation: Q' = Q + delta(n).  Each correlator is shrunk toward zero by
    the m-sample deviation, and C' recomputed from the shrunken values.  The
    error-correction cost h(Q) uses the observed Q: the code corrects only
    the errors that actually happened.  Five parameters (Q and v1..v4)
    consume parameter-estimation confidence.
    """
    delta_n = pe_deviation(plan.n, eps_pe)
    delta_m = pe_deviation(plan.m, eps_pe)
    q_prime = obs.q + delta_n
    shrunk = [shrink_toward_zero(v, delta_m) for v in obs.correlators.as_tuple()]
    c_prime = math.fsum(v * v for v in shrunk)
    min_h = 1.0 - eve_information(q_prime, c_prime)
    return ProtocolEvaluation(
        min_h_a_given_e=min_h,
        h_a_given_b=binary_entropy(obs.q),
        n=plan.n,
        n_pe=5,
        d_alphabet=2,
        q_prime=q_prime,
        c_prime=c_prime,
    )


def bb84_worst_case(
    q: float, plan: SiftingPlan, eps_pe: LogEpsilon
) -> ProtocolEvaluation:
    """Worst-case evaluation of asymmetric BB84.

    Key bits come from the Z-basis coincidences n = N p_z^2; the error rate
    is estimated from the X-basis coincidences m = N (1-p_z)^2 and worsened
    to Q' = Q + delta(m), bounding Eve by min H(A|E) = 1 - h(Q').  A single
    estimated parameter consumes confidence.
    """
    if not 0.0 <= q < 0.5:
        raise DomainError(f"Q must lie in [0, 0.5), got {q}")
    q_prime = q + pe_deviation(plan.m_paired, eps_pe)
    if q_prime >= 0.5:
        raise DomainError(
            f"worst-case Q' = {q_prime} reaches 1/2; no key is extractable"
        )
    min_h = min(max(1.0 - binary_entropy(q_prime), 0.0), 1.0)
    return ProtocolEvaluation(
        min_h_a_given_e=min_h,
        h_a_given_b=binary_entropy(q),
        n=plan.n,
        n_pe=1,
        d_alphabet=2,
        q_prime=q_prime,
        c_prime=None,
    )
