"""The order-shift generator Sigma and its truncated exponential map.

Sigma acts on a log-power series s as

    Sigma s = sum_{m=1..M} w(m) * [ d^m s / m  -  I^m s / m ]

where d^m is the m-fold derivative in u, I^m the m-fold antiderivative
(zero integration constants), and the weight w(m) is 1 for the plain
variant ("z1") or (-1)^m for the alternating variant ("z2", the one that
appears on the t side of the bilinear identities).  Both signs of the
weight are even in m, so the two variants differ exactly in the odd-m
terms.

exp(sign * lam * Sigma) is evaluated as a plain Taylor truncation at
exp_order J_max; there is no resummation.  Reliable-order bookkeeping:
one application of Sigma with window M can only be trusted at powers
whose derivative contributions all came from within the known range, so
K_trunc drops by M per application and terms above the new K_trunc are
discarded.  Coefficients at the surviving powers (including any negative
powers generated from log terms) received every in-window contribution.

The truncated map is a diagnostic object: how closely it reproduces
real-order Bessel-family targets is *measured* by the identity checkers,
not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .logseries import LogPowerSeries

__all__ = [
    "SigmaConfig",
    "apply_sigma",
    "apply_exp_sigma",
    "lambda_coefficients",
    "kernel_identity_check",
]

_VARIANTS = ("z1", "z2")


@dataclass(frozen=True)
class SigmaConfig:
    """Operator configuration: variant, shift window M, exp order, deformation lam."""

    variant: str = "z1"
    shift_window: int = 12
    exp_order: int = 4
    lam: float = 0.0

    def __post_init__(self) -> None:
        v = self.variant.lower()
        if v not in _VARIANTS:
            raise ValueError(f"variant must be one of {_VARIANTS}, got {self.variant!r}")
        object.__setattr__(self, "variant", v)
        if self.shift_window < 1:
            raise ValueError("shift_window must be >= 1")
        if self.exp_order < 0:
            raise ValueError("exp_order must be >= 0")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lam must lie in [0, 1]")

    def weight(self, m: int) -> float:
        return 1.0 if self.variant == "z1" else (-1.0) ** (m % 2)


def apply_sigma(s: LogPowerSeries, cfg: SigmaConfig) -> LogPowerSeries:
    """One application of Sigma; the result's reliable order is K_trunc - M."""
    M = cfg.shift_window
    k_new = s.K_trunc - M
    acc: dict[tuple[int, int], complex] = {}
    d = s
    a = s
    for m in range(1, M + 1):
        d = d.derivative(1)
        a = a.antiderivative(1)
        w = cfg.weight(m) / m
        for (k, j), c in d.terms.items():
            if k <= k_new:
                acc[(k, j)] = acc.get((k, j), 0.0) + w * c
        for (k, j), c in a.terms.items():
            if k <= k_new:
                acc[(k, j)] = acc.get((k, j), 0.0) - w * c
    return LogPowerSeries(s.variable_tag, acc, k_new)


def lambda_coefficients(
    s: LogPowerSeries, cfg: SigmaConfig, sign: int = 1
) -> list[LogPowerSeries]:
    """Coefficient series of lam^j in exp(sign*lam*Sigma) s, j = 0..exp_order.

    Entry j is sign^j Sigma^j s / j!, with Sigma^j computed by nesting, so
    entry j's reliable order is K_trunc - j*M.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    entries = [s]
    term = s
    for j in range(1, cfg.exp_order + 1):
        term = apply_sigma(term, cfg).scale(sign / j)
        entries.append(term)
    return entries


def apply_exp_sigma(s: LogPowerSeries, cfg: SigmaConfig, sign: int = 1) -> LogPowerSeries:
    """Truncated exponential: sum_j (sign*lam)^j Sigma^j s / j!, j <= exp_order.

    lam = 0 returns s itself (the exact identity, truncation order intact).
    Otherwise the accumulated series is reliable to K_trunc - exp_order*M.
    """
    if cfg.lam == 0.0:
        return s
    entries = lambda_coefficients(s, cfg, sign)
    out = entries[0]
    powl = 1.0
    for entry in entries[1:]:
        powl *= cfg.lam
        out = out.add(entry.scale(powl))
    return out


def kernel_identity_check(z: float, t: float) -> float:
    """Residual of d/d(z^2)[1/(t^2-z^2)] + d/d(t^2)[1/(t^2-z^2)], analytically zero.

    The two closed forms are +(t^2-z^2)^-2 and -(t^2-z^2)^-2; the residual
    guards the sign convention that turns the plain variant into the
    alternating one on the t side.
    """
    x = t * t - z * z
    if x == 0.0:
        raise ValueError("singular input: t^2 == z^2")
    d_z2 = 1.0 / (x * x)
    d_t2 = -1.0 / (x * x)
    return abs(d_z2 + d_t2)
