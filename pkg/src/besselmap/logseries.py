"""Finite log-power series and their exact derivative/antiderivative calculus.

Everything in this package lives in the variable ``u = z**2 / 2`` (or
``u = t**2 / 2`` for the second argument of the bilinear identities).  With
that choice the operator "twice the derivative with respect to z squared"
is exactly ``d/du``, and the matching antiderivative is exactly ``∫ du``.
Getting this factor of two right once, here, avoids factor-of-2 drift in
every operator built on top.

A :class:`LogPowerSeries` is a finite sum

    sum_{k,j} a[k,j] * u**k * (log u)**j

with integer powers ``k`` (negative allowed), non-negative integer log
powers ``j`` and complex coefficients.  ``K_trunc`` declares the highest
power that is *known*: powers above it are unrepresented, not zero.
Differentiation consumes one known power per application, so it lowers
``K_trunc``; antidifferentiation raises it.

Integration constants are fixed to zero at every stage:

    ∫ u**k du            = u**(k+1) / (k+1)          (k != -1)
    ∫ u**-1 (log u)**j   = (log u)**(j+1) / (j+1)
    ∫ u**k (log u)**j du = by parts, no constant     (k != -1)

This is the unique convention that makes the single-step derivative a
left inverse of the single-step antiderivative termwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = ["LogPowerSeries"]

_TAGS = ("u-of-z", "u-of-t")


def _clean(terms: Mapping[tuple[int, int], complex]) -> dict[tuple[int, int], complex]:
    out: dict[tuple[int, int], complex] = {}
    for (k, j), a in terms.items():
        a = complex(a)
        if a == 0:
            continue
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ValueError(f"non-finite coefficient at (k={k}, j={j}): {a}")
        if j < 0:
            raise ValueError(f"negative log power j={j}")
        out[(int(k), int(j))] = a
    return out


@dataclass(frozen=True)
class LogPowerSeries:
    """Immutable finite log-power series in u with declared truncation order.

    Parameters
    ----------
    variable_tag : "u-of-z" or "u-of-t"
        Which physical variable u abbreviates; series with different tags
        never mix.
    terms : mapping (k, j) -> complex
        Coefficient of u**k (log u)**j.  Zero coefficients are dropped.
    K_trunc : int
        Highest reliable power of u.  Terms with k > K_trunc are rejected.
    """

    variable_tag: str
    terms: dict[tuple[int, int], complex] = field(default_factory=dict)
    K_trunc: int = 0

    def __post_init__(self) -> None:
        if self.variable_tag not in _TAGS:
            raise ValueError(f"unknown variable_tag {self.variable_tag!r}; expected one of {_TAGS}")
        cleaned = _clean(self.terms)
        for (k, _j) in cleaned:
            if k > self.K_trunc:
                raise ValueError(
                    f"term u^{k} lies above the declared truncation order {self.K_trunc}"
                )
        object.__setattr__(self, "terms", cleaned)

    # -- structural properties -------------------------------------------------

    @property
    def k_min(self) -> int:
        """Smallest power present (0 for the empty series)."""
        return min((k for k, _ in self.terms), default=0)

    @property
    def j_max(self) -> int:
        """Largest log power present (0 for the empty series)."""
        return max((j for _, j in self.terms), default=0)

    def coefficient(self, k: int, j: int = 0) -> complex:
        return self.terms.get((k, j), 0.0 + 0.0j)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        head = ", ".join(
            f"({k},{j}): {a:.6g}" for (k, j), a in sorted(self.terms.items())[:4]
        )
        more = "" if len(self.terms) <= 4 else f", ... {len(self.terms)} terms"
        return f"LogPowerSeries[{self.variable_tag}, K={self.K_trunc}]{{{head}{more}}}"

    # -- linear plumbing ---------------------------------------------------------

    def add(self, other: "LogPowerSeries") -> "LogPowerSeries":
        """Coefficientwise sum.  The result is reliable only up to the smaller
        K_trunc, so terms above it are discarded, not kept as if known."""
        if self.variable_tag != other.variable_tag:
            raise ValueError(
                f"variable_tag mismatch: {self.variable_tag} vs {other.variable_tag}"
            )
        k_new = min(self.K_trunc, other.K_trunc)
        out: dict[tuple[int, int], complex] = {}
        for src in (self.terms, other.terms):
            for (k, j), a in src.items():
                if k <= k_new:
                    out[(k, j)] = out.get((k, j), 0.0) + a
        return LogPowerSeries(self.variable_tag, out, k_new)

    def scale(self, c: complex) -> "LogPowerSeries":
        return LogPowerSeries(
            self.variable_tag, {kj: c * a for kj, a in self.terms.items()}, self.K_trunc
        )

    def mul_monomial(self, dk: int, dj: int = 0) -> "LogPowerSeries":
        """Multiply by u**dk (log u)**dj; the truncation order shifts with dk."""
        if dj < 0:
            raise ValueError("dj must be non-negative")
        return LogPowerSeries(
            self.variable_tag,
            {(k + dk, j + dj): a for (k, j), a in self.terms.items()},
            self.K_trunc + dk,
        )

    def __add__(self, other: "LogPowerSeries") -> "LogPowerSeries":
        return self.add(other)

    def __sub__(self, other: "LogPowerSeries") -> "LogPowerSeries":
        return self.add(other.scale(-1.0))

    def __neg__(self) -> "LogPowerSeries":
        return self.scale(-1.0)

    def __rmul__(self, c: complex) -> "LogPowerSeries":
        return self.scale(c)

    # -- calculus ----------------------------------------------------------------

    def derivative(self, m: int = 1) -> "LogPowerSeries":
        """m-fold d/du.  Exact termwise; lowers K_trunc by m.

        d/du [u^k (log u)^j] = k u^(k-1) (log u)^j + j u^(k-1) (log u)^(j-1)
        """
        if m < 1:
            raise ValueError("m must be a positive integer")
        cur = self
        for _ in range(m):
            out: dict[tuple[int, int], complex] = {}
            for (k, j), a in cur.terms.items():
                if k != 0:
                    out[(k - 1, j)] = out.get((k - 1, j), 0.0) + a * k
                if j != 0:
                    out[(k - 1, j - 1)] = out.get((k - 1, j - 1), 0.0) + a * j
            cur = LogPowerSeries(cur.variable_tag, out, cur.K_trunc - 1)
        return cur

    def antiderivative(self, m: int = 1) -> "LogPowerSeries":
        """m-fold ∫ du with zero integration constant at every stage."""
        if m < 1:
            raise ValueError("m must be a positive integer")
        cur = self
        for _ in range(m):
            out: dict[tuple[int, int], complex] = {}
            for (k, j), a in cur.terms.items():
                if k == -1:
                    kj = (0, j + 1)
                    out[kj] = out.get(kj, 0.0) + a / (j + 1)
                else:
                    # repeated integration by parts down the log powers
                    coef = a
                    jj = j
                    while True:
                        kj = (k + 1, jj)
                        out[kj] = out.get(kj, 0.0) + coef / (k + 1)
                        if jj == 0:
                            break
                        coef = -coef * jj / (k + 1)
                        jj -= 1
            cur = LogPowerSeries(cur.variable_tag, out, cur.K_trunc + 1)
        return cur

    # -- evaluation and comparison -------------------------------------------------

    def evaluate(self, u: complex) -> complex:
        """Sum the series at u using the principal branch of the logarithm."""
        u = complex(u)
        if u == 0:
            if self.k_min < 0 or self.j_max > 0:
                raise ValueError("series is singular at u = 0 (negative power or log term)")
            return self.coefficient(0, 0)
        lu = cmath.log(u)
        total = 0.0 + 0.0j
        for (k, j), a in sorted(self.terms.items()):
            total += a * u**k * lu**j
        return total

    def compare(self, other: "LogPowerSeries", order: int) -> float:
        """Max coefficient distance over powers k <= order (absent terms are zero)."""
        if self.variable_tag != other.variable_tag:
            raise ValueError(
                f"variable_tag mismatch: {self.variable_tag} vs {other.variable_tag}"
            )
        if order > min(self.K_trunc, other.K_trunc):
            raise ValueError(
                f"comparison order {order} exceeds reliable order "
                f"{min(self.K_trunc, other.K_trunc)}"
            )
        keys = {kj for kj in self.terms if kj[0] <= order}
        keys |= {kj for kj in other.terms if kj[0] <= order}
        return max(
            (abs(self.coefficient(*kj) - other.coefficient(*kj)) for kj in keys),
            default=0.0,
        )

    # -- serialization ---------------------------------------------------------------

    def to_records(self) -> dict:
        """Report form: sorted term records plus the structural metadata."""
        return {
            "variable_tag": self.variable_tag,
            "K_trunc": self.K_trunc,
            "terms": [
                {"k": k, "j": j, "re": a.real, "im": a.imag}
                for (k, j), a in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_records(cls, rec: dict) -> "LogPowerSeries":
        terms = {
            (int(t["k"]), int(t["j"])): complex(t["re"], t["im"]) for t in rec["terms"]
        }
        return cls(rec["variable_tag"], terms, int(rec["K_trunc"]))
