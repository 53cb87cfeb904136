"""Reference evaluators for the Bessel family at real order, and series builders.

The evaluators are deliberately series/quadrature based and self-contained:

* ``bessel_j``   -- ascending power series, summed to relative 1e-16.
* ``neumann``    -- the positive/negative-order combination for non-integer
  order; for integer order the limit is taken by Richardson extrapolation
  in the order, cross-checked against the independent logarithmic series
  (``neumann_log_series``).
* ``hankel``     -- J +/- i N.
* ``k_bessel`` / ``k_integral`` -- half-line quadrature after an exponential
  substitution that makes the integrand decay double-exponentially at both
  ends, with node doubling until stabilization.

The intended working range is desk scale: arguments in (0, 20], orders in
[-10, 10].  No asymptotic large-argument machinery is included.

Series builders return :class:`~besselmap.logseries.LogPowerSeries` objects
in u = z**2/2 (tag "u-of-z") or u = t**2/2 (tag "u-of-t").
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .logseries import LogPowerSeries

__all__ = [
    "Order",
    "EvalResult",
    "gamma",
    "digamma",
    "bessel_j",
    "neumann",
    "neumann_log_series",
    "hankel",
    "k_bessel",
    "k_integral",
    "reduced_j_series",
    "bessel_t_series",
    "neumann_t_series",
    "hankel_t_series",
    "lambda_taylor_target",
    "log_reduced_j",
    "neumann_scaled_table",
]

_MAX_ARG = 20.0
_MAX_ORDER = 10.0
_SERIES_LIMIT = 600


@dataclass(frozen=True)
class Order:
    """Real order nu split as nu = n + lam with integer n and lam in [0, 1)."""

    nu: float

    @property
    def n(self) -> int:
        return math.floor(self.nu)

    @property
    def lam(self) -> float:
        return self.nu - math.floor(self.nu)


@dataclass(frozen=True)
class EvalResult:
    """A computed function value with an error estimate and an effort count."""

    value: complex
    err_estimate: float
    effort: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.err_estimate) or self.err_estimate < 0:
            raise ValueError(f"bad err_estimate {self.err_estimate}")
        if self.effort < 1:
            raise ValueError("effort must be >= 1")


# ---------------------------------------------------------------------------
# Gamma and digamma
# ---------------------------------------------------------------------------

# Lanczos coefficients, g = 7, n = 9 (standard double-precision set).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(x: complex) -> bool:
    return x.imag == 0 and x.real <= 0 and x.real == round(x.real)


def gamma(x: complex) -> complex:
    """Gamma function via Lanczos approximation with reflection for Re x < 0.5."""
    x = complex(x)
    if _is_nonpositive_integer(x):
        raise ValueError(f"gamma pole at {x}")
    if x.real < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return cmath.pi / (cmath.sin(cmath.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    val = math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc
    if x.imag == 0:
        return complex(val.real, 0.0)
    return val


# Asymptotic tail of psi(x): coefficients of x**(-2k) are B_2k / 2k.
_PSI_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x: float) -> float:
    """Digamma for real x via reflection, upward recurrence and the asymptotic tail."""
    x = float(x)
    if x <= 0 and x == round(x):
        raise ValueError(f"digamma pole at {x}")
    if x < 0.5:
        # psi(1-x) - psi(x) = pi / tan(pi x)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    p = inv2
    for c in _PSI_TAIL:
        tail += c * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - tail


# ---------------------------------------------------------------------------
# J, N, H
# ---------------------------------------------------------------------------


def _is_integer(nu: float) -> bool:
    return abs(nu - round(nu)) < 1e-8


def bessel_j(nu: float, z: float) -> EvalResult:
    """J_nu(z) by the ascending series, summed until term < 1e-16 * |partial|."""
    nu = float(nu)
    z = float(z)
    if abs(nu) > _MAX_ORDER:
        raise ValueError(f"|nu| = {abs(nu)} outside the supported order range [-{_MAX_ORDER}, {_MAX_ORDER}]")
    if abs(z) > _MAX_ARG:
        raise ValueError(f"|z| = {abs(z)} outside the supported range (0, {_MAX_ARG}]")
    if _is_integer(nu):
        n = round(nu)
        if n < 0:
            r = bessel_j(-nu, abs(z))
            sign = (-1.0) ** (-n)
            if z < 0:
                sign *= (-1.0) ** (-n)
            return EvalResult(sign * r.value, r.err_estimate, r.effort)
        if z < 0:
            r = bessel_j(nu, -z)
            return EvalResult((-1.0) ** n * r.value, r.err_estimate, r.effort)
        if z == 0.0:
            return EvalResult(1.0 if n == 0 else 0.0, 0.0, 1)
        nu = float(n)
    elif z <= 0:
        raise ValueError("z must be positive for non-integer order")

    half = 0.5 * z
    term = half**nu / gamma(nu + 1.0).real
    total = term
    abs_sum = abs(term)
    k = 1
    while k < _SERIES_LIMIT:
        term *= -(half * half) / (k * (nu + k))
        total += term
        abs_sum += abs(term)
        if abs(term) < 1e-16 * abs(total) + 1e-300:
            break
        k += 1
    return EvalResult(total, abs(term) + 1e-16 * abs_sum, k)


def _neumann_noninteger(nu: float, z: float) -> EvalResult:
    jp = bessel_j(nu, z)
    jm = bessel_j(-nu, z)
    s = math.sin(math.pi * nu)
    c = math.cos(math.pi * nu)
    val = (jp.value.real * c - jm.value.real) / s
    err = (jp.err_estimate + jm.err_estimate + 1e-16 * (abs(jp.value) + abs(jm.value))) / abs(s)
    return EvalResult(val, err, jp.effort + jm.effort)


def neumann_log_series(n: int, z: float) -> EvalResult:
    """Independent oracle: the textbook logarithmic expansion of N_n, integer n >= 0."""
    if n != int(n) or n < 0:
        raise ValueError("neumann_log_series needs integer n >= 0")
    n = int(n)
    if z <= 0:
        raise ValueError("z must be positive")
    half = 0.5 * z
    jn = bessel_j(n, z)
    total = (2.0 / math.pi) * math.log(half) * jn.value.real
    for k in range(n):
        total -= (math.factorial(n - k - 1) / math.factorial(k)) * half ** (2 * k - n) / math.pi
    term = half**n / math.factorial(n)
    k = 0
    effort = jn.effort + n
    while k < _SERIES_LIMIT:
        contrib = term * (digamma(k + 1.0) + digamma(n + k + 1.0)) / math.pi
        total -= contrib
        effort += 1
        if abs(contrib) < 1e-17 * abs(total) + 1e-300:
            break
        term *= -(half * half) / ((k + 1) * (n + k + 1))
        k += 1
    return EvalResult(total, 1e-15 * abs(total) + abs(term), effort)


def neumann(nu: float, z: float) -> EvalResult:
    """N_nu(z).

    Non-integer order: the positive/negative-order combination directly.
    Integer order n: the order limit, by Richardson extrapolation of the
    even combination at n +/- eps for eps in {1e-3, 5e-4}; the returned
    err_estimate is the observed distance to the independent logarithmic
    series, so every integer-order value is self-validating.
    """
    nu = float(nu)
    z = float(z)
    if z <= 0:
        raise ValueError("z must be positive")
    if not _is_integer(nu):
        return _neumann_noninteger(nu, z)
    n = round(nu)
    if n < 0:
        r = neumann(float(-n), z)
        return EvalResult((-1.0) ** (-n) * r.value, r.err_estimate, r.effort)

    effort = 0

    def even_combo(eps: float) -> float:
        nonlocal effort
        a = _neumann_noninteger(n + eps, z)
        b = _neumann_noninteger(n - eps, z)
        effort += a.effort + b.effort
        return 0.5 * (a.value.real + b.value.real)

    s1 = even_combo(1e-3)
    s2 = even_combo(5e-4)
    rich = (4.0 * s2 - s1) / 3.0
    oracle = neumann_log_series(n, z)
    effort += oracle.effort
    return EvalResult(rich, abs(rich - oracle.value.real), effort)


def hankel(kind: int, nu: float, z: float) -> EvalResult:
    """H^(1) = J + iN, H^(2) = J - iN."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    j = bessel_j(nu, z)
    n = neumann(nu, z)
    sign = 1.0 if kind == 1 else -1.0
    return EvalResult(
        complex(j.value.real, sign * n.value.real),
        j.err_estimate + n.err_estimate,
        j.effort + n.effort,
    )


# ---------------------------------------------------------------------------
# K by half-line quadrature
# ---------------------------------------------------------------------------

_NODE_BUDGET = 2**14


def _halfline_quadrature(g, window: float = 12.0, rel_target: float = 1e-12):
    """Trapezoid in w for integral of g(e^w) e^w dw over the real line.

    After the substitution x = e^w the integrands used here decay
    double-exponentially in both directions, so plain trapezoid converges
    geometrically under node doubling.  Returns (value, err, nodes).
    """

    def sample(h: float) -> tuple[float, int]:
        total = g(1.0)  # w = 0
        count = 1
        w = h
        while w <= window:
            for ww in (w, -w):
                x = math.exp(ww)
                total += g(x) * 1.0  # jacobian folded into g by caller
            count += 2
            w += h
        return total * h, count

    prev, nodes = sample(0.5)
    h = 0.25
    err = math.inf
    while nodes < _NODE_BUDGET:
        cur, nodes = sample(h)
        err = abs(cur - prev)
        if err <= rel_target * max(abs(cur), 1e-300):
            return cur, err, nodes
        prev = cur
        h *= 0.5
    raise ArithmeticError(
        f"half-line quadrature failed to stabilize within {_NODE_BUDGET} nodes (last delta {err:.3e})"
    )


def k_bessel(nu: float, t: float) -> EvalResult:
    """K_nu(t) from (1/2)(t/2)^nu * integral of exp(-s - t^2/(4s)) s^(-nu-1) ds."""
    nu = float(nu)
    t = float(t)
    if abs(nu) > _MAX_ORDER:
        raise ValueError(f"|nu| = {abs(nu)} outside the supported order range [-{_MAX_ORDER}, {_MAX_ORDER}]")
    if t <= 0:
        raise ValueError("t must be positive")
    if t > _MAX_ARG:
        raise ValueError(f"t = {t} outside the supported range (0, {_MAX_ARG}]")
    quart = 0.25 * t * t

    def g(s: float) -> float:
        expo = -s - quart / s - nu * math.log(s)
        if expo < -700.0:
            return 0.0
        return math.exp(expo)  # includes the e^w jacobian: s^(-nu-1) * s = s^(-nu)

    val, err, nodes = _halfline_quadrature(g)
    pref = 0.5 * (0.5 * t) ** nu
    return EvalResult(pref * val, pref * err, nodes)


def k_integral(n: int, t: float) -> EvalResult:
    """(1/2) * integral of exp(-t^2 x / 2 - 1/(2x)) x^(-n) dx over (0, inf).

    Decaying-exponent convention; equals t^(n-1) K_(n-1)(t).
    """
    t = float(t)
    if t <= 0:
        raise ValueError("t must be positive")
    half_t2 = 0.5 * t * t

    def g(x: float) -> float:
        expo = -half_t2 * x - 0.5 / x - (n - 1) * math.log(x)
        if expo < -700.0:
            return 0.0
        return math.exp(expo)  # x^(-n) * x jacobian = x^(1-n)

    val, err, nodes = _halfline_quadrature(g)
    return EvalResult(0.5 * val, 0.5 * err, nodes)


# ---------------------------------------------------------------------------
# Series builders
# ---------------------------------------------------------------------------


def reduced_j_series(n: int, K: int) -> LogPowerSeries:
    """J_n(z)/z^n as a pure power series in u = z^2/2; coefficient of u^k is
    (-1)^k / (k! (n+k)! 2^(n+k))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if K < n + 2:
        raise ValueError(f"K = {K} too small; need K >= n + 2 = {n + 2}")
    terms = {
        (k, 0): (-1.0) ** k / (math.factorial(k) * math.factorial(n + k) * 2.0 ** (n + k))
        for k in range(K + 1)
    }
    return LogPowerSeries("u-of-z", terms, K)


def bessel_t_series(n: int, K: int) -> LogPowerSeries:
    """t^n J_n(t) as a pure power series in u = t^2/2 (support starts at u^n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if K < n + 2:
        raise ValueError(f"K = {K} too small; need K >= n + 2 = {n + 2}")
    terms = {
        (n + k, 0): (-1.0) ** k * 2.0 ** (-k) / (math.factorial(k) * math.factorial(n + k))
        for k in range(K - n + 1)
    }
    return LogPowerSeries("u-of-t", terms, K)


def neumann_t_series(n: int, K: int) -> LogPowerSeries:
    """t^n N_n(t) as a log-power series in u = t^2/2 with j_max = 1.

    Built from the standard integer-order expansion.  log(t/2) is rewritten
    as (1/2) log u - (1/2) log 2 and the constant is folded into the j = 0
    coefficients, so the representation is canonical and comparable.
    """
    if n < 0:
        raise ValueError("n must be >= 0 (use the reflection N_{-n} = (-1)^n N_n)")
    if K < n + 2:
        raise ValueError(f"K = {K} too small; need K >= n + 2 = {n + 2}")
    terms: dict[tuple[int, int], complex] = {}

    def bump(k: int, j: int, v: float) -> None:
        terms[(k, j)] = terms.get((k, j), 0.0) + v

    ln2 = math.log(2.0)
    # (2/pi) log(t/2) t^n J_n(t)
    for k in range(K - n + 1):
        c = (-1.0) ** k * 2.0 ** (-k) / (math.factorial(k) * math.factorial(n + k))
        bump(n + k, 1, (1.0 / math.pi) * c)
        bump(n + k, 0, -(ln2 / math.pi) * c)
    # -(1/pi) sum_{k<n} (n-k-1)!/k! (t/2)^(2k-n) t^n  =  -(1/pi) (n-k-1)!/k! 2^(n-k) u^k
    for k in range(n):
        bump(k, 0, -(math.factorial(n - k - 1) / math.factorial(k)) * 2.0 ** (n - k) / math.pi)
    # -(1/pi) sum_k (-1)^k [psi(k+1)+psi(n+k+1)] (t/2)^(n+2k) t^n / (k!(n+k)!)
    for k in range(K - n + 1):
        c = (-1.0) ** k * 2.0 ** (-k) / (math.factorial(k) * math.factorial(n + k))
        bump(n + k, 0, -(digamma(k + 1.0) + digamma(n + k + 1.0)) * c / math.pi)
    return LogPowerSeries("u-of-t", terms, K)


def hankel_t_series(kind: int, n: int, K: int) -> LogPowerSeries:
    """t^n H_n^(kind)(t) = t^n J_n(t) +/- i t^n N_n(t) as a complex log-power series."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    sign = 1.0j if kind == 1 else -1.0j
    return bessel_t_series(n, K).add(neumann_t_series(n, K).scale(sign))


# ---------------------------------------------------------------------------
# Lambda-Taylor targets
# ---------------------------------------------------------------------------

_FAMILIES = ("reducedJ", "N", "H1", "H2")


def _family_value(family: str, nu: float, x: float) -> complex:
    if family == "reducedJ":
        return bessel_j(nu, x).value / x**nu
    if family == "N":
        return x**nu * neumann(nu, x).value
    if family == "H1":
        return x**nu * hankel(1, nu, x).value
    if family == "H2":
        return x**nu * hankel(2, nu, x).value
    raise ValueError(f"unknown family {family!r}; expected one of {_FAMILIES}")


def _reduced_j_lambda1_analytic(n: int, z: float) -> float:
    """Coefficient route for d/dlam [J_(n+lam)(z)/z^(n+lam)] at lam = 0:
    sum_k c_k(n) (-psi(n+k+1) - log 2) u^k."""
    u = 0.5 * z * z
    ln2 = math.log(2.0)
    total = 0.0
    for k in range(_SERIES_LIMIT):
        c = (-1.0) ** k / (math.factorial(k) * math.factorial(n + k) * 2.0 ** (n + k))
        term = c * (-digamma(n + k + 1.0) - ln2) * u**k
        total += term
        if k > 2 and abs(term) < 1e-17 * abs(total) + 1e-300:
            break
    return total


def lambda_taylor_target(family: str, n: int, j: int, probe: float) -> complex:
    """(1/j!) d^j/dlam^j of the real-order target at lam = 0, j in {0, 1, 2}.

    Computed by Richardson-combined central differences in the order
    (steps 1e-3 and 5e-4).  For the reducedJ family at j = 1 the digamma
    coefficient form is also computed; disagreement beyond 1e-6 raises.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {_FAMILIES}")
    if j not in (0, 1, 2):
        raise ValueError("j must be 0, 1 or 2")
    if probe <= 0:
        raise ValueError("probe point must be positive")
    f = lambda lam: _family_value(family, n + lam, probe)
    if j == 0:
        return f(0.0)
    h = 1e-3
    if j == 1:
        d1 = (f(h) - f(-h)) / (2.0 * h)
        d2 = (f(h / 2) - f(-h / 2)) / h
        fd = (4.0 * d2 - d1) / 3.0
        if family == "reducedJ":
            analytic = _reduced_j_lambda1_analytic(n, probe)
            if abs(fd - analytic) > 1e-6:
                raise ArithmeticError(
                    f"lambda-Taylor internal consistency failure: finite differences "
                    f"{fd} vs digamma form {analytic}"
                )
            return complex(analytic)
        return fd
    f0 = f(0.0)
    s1 = (f(h) - 2.0 * f0 + f(-h)) / (h * h)
    s2 = (f(h / 2) - 2.0 * f0 + f(-h / 2)) / (h * h / 4.0)
    return (4.0 * s2 - s1) / 3.0 / 2.0


# ---------------------------------------------------------------------------
# Scaled (sign, log-magnitude) evaluators for large-order term assembly
# ---------------------------------------------------------------------------


def log_reduced_j(n: int, z: float) -> tuple[float, float]:
    """(sign, log|J_n(z)/z^n|) for integer n >= 0, z >= 0, stable to n ~ hundreds.

    J_n(z)/z^n = 2^(-n)/n! * S with S a fast-converging hypergeometric bracket.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if z < 0:
        raise ValueError("z must be >= 0")
    u = 0.5 * z * z
    s = 1.0
    term = 1.0
    for k in range(1, _SERIES_LIMIT):
        term *= -(0.5 * u) / (k * (n + k))
        s += term
        if abs(term) < 1e-18 * abs(s) + 1e-300:
            break
    if s == 0.0:
        return 1.0, -math.inf
    return math.copysign(1.0, s), -n * math.log(2.0) - math.lgamma(n + 1.0) + math.log(abs(s))


def neumann_scaled_table(t: float, pmax: int) -> list[tuple[float, float]]:
    """(sign, log|t^p N_p(t)|) for p = 0..pmax by the scaled upward recurrence
    G_{p+1} = 2p G_p - t^2 G_{p-1}, which is forward-stable for the N family."""
    if t <= 0:
        raise ValueError("t must be positive")
    if pmax < 1:
        raise ValueError("pmax must be >= 1")
    g0 = neumann(0.0, t).value.real
    g1 = t * neumann(1.0, t).value.real
    mants = [0.0, 0.0]
    exps = [0, 0]
    mants[0], exps[0] = math.frexp(g0)
    mants[1], exps[1] = math.frexp(g1)
    for p in range(1, pmax):
        v = 2.0 * p * mants[p] * 2.0 ** (exps[p] - exps[p - 1]) - t * t * mants[p - 1]
        m, e = math.frexp(v)
        mants.append(m)
        exps.append(e + exps[p - 1])
    out = []
    for m, e in zip(mants, exps):
        if m == 0.0:
            out.append((1.0, -math.inf))
        else:
            out.append((math.copysign(1.0, m), math.log(abs(m)) + e * math.log(2.0)))
    return out
