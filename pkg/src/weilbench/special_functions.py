"""Complex special functions underlying the workbench.

Everything here is plain-float numerics built from scratch: principal-branch
log-Gamma and digamma (recurrence shift into a Stirling zone with Bernoulli
tail), the Riemann-Siegel theta and Z functions, and the Hurwitz zeta function
by Euler-Maclaurin summation with an explicit remainder bound.  All operations
are pure, accept scalars or numpy arrays, and raise typed errors instead of
letting NaN/inf escape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, InternalConsistencyError, PoleError

__all__ = [
    "AccuracyBudget",
    "DEFAULT_BUDGET",
    "log_gamma",
    "digamma",
    "riemann_siegel_theta",
    "riemann_siegel_theta_deriv",
    "riemann_siegel_Z",
    "rs_remainder_bound",
    "hurwitz_zeta",
]

# Exact rationals B_2 .. B_26 as floats; enough for all Stirling/EM tails used here.
_BERNOULLI = {
    2: 1.0 / 6.0,
    4: -1.0 / 30.0,
    6: 1.0 / 42.0,
    8: -1.0 / 30.0,
    10: 5.0 / 66.0,
    12: -691.0 / 2730.0,
    14: 7.0 / 6.0,
    16: -3617.0 / 510.0,
    18: 43867.0 / 798.0,
    20: -174611.0 / 330.0,
    22: 854513.0 / 138.0,
    24: -236364091.0 / 2730.0,
    26: 8553103.0 / 6.0,
}

_LOG_2PI = math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# Stirling zone radius: once Re(z) >= _STIRLING_SHIFT the Bernoulli tail below
# is accurate to ~1e-20 with the term counts used.
_STIRLING_SHIFT = 12.0

# log Gamma Stirling coefficients: B_{2k} / (2k (2k-1)), k = 1..10.
_LG_COEFFS = [_BERNOULLI[2 * k] / (2 * k * (2 * k - 1)) for k in range(1, 11)]
# digamma Stirling coefficients: B_{2k} / (2k), k = 1..10.
_PSI_COEFFS = [_BERNOULLI[2 * k] / (2 * k) for k in range(1, 11)]


@dataclass(frozen=True)
class AccuracyBudget:
    """Absolute/relative tolerance targets plus a hard term-count ceiling."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_terms: int = 200_000

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_BUDGET = AccuracyBudget()


def _as_complex_array(z):
    """Coerce input to a complex ndarray, remembering scalar-ness."""
    arr = np.asarray(z, dtype=np.complex128)
    return arr, (arr.ndim == 0)


def _check_poles(z: np.ndarray) -> None:
    on_axis = (z.imag == 0.0) & (z.real <= 0.0)
    if np.any(on_axis & (z.real == np.floor(z.real))):
        raise PoleError("log_gamma/digamma pole at a non-positive integer")


def _shift_into_stirling_zone(z: np.ndarray):
    """Return (w, n) with w = z + n, Re(w) >= _STIRLING_SHIFT elementwise."""
    n = np.ceil(_STIRLING_SHIFT - z.real)
    n = np.maximum(n, 0.0).astype(np.int64)
    return z + n, n


def _stirling_log_gamma(w: np.ndarray) -> np.ndarray:
    # (w - 1/2) log w - w + log(2 pi)/2 + sum B_{2k}/(2k(2k-1) w^{2k-1})
    out = (w - 0.5) * np.log(w) - w + 0.5 * _LOG_2PI
    inv2 = 1.0 / (w * w)
    term = 1.0 / w
    for c in _LG_COEFFS:
        out = out + c * term
        term = term * inv2
    return out


def _stirling_digamma(w: np.ndarray) -> np.ndarray:
    # log w - 1/(2w) - sum B_{2k}/(2k w^{2k})
    out = np.log(w) - 0.5 / w
    inv2 = 1.0 / (w * w)
    term = inv2
    for c in _PSI_COEFFS:
        out = out - c * term
        term = term * inv2
    return out


def log_gamma(z):
    """Principal branch of log Gamma(z), vectorized over complex input.

    Uses the exact recurrence ``log Gamma(z) = log Gamma(z + n) - sum_k
    Log(z + k)`` (principal logs; the identity holds on the plane cut along
    the negative real axis) to shift into a zone where the Stirling series
    with Bernoulli tail is accurate to well below 1e-15, so the result is
    continuous along any path avoiding the poles at 0, -1, -2, ...
    """
    z, scalar = _as_complex_array(z)
    _check_poles(z)
    w, n = _shift_into_stirling_zone(z)
    out = _stirling_log_gamma(w)
    nmax = int(n.max()) if n.size else 0
    if nmax > 0:
        zflat = z.reshape(-1)
        nflat = n.reshape(-1)
        acc = np.zeros_like(zflat)
        for k in range(nmax):
            mask = nflat > k
            if not mask.any():
                break
            acc[mask] += np.log(zflat[mask] + k)
        out = out - acc.reshape(z.shape)
    return complex(out) if scalar else out


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z), principal values, vectorized."""
    z, scalar = _as_complex_array(z)
    _check_poles(z)
    w, n = _shift_into_stirling_zone(z)
    out = _stirling_digamma(w)
    nmax = int(n.max()) if n.size else 0
    if nmax > 0:
        zflat = z.reshape(-1)
        nflat = n.reshape(-1)
        acc = np.zeros_like(zflat)
        for k in range(nmax):
            mask = nflat > k
            if not mask.any():
                break
            acc[mask] += 1.0 / (zflat[mask] + k)
        out = out - acc.reshape(z.shape)
    return complex(out) if scalar else out


def riemann_siegel_theta(t):
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi for t > 0."""
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr <= 0.0):
        raise ValueError("riemann_siegel_theta requires t > 0")
    lg = log_gamma(0.25 + 0.5j * t_arr)
    out = np.imag(lg) - 0.5 * t_arr * _LOG_PI
    return float(out) if t_arr.ndim == 0 else out


def riemann_siegel_theta_deriv(t):
    """theta'(t) = Re psi(1/4 + it/2)/2 - log(pi)/2; needed for Gram points."""
    t_arr = np.asarray(t, dtype=np.float64)
    ps = digamma(0.25 + 0.5j * t_arr)
    out = 0.5 * np.real(ps) - 0.5 * _LOG_PI
    return float(out) if t_arr.ndim == 0 else out


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin

def _em_remainder_bound(s: np.ndarray, base: float, K: int) -> float:
    """Upper bound for the Euler-Maclaurin remainder after K Bernoulli terms.

    Classical bound: |R_K| <= |B_{2K+2}/(2K+2)! * (s)_{2K+1} * base^{-s-2K-1}|
    * |s+2K+1| / (sigma+2K+1), valid for sigma = Re(s) > -(2K+1).
    """
    sigma = s.real
    coef = abs(_BERNOULLI[2 * K + 2]) / math.factorial(2 * K + 2)
    poch = np.ones_like(s)
    for j in range(2 * K + 1):
        poch = poch * (s + j)
    mag = coef * np.abs(poch) * base ** (-(sigma + 2 * K + 1))
    factor = np.abs(s + 2 * K + 1) / (sigma + 2 * K + 1)
    return float(np.max(mag * factor))


def hurwitz_zeta(s, a: float, budget: AccuracyBudget | None = None):
    """Hurwitz zeta(s, a) for 0 < a <= 1, by Euler-Maclaurin with certified tail.

    Accepts scalar or array s (the array form shares one truncation point N
    sized for the worst element).  Valid comfortably for |Im s| up to a few
    thousand and Re s > -5; raises PoleError at s = 1 and BudgetExceededError
    when the remainder cannot be certified within ``budget.max_terms``.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    if not (0.0 < a <= 1.0):
        raise ValueError("hurwitz_zeta requires 0 < a <= 1")
    s_arr, scalar = _as_complex_array(s)
    if np.any(s_arr == 1.0):
        raise PoleError("hurwitz_zeta pole at s = 1")
    sigma_min = float(np.min(s_arr.real))
    if sigma_min <= -5.0:
        raise ValueError("hurwitz_zeta implemented for Re s > -5")

    im_max = float(np.max(np.abs(s_arr.imag))) if s_arr.size else 0.0
    N = max(16, int(0.8 * im_max) + 8)
    K = 10  # Bernoulli terms through B_20; bound uses B_22

    # Grow N until the analytic remainder bound meets the budget.
    while True:
        bound = _em_remainder_bound(s_arr, N + a, K)
        if bound <= budget.abs_tol:
            break
        if N > budget.max_terms:
            raise BudgetExceededError(
                f"hurwitz_zeta: remainder {bound:.3e} > abs_tol with N={N}"
            )
        N = int(N * 1.5) + 8

    flat = s_arr.reshape(-1)
    total = np.zeros(flat.shape, dtype=np.complex128)
    # Main sum in chunks: sum_{n<N} (n+a)^{-s} = exp(-s log(n+a)).
    chunk = 4096
    for start in range(0, N, chunk):
        n_vals = np.arange(start, min(start + chunk, N), dtype=np.float64) + a
        logs = np.log(n_vals)
        total += np.exp(-np.outer(flat, logs)).sum(axis=1)

    base = N + a
    logb = math.log(base)
    total += np.exp((1.0 - flat) * logb) / (flat - 1.0)
    total += 0.5 * np.exp(-flat * logb)

    # Bernoulli correction terms B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1}.
    poch = flat.copy()  # (s)_1
    b_pow = np.exp(-(flat + 1.0) * logb)  # (N+a)^{-s-1}
    inv_b2 = base ** (-2.0)
    for k in range(1, K + 1):
        coef = _BERNOULLI[2 * k] / math.factorial(2 * k)
        total += coef * poch * b_pow
        if k < K:
            poch = poch * (flat + (2 * k - 1)) * (flat + 2 * k)
            b_pow = b_pow * inv_b2

    out = total.reshape(s_arr.shape)
    return complex(out) if scalar else out


# ---------------------------------------------------------------------------
# Riemann-Siegel Z

# Remainder-bound constants for the asymptotic path with K correction terms
# (K = 0 means main sum + C0): |R| <= const * t^{-(2K+3)/4} for t >= 200.
_RS_REMAINDER_CONST = {0: 0.127, 1: 0.053, 2: 0.011}
_RS_T_CEILING = 1.0e4
_RS_T_FLOOR_ASYMPTOTIC = 200.0


def rs_remainder_bound(t: float, K: int) -> float:
    """Certified remainder of the Riemann-Siegel asymptotic path with K+1 terms."""
    if K not in _RS_REMAINDER_CONST:
        raise ValueError("K must be 0, 1 or 2")
    return _RS_REMAINDER_CONST[K] * float(t) ** (-(2 * K + 3) / 4.0)


def _psi_rs_values(z):
    """Psi(z) = cos(2 pi (z^2 - z - 1/16)) / cos(2 pi z) for complex z.

    Psi is entire (the denominator zeros at z = 1/4 + k/2 are cancelled); near
    the removable points in reach of the evaluations here the equivalent
    sine-ratio local forms avoid the 0/0 cancellation.
    """
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    near_q = np.abs(z - 0.25) < 0.04
    near_3q = np.abs(z - 0.75) < 0.04
    plain = ~(near_q | near_3q)
    zp = z[plain]
    out[plain] = np.cos(2.0 * np.pi * (zp * zp - zp - 0.0625)) / np.cos(2.0 * np.pi * zp)
    for mask, center, sgn in ((near_q, 0.25, -1.0), (near_3q, 0.75, 1.0)):
        if mask.any():
            q = z[mask] - center
            num = np.sin(np.pi * q * (1.0 + sgn * 2.0 * q))
            den = np.sin(2.0 * np.pi * q)
            out[mask] = np.where(q == 0.0, 0.5, num / np.where(den == 0.0, 1.0, den))
    return out


def _psi_rs(p):
    return _psi_rs_values(np.asarray(p, dtype=np.float64)).real


# Cauchy-circle differentiation of the entire function Psi: spectrally accurate
# and free of the roundoff blowup of repeated polynomial differentiation.
_PSI_CIRCLE_NODES = 64
_PSI_CIRCLE_RADIUS = 0.2


def _psi_deriv(p, order: int):
    """order-th derivative of Psi at real p via the Cauchy integral formula."""
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    if order == 0:
        return _psi_rs(p)
    k = np.arange(_PSI_CIRCLE_NODES)
    circle = _PSI_CIRCLE_RADIUS * np.exp(2j * np.pi * k / _PSI_CIRCLE_NODES)
    vals = _psi_rs_values(p[:, None] + circle[None, :])
    phases = np.exp(-2j * np.pi * order * k / _PSI_CIRCLE_NODES)
    coef = (vals * phases[None, :]).mean(axis=1) / _PSI_CIRCLE_RADIUS**order
    return (math.factorial(order) * coef).real


def _rs_asymptotic_Z(t: float, K: int) -> float:
    """Riemann-Siegel main sum plus correction terms C0..CK at a single t."""
    tau = t / (2.0 * np.pi)
    a = math.sqrt(tau)
    nu = int(a)
    p = a - nu
    theta = riemann_siegel_theta(t)
    n = np.arange(1, nu + 1, dtype=np.float64)
    main = 2.0 * np.sum(np.cos(theta - t * np.log(n)) / np.sqrt(n))
    # Correction series in powers of tau^{-1/2}.
    c0 = float(_psi_deriv(p, 0))
    corr = c0
    if K >= 1:
        c1 = -float(_psi_deriv(p, 3)) / (96.0 * np.pi**2)
        corr += c1 * tau ** (-0.5)
    if K >= 2:
        c2 = (
            float(_psi_deriv(p, 2)) / (64.0 * np.pi**2)
            + float(_psi_deriv(p, 6)) / (18432.0 * np.pi**4)
        )
        corr += c2 / tau
    sign = -1.0 if (nu % 2 == 0) else 1.0  # (-1)^{nu-1}, validated against the EM engine
    return main + sign * tau ** (-0.25) * corr


def riemann_siegel_Z(t, budget: AccuracyBudget | None = None, method: str = "auto"):
    """Z(t) = e^{i theta(t)} zeta(1/2 + it) as a real number, for 2 <= t <= 1e4.

    method="em" evaluates zeta by certified Euler-Maclaurin and rotates (the
    default workhorse); method="rs" uses the Riemann-Siegel main sum with
    correction terms C0..C2 and raises BudgetExceededError when its certified
    remainder cannot meet ``budget.abs_tol``; method="auto" picks the cheap
    asymptotic path only when its remainder bound qualifies.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    t_arr = np.asarray(t, dtype=np.float64)
    scalar = t_arr.ndim == 0
    t_flat = np.atleast_1d(t_arr)
    if np.any(t_flat < 2.0):
        raise ValueError("riemann_siegel_Z requires t >= 2")
    if np.any(t_flat > _RS_T_CEILING):
        raise ValueError("riemann_siegel_Z supports t <= 1e4 only")

    if method not in ("auto", "em", "rs"):
        raise ValueError("method must be auto, em or rs")

    def em_path(ts: np.ndarray) -> np.ndarray:
        s = 0.5 + 1j * ts
        zeta_vals = np.atleast_1d(hurwitz_zeta(s, 1.0, budget))
        theta = np.atleast_1d(riemann_siegel_theta(ts))
        rotated = np.exp(1j * theta) * zeta_vals
        resid = float(np.max(np.abs(rotated.imag)))
        if resid > max(1e-8, 100.0 * budget.abs_tol):
            raise InternalConsistencyError(
                f"Z(t) imaginary residual {resid:.3e} after rotation"
            )
        return rotated.real

    def rs_path(ts: np.ndarray) -> np.ndarray:
        out = np.empty_like(ts)
        for i, tv in enumerate(ts):
            if tv < _RS_T_FLOOR_ASYMPTOTIC:
                raise BudgetExceededError(
                    "Riemann-Siegel asymptotic path not certified below t=200"
                )
            if rs_remainder_bound(tv, 2) > budget.abs_tol:
                raise BudgetExceededError(
                    f"Riemann-Siegel remainder {rs_remainder_bound(tv, 2):.2e} "
                    f"> abs_tol at t={tv:g}"
                )
            out[i] = _rs_asymptotic_Z(float(tv), 2)
        return out

    if method == "em":
        vals = em_path(t_flat)
    elif method == "rs":
        vals = rs_path(t_flat)
    else:
        use_rs = (t_flat >= _RS_T_FLOOR_ASYMPTOTIC) & (
            _RS_REMAINDER_CONST[2] * t_flat ** (-7.0 / 4.0) <= budget.abs_tol
        )
        vals = np.empty_like(t_flat)
        if np.any(~use_rs):
            vals[~use_rs] = em_path(t_flat[~use_rs])
        if np.any(use_rs):
            vals[use_rs] = rs_path(t_flat[use_rs])
    return float(vals[0]) if scalar else vals.reshape(t_arr.shape)
