"""Spectral route to the explicit formula.

Every place carries a local gamma factor on the critical strip; its
logarithmic derivative restricted to the critical line is the *multiplier*
h(tau) of that place.  The same local term that local_terms.py computes by
principal-value integrals and shell sums is here recovered as

    w = (1/2pi) * integral over R of  ghat(i tau) h(tau) dtau,

evaluated by folded quadrature with a certified truncation tail at the real
place and by exact trigonometric-polynomial integration over one period at
finite places.  The module also provides the geometric-shell profile whose
Fourier relation to the Mellin transform (a Poisson summation in disguise)
the test suite checks, the conductor-operator action on test functions, and
the zero-side sums that the grand identity balances against the place side.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .characters import (DirichletCharacter, LocalCharacter, Place, conductor,
                         local_component)
from .errors import ConfigError, TailBoundError
from .local_terms import PlaceTerm, default_places, place_side_sum
from .quadrature import panel_nodes, refine_edges
from .special_functions import digamma, log_gamma
from .test_functions import TestFunction, mellin, mellin_line

__all__ = [
    "TateGamma",
    "SpectralMultiplier",
    "tate_gamma",
    "multiplier",
    "poisson_profile",
    "spectral_place_term",
    "conductor_operator_apply",
    "ZeroSideResult",
    "zero_side_sum",
    "GrandIdentityReport",
    "grand_identity",
]

_LOG_PI = math.log(math.pi)


# -- local gamma factors -----------------------------------------------------


@dataclass(frozen=True)
class TateGamma:
    """Local gamma factor, evaluable on the open critical strip 0 < Re s < 1.

    kind: "real_even", "real_odd", "finite_unramified", "finite_ramified".
    The unramified factor is (1 - conj(v) p^(s-1)) / (1 - v p^(-s)) with
    v the character value on the uniformizer; the ramified factor is the
    bare root-number-free power p^(f(s-1/2)).  On the critical line every
    kind has modulus one (unitarity), which the test suite verifies.
    """

    kind: str
    p: int | None = None
    f: int = 0
    value_at_p: complex | None = None

    def __call__(self, s):
        s_arr = np.asarray(s, dtype=np.complex128)
        scalar = s_arr.ndim == 0
        z = np.atleast_1d(s_arr)
        if np.any((z.real <= 0.0) | (z.real >= 1.0)):
            raise ValueError("TateGamma is defined on the open strip 0 < Re s < 1")
        if self.kind == "real_even":
            out = np.exp((0.5 - z) * _LOG_PI
                         + np.atleast_1d(log_gamma(z / 2.0))
                         - np.atleast_1d(log_gamma((1.0 - z) / 2.0)))
        elif self.kind == "real_odd":
            out = -1j * np.exp((0.5 - z) * _LOG_PI
                               + np.atleast_1d(log_gamma((z + 1.0) / 2.0))
                               - np.atleast_1d(log_gamma(1.0 - z / 2.0)))
        elif self.kind == "finite_unramified":
            v = complex(self.value_at_p)
            p = float(self.p)
            out = (1.0 - np.conj(v) * p ** (z - 1.0)) / (1.0 - v * p ** (-z))
        elif self.kind == "finite_ramified":
            out = np.asarray(float(self.p) ** (self.f * (z - 0.5)), dtype=np.complex128)
        else:
            raise ConfigError(f"unknown TateGamma kind {self.kind!r}")
        return complex(out[0]) if scalar else out


def tate_gamma(place: Place, chi_nu: LocalCharacter) -> TateGamma:
    """Local gamma factor of the place/local-character pair."""
    if place.kind == "real":
        return TateGamma("real_even" if chi_nu.parity == 1 else "real_odd")
    if chi_nu.f == 0:
        return TateGamma("finite_unramified", p=place.p, value_at_p=chi_nu.value_at_p)
    return TateGamma("finite_ramified", p=place.p, f=chi_nu.f)


# -- multipliers -------------------------------------------------------------


class SpectralMultiplier:
    """Logarithmic derivative of a local gamma factor on the critical line.

    Callable on scalar or array tau; ``period`` is 2 pi / log p at a finite
    place and None at the real place.  Values are real for real local data
    and genuinely complex for a complex unramified character.
    """

    def __init__(self, place: Place, fn, period: float | None, is_real: bool,
                 constant: float | None = None):
        self.place = place
        self._fn = fn
        self.period = period
        self.is_real = is_real
        self.constant = constant  # set when the multiplier is a constant

    def __call__(self, tau):
        tau_arr = np.asarray(tau, dtype=np.float64)
        scalar = tau_arr.ndim == 0
        vals = self._fn(np.atleast_1d(tau_arr))
        if scalar:
            return (float(vals[0]) if self.is_real else complex(vals[0]))
        return vals


def multiplier(place: Place, chi_nu: LocalCharacter) -> SpectralMultiplier:
    """The multiplier h(tau) = (d/ds) log gamma_nu(s) at s = 1/2 + i tau."""
    if place.kind == "real":
        shift = 0.25 if chi_nu.parity == 1 else 0.75

        def fn(tau, _shift=shift):
            return -_LOG_PI + np.real(np.atleast_1d(digamma(_shift + 0.5j * tau)))

        return SpectralMultiplier(place, fn, None, True)
    p = place.p
    logp = math.log(p)
    if chi_nu.f == 0:
        v = complex(chi_nu.value_at_p)
        is_real = abs(v.imag) == 0.0

        def fn(tau, _v=v, _p=float(p), _logp=logp):
            w_up = np.conj(_v) * _p ** (-0.5 + 1j * tau)
            w_dn = _v * _p ** (-0.5 - 1j * tau)
            vals = -_logp * (w_up / (1.0 - w_up) + w_dn / (1.0 - w_dn))
            return np.real(vals) if abs(_v.imag) == 0.0 else vals

        return SpectralMultiplier(place, fn, 2.0 * math.pi / logp, is_real)
    const = chi_nu.f * logp

    def fn(tau, _c=const):
        return np.full(tau.shape, _c)

    return SpectralMultiplier(place, fn, 2.0 * math.pi / logp, True, constant=const)


# -- geometric-shell profile -------------------------------------------------


def poisson_profile(g: TestFunction, q: float, tau, twist: complex = 1.0):
    """Fourier series of g sampled on the geometric shells q^k:

        profile(tau) = sum_k twist^k g(q^k) q^(i k tau),

    a trigonometric polynomial with period 2 pi / log q.  Its Poisson-summed
    Mellin form (1/log q) sum_j ghat(i(tau + 2 pi j / log q)) is checked
    against it by the test suite.
    """
    if not q > 1.0:
        raise ConfigError(f"shell base must exceed 1, got {q}")
    tau_arr = np.asarray(tau, dtype=np.float64)
    scalar = tau_arr.ndim == 0
    t = np.atleast_1d(tau_arr)
    a, b = g.support
    logq = math.log(q)
    k_lo = int(math.ceil(math.log(a) / logq))
    k_hi = int(math.floor(math.log(b) / logq))
    out = np.zeros(t.shape, dtype=np.complex128)
    for k in range(k_lo, k_hi + 1):
        gk = complex(g(float(q) ** k)) * complex(twist) ** k
        if gk != 0.0:
            out += gk * np.exp(1j * k * logq * t)
    return complex(out[0]) if scalar else out


# -- spectral evaluation of place terms --------------------------------------


def _real_axis_integral(g: TestFunction, h_fn, h_tail: tuple[float, float],
                        t0: float = 1.0, tol: float = 1e-10):
    """(1/2pi) * integral over R of ghat(i tau) h(tau) t0^(-i tau) dtau.

    Requires a real test function and a real, even multiplier, so the
    integral folds to (1/pi) Re of the half-line part.  ``h_tail`` = (c1, c2)
    certifies |h(tau)| <= c1 log tau + c2 for tau >= 2; the truncation point
    doubles until the closed-form tail bound is below tol/2.
    """
    c1, c2 = h_tail

    def tail_at(T: float) -> float:
        best = math.inf
        for m in range(2, g.bound_order + 1):
            wm = g.w_bound(m)
            best = min(best, (wm / math.pi) * T ** (1 - m) * (
                (c1 * math.log(T) + c2) / (m - 1) + c1 / (m - 1) ** 2))
        return best

    T, tail_bound = 64.0, math.inf
    while T <= 65536.0:
        tail_bound = tail_at(T)
        if tail_bound <= 0.5 * tol:
            break
        T *= 2.0
    if tail_bound > 0.5 * tol:
        raise TailBoundError(
            f"cannot certify truncation tail below {tol:.1e} with available "
            f"derivative bounds (best {tail_bound:.1e} at T={T / 2:.0f})")

    la, lb = g.log_support
    rate = max(abs(la), abs(lb)) + abs(math.log(t0))
    # panel widths grow geometrically away from tau = 0 (the digamma
    # multiplier has poles at tau = +-i/2, so panels near the origin must be
    # narrow) and are capped by the oscillation rate of ghat(i tau)
    cap = 8.0 / max(rate, 0.25)
    edge_list = [0.0]
    width = 0.5
    while edge_list[-1] < T:
        edge_list.append(min(edge_list[-1] + width, T))
        width = min(2.0 * width, cap)
    edges = np.asarray(edge_list)

    def evaluate(es):
        taus, wts = panel_nodes(es, 24)
        ghat, mell_err = mellin_line(g, taus, 0.0)
        hv = h_fn(taus)
        phase = np.exp(-1j * taus * math.log(t0)) if t0 != 1.0 else 1.0
        val = float(np.real(np.dot(ghat * hv * phase, wts))) / math.pi
        slack = float(np.dot(np.abs(hv), np.abs(wts))) * mell_err / math.pi
        return val, slack

    v1, _ = evaluate(edges)
    v2, slack = evaluate(refine_edges(edges))
    return v2, abs(v2 - v1) + slack + tail_bound


def spectral_place_term(g: TestFunction, chi: DirichletCharacter, place: Place,
                        tol: float = 1e-10) -> PlaceTerm:
    """Local term at one place computed through its spectral multiplier.

    Real place: folded half-line quadrature against the digamma multiplier
    with a certified tail.  Finite place: the multiplier is periodic and the
    shell profile is a trigonometric polynomial, so the uniform trapezoid
    rule over one period (scaled by log p / 2 pi, i.e. a plain average) is
    exact up to the aliasing floor of the geometric coefficient decay.
    """
    chi_nu = local_component(chi, place)
    h = multiplier(place, chi_nu)
    if place.kind == "real":
        if not g.is_real:
            raise ConfigError("spectral_place_term at the real place needs real g")
        value, est = _real_axis_integral(g, h, (1.0, 0.7), tol=tol)
        return PlaceTerm(place, value, "spectral", est)
    p = place.p
    if chi_nu.f == 0:
        n_nodes = 256
        taus = np.arange(n_nodes) * (h.period / n_nodes)
        prof = poisson_profile(g, float(p), taus)
        vals = prof * h(taus)
        value = complex(np.mean(vals))  # (log p / 2 pi) * period = 1
        # aliasing floor: coefficients beyond frequency n_nodes are bounded by
        # the geometric decay p^(-j/2) against the finitely many shells of g
        a, b = g.support
        k_max = max(1, int(math.log(max(b, 1.0 / a)) / math.log(p)) + 1)
        g_peak = float(np.max(np.abs(g(np.geomspace(a * 1.0001, b * 0.9999, 512)))))
        alias = (4.0 * math.log(p) * g_peak
                 * p ** (-0.5 * (n_nodes - k_max)) / (1.0 - p ** -0.5))
        est = max(alias, 5e-16 * (1.0 + abs(value)))
        out = value.real if abs(value.imag) < 1e-15 * (1.0 + abs(value.real)) else value
        return PlaceTerm(place, out, "spectral", est)
    # ramified: constant multiplier f log p
    if not g.is_real:
        raise ConfigError("spectral_place_term at a ramified place needs real g")
    value, est = _real_axis_integral(g, h, (0.0, h.constant), tol=tol)
    return PlaceTerm(place, value, "spectral", est)


def conductor_operator_apply(g: TestFunction, chi: DirichletCharacter, place: Place,
                             t0: float, tol: float = 1e-10):
    """Value at t0 of the local conductor operator applied to g.

    The operator acts diagonally in the Mellin picture, multiplying ghat on
    the centered line by h(tau); its kernel-side value at t0 is

        (1/2pi) * integral ghat(i tau) h(tau) t0^(-i tau) dtau.

    At the real place this is folded quadrature; at a finite place it
    collapses to the exact weighted shell sum around t0.  The place term is
    the special value at t0 = 1.
    """
    if not t0 > 0.0:
        raise ConfigError(f"t0 must be positive, got {t0}")
    chi_nu = local_component(chi, place)
    if place.kind == "real":
        h = multiplier(place, chi_nu)
        value, est = _real_axis_integral(g, h, (1.0, 0.7), t0=t0, tol=tol)
        return value, est
    p = place.p
    logp = math.log(p)
    if chi_nu.f == 0:
        v = complex(chi_nu.value_at_p)
        la, lb = g.log_support
        jmax = int(math.ceil((max(abs(la), abs(lb)) + abs(math.log(t0))) / logp)) + 1
        total = 0.0 + 0.0j
        for j in range(1, jmax + 1):
            pj = float(p) ** j
            total += p ** (-0.5 * j) * (v**j * complex(g(t0 * pj))
                                        + np.conj(v) ** j * complex(g(t0 / pj)))
        value = -logp * total
    else:
        value = chi_nu.f * logp * complex(g(t0))
    out = value.real if value.imag == 0.0 else value
    return out, 0.0


# -- zero side ---------------------------------------------------------------


@dataclass(frozen=True)
class ZeroSideResult:
    value: complex | float
    quadrature_error: float
    tail_bound: float
    mode: str
    zeros_used: int

    @property
    def est_error(self) -> float:
        return self.quadrature_error + self.tail_bound


def _zero_tail_bound(g: TestFunction, q: int, T: float, line: str) -> float:
    """Certified bound on the discarded zero sum above height T (one side).

    Density of ordinates near height t is at most (1/pi) log(q(t+3)/2pi)
    including a safety factor of two; each term is bounded by the derivative
    decay of the transform on the relevant line.
    """
    if T < 3.0:
        raise ConfigError("tail bound needs the zero list to reach height 3")
    bounds = (g.plain_derivative_bounds if line == "zero"
              else g.derivative_bounds)
    c2 = math.log(max(q, 1) / math.pi)
    best = math.inf
    for m in range(2, len(bounds)):
        cm = bounds[m]
        tail = (1.0 / math.pi) * cm * T ** (1 - m) * (
            (math.log(T) + c2) / (m - 1) + 1.0 / (m - 1) ** 2)
        best = min(best, tail)
    return best


def zero_side_sum(g: TestFunction, chi: DirichletCharacter, zeros, mode: str = "centered",
                  conjugate_zeros=None) -> ZeroSideResult:
    """Sum of the transform over nontrivial zeros, minus the pole pair when
    the character is principal.

    ``zeros`` holds the positive ordinates for chi; ``conjugate_zeros`` the
    positive ordinates for the conjugate character (they coincide for real
    characters and default accordingly; a complex character requires them
    explicitly).  mode="centered" sums ghat(+-i gamma) and subtracts
    ghat(1/2) + ghat(-1/2) for the principal character; mode="classical"
    sums ghat(1/2 +- i gamma) with no pole term.
    """
    gam = np.asarray(getattr(zeros, "ordinates", zeros), dtype=np.float64)
    q0, chi0 = conductor(chi)
    if conjugate_zeros is None:
        if not chi0.is_real:
            raise ConfigError(
                "a complex character needs explicit conjugate_zeros (the positive "
                "ordinates of its conjugate); they differ from the given ordinates")
        gam_c = gam
    else:
        gam_c = np.asarray(getattr(conjugate_zeros, "ordinates", conjugate_zeros),
                           dtype=np.float64)
    if gam.size == 0 or gam_c.size == 0:
        raise ConfigError("zero_side_sum needs nonempty zero lists")
    if mode not in ("centered", "classical"):
        raise ConfigError(f"mode must be 'centered' or 'classical', got {mode!r}")

    sigma = 0.0 if mode == "centered" else 0.5
    up, err_up = mellin_line(g, gam, sigma)
    dn, err_dn = mellin_line(g, -gam_c, sigma)
    value = complex(np.sum(up) + np.sum(dn))
    if mode == "centered" and chi.is_principal:
        value -= (mellin(g, 0.5).value + mellin(g, -0.5).value)

    T = float(min(gam[-1], gam_c[-1]))
    line = "zero" if mode == "centered" else "half"
    tail = 2.0 * _zero_tail_bound(g, q0, T, line)
    quad = float((err_up * gam.size + err_dn * gam_c.size))
    out = value.real if abs(value.imag) < 1e-14 * (1.0 + abs(value.real)) else value
    return ZeroSideResult(out, quad, tail, mode, int(gam.size + gam_c.size))


# -- the grand identity -------------------------------------------------------


@dataclass(frozen=True)
class GrandIdentityReport:
    """Three routes to the same number, with pairwise residuals."""

    zero_side: ZeroSideResult
    weil_total: complex | float
    weil_terms: tuple[PlaceTerm, ...]
    spectral_total: complex | float
    spectral_terms: tuple[PlaceTerm, ...]
    residual_zero_weil: float
    residual_zero_spectral: float
    residual_weil_spectral: float


def grand_identity(g: TestFunction, chi: DirichletCharacter, zeros,
                   conjugate_zeros=None, places: list[Place] | None = None,
                   tol: float = 1e-9) -> GrandIdentityReport:
    """Evaluate all three routes and report the pairwise residuals."""
    if places is None:
        places = default_places(g, chi)
    zside = zero_side_sum(g, chi, zeros, "centered", conjugate_zeros)
    weil = place_side_sum(g, chi, places)
    spec_terms = tuple(spectral_place_term(g, chi, place, tol=tol) for place in places)
    spec_total = sum(t.value for t in spec_terms)
    if isinstance(spec_total, complex) and abs(spec_total.imag) < 1e-14 * (
            1.0 + abs(spec_total.real)):
        spec_total = spec_total.real
    return GrandIdentityReport(
        zero_side=zside,
        weil_total=weil.total,
        weil_terms=weil.terms,
        spectral_total=spec_total,
        spectral_terms=spec_terms,
        residual_zero_weil=abs(zside.value - weil.total),
        residual_zero_spectral=abs(zside.value - spec_total),
        residual_weil_spectral=abs(weil.total - spec_total),
    )
