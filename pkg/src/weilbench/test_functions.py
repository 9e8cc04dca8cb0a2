"""Smooth compactly supported test functions on the multiplicative half-line.

A test function g lives on (0, infinity), is supported in a compact interval
[a, b] with 0 < a < b, and is evaluated through its logarithmic profile
G0(x) = g(e^x), supported in [log a, log b].  Two profile families are
provided:

* ``exp_inverse`` -- the classical C-infinity bump exp(-1/(1-y^2)) in the
  affine coordinate y mapping [log a, log b] onto [-1, 1];
* ``cosine_power`` -- cos(pi*y/2)**n, which is C^(n-1) with an exact finite
  Fourier expansion (so derivatives are available in closed form).

The module also provides the half-line Mellin transform in single and batch
form, with quadrature error estimates from doubled-resolution re-integration,
the unitary involution g -> conj(g(1/u))/u, and multiplicative convolution.

Derivative bounds: v_bound(m) is the L1 norm of the m-th derivative of the
weighted profile G(x) = G0(x) e^(x/2); it bounds the transform on the
vertical line through 1/2 via |ghat(1/2+i*tau)| <= v_bound(m)/|tau|^m.
w_bound(m) is the same for the unweighted profile and controls the line
through 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import SupportError, ToleranceError
from .quadrature import gauss_legendre, graded_edges, panel_nodes

__all__ = [
    "TestFunction",
    "MellinValue",
    "make_bump",
    "parse_descriptor",
    "mellin",
    "mellin_line",
    "tau_involution",
    "mconvolve",
]

_MAX_BOUND_ORDER = 8


@dataclass(frozen=True)
class MellinValue:
    """One Mellin transform value with its quadrature error estimate."""

    s: complex
    value: complex
    quadrature_error: float


@lru_cache(maxsize=1)
def _exp_inverse_polys(max_order: int = _MAX_BOUND_ORDER):
    """Numerator polynomials P_m with phi^(m)(y) = phi(y) P_m(y) / (1-y^2)^(2m).

    Recursion (w = 1 - y^2): P_{m+1} = -2y P_m + w^2 P_m' + 4 m y w P_m.
    All coefficients are exact integers.
    """
    y = np.polynomial.Polynomial([0.0, 1.0])
    w = np.polynomial.Polynomial([1.0, 0.0, -1.0])
    polys = [np.polynomial.Polynomial([1.0])]
    for m in range(max_order):
        pm = polys[-1]
        polys.append(-2 * y * pm + w**2 * pm.deriv() + 4 * m * y * w * pm)
    return polys


class TestFunction:
    """Compactly supported multiplicative test function.

    Evaluation goes through ``_log_deriv(x, m)``, the m-th derivative of the
    log-coordinate profile G0.  ``eval_deriv_max`` says how many derivatives
    the backend can evaluate pointwise; L1 derivative bounds may extend
    further (e.g. convolutions inherit bounds from their factors).
    """

    def __init__(self, support, log_deriv, *, eval_deriv_max, bound_order,
                 descriptor, is_real=True, v_bounds=None, w_bounds=None):
        a, b = float(support[0]), float(support[1])
        if not (0.0 < a < b):
            raise SupportError(f"support must satisfy 0 < a < b, got ({a}, {b})")
        self.support = (a, b)
        self.log_support = (math.log(a), math.log(b))
        self._log_deriv = log_deriv
        self.eval_deriv_max = int(eval_deriv_max)
        self.bound_order = int(bound_order)
        self.descriptor = descriptor
        self.is_real = bool(is_real)
        self._v_bounds = v_bounds  # may be precomputed (convolutions)
        self._w_bounds = w_bounds
        self._mellin_cache = {}

    # -- evaluation ---------------------------------------------------

    def __call__(self, u):
        """g(u) for u on the half-line; zero off the support."""
        u_arr = np.asarray(u, dtype=np.float64)
        scalar = u_arr.ndim == 0
        u_arr = np.atleast_1d(u_arr)
        out = np.zeros(u_arr.shape, dtype=np.float64 if self.is_real else np.complex128)
        pos = u_arr > 0.0
        if np.any(pos):
            out[pos] = self.eval_log(np.log(u_arr[pos]))
        return out[0] if scalar else out

    def eval_log(self, x, m: int = 0):
        """m-th derivative of the log-coordinate profile G0 at x."""
        if m > self.eval_deriv_max:
            raise ValueError(
                f"backend evaluates derivatives up to order {self.eval_deriv_max}, got {m}")
        x_arr = np.asarray(x, dtype=np.float64)
        scalar = x_arr.ndim == 0
        vals = self._log_deriv(np.atleast_1d(x_arr), m)
        if self.is_real:
            vals = np.real(vals)
        return vals[0] if scalar else vals

    def eval_log_weighted(self, x, m: int = 0):
        """m-th derivative of the weighted profile G(x) = G0(x) e^(x/2)."""
        x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
        scalar = np.asarray(x).ndim == 0
        acc = np.zeros(x_arr.shape, dtype=np.float64 if self.is_real else np.complex128)
        for j in range(m + 1):
            acc = acc + math.comb(m, j) * 0.5 ** (m - j) * self.eval_log(x_arr, j)
        acc = acc * np.exp(0.5 * x_arr)
        return acc[0] if scalar else acc

    # -- L1 derivative bounds ------------------------------------------

    def _bound_edges(self, refined: bool):
        la, lb = self.log_support
        lmid = 0.5 * (la + lb)
        gap = (1e-12 if refined else 1e-9) * (lb - la)
        ratio = 0.75 if refined else 0.6
        left = graded_edges(la, lmid, "left", gap, ratio)
        right = graded_edges(lmid, lb, "right", gap, ratio)
        return np.concatenate([left, right[1:]])

    def _compute_bounds(self, weighted: bool, refined: bool = False):
        edges = self._bound_edges(refined)
        x, w = panel_nodes(edges, 48 if refined else 32)
        vals = []
        for m in range(self.bound_order + 1):
            f = self.eval_log_weighted(x, m) if weighted else self.eval_log(x, m)
            vals.append(float(np.dot(np.abs(f), w)))
        return tuple(vals)

    def v_bound(self, m: int, refined: bool = False) -> float:
        """L1 norm of the m-th derivative of the weighted profile."""
        if m > self.bound_order:
            raise ValueError(f"derivative bounds available up to order {self.bound_order}")
        if refined:
            return self._compute_bounds(True, refined=True)[m]
        if self._v_bounds is None:
            self._v_bounds = self._compute_bounds(True)
        return self._v_bounds[m]

    def w_bound(self, m: int, refined: bool = False) -> float:
        """L1 norm of the m-th derivative of the unweighted profile."""
        if m > self.bound_order:
            raise ValueError(f"derivative bounds available up to order {self.bound_order}")
        if refined:
            return self._compute_bounds(False, refined=True)[m]
        if self._w_bounds is None:
            self._w_bounds = self._compute_bounds(False)
        return self._w_bounds[m]

    @property
    def derivative_bounds(self):
        """Tuple (v_bound(0), ..., v_bound(bound_order))."""
        if self._v_bounds is None:
            self._v_bounds = self._compute_bounds(True)
        return self._v_bounds

    @property
    def plain_derivative_bounds(self):
        if self._w_bounds is None:
            self._w_bounds = self._compute_bounds(False)
        return self._w_bounds

    def line_decay_bound(self, tau: float, line: str) -> float:
        """Certified bound on |ghat| at height tau on a vertical line.

        line="half" bounds |ghat(1/2 + i tau)|, line="zero" bounds
        |ghat(i tau)|.  Uses the best available derivative order.
        """
        t = abs(float(tau))
        bounds = self.derivative_bounds if line == "half" else self.plain_derivative_bounds
        if t <= 1.0:
            return bounds[0]
        return min(c / t**m for m, c in enumerate(bounds))

    def __repr__(self):
        return f"TestFunction({self.descriptor})"


# -- profile constructors ----------------------------------------------


def make_bump(a: float, b: float, profile: str = "exp_inverse", **params) -> TestFunction:
    """Build a smooth bump supported on [a, b] (0 < a < b).

    profile="exp_inverse": exp(-1/(1-y^2)) in the normalized log coordinate.
    profile="cosine_power": cos(pi*y/2)**n with integer n >= 2 (param n).
    """
    if not (0.0 < a < b):
        raise SupportError(f"support must satisfy 0 < a < b, got ({a}, {b})")
    la, lb = math.log(a), math.log(b)
    mid = 0.5 * (la + lb)
    half = 0.5 * (lb - la)

    if profile == "exp_inverse":
        if params:
            raise ValueError(f"exp_inverse takes no parameters, got {params}")
        polys = _exp_inverse_polys()

        def log_deriv(x, m):
            y = (x - mid) / half
            w = 1.0 - y * y
            out = np.zeros(x.shape, dtype=np.float64)
            mask = w > 1e-8
            if np.any(mask):
                ym, wm = y[mask], w[mask]
                out[mask] = (np.exp(-1.0 / wm) * polys[m](ym)
                             / wm ** (2 * m) / half**m)
            return out

        return TestFunction((a, b), log_deriv,
                            eval_deriv_max=_MAX_BOUND_ORDER,
                            bound_order=_MAX_BOUND_ORDER,
                            descriptor=f"exp_inverse:a={a:g},b={b:g}")

    if profile == "cosine_power":
        n = int(params.pop("n", 8))
        if params:
            raise ValueError(f"unknown cosine_power parameters {params}")
        if n < 2:
            raise ValueError("cosine_power needs n >= 2")
        # cos^n(theta) = 2^-n sum_k C(n,k) exp(i (n-2k) theta), theta = pi*y/2
        coeffs = np.array([math.comb(n, k) for k in range(n + 1)], dtype=np.float64) / 2.0**n
        omegas = np.array([(n - 2 * k) for k in range(n + 1)], dtype=np.float64) * (
            math.pi / 2.0) / half

        def log_deriv(x, m, _c=coeffs, _w=omegas):
            y = (x - mid) / half
            out = np.zeros(x.shape, dtype=np.float64)
            mask = np.abs(y) < 1.0
            if np.any(mask):
                xm = x[mask] - mid
                phases = np.exp(1j * np.outer(xm, _w))
                factors = _c * (1j * _w) ** m
                out[mask] = np.real(phases @ factors)
            return out

        return TestFunction((a, b), log_deriv,
                            eval_deriv_max=n,
                            bound_order=min(_MAX_BOUND_ORDER, n),
                            descriptor=f"cosine_power:a={a:g},b={b:g},n={n}")

    raise ValueError(f"unknown profile {profile!r}")


def parse_descriptor(text: str) -> TestFunction:
    """Rebuild a bump from its descriptor, e.g. 'exp_inverse:a=0.6,b=1.7'."""
    try:
        profile, _, rest = text.partition(":")
        kv = {}
        for item in rest.split(","):
            key, _, val = item.partition("=")
            kv[key.strip()] = val.strip()
        a = float(kv.pop("a"))
        b = float(kv.pop("b"))
        params = {k: int(v) if k == "n" else float(v) for k, v in kv.items()}
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad test-function descriptor {text!r}: {exc}") from exc
    return make_bump(a, b, profile, **params)


# -- Mellin transform --------------------------------------------------


def _mellin_grid(g: TestFunction, sigma: float, panels: int, nodes: int = 24):
    """Cached master grid: nodes x and premultiplied weights w*G0(x)*e^(sigma x)."""
    key = (round(sigma, 12), panels, nodes)
    cached = g._mellin_cache.get(key)
    if cached is not None:
        return cached
    la, lb = g.log_support
    x, w = panel_nodes(np.linspace(la, lb, panels + 1), nodes)
    fw = w * g.eval_log(x) * np.exp(sigma * x)
    g._mellin_cache[key] = (x, fw)
    if len(g._mellin_cache) > 16:
        g._mellin_cache.pop(next(iter(g._mellin_cache)))
    return x, fw


def _mellin_eval(g: TestFunction, sigma: float, taus: np.ndarray, panels: int,
                 chunk: int = 200) -> np.ndarray:
    x, fw = _mellin_grid(g, sigma, panels)
    out = np.empty(taus.shape, dtype=np.complex128)
    for lo in range(0, taus.size, chunk):
        block = taus[lo:lo + chunk]
        out[lo:lo + chunk] = np.exp(1j * np.outer(block, x)) @ fw
    return out


def _base_panels(g: TestFunction, tau_max: float) -> int:
    la, lb = g.log_support
    return max(8, int(math.ceil(abs(tau_max) * (lb - la) / 6.0)) + 2)


def mellin_line(g: TestFunction, taus, sigma: float = 0.5):
    """Batch Mellin transform ghat(sigma + i*tau) for an array of heights.

    Returns (values, err_bound) where err_bound is a measured resolution
    certificate: the worst change among probe heights when the panel count
    is raised by half.
    """
    taus = np.asarray(taus, dtype=np.float64)
    panels = _base_panels(g, float(np.max(np.abs(taus), initial=0.0)))
    vals = _mellin_eval(g, sigma, taus, panels)
    # certificate at probe heights: extremes plus a geometric spread
    if taus.size:
        order = np.argsort(np.abs(taus))
        idx = sorted({order[-1], order[-2] if taus.size > 1 else order[-1],
                      order[0], order[taus.size // 2], order[(3 * taus.size) // 4]})
        probes = taus[idx]
        check = _mellin_eval(g, sigma, probes, int(math.ceil(panels * 1.5)))
        err = float(np.max(np.abs(check - vals[idx])))
    else:
        err = 0.0
    return vals, err


def mellin(g: TestFunction, s: complex, tol: float = 1e-12) -> MellinValue:
    """Mellin transform ghat(s) = integral g(u) u^(s-1) du with certificate."""
    s = complex(s)
    panels = _base_panels(g, s.imag)
    value = _mellin_eval(g, s.real, np.array([s.imag]), panels)[0]
    err = math.inf
    for _ in range(6):
        refined = _mellin_eval(g, s.real, np.array([s.imag]), int(math.ceil(panels * 1.5)))[0]
        err = abs(refined - value)
        value, panels = refined, int(math.ceil(panels * 1.5))
        if err <= tol:
            return MellinValue(s, value, err)
    raise ToleranceError(
        f"mellin quadrature stalled at error {err:.3e} > tol {tol:.3e} for s={s}")


# -- involution and convolution -----------------------------------------


def tau_involution(g: TestFunction) -> TestFunction:
    """The unitary involution g^tau(u) = conj(g(1/u))/u.

    In log coordinates the profile becomes e^(-x) conj(G0(-x)); its weighted
    profile is conj(G(-x)), so the weighted derivative bounds are preserved
    exactly and are passed through without recomputation.
    """
    a, b = g.support

    def log_deriv(x, m):
        acc = np.zeros(x.shape, dtype=np.complex128)
        for j in range(m + 1):
            term = np.conj(np.atleast_1d(g.eval_log(-x, j)))
            acc += math.comb(m, j) * term
        vals = (-1.0) ** m * np.exp(-x) * acc
        return np.real(vals) if g.is_real else vals

    v_bounds = g.derivative_bounds  # exact reflection invariance of the weighted profile
    return TestFunction((1.0 / b, 1.0 / a), log_deriv,
                        eval_deriv_max=g.eval_deriv_max,
                        bound_order=g.bound_order,
                        descriptor=f"tau({g.descriptor})",
                        is_real=g.is_real,
                        v_bounds=v_bounds)


def mconvolve(g: TestFunction, h: TestFunction, samples: int = 4001) -> TestFunction:
    """Multiplicative convolution k(u) = integral g(u/t) h(t) dt/t.

    In log coordinates K0 = G0 * H0 (additive convolution).  The result is
    sampled densely and backed by a cubic spline; it vanishes identically
    outside [a_g*a_h, b_g*b_h].  L1 derivative bounds are inherited from the
    factors through Young's inequality:
    v(k, m) <= min_j v(g, j) * v(h, m - j), and likewise for the unweighted
    bounds.
    """
    lag, lbg = g.log_support
    lah, lbh = h.log_support
    lak, lbk = lag + lah, lbg + lbh
    xs = np.linspace(lak, lbk, samples)

    # one GL panel layout per sample, all factor evaluations batched
    nodes, wts = gauss_legendre(24)
    sub = np.linspace(0.0, 1.0, 9)  # 8 panels per overlap interval
    lo = np.maximum(lah, xs - lbg)
    hi = np.minimum(lbh, xs - lag)
    width = np.maximum(hi - lo, 0.0)
    # panel edges per sample: lo + width*sub; nodes mapped into each panel
    mids = lo[:, None] + width[:, None] * 0.5 * (sub[1:] + sub[:-1])[None, :]
    halfs = (width[:, None] * 0.5 * (sub[1:] - sub[:-1])[None, :])
    t = mids[:, :, None] + halfs[:, :, None] * nodes[None, None, :]
    wt = halfs[:, :, None] * wts[None, None, :]
    t_flat = t.reshape(-1)
    hv = np.atleast_1d(h.eval_log(t_flat)).reshape(t.shape)
    gv = np.atleast_1d(g.eval_log((xs[:, None, None] - t).reshape(-1))).reshape(t.shape)
    kv = np.sum(gv * hv * wt, axis=(1, 2))

    is_real = g.is_real and h.is_real
    if is_real:
        kv = np.real(kv)
    spline = CubicSpline(xs, kv, bc_type="clamped")
    dsplines = [spline, spline.derivative(1), spline.derivative(2), spline.derivative(3)]

    def log_deriv(x, m):
        out = np.zeros(x.shape, dtype=np.float64 if is_real else np.complex128)
        mask = (x > lak) & (x < lbk)
        if np.any(mask):
            out[mask] = dsplines[m](x[mask])
        return out

    bound_order = min(_MAX_BOUND_ORDER, g.bound_order + h.bound_order)

    def combined(m, gb, hb, g_max, h_max):
        best = math.inf
        for j in range(max(0, m - h_max), min(m, g_max) + 1):
            best = min(best, gb[j] * hb[m - j])
        return best

    gvb, hvb = g.derivative_bounds, h.derivative_bounds
    gwb, hwb = g.plain_derivative_bounds, h.plain_derivative_bounds
    v_bounds = tuple(combined(m, gvb, hvb, g.bound_order, h.bound_order)
                     for m in range(bound_order + 1))
    w_bounds = tuple(combined(m, gwb, hwb, g.bound_order, h.bound_order)
                     for m in range(bound_order + 1))

    return TestFunction((g.support[0] * h.support[0], g.support[1] * h.support[1]),
                        log_deriv,
                        eval_deriv_max=3,
                        bound_order=bound_order,
                        descriptor=f"mconv({g.descriptor},{h.descriptor})",
                        is_real=is_real,
                        v_bounds=v_bounds,
                        w_bounds=w_bounds)
