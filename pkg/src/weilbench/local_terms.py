"""Local terms of the explicit formula, computed on the arithmetic side.

Each place of the rationals contributes one term to the place side:

* the real place contributes a principal-value style integral against the
  multiplicative measure dt/(2|t|), regularized by subtracting g(1) near the
  fixed point t = 1, plus the constant -(log 2pi + gamma) * g(1) and a
  parity-dependent smooth integral;
* a finite prime p with unramified local character contributes the exact
  shell sum -log p * sum_j p^(-j/2) (v^j g(p^j) + v^(-j) g(p^(-j))) with
  v the local value on the uniformizer -- a finite sum, no quadrature;
* a finite prime dividing the conductor contributes g(1) times the conductor
  integral, which the self-duality identity evaluates in closed form as
  f * log p (f the local conductor exponent).  Both routes are computed and
  cross-checked on every call.

All quadrature here carries a measured error estimate: the value is
recomputed at doubled panel resolution and the difference is reported in
PlaceTerm.est_error, together with an explicit bound for the tiny sliver
excluded around the t = 1 singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .characters import (DirichletCharacter, LocalCharacter, Place, REAL_PLACE,
                         conductor, finite_place, local_component, primes_up_to)
from .errors import ConfigError, InternalConsistencyError
from .quadrature import graded_edges, panel_nodes, refine_edges
from .test_functions import TestFunction

__all__ = [
    "PlaceTerm",
    "PlaceSideResult",
    "MeasureConvention",
    "w_real",
    "w_finite_unramified",
    "conductor_integral",
    "w_finite_ramified",
    "default_places",
    "place_side_sum",
]

_EULER_GAMMA = 0.5772156649015328606
_SLIVER = 1e-10


class MeasureConvention(Enum):
    """Normalization of the multiplicative Haar measure at finite places.

    weil_log_q: shells carry weight log p (the convention every acceptance
    identity uses).  tate_unit: the unit group has measure 1, which strips
    the log p factor from the conductor integral.
    """

    WEIL_LOG_Q = "weil_log_q"
    TATE_UNIT = "tate_unit"


@dataclass(frozen=True)
class PlaceTerm:
    place: Place
    value: complex | float  # complex exactly when the character is complex
    method: str  # "direct_weil" | "spectral"
    est_error: float


@dataclass(frozen=True)
class PlaceSideResult:
    total: complex | float
    terms: tuple[PlaceTerm, ...]
    est_error: float


# -- the real place ---------------------------------------------------------


def _integrate_with_refinement(f, edges, n: int = 32):
    x, w = panel_nodes(edges, n)
    v1 = np.dot(f(x), w)
    x2, w2 = panel_nodes(refine_edges(edges), n)
    v2 = np.dot(f(x2), w2)
    return v2, abs(v2 - v1)


def _edges_with_breaks(lo: float, hi: float, breaks, base_panels: int = 8):
    """Panel edges on [lo, hi] honoring interior breakpoints."""
    pts = [lo, hi] + [b for b in breaks if lo < b < hi]
    pts = np.unique(np.asarray(pts, dtype=np.float64))
    edges = []
    for left, right in zip(pts[:-1], pts[1:]):
        seg = np.linspace(left, right, base_panels + 1)
        edges.extend(seg[:-1])
    edges.append(pts[-1])
    return np.asarray(edges)


def w_real(g: TestFunction, parity: int = 1, split: float = 0.5) -> PlaceTerm:
    """Local term of the explicit formula at the real place.

    ``parity`` is the value of the character at -1.  ``split`` is the point
    separating the singularity-subtracted integral (split, infinity) from the
    plain integral (0, split); the result is split-independent, which the
    test suite uses as an internal consistency check.
    """
    if not (0.0 < split < 1.0):
        raise ConfigError(f"split must lie in (0, 1), got {split}")
    if parity not in (+1, -1):
        raise ConfigError(f"parity must be +1 or -1, got {parity}")
    a, b = g.support
    g1 = float(np.real(g(1.0)))
    inv_lo, inv_hi = 1.0 / b, 1.0 / a  # support of t -> g(1/t)

    def h(t):
        return np.real(g(1.0 / t)) * np.sqrt(t)

    # A: integral over (split, infinity) of (h(t) - g(1)) / (|1-t| 2t) dt,
    # singularity subtracted at t = 1; numerically on (split, T] with the
    # exact analytic tail beyond T = max(2, 1/a) where h vanishes.
    t_tail = max(2.0, inv_hi) * 1.0000001
    breaks = [inv_lo, inv_hi, 2.0]

    def f_subtracted(t):
        return (h(t) - g1) / (np.abs(1.0 - t) * 2.0 * t)

    val_a = 0.0
    err_a = 0.0
    if split < 1.0 - _SLIVER:
        left = _edges_with_breaks(split, 1.0 - _SLIVER, breaks)
        cluster = graded_edges(max(split, 1.0 - 0.25), 1.0, "right", _SLIVER)
        left = np.unique(np.concatenate([left[left <= cluster[0]], cluster]))
        v, e = _integrate_with_refinement(f_subtracted, left)
        val_a += v
        err_a += e
    right_cluster = graded_edges(1.0, min(1.25, t_tail), "left", _SLIVER)
    right = _edges_with_breaks(min(1.25, t_tail), t_tail, breaks)
    right = np.unique(np.concatenate([right_cluster, right[right >= right_cluster[-1]]]))
    v, e = _integrate_with_refinement(f_subtracted, right)
    val_a += v
    err_a += e
    # exact tail: integrand is -g(1)/((t-1) 2t) for t >= t_tail
    val_a -= 0.5 * g1 * math.log(t_tail / (t_tail - 1.0))
    # sliver around t = 1: integrand is bounded by the one-sided slope of h
    slope = abs(float(np.real(g.eval_log(0.0, 1))) - 0.5 * g1) if a < 1.0 < b else 0.0
    sliver_bound = 2.0 * _SLIVER * (slope + abs(g1))

    # B: plain integral over (0, split): h(t) / (|1-t| 2t) dt
    val_b = 0.0
    err_b = 0.0
    lo_b, hi_b = inv_lo, min(split, inv_hi)
    if lo_b < hi_b:
        def f_plain(t):
            return h(t) / ((1.0 - t) * 2.0 * t)
        edges_b = _edges_with_breaks(lo_b, hi_b, [inv_hi])
        val_b, err_b = _integrate_with_refinement(f_plain, edges_b)

    # C: parity-weighted smooth integral over the support of h
    def f_parity(t):
        return h(t) / ((1.0 + t) * 2.0 * t)
    edges_c = _edges_with_breaks(inv_lo, inv_hi, [1.0])
    val_c, err_c = _integrate_with_refinement(f_parity, edges_c)

    # moving the split point trades a g(1)-sized chunk between the subtracted
    # and plain integrals; the compensating term pins the value to its
    # canonical split-at-1/2 normalization and makes the result split-free
    split_correction = 0.5 * g1 * math.log(split / (1.0 - split))
    value = (-(math.log(2.0 * math.pi) + _EULER_GAMMA) * g1
             - val_a - val_b + split_correction - parity * val_c)
    est = err_a + err_b + err_c + sliver_bound
    return PlaceTerm(REAL_PLACE, float(value), "direct_weil", float(est))


# -- finite places ----------------------------------------------------------


def _shell_range(g: TestFunction, p: int) -> int:
    """Largest j with p^j or p^-j inside the support of g."""
    a, b = g.support
    jmax = 0
    if b > 1.0:
        jmax = max(jmax, int(math.floor(math.log(b) / math.log(p))))
    if a < 1.0:
        jmax = max(jmax, int(math.floor(-math.log(a) / math.log(p))))
    return jmax


def w_finite_unramified(g: TestFunction, chi_p: LocalCharacter, p: int) -> PlaceTerm:
    """Exact shell sum at an unramified finite place (no quadrature error)."""
    if chi_p.f != 0:
        raise ConfigError(f"w_finite_unramified needs an unramified component at p={p}")
    v = complex(chi_p.value_at_p)
    total = 0.0 + 0.0j
    for j in range(1, _shell_range(g, p) + 1):
        pj = float(p) ** j
        total += p ** (-0.5 * j) * (v**j * complex(g(pj)) + v**(-j) * complex(g(1.0 / pj)))
    value = -math.log(p) * total
    # a complex character makes the term genuinely complex (the two shells at
    # p^j and p^-j carry conjugate weights but different g values)
    out = value.real if value.imag == 0.0 else value
    return PlaceTerm(finite_place(p), out, "direct_weil", 0.0)


def conductor_integral(chi_p: LocalCharacter, p: int,
                       convention: MeasureConvention = MeasureConvention.WEIL_LOG_Q) -> float:
    """Self-duality integral of a ramified local character.

    Computed as the exact unit-group sum
        (log p / phi(p^f)) * sum_{a != 1} (1 - chi_p(a)) * p^(v_p(1-a))
    with all multiplicities collected over exact rotations first, so the
    only floating-point step is one cosine per distinct character value.
    The closed form is f * log p; the test suite asserts agreement.
    """
    if chi_p.f < 1 or not chi_p.unit_values:
        raise ConfigError("conductor_integral needs a ramified local component")
    f = chi_p.f
    pf = p**f
    phi = pf - pf // p
    # multiplicity table: rotation -> sum of p^(v_p(1-a)) over units a with that rotation
    mult: dict[Fraction, int] = {}
    for a, rot in chi_p.unit_values.items():
        if a == 1:
            continue
        d = (1 - a) % pf
        vp = 0
        while d % p == 0 and d != 0:
            d //= p
            vp += 1
        mult[rot] = mult.get(rot, 0) + p**vp
    total_weight = sum(mult.values())
    real_sum = float(total_weight) - sum(m * math.cos(2.0 * math.pi * float(r))
                                         for r, m in mult.items())
    imag_sum = -sum(m * math.sin(2.0 * math.pi * float(r)) for r, m in mult.items())
    if abs(imag_sum) > 1e-9 * max(1.0, abs(real_sum)):
        raise InternalConsistencyError(
            f"conductor integral at p={p} has imaginary part {imag_sum:.3e}")
    scale = math.log(p) if convention is MeasureConvention.WEIL_LOG_Q else 1.0
    return scale * real_sum / phi


def w_finite_ramified(g: TestFunction, chi_p: LocalCharacter, p: int) -> PlaceTerm:
    """Local term at a prime dividing the conductor.

    The shell sums vanish exactly (every shell averages a nontrivial
    character over the full unit group, and each character value occurs with
    equal multiplicity phi/order), leaving g(1) times the conductor
    integral.  The numeric unit-group sum is cross-checked against the
    closed form f * log p on every call.
    """
    if chi_p.f < 1:
        raise ConfigError(f"w_finite_ramified needs a ramified component at p={p}")
    # combinatorial check that unit values average to zero exactly:
    # each rotation class must have the same number of unit preimages
    counts: dict[Fraction, int] = {}
    for rot in chi_p.unit_values.values():
        counts[rot] = counts.get(rot, 0) + 1
    if len(set(counts.values())) != 1 or len(counts) < 2:
        raise InternalConsistencyError(
            f"unit values at p={p} do not form equal fibers of a nontrivial "
            f"character: {counts}")
    g1 = float(np.real(g(1.0)))
    ci = conductor_integral(chi_p, p)
    closed = chi_p.f * math.log(p)
    if abs(ci - closed) > 1e-12 * max(1.0, abs(closed)):
        raise InternalConsistencyError(
            f"conductor integral {ci!r} disagrees with closed form {closed!r} at p={p}")
    return PlaceTerm(finite_place(p), g1 * ci, "direct_weil", 1e-14 * abs(g1 * ci))


# -- assembling the place side ----------------------------------------------


def default_places(g: TestFunction, chi: DirichletCharacter) -> list[Place]:
    """Real place, ramified primes, and every unramified prime whose shells
    meet the support of g."""
    q0, _ = conductor(chi)
    a, b = g.support
    bound = max(b, 1.0 / a)
    places = [REAL_PLACE]
    ram = sorted({p for p in primes_up_to(max(q0, 2)) if q0 % p == 0})
    places += [finite_place(p) for p in ram]
    places += [finite_place(p) for p in primes_up_to(int(bound)) if p not in ram]
    return places


def place_side_sum(g: TestFunction, chi: DirichletCharacter,
                   places: list[Place] | None = None) -> PlaceSideResult:
    """Sum of local terms over the given places (defaults to all that matter)."""
    if places is None:
        places = default_places(g, chi)
    terms = []
    for place in places:
        lc = local_component(chi, place)
        if place.kind == "real":
            terms.append(w_real(g, parity=lc.parity))
        elif lc.f == 0:
            terms.append(w_finite_unramified(g, lc, place.p))
        else:
            terms.append(w_finite_ramified(g, lc, place.p))
    total = sum(t.value for t in terms)
    est = sum(t.est_error for t in terms)
    if isinstance(total, complex) and total.imag == 0.0:
        total = total.real
    return PlaceSideResult(total, tuple(terms), float(est))
