"""Sources of nontrivial zeros: import, direct computation, disk cache.

Riemann zeros are located through the classical Gram-point bookkeeping: the
real Hardy function Z(t) alternates sign at "good" Gram points, each block
between consecutive good Gram points carries a known number of zeros, and
sign changes inside a block are isolated by subdivision and polished with
Brent's method.  The count is verified block by block; a block that refuses
to yield its expected number of sign changes raises CountMismatchError
rather than returning a silently incomplete list.

Dirichlet zeros (small modulus, modest height) use the rotated completed
L-function: on the critical line e^(-i*arg(eps)/2) * Lambda(1/2 + it) is
real, so its real part is a Hardy-style function whose sign changes are the
ordinates; the vanishing of the imaginary part is monitored at every
evaluation as a live check of the root number and the functional equation.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import lambertw

from .characters import DirichletCharacter, conductor
from .errors import (CacheMismatchError, ConfigError, CountMismatchError,
                     InternalConsistencyError, ZeroParseError)
from .special_functions import (AccuracyBudget, DEFAULT_BUDGET, hurwitz_zeta, log_gamma,
                                riemann_siegel_Z, riemann_siegel_theta,
                                riemann_siegel_theta_deriv)

__all__ = [
    "ZeroSet",
    "import_zeros",
    "compute_riemann_zeros",
    "compute_dirichlet_zeros",
    "cache_store",
    "cache_load",
]

_CACHE_MAGIC = "# weilbench zero cache v1"


@dataclass(frozen=True)
class ZeroSet:
    """Positive ordinates of nontrivial zeros up to a height bound."""

    character_id: str
    ordinates: np.ndarray
    height_bound: float
    provenance: str  # "imported" | "computed_rs" | "computed_dirichlet"
    count_verified: bool

    @property
    def count(self) -> int:
        return int(self.ordinates.size)


# -- import --------------------------------------------------------------


def import_zeros(path: str, character_id: str = "zeta") -> ZeroSet:
    """Read ordinates from a text file: one per line, '#' comments allowed.

    Lines must parse as positive, strictly increasing floats; violations
    raise ZeroParseError naming the offending line.
    """
    ordinates = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                val = float(line)
            except ValueError as exc:
                raise ZeroParseError(f"{path}:{lineno}: not a number: {line!r}") from exc
            if val <= 0.0:
                raise ZeroParseError(f"{path}:{lineno}: ordinate must be positive, got {val}")
            if ordinates and val <= ordinates[-1]:
                raise ZeroParseError(
                    f"{path}:{lineno}: ordinates must be strictly increasing "
                    f"({val} after {ordinates[-1]})")
            ordinates.append(val)
    if not ordinates:
        raise ZeroParseError(f"{path}: no ordinates found")
    arr = np.asarray(ordinates, dtype=np.float64)
    return ZeroSet(character_id=character_id, ordinates=arr,
                   height_bound=float(arr[-1]), provenance="imported",
                   count_verified=False)


# -- Riemann zeros ---------------------------------------------------------


def _gram_points(n_min: int, n_max: int) -> np.ndarray:
    """Gram points g_n (theta(g_n) = n*pi) for n_min <= n <= n_max, n >= -1."""
    n = np.arange(n_min, n_max + 1, dtype=np.float64)
    c = (n + 0.125) / math.e
    x = math.e * np.exp(np.real(lambertw(c)))
    t = 2.0 * math.pi * x
    for _ in range(8):
        resid = riemann_siegel_theta(t) - n * math.pi
        t = t - resid / riemann_siegel_theta_deriv(t)
        if np.max(np.abs(resid)) < 1e-13 * np.max(t):
            break
    return t


def _gram_index_at(T: float) -> int:
    """Largest n with g_n <= T (approximately; callers overshoot anyway)."""
    return int(math.floor(riemann_siegel_theta(T) / math.pi))


def compute_riemann_zeros(T: float, budget: AccuracyBudget | None = None) -> ZeroSet:
    """All ordinates of zeta zeros in (0, T], located and counted.

    Valid for 10 <= T <= 1e4.  The Gram-block subdivision depth is capped;
    a block that does not reveal its expected sign changes raises
    CountMismatchError (no silent undercounting).
    """
    budget = budget or DEFAULT_BUDGET
    if not (10.0 <= T <= 1.0e4):
        raise ConfigError(f"compute_riemann_zeros supports 10 <= T <= 1e4, got {T}")

    n_hi = _gram_index_at(T) + 12
    grams = _gram_points(-1, n_hi)
    z_vals = riemann_siegel_Z(grams, budget)
    parity = np.array([(-1.0) ** n for n in range(-1, n_hi + 1)])
    good = parity * z_vals > 0.0

    # indices of good Gram points; ensure the list starts at n = -1 (g_-1 ~ 9.67
    # is good: Z(g_-1) < 0) and ends beyond T
    good_idx = np.flatnonzero(good)
    if good_idx.size < 2 or grams[good_idx[0]] > 10.0:
        raise InternalConsistencyError("unexpected Gram point layout at the bottom")
    # last good Gram point at or above T
    above = good_idx[grams[good_idx] >= T]
    if above.size == 0:
        raise InternalConsistencyError("Gram scan did not pass the requested height")
    stop = above[0]
    good_idx = good_idx[good_idx <= stop]

    ordinates: list[float] = []

    def z_scalar(t: float) -> float:
        return riemann_siegel_Z(float(t), budget)

    for a_idx, b_idx in zip(good_idx[:-1], good_idx[1:]):
        expected = int(b_idx - a_idx)  # zeros in the Gram block (g_a, g_b]
        lo, hi = grams[a_idx], grams[b_idx]
        brackets = None
        pieces = max(2, 2 * expected)
        while pieces <= 256:
            ts = np.linspace(lo, hi, pieces + 1)
            vals = riemann_siegel_Z(ts, budget)
            signs = np.sign(vals)
            flips = np.flatnonzero(signs[:-1] * signs[1:] < 0.0)
            if flips.size == expected:
                brackets = [(ts[i], ts[i + 1], vals[i], vals[i + 1]) for i in flips]
                break
            pieces *= 2
        if brackets is None:
            raise CountMismatchError(
                f"Gram block [{lo:.6f}, {hi:.6f}] expected {expected} sign changes; "
                f"subdivision to 256 pieces found a different number")
        for t0, t1, _, _ in brackets:
            root = brentq(z_scalar, t0, t1, xtol=1e-12, rtol=8.9e-16)
            ordinates.append(float(root))

    arr = np.asarray(sorted(ordinates), dtype=np.float64)
    keep = arr <= T
    return ZeroSet(character_id="zeta", ordinates=arr[keep], height_bound=float(T),
                   provenance="computed_rs", count_verified=True)


# -- Dirichlet zeros -------------------------------------------------------


def _gauss_sum(chi: DirichletCharacter) -> complex:
    q = chi.q
    return sum(chi.value(a) * np.exp(2j * np.pi * a / q) for a in range(1, q + 1))


def _dirichlet_L_line(chi: DirichletCharacter, ts: np.ndarray,
                      budget: AccuracyBudget) -> np.ndarray:
    """L(1/2 + i t, chi) for an array of heights, via Hurwitz zeta."""
    q = chi.q
    s = 0.5 + 1j * ts
    total = np.zeros(ts.shape, dtype=np.complex128)
    for a in range(1, q + 1):
        val = chi.value(a)
        if val != 0:
            total += val * np.atleast_1d(hurwitz_zeta(s, a / q, budget))
    return np.asarray(q ** (-s), dtype=np.complex128) * total


class _RotatedHardy:
    """Real Hardy-style function for a primitive character on the critical line."""

    def __init__(self, chi: DirichletCharacter, budget: AccuracyBudget):
        q0, chi0 = conductor(chi)
        if q0 != chi.q:
            raise ConfigError(
                f"compute_dirichlet_zeros needs a primitive character; "
                f"{chi.label} has conductor {q0}")
        if chi0.is_principal:
            raise ConfigError("use compute_riemann_zeros for the principal character")
        self.chi = chi0
        self.q = q0
        self.a = 0 if chi0.parity == 1 else 1
        self.budget = budget
        tau = _gauss_sum(chi0)
        if abs(abs(tau) - math.sqrt(q0)) > 1e-10 * math.sqrt(q0):
            raise InternalConsistencyError(
                f"|Gauss sum| = {abs(tau):.12f} != sqrt({q0}) for {chi0.label}")
        eps = tau / ((1j ** self.a) * math.sqrt(q0))
        self.half_arg_eps = 0.5 * math.atan2(eps.imag, eps.real)
        self.worst_imag = 0.0

    def _omega(self, ts: np.ndarray) -> np.ndarray:
        """Phase of (q/pi)^((s+a)/2) Gamma((s+a)/2) at s = 1/2 + it."""
        z = 0.5 * (0.5 + self.a) + 0.5j * ts
        return (0.5 * ts * math.log(self.q / math.pi)
                + np.imag(np.atleast_1d(log_gamma(z))))

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        L = _dirichlet_L_line(self.chi, ts, self.budget)
        rotated = np.exp(1j * (self._omega(ts) - self.half_arg_eps)) * L
        imag_resid = np.max(np.abs(rotated.imag) / (1.0 + np.abs(L)))
        self.worst_imag = max(self.worst_imag, float(imag_resid))
        if imag_resid > 1e-8:
            raise InternalConsistencyError(
                f"rotated completed L-function is not real (residual {imag_resid:.3e}); "
                f"root-number normalization is wrong for {self.chi.label}")
        return rotated.real

    def scalar(self, t: float) -> float:
        return float(self.values(np.array([t]))[0])


def compute_dirichlet_zeros(chi: DirichletCharacter, T: float,
                            budget: AccuracyBudget | None = None) -> ZeroSet:
    """Positive ordinates of L(s, chi) zeros up to T for primitive chi, q <= 10.

    Sign changes of the rotated Hardy function are collected on a 0.05 grid,
    re-checked on a 0.025 grid, and polished with Brent's method.  The count
    flag reflects agreement between the two scan resolutions.
    """
    budget = budget or DEFAULT_BUDGET
    if chi.q > 10:
        raise ConfigError(f"compute_dirichlet_zeros supports q <= 10, got q = {chi.q}")
    if not (0.0 < T <= 50.0):
        raise ConfigError(f"compute_dirichlet_zeros supports 0 < T <= 50, got {T}")
    hardy = _RotatedHardy(chi, budget)

    def scan(step: float) -> list[tuple[float, float]]:
        ts = np.arange(0.0, T + step, step)
        ts = ts[ts <= T + 1e-12]
        vals = hardy.values(ts)
        signs = np.sign(vals)
        flips = np.flatnonzero(signs[:-1] * signs[1:] < 0.0)
        return [(float(ts[i]), float(ts[i + 1])) for i in flips]

    coarse = scan(0.05)
    fine = scan(0.025)
    count_verified = len(coarse) == len(fine)
    brackets = fine if len(fine) >= len(coarse) else coarse

    ordinates = []
    for t0, t1 in brackets:
        root = brentq(hardy.scalar, t0, t1, xtol=1e-12, rtol=8.9e-16)
        if root > 1e-9:
            ordinates.append(float(root))
    arr = np.asarray(sorted(ordinates), dtype=np.float64)
    arr = arr[arr <= T]
    return ZeroSet(character_id=f"dirichlet_{hardy.chi.label}", ordinates=arr,
                   height_bound=float(T), provenance="computed_dirichlet",
                   count_verified=count_verified)


# -- cache -----------------------------------------------------------------


def cache_store(zs: ZeroSet, path: str) -> None:
    """Write a zero set atomically (temp file + rename) with a header."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(f"{_CACHE_MAGIC}\n")
            fh.write(f"# character: {zs.character_id}\n")
            fh.write(f"# height_bound: {zs.height_bound!r}\n")
            fh.write(f"# provenance: {zs.provenance}\n")
            fh.write(f"# count: {zs.count}\n")
            fh.write(f"# count_verified: {str(zs.count_verified).lower()}\n")
            for t in zs.ordinates:
                fh.write(f"{t:.12f}\n")
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def cache_load(path: str, expect_character: str | None = None,
               expect_height: float | None = None) -> ZeroSet:
    """Load a cached zero set; optionally enforce identity and height."""
    header: dict[str, str] = {}
    ordinates = []
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n")
        if first != _CACHE_MAGIC:
            raise CacheMismatchError(f"{path}: not a weilbench zero cache")
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                header[key.strip()] = val.strip()
                continue
            try:
                ordinates.append(float(line))
            except ValueError as exc:
                raise ZeroParseError(f"{path}:{lineno}: not a number: {line!r}") from exc
    try:
        character_id = header["character"]
        height_bound = float(header["height_bound"])
        provenance = header["provenance"]
        count = int(header["count"])
        count_verified = header["count_verified"] == "true"
    except KeyError as exc:
        raise CacheMismatchError(f"{path}: missing header field {exc}") from exc
    if count != len(ordinates):
        raise CacheMismatchError(
            f"{path}: header promises {count} ordinates, file has {len(ordinates)}")
    if expect_character is not None and character_id != expect_character:
        raise CacheMismatchError(
            f"{path}: cache holds {character_id!r}, requested {expect_character!r}")
    if expect_height is not None and height_bound < expect_height - 1e-9:
        raise CacheMismatchError(
            f"{path}: cache height {height_bound} below requested {expect_height}")
    arr = np.asarray(ordinates, dtype=np.float64)
    if arr.size and (np.any(arr <= 0) or np.any(np.diff(arr) <= 0)):
        raise ZeroParseError(f"{path}: ordinates must be positive and increasing")
    return ZeroSet(character_id=character_id, ordinates=arr, height_bound=height_bound,
                   provenance=provenance, count_verified=count_verified)
