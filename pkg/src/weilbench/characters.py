"""Dirichlet characters with exact rational-rotation arithmetic.

A character mod q is stored through the generator decomposition of the unit
group (Z/q)^* : chi is pinned by its exponent tuple on a fixed generator
list, and chi(a) = exp(2*pi*i * t_a) where the rotation t_a is an exact
Fraction.  Keeping rotations exact lets conductor computations and the
ramified multiplicity sums run over integers/rationals, with a single
complex exponential applied at the very end.

Local data at a place: at the real place only the parity chi(-1) matters;
at a finite prime p the relevant object is the p-component of the primitive
character inducing chi.  The adelic normalization used here makes the
product of local values on a principal idele equal 1: the unramified
component stores value_at_p = chi0(p), while a ramified component stores the
*inverse* of the CRT p-part on units (so that for the idele of a rational
prime the unit-part value at p cancels the chi0(p) factors contributed away
from p).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import ConfigError

__all__ = [
    "Place",
    "REAL_PLACE",
    "finite_place",
    "DirichletCharacter",
    "LocalCharacter",
    "enumerate_characters",
    "conductor",
    "local_component",
    "conductor_exponent",
    "primes_up_to",
]


@dataclass(frozen=True)
class Place:
    """A place of the rationals: the real place or a finite prime."""

    kind: str  # "real" | "finite"
    p: int | None = None

    def __str__(self):
        return "real" if self.kind == "real" else f"p={self.p}"


REAL_PLACE = Place("real")


def finite_place(p: int) -> Place:
    return Place("finite", int(p))


def primes_up_to(n: int) -> list[int]:
    """All primes <= n (simple sieve)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, flag in enumerate(sieve) if flag]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _euler_phi_prime_power(p: int, e: int) -> int:
    return p ** (e - 1) * (p - 1)


def _order_mod(a: int, m: int, group_order: int) -> int:
    order = group_order
    for p in _factorize(group_order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def _primitive_root(p: int, e: int) -> int:
    """A generator of the cyclic group (Z/p^e)^* for odd p."""
    m = p**e
    phi = _euler_phi_prime_power(p, e)
    for g in range(2, m):
        if math.gcd(g, m) == 1 and _order_mod(g, m, phi) == phi:
            return g
    raise RuntimeError(f"no primitive root mod {m}")  # unreachable for odd p


@lru_cache(maxsize=256)
def _unit_group(q: int):
    """Generators of (Z/q)^*: ((g_1, d_1), ...) with residues mod q, plus a
    discrete-log table residue -> exponent tuple."""
    if q < 1:
        raise ConfigError(f"modulus must be >= 1, got {q}")
    gens: list[tuple[int, int]] = []
    local: list[tuple[int, list[tuple[int, int]]]] = []  # (p^e, gens mod p^e)
    for p, e in sorted(_factorize(q).items()):
        pe = p**e
        if p == 2:
            if e == 1:
                local.append((pe, []))
            elif e == 2:
                local.append((pe, [(3, 2)]))
            else:
                local.append((pe, [(pe - 1, 2), (5, 2 ** (e - 2))]))
        else:
            local.append((pe, [(_primitive_root(p, e), _euler_phi_prime_power(p, e))]))
    # lift each local generator to mod q via CRT (1 at the other components)
    for pe, loc_gens in local:
        rest = q // pe
        for g_loc, d in loc_gens:
            if rest == 1:
                g = g_loc % q
            else:
                inv_pe = pow(pe, -1, rest)
                inv_rest = pow(rest, -1, pe)
                g = (g_loc * rest * inv_rest + 1 * pe * inv_pe) % q
            gens.append((g, d))
    # discrete-log table
    table: dict[int, tuple[int, ...]] = {}
    orders = [d for _, d in gens]
    for exps in product(*(range(d) for d in orders)):
        r = 1
        for (g, _), k in zip(gens, exps):
            r = (r * pow(g, k, q)) % q
        table[r] = exps
    return tuple(gens), table


class DirichletCharacter:
    """Character mod q pinned by its exponent tuple on the unit-group generators."""

    def __init__(self, q: int, exponents: tuple[int, ...]):
        self.q = int(q)
        gens, table = _unit_group(self.q)
        if len(exponents) != len(gens):
            raise ConfigError(
                f"modulus {q} needs {len(gens)} exponents, got {len(exponents)}")
        self.exponents = tuple(int(k) % d for k, (_, d) in zip(exponents, gens))
        self._gens = gens
        self._dlog = table
        self.is_principal = all(k == 0 for k in self.exponents)
        self.order = math.lcm(*(d // math.gcd(k, d)
                                for k, (_, d) in zip(self.exponents, gens))) if gens else 1

    def rotation(self, a: int) -> Fraction | None:
        """Exact rotation t with chi(a) = e^(2 pi i t), or None if gcd(a, q) > 1."""
        a = a % self.q
        exps = self._dlog.get(a if self.q > 1 else 0)
        if self.q == 1:
            return Fraction(0)
        if exps is None:
            return None
        t = Fraction(0)
        for k, x, (_, d) in zip(self.exponents, exps, self._gens):
            t += Fraction(k * x, d)
        return t % 1

    def value(self, a: int) -> complex:
        t = self.rotation(a)
        if t is None:
            return 0.0 + 0.0j
        return cmath.exp(2j * cmath.pi * float(t))

    @property
    def parity(self) -> int:
        """chi(-1), either +1 or -1."""
        if self.q <= 2:
            return 1
        t = self.rotation(self.q - 1)
        return 1 if t == 0 else -1

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.q, tuple((-k) % d for k, (_, d) in zip(self.exponents, self._gens)))

    @property
    def index(self) -> int:
        """Position in the lexicographic enumeration for this modulus."""
        idx = 0
        for k, (_, d) in zip(self.exponents, self._gens):
            idx = idx * d + k
        return idx

    @property
    def label(self) -> str:
        return f"q={self.q},index={self.index}"

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter)
                and self.q == other.q and self.exponents == other.exponents)

    def __hash__(self):
        return hash((self.q, self.exponents))

    def __repr__(self):
        tag = "principal" if self.is_principal else f"order {self.order}"
        return f"DirichletCharacter({self.label}, {tag}, parity {self.parity:+d})"


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All characters mod q, lexicographic on generator exponents (principal first)."""
    gens, _ = _unit_group(q)
    return [DirichletCharacter(q, exps) for exps in product(*(range(d) for _, d in gens))]


def conductor(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    """Smallest modulus q0 through which chi factors, with its primitive character."""
    q = chi.q
    divisors = sorted(d for d in range(1, q + 1) if q % d == 0)
    for q0 in divisors:
        # chi factors through q0 iff chi(a) = 1 for all a = 1 (mod q0), gcd(a, q) = 1
        ok = all(chi.rotation(a) == 0
                 for a in range(1, q + 1, q0) if math.gcd(a, q) == 1)
        if ok:
            break
    # build the primitive character mod q0: evaluate chi on coprime lifts of q0's generators
    gens0, _ = _unit_group(q0)
    exps = []
    for g, d in gens0:
        t = chi.rotation(_lift_coprime(g, q0, q))
        k = t * d
        if k.denominator != 1:
            raise RuntimeError("conductor computation produced a non-integral exponent")
        exps.append(int(k) % d)
    return q0, DirichletCharacter(q0, tuple(exps))


def _lift_coprime(a: int, q0: int, q: int) -> int:
    """Some a' = a (mod q0) with gcd(a', q) = 1 (exists when gcd(a, q0) = 1)."""
    if q0 == q:
        return a
    for k in range(q // q0):
        cand = a + k * q0
        if math.gcd(cand, q) == 1:
            return cand
    raise RuntimeError(f"no coprime lift of {a} from mod {q0} to mod {q}")


def conductor_exponent(chi: DirichletCharacter, p: int) -> int:
    """v_p of the conductor of chi."""
    q0, _ = conductor(chi)
    e = 0
    while q0 % p == 0:
        q0 //= p
        e += 1
    return e


@dataclass(frozen=True)
class LocalCharacter:
    """Local component of a (primitive) Dirichlet character at one place.

    real place: only ``parity`` = chi(-1) is set.
    finite unramified (f = 0): ``value_at_p`` = chi0(p) on the uniformizer.
    finite ramified (f >= 1): ``unit_values`` maps a in (Z/p^f)^* to the exact
    rotation of the local character on units (inverse of the CRT p-part; see
    module docstring), and ``value_at_p`` is None (the normalization leaves
    the uniformizer value unconstrained; nothing downstream consumes it).
    """

    place: Place
    parity: int = 1
    f: int = 0
    unit_values: dict[int, Fraction] | None = None
    value_at_p: complex | None = None

    def unit_rotation(self, a: int) -> Fraction | None:
        pf = self.place.p**self.f
        a = a % pf
        return self.unit_values.get(a) if self.unit_values else None

    def unit_value(self, a: int) -> complex:
        t = self.unit_rotation(a)
        if t is None:
            return 0.0 + 0.0j
        return cmath.exp(2j * cmath.pi * float(t))


def local_component(chi: DirichletCharacter, place: Place) -> LocalCharacter:
    """Local component at ``place`` of the primitive character inducing chi."""
    q0, chi0 = conductor(chi)
    if place.kind == "real":
        return LocalCharacter(place=place, parity=chi0.parity)
    p = place.p
    f = 0
    m = q0
    while m % p == 0:
        m //= p
        f += 1
    if f == 0:
        return LocalCharacter(place=place, f=0, value_at_p=chi0.value(p))
    # ramified: CRT p-part of chi0 on units mod p^f, then invert (negate rotations)
    pf = p**f
    rest = q0 // pf
    unit_values: dict[int, Fraction] = {}
    for a in range(1, pf):
        if math.gcd(a, p) == 1:
            lifted = _crt_pair(a, pf, 1, rest) if rest > 1 else a
            t = chi0.rotation(lifted)
            unit_values[a] = (-t) % 1
    return LocalCharacter(place=place, parity=chi0.parity, f=f,
                          unit_values=unit_values, value_at_p=None)


def _crt_pair(a: int, m: int, b: int, n: int) -> int:
    """x = a (mod m), x = b (mod n) for coprime m, n."""
    inv_m = pow(m, -1, n)
    inv_n = pow(n, -1, m)
    return (a * n * inv_n + b * m * inv_m) % (m * n)
