"""Prime ideals of Z[zeta12] ordered by norm."""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterator

import numpy as np
from sympy import isprime
from sympy.ntheory import sqrt_mod

from .cubic import ZERO_VALUE, CubicValue, format_value
from .eisenstein import Eis, eis_prime_above, format_eis
from .spin import spin_ideal
from .zeta12 import Z12, abs_norm, canonical_generator, z12_galois, z12_gcd

I = Z12(Eis(0), Eis(1))


@dataclass(frozen=True)
class PrimeIdealRecord:
    p: int
    f: int
    gen: Z12 | None
    norm: int
    spin: CubicValue

    def csv_row(self) -> str:
        if self.gen is None:
            coeffs = ",,,"
        else:
            coeffs = ",".join(map(str, self.gen.coeffs))
        return f"{self.p},{self.f},{self.norm},{coeffs},{format_value(self.spin)}"


CSV_HEADER = "p,f,norm,r1,r2,s1,s2,spin"


def _orbit_key(z: Z12) -> tuple[str, str]:
    return format_eis(z.r), format_eis(z.s)


def _record(p: int, f: int, gen: Z12) -> PrimeIdealRecord:
    gen = canonical_generator(gen)
    return PrimeIdealRecord(p, f, gen, p ** f, spin_ideal(gen))


def prime_above(p: int) -> list[PrimeIdealRecord]:
    """Records of all prime ideals of Z[zeta12] above the rational prime ``p``."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        # (2) = (1+i)^2 with residue degree 2
        return [_record(2, 2, Z12(Eis(1), Eis(1)))]
    if p == 3:
        # (3) = (1-w)^2; no generator is = 1 (mod 3)
        return [PrimeIdealRecord(3, 2, None, 9, ZERO_VALUE)]
    cls = p % 12
    if cls == 1:
        pi = eis_prime_above(p)
        w = sqrt_mod(-1, p)
        z = canonical_generator(z12_gcd(Z12(pi), Z12(Eis(w)) + I))
        zs = canonical_generator(z12_galois(z, "sigma"))
        orbit = [z, zs, z12_galois(z, "sigma_tau"), z12_galois(zs, "sigma_tau")]
        orbit.sort(key=_orbit_key)
        return [PrimeIdealRecord(p, 1, g, p, spin_ideal(g)) for g in orbit]
    if cls == 5:
        w = sqrt_mod(-1, p)
        gens = [z12_gcd(Z12(Eis(p)), Z12(Eis(w)) + I), z12_gcd(Z12(Eis(p)), Z12(Eis(w)) - I)]
    elif cls == 7:
        pi = eis_prime_above(p)
        gens = [Z12(pi), Z12(pi.conj())]
    else:
        t = sqrt_mod(3, p)
        sqrt3 = Z12(Eis(0), Eis(-1, -2))
        gens = [z12_gcd(Z12(Eis(p)), Z12(Eis(t)) - sqrt3), z12_gcd(Z12(Eis(p)), Z12(Eis(t)) + sqrt3)]
    recs = [_record(p, 2, g) for g in gens]
    assert all(abs_norm(r.gen) == p * p for r in recs)
    return sorted(recs, key=lambda r: _orbit_key(r.gen))


# -- enumeration ------------------------------------------------------------------

def small_primes(n: int) -> np.ndarray:
    """Primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for k in range(2, math.isqrt(n) + 1):
        if sieve[k]:
            sieve[k * k::k] = False
    return np.flatnonzero(sieve)


def primes_in_segment(lo: int, hi: int) -> np.ndarray:
    """Primes in ``[lo, hi)`` by a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    seg = np.ones(hi - lo, dtype=bool)
    for p in small_primes(math.isqrt(hi - 1)):
        p = int(p)
        start = max(p * p, -(-lo // p) * p)
        seg[start - lo::p] = False
    return np.flatnonzero(seg) + lo


SEGMENT = 1 << 15


def _segment_records(bounds: tuple[int, int]) -> list[PrimeIdealRecord]:
    """All records with norm in ``[lo, hi)``, sorted."""
    lo, hi = bounds
    recs: list[PrimeIdealRecord] = []
    for p in primes_in_segment(lo, hi):
        if p % 12 == 1:
            recs.extend(prime_above(int(p)))
    # degree 2 primes with p^2 in [lo, hi)
    plo, phi = math.isqrt(lo - 1) + 1, math.isqrt(hi - 1) + 1
    for p in primes_in_segment(plo, phi):
        if p % 12 != 1:
            recs.extend(prime_above(int(p)))
    recs.sort(key=lambda r: (r.norm, _orbit_key(r.gen) if r.gen is not None else ("", "")))
    return recs


def _segments(x: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + SEGMENT, x + 1)) for lo in range(2, x + 1, SEGMENT)]


def prime_ideals_up_to(x: int, workers: int = 1) -> Iterator[PrimeIdealRecord]:
    """Every prime ideal of norm ``<= x``, by (norm, orbit order).

    Segments are processed independently and yielded in order, so the stream
    does not depend on ``workers``.
    """
    if x < 2:
        raise ValueError("x must be at least 2")
    segs = _segments(x)
    if workers <= 1 or len(segs) == 1:
        for seg in segs:
            yield from _segment_records(seg)
        return
    with get_context("fork").Pool(workers) as pool:
        for recs in pool.imap(_segment_records, segs):
            yield from recs
