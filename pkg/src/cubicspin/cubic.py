"""The cubic residue character [a/b] on Z[w].

Three routes to the same value:

* :func:`chi_prime` -- Euler's criterion at a single prime modulus;
* :func:`cubic_symbol_factored` -- factor ``b`` and multiply prime values;
* :func:`cubic_symbol` -- a Jacobi-style loop driven by cubic reciprocity and
  its supplementary laws, no factoring.

Conventions: units and ``1 - w`` in the lower slot contribute 1 (even when
``1 - w`` divides the top); ``-1`` is a cube so everything is sign blind.
At an inert rational prime ``q`` the value is ``a^((q^2-1)/3) mod q``, which
is 1 for every rational ``a`` prime to ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import isprime

from .eisenstein import Eis, _PRIMARY_UNIT, _divmod, _mul, eis_factor, eis_norm, is_primary


@dataclass(frozen=True, slots=True)
class CubicValue:
    """An element of {0, 1, w, w^2}; ``k is None`` encodes 0, else ``w**k``."""

    k: int | None

    def __mul__(self, other: CubicValue) -> CubicValue:
        if self.k is None or other.k is None:
            return ZERO_VALUE
        return ROOTS[(self.k + other.k) % 3]

    def __pow__(self, e: int) -> CubicValue:
        if self.k is None:
            return ONE_VALUE if e == 0 else ZERO_VALUE
        return ROOTS[(self.k * e) % 3]

    def inverse(self) -> CubicValue:
        if self.k is None:
            raise ZeroDivisionError("0 has no inverse")
        return ROOTS[-self.k % 3]

    def conj(self) -> CubicValue:
        return self if self.k is None else ROOTS[-self.k % 3]

    @property
    def is_zero(self) -> bool:
        return self.k is None

    def __complex__(self) -> complex:
        if self.k is None:
            return 0j
        return (1 + 0j, complex(-0.5, 0.8660254037844386), complex(-0.5, -0.8660254037844386))[self.k]

    def __str__(self) -> str:
        return format_value(self)

    def __repr__(self) -> str:
        return f"CubicValue({format_value(self)})"


ROOTS = (CubicValue(0), CubicValue(1), CubicValue(2))
ONE_VALUE = ROOTS[0]
ZERO_VALUE = CubicValue(None)

_NAMES = {None: "0", 0: "1", 1: "w", 2: "w^2"}
_FROM_NAME = {v: k for k, v in _NAMES.items()}


def format_value(v: CubicValue) -> str:
    return _NAMES[v.k]


def parse_value(text: str) -> CubicValue:
    try:
        k = _FROM_NAME[text.strip()]
    except KeyError:
        raise ValueError(f"not a cubic value: {text!r}") from None
    return ZERO_VALUE if k is None else ROOTS[k]


# -- single prime -------------------------------------------------------------

def _powmod(a1: int, a2: int, e: int, m1: int, m2: int) -> tuple[int, int]:
    r1, r2 = 1, 0
    a1, a2 = _divmod(a1, a2, m1, m2)[2:]
    while e:
        if e & 1:
            r1, r2 = _divmod(*_mul(r1, r2, a1, a2), m1, m2)[2:]
        e >>= 1
        if e:
            a1, a2 = _divmod(*_mul(a1, a2, a1, a2), m1, m2)[2:]
    return r1, r2


def _prime_kind(pi: Eis) -> str:
    n = eis_norm(pi)
    if n == 1:
        return "unit"
    if n == 3:
        return "lambda"
    if isprime(n):
        return "split"
    if pi.a2 == 0 or pi.a1 == 0 or pi.a1 == pi.a2:
        # associates of a rational integer: q, q*w, q*w^2 up to sign
        q = abs(pi.a1 or pi.a2)
        if q * q == n and q % 3 == 2 and isprime(q):
            return "inert"
    raise ValueError(f"{pi} is not a prime of Z[w]")


def chi_prime(a: Eis, pi: Eis) -> CubicValue:
    """Cubic character of ``a`` at the prime ``pi`` by Euler's criterion."""
    kind = _prime_kind(pi)
    if kind in ("unit", "lambda"):
        return ONE_VALUE
    n = eis_norm(pi)
    e = (n - 1) // 3
    r1, r2 = _powmod(a.a1, a.a2, e, pi.a1, pi.a2)
    if r1 == 0 and r2 == 0:
        return ZERO_VALUE
    for k, (z1, z2) in enumerate(((1, 0), (0, 1), (-1, -1))):
        d1, d2 = _divmod(r1 - z1, r2 - z2, pi.a1, pi.a2)[2:]
        if d1 == 0 and d2 == 0:
            return ROOTS[k]
    raise ArithmeticError(f"Euler criterion gave a non-root residue for {a} mod {pi}")


def cubic_symbol_factored(a: Eis, b: Eis) -> CubicValue:
    """[a/b] as the product of prime characters over the factorization of b."""
    if not b:
        raise ZeroDivisionError("cubic symbol with zero modulus")
    value = ONE_VALUE
    for pi, e in eis_factor(b).primes:
        value = value * chi_prime(a, pi) ** e
        if value.is_zero:
            break
    return value


# -- reciprocity-driven fast path ---------------------------------------------

# (a1 % 3, a2 % 3) -> (u1, u2, j): the unit u = (u1, u2) with u*a = 1 (mod 3),
# and j with u^-1 = +-w^j.  Entries for residues divisible by 1 - w are unused.
_NORMALIZER: list[tuple[int, int, int]] = [(1, 0, 0)] * 9
for (_r1, _r2), _i in _PRIMARY_UNIT.items():
    _NORMALIZER[3 * _r1 + _r2] = (*((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))[_i], -_i % 3)


def symbol_exponent(a1: int, a2: int, b1: int, b2: int) -> int | None:
    """Raw kernel of :func:`cubic_symbol`: ``k`` with [a/b] = w^k, or None for 0."""
    k = 0
    while True:
        # strip (1 - w) from the modulus; it contributes 1
        while (b1 + b2) % 3 == 0:
            if b1 == 0 and b2 == 0:
                raise ZeroDivisionError("cubic symbol with zero modulus")
            b1, b2 = (2 * b1 - b2) // 3, (b1 + b2) // 3
        # units contribute 1: normalize b = 1 (mod 3)
        u1, u2, _ = _NORMALIZER[3 * (b1 % 3) + b2 % 3]
        t = u2 * b2
        b1, b2 = u1 * b1 - t, u1 * b2 + u2 * b1 - t
        n = b1 * b1 - b1 * b2 + b2 * b2
        if n == 1:
            return k % 3
        # a <- a mod b (inlined eis_divmod)
        c1 = b1 - b2
        t = -a2 * b2
        x1 = a1 * c1 - t
        x2 = a2 * c1 - a1 * b2 - t
        q1 = -((n - 2 * x1) // (2 * n))
        q2 = -((n - 2 * x2) // (2 * n))
        t = q2 * b2
        a1 -= q1 * b1 - t
        a2 -= q1 * b2 + q2 * b1 - t
        if a1 == 0 and a2 == 0:
            return None
        # a = +-w^j (1 - w)^lam a' with a' = 1 (mod 3); supplementary laws for b = 1 (mod 3)
        while (a1 + a2) % 3 == 0:
            a1, a2 = (2 * a1 - a2) // 3, (a1 + a2) // 3
            k += (b1 - 1) // 3
        u1, u2, j = _NORMALIZER[3 * (a1 % 3) + a2 % 3]
        if j:
            k += j * ((1 - b1 - b2) // 3)
        t = u2 * a2
        # reciprocity: [a'/b] = [b/a']
        a1, a2, b1, b2 = b1, b2, u1 * a1 - t, u1 * a2 + u2 * a1 - t


_NORM_U1 = np.array([u[0] for u in _NORMALIZER], dtype=np.int64)
_NORM_U2 = np.array([u[1] for u in _NORMALIZER], dtype=np.int64)
_NORM_J = np.array([u[2] for u in _NORMALIZER], dtype=np.int64)
_BATCH_LIMIT = 1 << 20


def symbol_exponents(a1, a2, b1, b2) -> np.ndarray:
    """Vectorized :func:`symbol_exponent` over broadcast integer arrays.

    Runs the same reciprocity loop elementwise in int64; returns an int8 array
    of exponents with -1 standing for the value 0.  Coefficients must stay
    below 2**20 in absolute value so that no intermediate overflows.
    """
    A1, A2, B1, B2 = (np.array(x, dtype=np.int64) for x in np.broadcast_arrays(a1, a2, b1, b2))
    shape = A1.shape
    A1, A2, B1, B2 = (x.ravel().copy() for x in (A1, A2, B1, B2))
    for x in (A1, A2, B1, B2):
        if x.size and np.abs(x).max() >= _BATCH_LIMIT:
            raise OverflowError("coefficients too large for the int64 batch kernel")
    if np.any((B1 == 0) & (B2 == 0)):
        raise ZeroDivisionError("cubic symbol with zero modulus")
    out = np.empty(A1.size, dtype=np.int8)
    idx = np.arange(A1.size)
    K = np.zeros(A1.size, dtype=np.int64)
    while idx.size:
        m = (B1 + B2) % 3 == 0
        while m.any():
            B1[m], B2[m] = (2 * B1[m] - B2[m]) // 3, (B1[m] + B2[m]) // 3
            m = (B1 + B2) % 3 == 0
        r = 3 * (B1 % 3) + B2 % 3
        u1, u2 = _NORM_U1[r], _NORM_U2[r]
        t = u2 * B2
        B1, B2 = u1 * B1 - t, u1 * B2 + u2 * B1 - t
        n = B1 * B1 - B1 * B2 + B2 * B2
        done = n == 1
        out[idx[done]] = K[done] % 3
        c1 = B1 - B2
        t = -A2 * B2
        x1 = A1 * c1 - t
        x2 = A2 * c1 - A1 * B2 - t
        q1 = -((n - 2 * x1) // (2 * n))
        q2 = -((n - 2 * x2) // (2 * n))
        t = q2 * B2
        A1 = A1 - (q1 * B1 - t)
        A2 = A2 - (q1 * B2 + q2 * B1 - t)
        zero = ~done & (A1 == 0) & (A2 == 0)
        out[idx[zero]] = -1
        keep = ~(done | zero)
        idx, A1, A2, B1, B2, K = idx[keep], A1[keep], A2[keep], B1[keep], B2[keep], K[keep]
        m = (A1 + A2) % 3 == 0
        while m.any():
            A1[m], A2[m] = (2 * A1[m] - A2[m]) // 3, (A1[m] + A2[m]) // 3
            K[m] += (B1[m] - 1) // 3
            m = (A1 + A2) % 3 == 0
        r = 3 * (A1 % 3) + A2 % 3
        u1, u2, j = _NORM_U1[r], _NORM_U2[r], _NORM_J[r]
        K += j * ((1 - B1 - B2) // 3)
        t = u2 * A2
        A1, A2, B1, B2 = B1, B2, u1 * A1 - t, u1 * A2 + u2 * A1 - t
    return out.reshape(shape)


def cubic_symbol(a: Eis, b: Eis) -> CubicValue:
    """[a/b] computed without factoring, by cubic reciprocity."""
    k = symbol_exponent(a.a1, a.a2, b.a1, b.a2)
    return ZERO_VALUE if k is None else ROOTS[k]


def supplementary_epsilon(kind: str, a: Eis) -> CubicValue:
    """epsilon(zeta3, a), epsilon(1 - zeta3, a) or epsilon(3, a) for primary ``a``."""
    if not is_primary(a):
        raise ValueError(f"{a} is not primary")
    sign = 1 if a.a1 % 3 == 1 else -1
    if kind == "zeta3":
        num = 1 + sign * (-a.a1 - a.a2)
    elif kind == "lambda":
        num = sign * a.a1 - 1
    elif kind == "three":
        num = sign * a.a2
    else:
        raise ValueError(f"unknown supplementary law {kind!r}")
    assert num % 3 == 0
    return ROOTS[(num // 3) % 3]


def epsilon_factor(a: Eis, b: Eis) -> CubicValue:
    """The root of unity with ``[a/b] = epsilon(a, b) [b/a]``."""
    if not a or not b:
        raise ValueError("epsilon needs nonzero arguments")
    fwd = cubic_symbol(a, b)
    back = cubic_symbol(b, a)
    if fwd.is_zero or back.is_zero:
        raise ValueError(f"{a} and {b} are not coprime")
    return fwd * back.inverse()

