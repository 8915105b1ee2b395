"""Arithmetic in Z[zeta_12] = Z[w][i], elements written r + i*s with r, s in Z[w].

The fixed complex embedding sends zeta_12 to exp(2*pi*i/12), i to i and w to
exp(2*pi*i/3); with it zeta_12 = -i*w.  Absolute values are handled exactly
in Z[sqrt(3)] (:class:`QuadSqrt3`), floats only propose exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .eisenstein import (
    Eis,
    _Scanner,
    _mul as _emul,
    _norm as _enorm,
    eis_conj,
    eis_norm,
    format_eis,
)


@dataclass(frozen=True, slots=True)
class Z12:
    r: Eis
    s: Eis = Eis(0, 0)

    @classmethod
    def from_coeffs(cls, r1: int, r2: int, s1: int = 0, s2: int = 0) -> Z12:
        return cls(Eis(r1, r2), Eis(s1, s2))

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return self.r.a1, self.r.a2, self.s.a1, self.s.a2

    def __add__(self, other: Z12 | Eis | int) -> Z12:
        other = as_z12(other)
        return Z12(self.r + other.r, self.s + other.s)

    __radd__ = __add__

    def __sub__(self, other: Z12 | Eis | int) -> Z12:
        other = as_z12(other)
        return Z12(self.r - other.r, self.s - other.s)

    def __neg__(self) -> Z12:
        return Z12(-self.r, -self.s)

    def __mul__(self, other: Z12 | Eis | int) -> Z12:
        if isinstance(other, (Eis, int)):
            return Z12(self.r * other, self.s * other)
        return Z12.from_coeffs(*_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Z12:
        if e < 0:
            return unit_inverse(self) ** -e
        result, base = ONE12, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.r or self.s)

    def __str__(self) -> str:
        return format_z12(self)

    def __complex__(self) -> complex:
        return complex(self.r) + 1j * complex(self.s)


def as_z12(x: Z12 | Eis | int) -> Z12:
    if isinstance(x, Z12):
        return x
    if isinstance(x, int):
        return Z12(Eis(x, 0))
    if isinstance(x, Eis):
        return Z12(x)
    raise TypeError(f"cannot interpret {x!r} as an element of Z[zeta12]")


def _mul(a: tuple[int, int, int, int], b: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    r1, r2 = _emul(a[0], a[1], b[0], b[1])
    t1, t2 = _emul(a[2], a[3], b[2], b[3])
    u1, u2 = _emul(a[0], a[1], b[2], b[3])
    v1, v2 = _emul(a[2], a[3], b[0], b[1])
    return r1 - t1, r2 - t2, u1 + v1, u2 + v2


ONE12 = Z12(Eis(1, 0))
I12 = Z12(Eis(0, 0), Eis(1, 0))
ZETA12 = Z12(Eis(0, 0), Eis(0, -1))  # -i*w
EPS0 = Z12(Eis(1, 1), Eis(0, -1))  # 1 + w - i*w
SQRT3 = Z12(Eis(0, 0), Eis(-1, -2))  # -i(1 + 2w)
PRIMARY_UNIT = -I12 * EPS0 ** 6  # -i*eps0^6, generates the units = 1 (mod 3)

GALOIS = ("id", "sigma", "tau", "sigma_tau")


def z12_mul(z1: Z12, z2: Z12) -> Z12:
    return z1 * z2


def z12_galois(z: Z12, g: str) -> Z12:
    """Apply ``sigma`` (i -> -i), ``tau`` (w -> w^2), their product, or ``id``.

    ``sigma_tau`` is complex conjugation under the fixed embedding.
    """
    if g == "id":
        return z
    if g == "sigma":
        return Z12(z.r, -z.s)
    if g == "tau":
        return Z12(eis_conj(z.r), eis_conj(z.s))
    if g == "sigma_tau":
        return Z12(eis_conj(z.r), -eis_conj(z.s))
    raise ValueError(f"unknown Galois element {g!r}")


def galois_orbit(z: Z12) -> list[Z12]:
    return [z12_galois(z, g) for g in GALOIS]


def z12_norms(z: Z12) -> tuple[Eis, int]:
    """``(r^2 + s^2, N3(r^2 + s^2))``: relative and absolute norm."""
    rel = z.r * z.r + z.s * z.s
    return rel, eis_norm(rel)


def rel_norm(z: Z12) -> Eis:
    return z.r * z.r + z.s * z.s


def abs_norm(z: Z12) -> int:
    r1, r2, s1, s2 = z.coeffs
    a1, a2 = _emul(r1, r2, r1, r2)
    b1, b2 = _emul(s1, s2, s1, s2)
    return _enorm(a1 + b1, a2 + b2)


def is_unit(z: Z12) -> bool:
    return abs_norm(z) == 1


def unit_inverse(u: Z12) -> Z12:
    rel = rel_norm(u)
    if eis_norm(rel) != 1:
        raise ValueError(f"{u} is not a unit")
    # u * sigma(u) = rel, a unit of Z[w] with inverse conj(rel)
    return Z12(u.r, -u.s) * eis_conj(rel)


def is_primary(z: Z12) -> bool:
    return z.r.a1 % 3 in (1, 2) and z.r.a2 % 3 == 0 and z.s.a1 % 3 == 0 and z.s.a2 % 3 == 0


def is_one_mod3(z: Z12) -> bool:
    return z.r.a1 % 3 == 1 and z.r.a2 % 3 == 0 and z.s.a1 % 3 == 0 and z.s.a2 % 3 == 0


def coprime_to_3(z: Z12) -> bool:
    # (1 - w) generates the only prime above 3 and lies in Z[w]
    return (z.r.a1 + z.r.a2) % 3 != 0 or (z.s.a1 + z.s.a2) % 3 != 0


def residue_mod3(z: Z12) -> tuple[int, int, int, int]:
    return z.r.a1 % 3, z.r.a2 % 3, z.s.a1 % 3, z.s.a2 % 3


# -- units modulo 3 ------------------------------------------------------------

def unit_table() -> list[tuple[int, int, Z12]]:
    """All ``(l, k, zeta12^l * eps0^k)`` for l < 12, k < 6; one per class of (Z[zeta12]/3)^x."""
    return [(l, k, ZETA12 ** l * EPS0 ** k) for l in range(12) for k in range(6)]


_TO_ONE_MOD3: dict[tuple[int, int, int, int], Z12] = {}
for _l, _k, _u in unit_table():
    _TO_ONE_MOD3[residue_mod3(_u)] = unit_inverse(_u)
assert len(_TO_ONE_MOD3) == 72


def primary_associate12(z: Z12) -> tuple[Z12, Z12]:
    """``(mu, mu*z)`` with ``mu`` a unit and ``mu*z = 1 (mod 3)``."""
    if not coprime_to_3(z):
        raise ValueError(f"{z} is divisible by 1 - w and has no primary associate")
    mu = _TO_ONE_MOD3[residue_mod3(z)]
    return mu, mu * z


# -- exact absolute values --------------------------------------------------------

@dataclass(frozen=True, slots=True)
class QuadSqrt3:
    """``c0 + c1*sqrt(3)`` with integer coefficients, exactly ordered."""

    c0: int
    c1: int = 0

    def __add__(self, other: QuadSqrt3 | int) -> QuadSqrt3:
        other = _as_q(other)
        return QuadSqrt3(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: QuadSqrt3 | int) -> QuadSqrt3:
        other = _as_q(other)
        return QuadSqrt3(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> QuadSqrt3:
        return QuadSqrt3(-self.c0, -self.c1)

    def __mul__(self, other: QuadSqrt3 | int) -> QuadSqrt3:
        other = _as_q(other)
        return QuadSqrt3(
            self.c0 * other.c0 + 3 * self.c1 * other.c1,
            self.c0 * other.c1 + self.c1 * other.c0,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QuadSqrt3:
        out = QuadSqrt3(1)
        for _ in range(e):
            out = out * self
        return out

    def sign(self) -> int:
        a, b = self.c0, self.c1
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        d = a * a - 3 * b * b
        return sa if d > 0 else sb

    def __lt__(self, other: QuadSqrt3 | int) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: QuadSqrt3 | int) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: QuadSqrt3 | int) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: QuadSqrt3 | int) -> bool:
        return (self - other).sign() >= 0

    def conj(self) -> QuadSqrt3:
        return QuadSqrt3(self.c0, -self.c1)

    def __float__(self) -> float:
        return self.c0 + self.c1 * math.sqrt(3)


def _as_q(x: QuadSqrt3 | int) -> QuadSqrt3:
    return x if isinstance(x, QuadSqrt3) else QuadSqrt3(x)


EPS0_ABS2 = QuadSqrt3(2, 1)
BOX_WIDTH = EPS0_ABS2 ** 12  # |eps0|^24: the box is N <= |z|^4 < N * BOX_WIDTH


def to_quad(z: Z12) -> QuadSqrt3:
    """Express a real element ``c0 + c1*sqrt(3)`` of Z[zeta12] in Z[sqrt(3)]."""
    r1, r2, s1, s2 = z.coeffs
    if r2 != 0 or s2 != 2 * s1:
        raise ValueError(f"{z} is not real under the fixed embedding")
    return QuadSqrt3(r1, -s1)


def abs2_exact(z: Z12) -> QuadSqrt3:
    """``|z|^2 = z * conj(z)`` exactly."""
    return to_quad(z * z12_galois(z, "sigma_tau"))


# -- Euclidean division ----------------------------------------------------------

_OFFSETS = sorted(product((-1, 0, 1), repeat=4), key=lambda o: sum(map(abs, o)))


def z12_divmod(a: Z12, b: Z12) -> tuple[Z12, Z12]:
    """``a = q*b + rem`` with ``N12(rem) < N12(b)``.

    Rounds the four coordinates of ``a/b`` in the basis 1, w, i, i*w and, if
    that misses the Euclidean bound, searches the offsets {-1,0,1}^4 for the
    smallest remainder.
    """
    if not b:
        raise ZeroDivisionError("division by zero in Z[zeta12]")
    m = rel_norm(b)
    cm = eis_conj(m)
    n = eis_norm(m)
    x = _mul(a.coeffs, (b.r.a1, b.r.a2, -b.s.a1, -b.s.a2))
    x1, x2 = _emul(x[0], x[1], cm.a1, cm.a2)
    x3, x4 = _emul(x[2], x[3], cm.a1, cm.a2)
    q = tuple(-((n - 2 * v) // (2 * n)) for v in (x1, x2, x3, x4))
    qb = _mul(q, b.coeffs)
    rem = tuple(u - v for u, v in zip(a.coeffs, qb))
    nb = n
    if _abs_norm(rem) < nb:
        return Z12.from_coeffs(*q), Z12.from_coeffs(*rem)
    best = None
    for off in _OFFSETS:
        q2 = tuple(u + v for u, v in zip(q, off))
        qb = _mul(q2, b.coeffs)
        rem2 = tuple(u - v for u, v in zip(a.coeffs, qb))
        nr = _abs_norm(rem2)
        if best is None or nr < best[0]:
            best = (nr, q2, rem2)
    assert best[0] < nb, "Euclidean bound violated in Z[zeta12]"
    return Z12.from_coeffs(*best[1]), Z12.from_coeffs(*best[2])


def _abs_norm(c: tuple[int, int, int, int]) -> int:
    a1, a2 = _emul(c[0], c[1], c[0], c[1])
    b1, b2 = _emul(c[2], c[3], c[2], c[3])
    return _enorm(a1 + b1, a2 + b2)


def z12_gcd(a: Z12, b: Z12) -> Z12:
    """A generator of the ideal (a, b); canonicalized when coprime to 3."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        _, rem = z12_divmod(a, b)
        a, b = b, rem
    if coprime_to_3(a):
        return canonical_generator(a)
    return a


def z12_divides(b: Z12, a: Z12) -> bool:
    if not b:
        return not a
    return not z12_divmod(a, b)[1]


def z12_exact_div(a: Z12, b: Z12) -> Z12:
    q, rem = z12_divmod(a, b)
    if rem:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


# -- canonical generators --------------------------------------------------------

_LOG_STEP = 12 * math.log(2 + math.sqrt(3))
_PRIMARY_UNIT_INV = unit_inverse(PRIMARY_UNIT)


def _log_pos(c0: int, c1: int) -> float:
    """log of the larger conjugate c0 + |c1| sqrt(3) (both conjugates positive)."""
    big = c0 + math.isqrt(3 * c1 * c1)
    if big < 1 << 52:
        return math.log(c0 + abs(c1) * math.sqrt(3))
    return math.log(big)


def in_box(z: Z12) -> bool:
    """Exact test of ``N12(z)^(1/4) <= |z| < N12(z)^(1/4) |eps0|^6``."""
    n = abs_norm(z)
    a = abs2_exact(z)
    a2 = a * a
    return a2 >= n and a2 < BOX_WIDTH * n


def canonical_generator(z0: Z12) -> Z12:
    """The unique associate ``z = 1 (mod 3)`` of ``z0`` lying in the norm box."""
    if not z0:
        raise ValueError("zero has no generator")
    _, z = primary_associate12(z0)
    n = abs_norm(z)
    a = abs2_exact(z)
    # log(|z|^4 / N) = log(|z|^2 / |tau z|^2); work from the larger conjugate
    big = _log_pos(a.c0, a.c1)
    log_ratio = 2 * big - math.log(n) if a.c1 >= 0 else math.log(n) - 2 * big
    k = -math.floor(log_ratio / _LOG_STEP)
    if k:
        z = z * (PRIMARY_UNIT ** k if k > 0 else _PRIMARY_UNIT_INV ** -k)
    while True:
        a = abs2_exact(z)
        a2 = a * a
        if a2 < n:
            z = z * PRIMARY_UNIT
        elif a2 >= BOX_WIDTH * n:
            z = z * _PRIMARY_UNIT_INV
        else:
            return z


# -- text grammar ---------------------------------------------------------------

def parse_z12(text: str) -> Z12:
    """Parse ``((r1,r2),(s1,s2))``."""
    sc = _Scanner(text, "Z[zeta12] literal ((r1,r2),(s1,s2))")
    (r1, r2), (s1, s2) = sc.pair(lambda: sc.pair(sc.integer))
    sc.end()
    return Z12.from_coeffs(r1, r2, s1, s2)


def format_z12(z: Z12) -> str:
    return f"({format_eis(z.r)},{format_eis(z.s)})"
