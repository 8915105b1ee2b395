"""Exact arithmetic in the Eisenstein integers Z[w], w = zeta_3.

Elements are stored as a coefficient pair ``(a1, a2)`` meaning ``a1 + a2*w``
with ``w**2 = -1 - w``.  The hot loops elsewhere in the package work on the
raw integer pairs through the ``_``-prefixed helpers below; the :class:`Eis`
class is the public face.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint


@dataclass(frozen=True, slots=True)
class Eis:
    a1: int
    a2: int = 0

    def __add__(self, other: Eis | int) -> Eis:
        other = as_eis(other)
        return Eis(self.a1 + other.a1, self.a2 + other.a2)

    __radd__ = __add__

    def __sub__(self, other: Eis | int) -> Eis:
        other = as_eis(other)
        return Eis(self.a1 - other.a1, self.a2 - other.a2)

    def __rsub__(self, other: Eis | int) -> Eis:
        return as_eis(other) - self

    def __neg__(self) -> Eis:
        return Eis(-self.a1, -self.a2)

    def __mul__(self, other: Eis | int) -> Eis:
        if isinstance(other, int):
            return Eis(self.a1 * other, self.a2 * other)
        return Eis(*_mul(self.a1, self.a2, other.a1, other.a2))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Eis:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a1 or self.a2)

    def __str__(self) -> str:
        return format_eis(self)

    def conj(self) -> Eis:
        return eis_conj(self)

    def norm(self) -> int:
        return eis_norm(self)

    def is_primary(self) -> bool:
        return is_primary(self)

    def is_unit(self) -> bool:
        return eis_norm(self) == 1

    def __complex__(self) -> complex:
        return complex(self.a1 - 0.5 * self.a2, 0.8660254037844386 * self.a2)


ZERO = Eis(0, 0)
ONE = Eis(1, 0)
ZETA3 = Eis(0, 1)
LAMBDA = Eis(1, -1)  # 1 - w, the prime above 3
UNITS = (Eis(1, 0), Eis(0, 1), Eis(-1, -1), Eis(-1, 0), Eis(0, -1), Eis(1, 1))


def as_eis(x: Eis | int) -> Eis:
    if isinstance(x, Eis):
        return x
    if isinstance(x, int):
        return Eis(x, 0)
    raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")


# -- raw pair helpers ---------------------------------------------------------

def _mul(a1: int, a2: int, b1: int, b2: int) -> tuple[int, int]:
    t = a2 * b2
    return a1 * b1 - t, a1 * b2 + a2 * b1 - t


def _norm(a1: int, a2: int) -> int:
    return a1 * a1 - a1 * a2 + a2 * a2


def _round_half_down(x: int, n: int) -> int:
    """Nearest integer to x/n (n > 0), ties toward -infinity."""
    return -((n - 2 * x) // (2 * n))


def _divmod(a1: int, a2: int, b1: int, b2: int) -> tuple[int, int, int, int]:
    n = b1 * b1 - b1 * b2 + b2 * b2
    # a * conj(b), conj(b) = (b1 - b2) - b2 w
    c1 = b1 - b2
    t = a2 * -b2
    x1 = a1 * c1 - t
    x2 = -a1 * b2 + a2 * c1 - t
    q1 = -((n - 2 * x1) // (2 * n))
    q2 = -((n - 2 * x2) // (2 * n))
    t = q2 * b2
    return q1, q2, a1 - (q1 * b1 - t), a2 - (q1 * b2 + q2 * b1 - t)


def _mod(a1: int, a2: int, b1: int, b2: int) -> tuple[int, int]:
    _, _, r1, r2 = _divmod(a1, a2, b1, b2)
    return r1, r2


def _div_lambda(a1: int, a2: int) -> tuple[int, int]:
    # a / (1 - w) = a (2 + w) / 3
    return (2 * a1 - a2) // 3, (a1 + a2) // 3


def _is_one_mod3(a1: int, a2: int) -> bool:
    return a1 % 3 == 1 and a2 % 3 == 0


# unit index u with UNITS[u] * a = 1 (mod 3), keyed by (a1 % 3, a2 % 3)
_PRIMARY_UNIT: dict[tuple[int, int], int] = {}
for _i, _u in enumerate(UNITS):
    for _r1 in range(3):
        for _r2 in range(3):
            _p1, _p2 = _mul(_u.a1, _u.a2, _r1, _r2)
            if _p1 % 3 == 1 and _p2 % 3 == 0:
                _PRIMARY_UNIT[(_r1, _r2)] = _i


# -- public operations --------------------------------------------------------

def eis_mul(a: Eis, b: Eis) -> Eis:
    return a * b


def eis_conj(a: Eis) -> Eis:
    """Image under w -> w^2."""
    return Eis(a.a1 - a.a2, -a.a2)


def eis_norm(a: Eis) -> int:
    return _norm(a.a1, a.a2)


def eis_divmod(a: Eis, b: Eis) -> tuple[Eis, Eis]:
    """Euclidean division ``a = q*b + r`` with ``N(r) < N(b)``.

    The quotient rounds both coordinates of ``a*conj(b)/N(b)`` to the nearest
    integer, ties toward negative infinity, so ``N(r) <= 3/4 N(b)``.
    """
    if not b:
        raise ZeroDivisionError("Eisenstein division by zero")
    q1, q2, r1, r2 = _divmod(a.a1, a.a2, b.a1, b.a2)
    return Eis(q1, q2), Eis(r1, r2)


def eis_mod(a: Eis, b: Eis) -> Eis:
    return eis_divmod(a, b)[1]


def eis_exact_div(a: Eis, b: Eis) -> Eis:
    q, r = eis_divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def divides(b: Eis, a: Eis) -> bool:
    if not b:
        return not a
    return not eis_divmod(a, b)[1]


def is_primary(a: Eis) -> bool:
    return a.a2 % 3 == 0 and a.a1 % 3 in (1, 2)


def coprime_to_3(a: Eis) -> bool:
    return (a.a1 + a.a2) % 3 != 0


def primary_associate(a: Eis) -> tuple[Eis, Eis]:
    """Return ``(mu, mu*a)`` with ``mu`` a unit and ``mu*a = 1 (mod 3)``."""
    if not coprime_to_3(a):
        raise ValueError(f"{a} is divisible by 1 - w and has no primary associate")
    mu = UNITS[_PRIMARY_UNIT[(a.a1 % 3, a.a2 % 3)]]
    return mu, mu * a


def canonical_associate(a: Eis) -> tuple[Eis, Eis]:
    """Deterministic representative of the associate class of ``a``.

    Elements coprime to 3 go to their associate ``= 1 (mod 3)``; the others
    (and zero) to the associate with lexicographically largest ``(a1, a2)``.
    """
    if coprime_to_3(a):
        return primary_associate(a)
    return max(((u, u * a) for u in UNITS), key=lambda t: (t[1].a1, t[1].a2))


def eis_gcd_ext(a: Eis, b: Eis) -> tuple[Eis, Eis, Eis]:
    """Extended Euclid: ``g = a*x + b*y`` with ``g`` canonically normalized."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = (a.a1, a.a2), (b.a1, b.a2)
    x0, x1 = (1, 0), (0, 0)
    y0, y1 = (0, 0), (1, 0)
    while r1 != (0, 0):
        q1, q2, m1, m2 = _divmod(*r0, *r1)
        r0, r1 = r1, (m1, m2)
        qx = _mul(q1, q2, *x1)
        x0, x1 = x1, (x0[0] - qx[0], x0[1] - qx[1])
        qy = _mul(q1, q2, *y1)
        y0, y1 = y1, (y0[0] - qy[0], y0[1] - qy[1])
    mu, g = canonical_associate(Eis(*r0))
    return g, mu * Eis(*x0), mu * Eis(*y0)


def eis_gcd(a: Eis, b: Eis) -> Eis:
    return eis_gcd_ext(a, b)[0]


def eis_inverse_mod(a: Eis, m: Eis) -> Eis:
    """Inverse of ``a`` modulo ``m``; raises if they are not coprime."""
    g, x, _ = eis_gcd_ext(a, m)
    if eis_norm(g) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    # g is a unit; fold its inverse into x
    return eis_mod(x * unit_inverse(g), m)


def unit_inverse(u: Eis) -> Eis:
    if eis_norm(u) != 1:
        raise ValueError(f"{u} is not a unit")
    return eis_conj(u)


@lru_cache(maxsize=4096)
def _cube_root_of_unity_mod(p: int) -> int:
    g = 2
    while True:
        t = pow(g, (p - 1) // 3, p)
        if t != 1:
            return t
        g += 1


def eis_prime_above(p: int) -> Eis:
    """Primary prime ``pi = 1 (mod 3)`` of norm ``p`` for a prime ``p = 1 (mod 3)``.

    Computed as ``gcd(p, c - w)`` where ``c`` is a nontrivial cube root of
    unity modulo ``p``.
    """
    if p % 3 != 1:
        raise ValueError(f"{p} is not 1 mod 3, so it does not split in Z[w]")
    c = _cube_root_of_unity_mod(p)
    pi = eis_gcd(Eis(p, 0), Eis(c, -1))
    if eis_norm(pi) != p:
        raise ValueError(f"{p} is not prime")
    return pi


@dataclass(frozen=True)
class EisFactorization:
    unit: Eis
    lambda_exp: int
    primes: tuple[tuple[Eis, int], ...]

    def expand(self) -> Eis:
        out = self.unit * LAMBDA ** self.lambda_exp
        for pi, e in self.primes:
            out = out * pi ** e
        return out


def _strip(a: Eis, pi: Eis) -> tuple[Eis, int]:
    e = 0
    while True:
        q1, q2, r1, r2 = _divmod(a.a1, a.a2, pi.a1, pi.a2)
        if r1 or r2:
            return a, e
        a = Eis(q1, q2)
        e += 1


def eis_factor(a: Eis) -> EisFactorization:
    """Factor ``a`` as ``unit * (1-w)^l * prod(pi^e)`` with primes ``= 1 (mod 3)``."""
    if not a:
        raise ValueError("cannot factor zero")
    lam = 0
    while (a.a1 + a.a2) % 3 == 0:
        a = Eis(*_div_lambda(a.a1, a.a2))
        lam += 1
    primes: list[tuple[Eis, int]] = []
    for p, k in sorted(factorint(eis_norm(a)).items()):
        if p % 3 == 2:
            q = Eis(-p, 0)
            a, e = _strip(a, q)
            primes.append((q, e))
        else:
            pi = eis_prime_above(p)
            for cand in (pi, eis_conj(pi)):
                a, e = _strip(a, cand)
                if e:
                    primes.append((cand, e))
    if eis_norm(a) != 1:
        raise ArithmeticError("factorization did not terminate in a unit")
    return EisFactorization(a, lam, tuple(primes))


# -- text grammar -------------------------------------------------------------

_INT_RE = re.compile(r"[+-]?\d+")


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class _Scanner:
    """Recursive-descent reader for nested integer pairs; errors point at the offending character."""

    def __init__(self, text: str, what: str):
        self.text, self.pos, self.what = text, 0, what

    def fail(self, expected: str) -> ParseError:
        found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
        return ParseError(self.text, self.pos, f"malformed {self.what}: expected {expected}, found {found}")

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def char(self, c: str) -> None:
        self.skip()
        if not self.text.startswith(c, self.pos):
            raise self.fail(repr(c))
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            raise self.fail("an integer")
        self.pos = m.end()
        return int(m.group())

    def pair(self, item):
        self.char("(")
        a = item()
        self.char(",")
        b = item()
        self.char(")")
        return a, b

    def end(self) -> None:
        self.skip()
        if self.pos != len(self.text):
            raise self.fail("end of input")


def parse_eis(text: str) -> Eis:
    """Parse ``(a1,a2)``."""
    sc = _Scanner(text, "Eisenstein literal (a1,a2)")
    a1, a2 = sc.pair(sc.integer)
    sc.end()
    return Eis(a1, a2)


def format_eis(a: Eis) -> str:
    return f"({a.a1},{a.a2})"
