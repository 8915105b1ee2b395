"""Numerical experiments: spin sums, cube proportion, lambda_3, Poisson, Polya-Vinogradov."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np
from scipy import special
from sympy import factorint

from .cubic import ROOTS, ZERO_VALUE, chi_prime, symbol_exponents
from .eisenstein import Eis, eis_exact_div, eis_factor, eis_norm
from .primes import PrimeIdealRecord, prime_above, prime_ideals_up_to
from .spin import spin_ideal
from .zeta12 import Z12, rel_norm


# -- spin sums ---------------------------------------------------------------------

@dataclass(frozen=True)
class SpinSumReport:
    x: int
    c1: int
    cw: int
    cw2: int
    zeros: int
    total: int

    @property
    def re_s(self) -> float:
        return self.c1 - (self.cw + self.cw2) / 2

    @property
    def im_s(self) -> float:
        return math.sqrt(3) / 2 * (self.cw - self.cw2)

    @property
    def abs_s(self) -> float:
        return math.hypot(self.re_s, self.im_s)

    @property
    def is_real(self) -> bool:
        return self.cw == self.cw2


@dataclass(frozen=True)
class CubePropReport:
    x: int
    hits: int
    total: int

    @property
    def ratio(self) -> float:
        return self.hits / self.total if self.total else float("nan")


def default_checkpoints(x: int) -> list[int]:
    pts = [10 ** k for k in range(1, 20) if 10 ** k < x]
    return pts + [x]


def scan(
    x: int,
    checkpoints: Sequence[int] | None = None,
    workers: int = 1,
    records: Iterable[PrimeIdealRecord] | None = None,
) -> tuple[list[SpinSumReport], list[CubePropReport]]:
    """One pass over the prime ideals of norm <= x feeding both experiments.

    Spin values are tallied as exact root counts.  For the cube proportion each
    Eisenstein prime pi = r^2 + s^2 of degree-one type is counted once, using
    the first record of its orbit that represents it.
    """
    cps = sorted(set(checkpoints or default_checkpoints(x)))
    if cps[-1] > x:
        raise ValueError("checkpoints must not exceed x")
    counts = [0, 0, 0]
    zeros = total = hits = pis = 0
    spins: list[SpinSumReport] = []
    cubes: list[CubePropReport] = []
    ci = 0
    seen: set[Eis] = set()
    last_p = 0
    stream = records if records is not None else prime_ideals_up_to(x, workers)

    def flush(upto: int) -> None:
        nonlocal ci
        while ci < len(cps) and cps[ci] < upto:
            spins.append(SpinSumReport(cps[ci], *counts, zeros, total))
            cubes.append(CubePropReport(cps[ci], hits, pis))
            ci += 1

    for rec in stream:
        flush(rec.norm)
        if ci == len(cps):
            break
        total += 1
        if rec.spin.is_zero:
            zeros += 1
        else:
            counts[rec.spin.k] += 1
        if rec.f == 1:
            if rec.p != last_p:
                seen.clear()
                last_p = rec.p
            pi = rel_norm(rec.gen)
            if pi not in seen:
                seen.add(pi)
                pis += 1
                hits += chi_prime(rec.gen.r, pi) == ROOTS[0]
    flush(x + 1)
    return spins, cubes


def spin_sum(x: int, checkpoints: Sequence[int] | None = None, workers: int = 1) -> list[SpinSumReport]:
    return scan(x, checkpoints, workers)[0]


def cube_proportion(x: int, workers: int = 1) -> tuple[int, int, float]:
    """(hits, total, ratio) for primes pi = r^2 + s^2 of norm <= x with r a cube mod pi."""
    if x < 13:
        raise ValueError("x must be at least 13")
    rep = scan(x, [x], workers)[1][-1]
    return rep.hits, rep.total, rep.ratio


# -- lambda_3 ----------------------------------------------------------------------

def _compositions(k: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        yield (k,)
        return
    for i in range(k + 1):
        for rest in _compositions(k - i, parts - 1):
            yield (i, *rest)


def ideals_of_norm(n: int) -> list[Z12 | None]:
    """Generators of all ideals of norm ``n`` (None marks ideals containing the prime above 3)."""
    if n < 1:
        raise ValueError("n must be positive")
    choices: list[list[Z12 | None]] = []
    for p, k in sorted(factorint(n).items()):
        recs = prime_above(p)
        f = recs[0].f
        if k % f:
            return []
        local = []
        for exps in _compositions(k // f, len(recs)):
            g: Z12 | None = Z12(Eis(1))
            for rec, e in zip(recs, exps):
                if e == 0:
                    continue
                g = None if rec.gen is None or g is None else g * rec.gen ** e
            local.append(g)
        choices.append(local)
    out = []
    for combo in product(*choices):
        g: Z12 | None = Z12(Eis(1))
        for c in combo:
            g = None if c is None or g is None else g * c
        out.append(g)
    return out


def lambda3_counts(n: int) -> tuple[int, int, int]:
    """Root counts (c1, cw, cw2) of the spins of the ideals of norm ``n``."""
    counts = [0, 0, 0]
    for g in ideals_of_norm(n):
        v = ZERO_VALUE if g is None else spin_ideal(g)
        if not v.is_zero:
            counts[v.k] += 1
    return counts[0], counts[1], counts[2]


def lambda3(n: int) -> complex:
    c1, cw, cw2 = lambda3_counts(n)
    return complex(c1 - (cw + cw2) / 2, math.sqrt(3) / 2 * (cw - cw2))


def format_counts(c1: int, cw: int, cw2: int) -> str:
    """An integer when the value is real, else ``c1 + cw*w + cw2*w^2``."""
    if cw == cw2:
        return str(c1 - cw)
    return f"{c1}+{cw}*w+{cw2}*w^2"


# -- residues ----------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueSystem:
    """Representatives x + y*w (0 <= x < n1, 0 <= y < n2) of Z[w]/m.

    ``(t, n2)`` is a lattice vector of m*Z[w] used to reduce the second coordinate.
    """

    m: Eis
    n1: int
    n2: int
    t: int

    @classmethod
    def of(cls, m: Eis) -> ResidueSystem:
        n = eis_norm(m)
        if n == 0:
            raise ValueError("modulus must be nonzero")
        # basis of m*Z[w] in (a1, a2) coordinates: m and m*w
        b1 = (m.a1, m.a2)
        b2 = (-m.a2, m.a1 - m.a2)
        g, u, v = _ext_gcd(b1[1], b2[1])
        t = u * b1[0] + v * b2[0]
        n2 = g
        n1 = n // n2
        return cls(m, n1, n2, t % n1)

    @property
    def size(self) -> int:
        return self.n1 * self.n2

    def reps(self) -> tuple[np.ndarray, np.ndarray]:
        y, x = np.divmod(np.arange(self.size, dtype=np.int64), self.n1)
        return x, y

    def index(self, a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
        k, y = np.divmod(a2, self.n2)
        x = (a1 - k * self.t) % self.n1
        return y * self.n1 + x


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def symbol_table(q: Eis) -> tuple[ResidueSystem, np.ndarray]:
    """[x/q] for every residue, as exponents with -1 meaning 0."""
    rs = ResidueSystem.of(q)
    x, y = rs.reps()
    return rs, symbol_exponents(x, y, np.full_like(x, q.a1), np.full_like(x, q.a2))


# -- smooth window ---------------------------------------------------------------------

def bump(r2: np.ndarray) -> np.ndarray:
    """exp(-1/(1 - r^2)) on the open unit disc, 0 outside; argument is r^2."""
    r2 = np.asarray(r2, dtype=float)
    out = np.zeros_like(r2)
    inside = r2 < 1
    out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
    return out


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _hankel(rho: float, panels: int) -> float:
    edges = np.linspace(0.0, 1.0, panels + 1)
    mid = (edges[1:] + edges[:-1]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    r = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    f = bump(r * r) * special.j0(2 * math.pi * rho * r) * r
    return 2 * math.pi * math.fsum(w * f)


@lru_cache(maxsize=None)
def bump_hat(rho: float, tol: float = 1e-15) -> float:
    """Fourier transform of the bump at radius ``rho`` (it is real and radial).

    Composite 20-point Gauss-Legendre over panels of a quarter oscillation;
    the panel count doubles until two successive values agree to ``tol``.
    """
    panels = 8 + 4 * math.ceil(rho)
    prev = _hankel(rho, panels)
    for _ in range(6):
        panels *= 2
        cur = _hankel(rho, panels)
        if abs(cur - prev) <= tol:
            return cur
        prev = cur
    raise ArithmeticError(f"bump transform at rho={rho} did not converge")


def _window_points(x0: float, y0: float, K: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a1 = np.arange(math.floor(x0 - K), math.ceil(x0 + K) + 1, dtype=np.int64)
    a2 = np.arange(math.floor(y0 - K), math.ceil(y0 + K) + 1, dtype=np.int64)
    A1, A2 = np.meshgrid(a1, a2, indexing="ij")
    r2 = ((A1 - x0) ** 2 + (A2 - y0) ** 2) / (K * K)
    keep = r2 < 1
    return A1[keep], A2[keep], bump(r2[keep])


# -- truncated Poisson summation -----------------------------------------------------

@dataclass(frozen=True)
class PoissonWindow:
    K: float
    x0: float
    y0: float
    q: Eis
    beta: Eis


@dataclass(frozen=True)
class DualTerm:
    h1: int
    h2: int
    c: complex
    char: complex  # psi_q^{(h1,h2)}(-beta)


@dataclass(frozen=True)
class PoissonResult:
    lhs: float
    main: float
    dual: float
    abs_err: float
    H: int
    terms: int

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.lhs) if self.lhs else self.abs_err


def default_H(K: float, qnorm: int, eps: float = 0.1) -> float:
    return K ** (eps / 2) * math.sqrt(qnorm) / K


def additive_character(q: Eis, h1: int, h2: int, beta: Eis) -> complex:
    """psi_q^{(h1,h2)}(beta) = e_N(h1 (beta q^bar)^(1) + h2 (beta q^bar)^(2))."""
    n = eis_norm(q)
    bq = beta * q.conj()
    return cmath.exp(2j * math.pi * ((h1 * bq.a1 + h2 * bq.a2) % n) / n)


def dual_terms(win: PoissonWindow, H: int, tol: float = 1e-15) -> list[DualTerm]:
    """c_h psi_q^h(-beta) for 0 < max(|h1|,|h2|) <= H, skipping xi in Z^2.

    With A the matrix of multiplication by q in (a1, a2) coordinates,
    c_h = e(A^{-T}h . center) * bump_hat(K |A^{-T}h|).
    """
    q, n, K = win.q, eis_norm(win.q), win.K
    # A = [[q1, -q2], [q2, q1 - q2]]; N * A^{-T} = [[q1 - q2, -q2], [q2, q1]]
    q1, q2 = q.a1, q.a2
    out = []
    for h1 in range(-H, H + 1):
        for h2 in range(-H, H + 1):
            if h1 == 0 and h2 == 0:
                continue
            m1, m2 = (q1 - q2) * h1 - q2 * h2, q2 * h1 + q1 * h2
            if m1 % n == 0 and m2 % n == 0:
                # xi in the dual of Z[w]: already inside the full-lattice main term
                continue
            xi1, xi2 = m1 / n, m2 / n
            rho = K * math.hypot(xi1, xi2)
            amp = bump_hat(round(rho, 12), tol)
            phase = cmath.exp(2j * math.pi * (xi1 * win.x0 + xi2 * win.y0))
            out.append(DualTerm(h1, h2, phase * amp, additive_character(q, h1, h2, -win.beta)))
    return out


def poisson_check(win: PoissonWindow, H_override: int | None = None, eps: float = 0.1) -> PoissonResult:
    """Compare both sides of truncated Poisson summation over beta + qZ[w]."""
    if win.K < 10:
        raise ValueError("K must be at least 10")
    n = eis_norm(win.q)
    H = H_override if H_override is not None else math.floor(default_H(win.K, n, eps))
    a1, a2, g = _window_points(win.x0, win.y0, win.K)
    main = math.fsum(g) / n
    rs = ResidueSystem.of(win.q)
    target = rs.index(np.array([win.beta.a1]), np.array([win.beta.a2]))[0]
    lhs = math.fsum(g[rs.index(a1, a2) == target])
    scale = win.K ** 2 / n

    def dual_at(tol: float) -> float:
        terms = dual_terms(win, H, tol)
        return scale * sum(t.c * t.char for t in terms).real

    dual = dual_at(1e-12)
    finer = dual_at(1e-15)
    if abs(finer - dual) > 1e-8 * max(abs(finer), abs(lhs)):
        raise ArithmeticError("dual sum did not stabilize under quadrature refinement")
    terms = len(dual_terms(win, H)) if H > 0 else 0
    return PoissonResult(lhs, main, finer, abs(lhs - main - finer), H, terms)


# -- Polya-Vinogradov scan ----------------------------------------------------------------

def is_cube_up_to_unit(q: Eis) -> bool:
    fac = eis_factor(q)
    return fac.lambda_exp % 3 == 0 and all(e % 3 == 0 for _, e in fac.primes)


def is_rational_primitive(q: Eis) -> bool:
    return math.gcd(q.a1, q.a2) == 1


def default_centers(qnorm: int, K: float, count: int = 4, rng: np.random.Generator | None = None) -> list[tuple[float, float]]:
    rng = rng or np.random.Generator(np.random.Philox(0))
    span = math.sqrt(qnorm)
    return [(float(rng.uniform(-span, span)), float(rng.uniform(-span, span))) for _ in range(count)]


def pv_scan(q: Eis, K: float, centers: Sequence[tuple[float, float]]) -> float:
    """max over centers and classes t mod 3 of |sum_{s = t (3)} G_K(s)[s/q]| / sqrt(N(q))."""
    if is_cube_up_to_unit(q):
        raise ValueError(f"{q} is a unit times a cube")
    rs, table = symbol_table(q)
    roots = np.array([1, cmath.exp(2j * math.pi / 3), cmath.exp(4j * math.pi / 3), 0])
    best = 0.0
    for x0, y0 in centers:
        a1, a2, g = _window_points(x0, y0, K)
        chi = roots[table[rs.index(a1, a2)]]
        cls = (a1 % 3) * 3 + (a2 % 3)
        t_re = np.bincount(cls, weights=g * chi.real, minlength=9)
        t_im = np.bincount(cls, weights=g * chi.imag, minlength=9)
        best = max(best, float(np.max(np.hypot(t_re, t_im))))
    return best / math.sqrt(eis_norm(q))


def pv_envelope(qnorm: int) -> float:
    return 10 * math.log(qnorm) ** 2


# -- Gauss sums -------------------------------------------------------------------

# (Z[w]/3)^x is represented by the units; -w generates it
_GEN3 = Eis(0, -1)
_UNIT_LOG3 = {}
_u = Eis(1)
for _j in range(6):
    _UNIT_LOG3[(_u.a1 % 3, _u.a2 % 3)] = _j
    _u = _u * _GEN3


def char_mod3(twist: int, beta: Eis) -> complex:
    """Multiplicative character of Z[w]/3 with chi(-w) = e(twist/6), zero on non-units."""
    j = _UNIT_LOG3.get((beta.a1 % 3, beta.a2 % 3))
    if j is None:
        return 0.0
    return cmath.exp(2j * math.pi * twist * j / 6)


def _char_exponent(m: Eis, h1: int, h2: int, beta: Eis) -> int:
    bq = beta * m.conj()
    return (h1 * bq.a1 + h2 * bq.a2) % eis_norm(m)


def is_primitive_additive(m: Eis, h1: int, h2: int) -> bool:
    """Whether psi_m^{(h1,h2)} is nontrivial on (m/pi)/(m) for every prime pi | m."""
    fac = eis_factor(m)
    primes = [p for p, _ in fac.primes] + ([Eis(1, -1)] if fac.lambda_exp else [])
    for p in primes:
        g = eis_exact_div(m, p)
        if all(_char_exponent(m, h1, h2, b) == 0 for b in (g, g * Eis(0, 1))):
            return False
    return True


def gauss_sum(q: Eis, h1: int, h2: int, twist: int = 1, cap: int = 10 ** 6) -> float:
    """|sum_{beta mod 3q} [beta/q] psi_{3q}^{(h1,h2)}(-beta) chi_twist(beta)|."""
    m = q * 3
    n = eis_norm(m)
    if n > cap:
        raise ValueError(f"modulus of norm {n} exceeds the enumeration cap {cap}")
    rs = ResidueSystem.of(m)
    x, y = rs.reps()
    sym = symbol_exponents(x, y, np.full_like(x, q.a1), np.full_like(x, q.a2))
    roots = np.array([1, cmath.exp(2j * math.pi / 3), cmath.exp(4j * math.pi / 3), 0])
    # (beta * conj(m)) coordinates
    c1, c2 = m.a1 - m.a2, -m.a2
    b1 = x * c1 - y * c2
    b2 = y * c1 + x * c2 - y * c2
    phase = np.exp(-2j * math.pi * ((h1 * b1 + h2 * b2) % n) / n)
    tw = np.array([char_mod3(twist, Eis(int(a), int(b))) for a, b in product(range(3), range(3))])
    chi3 = tw[(x % 3) * 3 + (y % 3)]
    total = np.sum(roots[sym] * phase * chi3)
    return float(abs(total))
