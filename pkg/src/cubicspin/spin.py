"""Cubic spin of elements and ideals of Z[zeta12], and the symbol (z/w)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cubic import ZERO_VALUE, CubicValue, cubic_symbol
from .eisenstein import (
    Eis,
    eis_exact_div,
    eis_factor,
    eis_gcd,
    eis_inverse_mod,
    eis_mod,
    eis_norm,
)
from .zeta12 import (
    Z12,
    canonical_generator,
    coprime_to_3,
    is_primary,
    rel_norm,
    z12_galois,
    z12_gcd,
)


class PreconditionError(ValueError):
    """Inputs fall outside the hypotheses of an identity (not a failure of it)."""


def is_primitive(z: Z12) -> bool:
    if not z.r and not z.s:
        return False
    if not z.r or not z.s:
        return eis_norm(z.r or z.s) == 1
    return eis_norm(eis_gcd(z.r, z.s)) == 1


def spin_raw(z: Z12) -> CubicValue:
    """[s/r] for primary ``z = r + i*s``."""
    if not is_primary(z):
        raise ValueError(f"{z} is not primary")
    return cubic_symbol(z.s, z.r)


def spin_ideal(z0: Z12) -> CubicValue:
    """Spin of the ideal (z0): zero unless it has a primary primitive generator."""
    if not z0:
        raise ValueError("the zero ideal has no spin")
    if not coprime_to_3(z0):
        return ZERO_VALUE
    z = canonical_generator(z0)
    if not is_primitive(z):
        return ZERO_VALUE
    return spin_raw(z)


# -- the symbol (z/w) ------------------------------------------------------------

@dataclass(frozen=True)
class SymbolContext:
    w: Z12
    q: Eis
    omega: Eis

    @classmethod
    def build(cls, w: Z12) -> SymbolContext:
        if not is_primary(w):
            raise PreconditionError(f"{w} is not primary")
        if not is_primitive(w):
            raise PreconditionError(f"{w} is not primitive")
        q = rel_norm(w)
        omega = eis_mod(-w.s * eis_inverse_mod(w.r, q), q)
        assert not eis_mod(omega * omega + 1, q)
        return cls(w, q, omega)


def dirichlet_symbol(z: Z12, ctx: SymbolContext) -> CubicValue:
    """(z/w) = [(r + omega*s)/q]."""
    return cubic_symbol(eis_mod(z.r + ctx.omega * z.s, ctx.q), ctx.q)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: dict = field(default_factory=dict)


def check_twisted_mult(w: Z12, z: Z12) -> CheckResult:
    """[wz] = [w][z](z/w) for primary ``w``, ``z`` with ``w`` primitive."""
    if not is_primary(z):
        raise PreconditionError(f"{z} is not primary")
    ctx = SymbolContext.build(w)
    lhs = spin_raw(w * z)
    sw, sz, sym = spin_raw(w), spin_raw(z), dirichlet_symbol(z, ctx)
    ok = lhs == sw * sz * sym
    witness = {} if ok else {
        "w": str(w), "z": str(z), "wz": str(lhs), "w_spin": str(sw), "z_spin": str(sz), "symbol": str(sym),
    }
    return CheckResult(ok, witness)


# -- pair symbol -------------------------------------------------------------------

def _hensel_root(seed: Eis, pi: Eis, k: int) -> Eis:
    """Lift a root of x^2 + 1 modulo ``pi`` to one modulo ``pi^k``."""
    m = pi
    x = eis_mod(seed, pi)
    if eis_mod(x * x + 1, pi):
        raise PreconditionError(f"{seed} is not a root of x^2+1 mod {pi}")
    mod = pi ** k
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        m = pi ** prec
        x = eis_mod(x - (x * x + 1) * eis_inverse_mod(2 * x, m), m)
    return eis_mod(x, mod)


def _crt(residues: list[tuple[Eis, Eis]]) -> tuple[Eis, Eis]:
    x, m = Eis(0), Eis(1)
    for a, n in residues:
        # x + m*t = a (mod n)
        t = eis_mod((a - x) * eis_inverse_mod(m, n), n)
        x, m = x + m * t, m * n
        x = eis_mod(x, m)
    return x, m


@dataclass(frozen=True)
class PairSymbolContext:
    w1: Z12
    w2: Z12
    q1: Eis
    q2: Eis
    e: Z12
    d: Eis
    omega: Eis
    crt_consistent: bool

    @property
    def modulus(self) -> Eis:
        return self.q1 * self.q2 * self.q2

    @classmethod
    def build(cls, w1: Z12, w2: Z12) -> PairSymbolContext:
        c1, c2 = SymbolContext.build(w1), SymbolContext.build(w2)
        q1, q2 = c1.q, c2.q
        e = z12_gcd(w1, z12_galois(w2 * w2, "sigma"))
        d = rel_norm(e)
        big = q1 * q2 * q2
        prod = w1 * w2 * w2
        try:
            W = Z12(eis_exact_div(prod.r, d), eis_exact_div(prod.s, d))
        except ArithmeticError:
            raise PreconditionError("d does not divide w1*w2^2") from None
        cw = SymbolContext.build(W)
        # omega = omega_W on q1*q2^2/d^2, any compatible root on the rest
        parts = []
        for pi, k in eis_factor(big).primes:
            if eis_norm(pi) == 4:
                raise PreconditionError("modulus divisible by 2: x^2+1 does not lift")
            if not eis_mod(cw.q, pi):
                seed = cw.omega
            elif not eis_mod(q1, pi):
                seed = c1.omega
            else:
                seed = c2.omega
            parts.append((_hensel_root(seed, pi, k), pi ** k))
        omega, _ = _crt(parts)
        omega = eis_mod(omega, big)
        assert not eis_mod(omega * omega + 1, big)
        assert not eis_mod(omega - cw.omega, cw.q)
        consistent = not eis_mod(omega - c1.omega, q1)
        return cls(w1, w2, q1, q2, e, d, omega, consistent)


def pair_symbol_eval(ctx: PairSymbolContext, zeta: Z12) -> CubicValue:
    """[(r - omega s)/d] [(r + omega s)/(q1 q2^2/d)]."""
    if not is_primary(zeta):
        raise PreconditionError(f"{zeta} is not primary")
    r, s, om = zeta.r, zeta.s, ctx.omega
    rest = eis_exact_div(ctx.modulus, ctx.d)
    return cubic_symbol(eis_mod(r - om * s, ctx.d), ctx.d) * cubic_symbol(eis_mod(r + om * s, rest), rest)


def check_pair_symbol(w1: Z12, w2: Z12, zeta: Z12) -> CheckResult:
    ctx = PairSymbolContext.build(w1, w2)
    lhs = dirichlet_symbol(zeta, SymbolContext.build(w1)) * dirichlet_symbol(zeta, SymbolContext.build(w2)) ** 2
    rhs = pair_symbol_eval(ctx, zeta)
    witness = {"crt_consistent": ctx.crt_consistent, "d_norm": eis_norm(ctx.d)}
    if lhs != rhs:
        witness.update(w1=str(w1), w2=str(w2), zeta=str(zeta), lhs=str(lhs), rhs=str(rhs), omega=str(ctx.omega))
    return CheckResult(lhs == rhs, witness)


# -- splitting lemma ---------------------------------------------------------------

def check_splitting(z1: Z12, z2: Z12) -> CheckResult:
    """[z2 z1^-1 / Delta] = [s1/r1]^2 [s2/r2] with Delta = r1 s2 - r2 s1."""
    for z in (z1, z2):
        if not is_primary(z):
            raise PreconditionError(f"{z} is not primary")
        if not is_primitive(z):
            raise PreconditionError(f"{z} is not primitive")
    diff = z1 - z2
    if any(c % 9 for c in diff.coeffs):
        raise PreconditionError("z1 and z2 are not congruent mod 9")
    r1, s1, r2, s2 = z1.r, z1.s, z2.r, z2.s
    delta = r1 * s2 - r2 * s1
    if not delta:
        raise PreconditionError("Delta = 0")
    if eis_norm(rel_norm(z12_gcd(z1, z2))) != 1:
        raise PreconditionError("z1 and z2 are not coprime")
    if eis_norm(eis_gcd(r1, r2)) != 1:
        raise PreconditionError("r1 and r2 are not coprime")
    try:
        inv = eis_inverse_mod(r1 * r1 + s1 * s1, delta)
    except ValueError:
        raise PreconditionError("r1^2 + s1^2 is not invertible mod Delta") from None
    lhs = cubic_symbol(eis_mod(inv * (r1 * r2 + s1 * s2), delta), delta)
    rhs = spin_raw(z1) ** 2 * spin_raw(z2)
    witness = {} if lhs == rhs else {"z1": str(z1), "z2": str(z2), "lhs": str(lhs), "rhs": str(rhs)}
    return CheckResult(lhs == rhs, witness)

