"""Seeded randomized checks of the symbol identities, reported as JSON-ready dicts.

Every sample draws from its own Philox stream keyed by (seed, suite, index), so
a failing sample can be replayed alone and the order of evaluation is irrelevant.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Callable

import numpy as np

from .cubic import ROOTS, cubic_symbol, epsilon_factor, supplementary_epsilon
from .eisenstein import LAMBDA, ZETA3, Eis, coprime_to_3, eis_norm, primary_associate
from .spin import (
    PreconditionError,
    check_pair_symbol,
    check_splitting,
    check_twisted_mult,
    is_primitive,
    spin_ideal,
    spin_raw,
)
from .zeta12 import (
    EPS0,
    I12,
    PRIMARY_UNIT,
    ZETA12,
    Z12,
    abs2_exact,
    canonical_generator,
    coprime_to_3 as coprime_to_3_12,
    in_box,
    is_one_mod3,
    primary_associate12,
    residue_mod3,
    z12_galois,
)

SUITES = ("reciprocity", "twist", "units", "pairsymbol", "splitting", "fixing")
_TAGS = {name: k + 1 for k, name in enumerate(SUITES)}
DEFAULT_SEED = 42
DEFAULT_NORM_BOUND = 2500
MAX_TRIES = 10_000


def sample_rng(seed: int, suite: str, index: int) -> np.random.Generator:
    key = np.array([seed & (2 ** 64 - 1), (_TAGS[suite] << 40) | index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _coeffs(rng: np.random.Generator, bound: int, k: int) -> list[int]:
    return [int(v) for v in rng.integers(-bound, bound + 1, k)]


def random_primary_eis(rng: np.random.Generator, norm_bound: int) -> Eis:
    b = math.isqrt(4 * norm_bound // 3)
    while True:
        a = Eis(*_coeffs(rng, b, 2))
        if 0 < eis_norm(a) <= norm_bound and coprime_to_3(a):
            a = primary_associate(a)[1]
            return a if rng.integers(2) else -a


def random_primary12(rng: np.random.Generator, bound: int, primitive: bool = False) -> Z12:
    while True:
        z = Z12.from_coeffs(*_coeffs(rng, bound, 4))
        if not coprime_to_3_12(z):
            continue
        z = primary_associate12(z)[1]
        if primitive and not is_primitive(z):
            continue
        return z if rng.integers(2) else -z


def _run(suite: str, samples: int, seed: int, one: Callable[[np.random.Generator], tuple[bool, dict, str | None]]) -> dict:
    failures = 0
    first = None
    info: Counter = Counter()
    for i in range(samples):
        ok, witness, tag = one(sample_rng(seed, suite, i))
        if tag:
            info[tag] += 1
        if not ok:
            failures += 1
            if first is None:
                first = {"index": i, **witness}
    return {"suite": suite, "seed": seed, "samples": samples, "failures": failures,
            "first_witness": first, "info": dict(sorted(info.items()))}


def _retry(draw: Callable[[], tuple[bool, dict, str | None]]) -> tuple[bool, dict, str | None]:
    skipped = 0
    for _ in range(MAX_TRIES):
        try:
            return draw()
        except PreconditionError:
            skipped += 1
    raise RuntimeError("sampler could not meet the preconditions")


# -- suites ----------------------------------------------------------------------

def suite_reciprocity(samples: int, norm_bound: int, seed: int) -> dict:
    """[a/b] = [b/a] for coprime primary a, b; supplementary laws; 9-periodicity."""

    def one(rng):
        a = random_primary_eis(rng, norm_bound)
        while True:
            b = random_primary_eis(rng, norm_bound)
            if not cubic_symbol(a, b).is_zero:
                break
        ok = cubic_symbol(a, b) == cubic_symbol(b, a)
        sup = {k: epsilon_factor(u, a) == supplementary_epsilon(k, a)
               for k, u in (("zeta3", ZETA3), ("lambda", LAMBDA), ("three", Eis(3)))}
        c = Eis(*_coeffs(rng, 20, 2))
        a9 = a + 9 * c
        per = epsilon_factor(ZETA3, a9) == epsilon_factor(ZETA3, a) and \
            epsilon_factor(LAMBDA, a9) == epsilon_factor(LAMBDA, a)
        good = ok and all(sup.values()) and per
        witness = {} if good else {"a": str(a), "b": str(b), "reciprocity": ok, "supplementary": sup, "periodic": per}
        return good, witness, None

    return _run("reciprocity", samples, seed, one)


def suite_twist(samples: int, norm_bound: int, seed: int) -> dict:
    bound = math.isqrt(norm_bound)

    def one(rng):
        w = random_primary12(rng, bound, primitive=True)
        z = random_primary12(rng, bound)
        res = check_twisted_mult(w, z)
        return res.ok, res.witness, "z_primitive" if is_primitive(z) else "z_non_primitive"

    return _run("twist", samples, seed, one)


def unit_checks() -> list[tuple[str, bool]]:
    """The unit facts behind the uniqueness of primary generators."""
    checks = [
        ("-i*eps0^6 = 1 (mod 3)", is_one_mod3(PRIMARY_UNIT)),
        ("i*eps0^6 = 26 - i(15+30w)", I12 * EPS0 ** 6 == Z12.from_coeffs(26, 0, -15, -30)),
        # 26 + i(15+30w) is the sigma-conjugate, i.e. the inverse
        ("sigma(i*eps0^6) = 26 + i(15+30w)", z12_galois(I12 * EPS0 ** 6, "sigma") == Z12.from_coeffs(26, 0, 15, 30)),
        ("[i*eps0^6] = 1", spin_raw(I12 * EPS0 ** 6) == ROOTS[0]),
        ("[-i*eps0^6] = 1", spin_raw(PRIMARY_UNIT) == ROOTS[0]),
        ("eps0^2 = (1+2w) + 2i", EPS0 ** 2 == Z12.from_coeffs(1, 2, 2, 0)),
    ]
    bad = {residue_mod3(u) for u in (Z12(Eis(1)), Z12(Eis(-1)), I12, -I12)}
    for k in range(1, 6):
        for l in range(3):
            u = EPS0 ** k * ZETA12 ** l
            checks.append((f"eps0^{k} zeta12^{l} not in +-1, +-i (mod 3)", residue_mod3(u) not in bad))
    residues = {residue_mod3(ZETA12 ** l * EPS0 ** k) for l in range(12) for k in range(6)}
    checks.append(("zeta12^l eps0^k cover 72 classes mod 3", len(residues) == 72))
    return checks


def suite_units(samples: int, norm_bound: int, seed: int) -> dict:
    checks = unit_checks()
    failed = [name for name, ok in checks if not ok]
    return {"suite": "units", "seed": seed, "samples": len(checks), "failures": len(failed),
            "first_witness": {"check": failed[0]} if failed else None,
            "info": {name: ok for name, ok in checks}}


def suite_pairsymbol(samples: int, norm_bound: int, seed: int) -> dict:
    """Pairs are independent, share a conjugate factor, or share a factor."""
    bound = max(2, math.isqrt(math.isqrt(norm_bound)))

    def one(rng):
        mode = int(rng.integers(3))

        def draw():
            w2 = random_primary12(rng, bound, primitive=True)
            c = random_primary12(rng, 3, primitive=True)
            if mode == 0:
                w1 = random_primary12(rng, bound, primitive=True)
            elif mode == 1:
                w1 = z12_galois(w2, "sigma") * c
            else:
                w1 = w2 * c
            if not is_primitive(w1):
                raise PreconditionError("w1 not primitive")
            zeta = random_primary12(rng, 4 * bound)
            res = check_pair_symbol(w1, w2, zeta)
            d_tag = "d_unit" if res.witness["d_norm"] == 1 else "d_nontrivial"
            crt = "crt_root" if res.witness["crt_consistent"] else "non_crt_root"
            return res.ok, res.witness, f"{d_tag}/{crt}"

        return _retry(draw)

    return _run("pairsymbol", samples, seed, one)


def suite_splitting(samples: int, norm_bound: int, seed: int) -> dict:
    bound = math.isqrt(norm_bound)

    def one(rng):
        def draw():
            z1 = random_primary12(rng, bound, primitive=True)
            off = Z12.from_coeffs(*_coeffs(rng, max(1, bound // 9), 4))
            res = check_splitting(z1, z1 + 9 * off)
            return res.ok, res.witness, None

        return _retry(draw)

    return _run("splitting", samples, seed, one)


UNIT_WINDOW = [s * ZETA12 ** a * EPS0 ** b for s in (1, -1) for a in range(12) for b in range(-3, 4)]


def suite_fixing(samples: int, norm_bound: int, seed: int) -> dict:
    """Unique generator in the box, |r|,|s| <= 2|z|, spin constant on unit orbits."""
    bound = math.isqrt(norm_bound)

    def one(rng):
        while True:
            z0 = Z12.from_coeffs(*_coeffs(rng, bound, 4))
            if coprime_to_3_12(z0):
                break
        z = canonical_generator(z0)
        _, base = primary_associate12(z0)
        hits = sum(in_box(PRIMARY_UNIT ** k * base) for k in range(-5, 6))
        # |r|^2 = N3(r) <= 4|z|^2 exactly in Z[sqrt 3]
        a2 = abs2_exact(z)
        envelope = a2 * 4 - eis_norm(z.r) >= 0 and a2 * 4 - eis_norm(z.s) >= 0
        s0 = spin_ideal(z0)
        invariant = all(spin_ideal(u * z0) == s0 for u in UNIT_WINDOW)
        # the primary associates themselves carry the same raw spin
        sb = spin_raw(base)
        invariant = invariant and all(spin_raw(s * PRIMARY_UNIT ** k * base) == sb for s in (1, -1) for k in range(-3, 4))
        invariant = invariant and (s0 == sb if is_primitive(base) else s0.is_zero)
        canon = all(canonical_generator(u * z0) == z for u in UNIT_WINDOW[::13])
        ok = hits == 1 and envelope and invariant and canon and is_one_mod3(z) and in_box(z)
        witness = {} if ok else {"z0": str(z0), "z": str(z), "box_hits": hits, "envelope": envelope,
                                 "spin_invariant": invariant, "canonical_invariant": canon}
        return ok, witness, None

    return _run("fixing", samples, seed, one)


RUNNERS = {
    "reciprocity": suite_reciprocity,
    "twist": suite_twist,
    "units": suite_units,
    "pairsymbol": suite_pairsymbol,
    "splitting": suite_splitting,
    "fixing": suite_fixing,
}


def run_suite(name: str, samples: int = 1000, norm_bound: int = DEFAULT_NORM_BOUND, seed: int = DEFAULT_SEED) -> list[dict]:
    names = SUITES if name == "all" else (name,)
    if any(n not in RUNNERS for n in names):
        raise ValueError(f"unknown suite {name!r}")
    return [RUNNERS[n](samples, norm_bound, seed) for n in names]
