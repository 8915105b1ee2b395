import math
from itertools import product

import numpy as np
import pytest
from scipy import integrate

from cubicspin.analysis import (
    PoissonWindow,
    ResidueSystem,
    bump,
    bump_hat,
    cube_proportion,
    default_H,
    default_checkpoints,
    format_counts,
    gauss_sum,
    ideals_of_norm,
    is_cube_up_to_unit,
    is_primitive_additive,
    lambda3,
    lambda3_counts,
    poisson_check,
    pv_envelope,
    pv_scan,
    scan,
    spin_sum,
    symbol_table,
)
from cubicspin.cubic import chi_prime, cubic_symbol
from cubicspin.eisenstein import Eis, eis_norm, eis_prime_above, primary_associate
from cubicspin.primes import prime_ideals_up_to
from cubicspin.zeta12 import PRIMARY_UNIT, Z12, abs_norm, canonical_generator, coprime_to_3, rel_norm


def test_checkpoints():
    assert default_checkpoints(10 ** 5) == [10, 100, 1000, 10 ** 4, 10 ** 5]
    assert default_checkpoints(250) == [10, 100, 250]


def test_spin_sum_small():
    reps = spin_sum(10 ** 4)
    assert all(r.is_real for r in reps)
    assert [(r.x, r.c1, r.cw, r.cw2, r.zeros, r.total) for r in reps][-1] == (10 ** 4, 449, 388, 388, 13, 1238)
    # no degree-one records below 13: only the primes above 2 and 3
    (r12,) = spin_sum(12, [12])
    assert r12.total == 2 and (r12.c1, r12.cw, r12.cw2, r12.zeros) == (1, 0, 0, 1)
    with pytest.raises(ValueError):
        scan(100, [1000])


def test_spin_sum_matches_direct_tally():
    recs = list(prime_ideals_up_to(20000))
    (rep,) = spin_sum(20000, [20000])
    ks = [r.spin.k for r in recs]
    assert (rep.c1, rep.cw, rep.cw2, rep.zeros) == (ks.count(0), ks.count(1), ks.count(2), ks.count(None))
    assert rep.re_s == rep.c1 - (rep.cw + rep.cw2) / 2 and rep.im_s == 0


def test_cube_proportion_small():
    hits, total, ratio = cube_proportion(10 ** 4)
    assert 0.25 <= ratio <= 0.42
    assert total == 2 * sum(r.f == 1 for r in prime_ideals_up_to(10 ** 4)) // 4
    with pytest.raises(ValueError):
        cube_proportion(12)


def test_cube_decision_independent_of_representation():
    for rec in prime_ideals_up_to(3000):
        if rec.f != 1:
            continue
        z = rec.gen
        pi = rel_norm(z)
        base = chi_prime(z.r, pi)
        # r and s give the same answer (i and -1 are cubes), and so do other primary associates
        assert chi_prime(z.s, pi) == base
        for k in (-2, -1, 1, 2):
            zk = PRIMARY_UNIT ** k * z
            assert chi_prime(zk.r, rel_norm(zk)) == base


def brute_ideals(n: int, bound: int) -> set:
    found = set()
    for c in product(range(-bound, bound + 1), repeat=4):
        z = Z12.from_coeffs(*c)
        if z and abs_norm(z) == n:
            found.add(canonical_generator(z) if coprime_to_3(z) else None)
    return found


@pytest.mark.parametrize("n", [1, 4, 13, 16, 25, 49, 52, 65, 121])
def test_ideals_of_norm_against_brute_force(n):
    gens = ideals_of_norm(n)
    assert None not in gens
    assert {canonical_generator(g) for g in gens} == brute_ideals(n, 5)
    assert len(set(canonical_generator(g) for g in gens)) == len(gens)


def test_lambda3():
    assert lambda3_counts(1) == (1, 0, 0) and format_counts(*lambda3_counts(1)) == "1"
    assert lambda3_counts(5) == (0, 0, 0) and format_counts(*lambda3_counts(5)) == "0"
    c = lambda3_counts(13)
    assert c == (0, 2, 2) and lambda3(13) == pytest.approx(-2)
    # 4 Re([s/r]) for any generator of norm 13
    z = canonical_generator(Z12.from_coeffs(-2, -3, -3, 0))
    assert lambda3(13).real == pytest.approx(4 * complex(cubic_symbol(z.s, z.r)).real)
    assert ideals_of_norm(9) == [None] and lambda3_counts(9) == (0, 0, 0)
    assert format_counts(2, 1, 0) == "2+1*w+0*w^2"
    with pytest.raises(ValueError):
        lambda3_counts(0)


@pytest.mark.parametrize("m", [Eis(1), Eis(2), Eis(2, 3), Eis(7, -4), Eis(9), Eis(-11, 6)])
def test_residue_system(m):
    rs = ResidueSystem.of(m)
    assert rs.size == eis_norm(m)
    x, y = rs.reps()
    assert np.array_equal(rs.index(x, y), np.arange(rs.size))
    rng = np.random.default_rng(0)
    a1, a2 = rng.integers(-500, 500, 200), rng.integers(-500, 500, 200)
    for c in (Eis(1), Eis(0, 1), Eis(3, -2)):
        s = m * c
        assert np.array_equal(rs.index(a1 + s.a1, a2 + s.a2), rs.index(a1, a2))


def test_symbol_table():
    q = primary_associate(eis_prime_above(31))[1]
    rs, table = symbol_table(q)
    x, y = rs.reps()
    for i in range(0, rs.size, 5):
        v = cubic_symbol(Eis(int(x[i]), int(y[i])), q)
        assert (-1 if v.is_zero else v.k) == table[i]
    assert (table == 0).sum() == (table == 1).sum() == (table == 2).sum() == 10


def test_bump():
    assert bump(np.array([0.0]))[0] == pytest.approx(math.exp(-1))
    assert bump(np.array([1.0, 2.0])).tolist() == [0.0, 0.0]


@pytest.mark.parametrize("rho", [0.0, 0.3, 1.7, 4.2])
def test_bump_hat_against_2d_quadrature(rho):
    # the transform is radial: evaluate at xi = (rho, 0) directly in two dimensions
    def f(y, x):
        return math.exp(-1 / (1 - x * x - y * y)) * math.cos(2 * math.pi * rho * x) if x * x + y * y < 1 else 0.0

    ref, _ = integrate.dblquad(f, -1, 1, lambda x: -math.sqrt(1 - x * x), lambda x: math.sqrt(1 - x * x),
                               epsabs=1e-13, epsrel=1e-12)
    assert bump_hat(rho) == pytest.approx(ref, abs=1e-10)


def test_bump_hat_decays():
    # faster than any power, roughly like exp(-c sqrt(rho))
    vals = [abs(bump_hat(float(r))) for r in (5, 10, 20, 40, 80)]
    assert bump_hat(0.0) == pytest.approx(2 * math.pi * integrate.quad(lambda r: math.exp(-1 / (1 - r * r)) * r, 0, 1)[0])
    assert vals[-1] < 1e-9 * bump_hat(0.0)
    assert all(v * 40 ** 3 < bump_hat(0.0) for v in vals[3:])


def test_poisson_full_lattice():
    res = poisson_check(PoissonWindow(12.0, 0.3, -0.7, Eis(1), Eis(0)), H_override=3)
    assert res.lhs == pytest.approx(res.main, rel=1e-15)
    assert abs(res.dual) < 1e-12 * res.lhs


def test_poisson_default_cutoff_is_empty_at_small_moduli():
    assert default_H(50, 50) < 1 and default_H(100, 50) < 1
    res = poisson_check(PoissonWindow(50.0, 0.1, 0.2, Eis(2, 3), Eis(1)))
    assert res.H == 0 and res.terms == 0 and res.dual == 0


def test_poisson_with_dual_terms():
    q = Eis(-1, 6)  # norm 43
    for beta in (Eis(0), Eis(1), Eis(5, 2)):
        win = PoissonWindow(50.0, 0.25, 0.6, q, beta)
        res = poisson_check(win, H_override=10)
        assert res.rel_err < 1e-8
        # |h| <= 10 minus the origin and the 8 frequencies with xi in Z^2
        assert res.terms == 440 - sum(1 for h1 in range(-10, 11) for h2 in range(-10, 11)
                                      if (h1, h2) != (0, 0) and (-7 * h1 - 6 * h2) % 43 == 0 and (6 * h1 - h2) % 43 == 0)
        without = poisson_check(win, H_override=0)
        assert without.rel_err > res.rel_err


def test_poisson_rejects_small_window():
    with pytest.raises(ValueError):
        poisson_check(PoissonWindow(5.0, 0, 0, Eis(1), Eis(0)))


def test_cube_detection():
    pi = primary_associate(eis_prime_above(7))[1]
    assert is_cube_up_to_unit(pi ** 3) and is_cube_up_to_unit(Eis(0, 1) * pi ** 3)
    assert is_cube_up_to_unit(Eis(1, -1) ** 3 * Eis(8))
    assert not is_cube_up_to_unit(pi) and not is_cube_up_to_unit(Eis(3))
    with pytest.raises(ValueError):
        pv_scan(pi ** 3, 10.0, [(0.0, 0.0)])


def test_pv_scan_below_envelope():
    rng = np.random.default_rng(1)
    for p in (31, 103, 1009):
        q = primary_associate(eis_prime_above(p))[1]
        n = eis_norm(q)
        for K in (n ** 0.25, n ** 0.5, 2 * n ** 0.5):
            centers = [tuple(rng.uniform(-50, 50, 2)) for _ in range(3)]
            assert 0 < pv_scan(q, K, centers) <= pv_envelope(n)


def test_pv_inert_modulus():
    # [s/5] only takes values 0 and 1 here: (Z/5)^x elements are cubes in F_25
    q = Eis(-5)
    assert pv_scan(q, 20.0, [(0.0, 0.0)]) <= pv_envelope(25)


def test_gauss_sum_unit_modulus():
    # q = 1: a twisted Gauss sum on Z[w]/3 of modulus sqrt(9)
    assert gauss_sum(Eis(1), 1, 0) == pytest.approx(3)
    assert gauss_sum(Eis(1), 0, 0) == pytest.approx(0, abs=1e-12)
    assert gauss_sum(Eis(1), 0, 0, twist=0) == pytest.approx(6)


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_gauss_sum_magnitudes(p):
    q = primary_associate(eis_prime_above(p))[1]
    m = q * 3
    target = math.sqrt(eis_norm(m))
    assert gauss_sum(q, 0, 0) == pytest.approx(0, abs=1e-9)
    for h1, h2 in product(range(4), repeat=2):
        g = gauss_sum(q, h1, h2)
        if is_primitive_additive(m, h1, h2):
            assert abs(g - target) < 1e-9
        else:
            assert g < 1e-9


def test_gauss_sum_cap():
    with pytest.raises(ValueError):
        gauss_sum(Eis(1000, 1), 1, 2, cap=10 ** 4)
