import json

import numpy as np
import pytest

from cubicspin.verify import SUITES, run_suite, sample_rng, unit_checks


def test_unit_checks_all_pass():
    checks = unit_checks()
    assert len(checks) == 22
    assert all(ok for _, ok in checks), [name for name, ok in checks if not ok]


def test_sample_streams_are_independent_and_replayable():
    a = sample_rng(42, "twist", 7).integers(0, 1 << 30, 4)
    b = sample_rng(42, "twist", 7).integers(0, 1 << 30, 4)
    c = sample_rng(42, "twist", 8).integers(0, 1 << 30, 4)
    d = sample_rng(42, "splitting", 7).integers(0, 1 << 30, 4)
    assert np.array_equal(a, b) and not np.array_equal(a, c) and not np.array_equal(a, d)


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass(suite):
    (rep,) = run_suite(suite, samples=60, norm_bound=900, seed=7)
    assert set(rep) == {"suite", "seed", "samples", "failures", "first_witness", "info"}
    assert rep["failures"] == 0 and rep["first_witness"] is None
    json.dumps(rep)


def test_reports_are_deterministic():
    assert run_suite("pairsymbol", 40, seed=3) == run_suite("pairsymbol", 40, seed=3)
    assert run_suite("pairsymbol", 40, seed=3) != run_suite("pairsymbol", 40, seed=4)


def test_prefix_stability():
    # sample i does not depend on how many samples run
    big = run_suite("twist", 50, seed=11)[0]["info"]
    small = run_suite("twist", 20, seed=11)[0]["info"]
    assert sum(small.values()) == 20 and all(small[k] <= big[k] for k in small)


def test_all_and_unknown():
    reps = run_suite("all", samples=5, norm_bound=400)
    assert [r["suite"] for r in reps] == list(SUITES)
    with pytest.raises(ValueError):
        run_suite("nope")
