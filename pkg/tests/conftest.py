import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cubicspin.eisenstein import Eis, coprime_to_3, primary_associate
from cubicspin.zeta12 import Z12

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small = st.integers(-60, 60)
eis = st.builds(Eis, small, small)
nonzero_eis = eis.filter(bool)
z12 = st.builds(Z12.from_coeffs, small, small, small, small)
nonzero_z12 = z12.filter(bool)


@st.composite
def primary_eis(draw, bound=60):
    a = draw(st.builds(Eis, st.integers(-bound, bound), st.integers(-bound, bound)).filter(coprime_to_3))
    return primary_associate(a)[1]


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
