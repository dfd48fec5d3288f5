import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lamcalc.algebra import LaurentPoly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(-9, 9)
rationals = st.builds(Fraction, small_int, st.integers(1, 9))
nonzero_rationals = rationals.filter(lambda r: r != 0)
basis_lambdas = nonzero_rationals.filter(lambda r: r not in (1, -1))


def polys(lo: int = -8, hi: int = 8, max_terms: int = 9):
    return st.dictionaries(st.integers(lo, hi), nonzero_rationals, max_size=max_terms).map(LaurentPoly)


laurent = polys()
reciprocal_polys = polys(-10, 0, 11)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
