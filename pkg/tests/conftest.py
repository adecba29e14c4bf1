import os

from hypothesis import HealthCheck, settings, strategies as st

from tki.laurent import LaurentPoly2

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def polys(max_terms=8, exp=4, coeff=20, nonzero=False):
    """Random small Laurent polynomials in ``(a, q)``."""
    terms = st.dictionaries(
        st.tuples(st.integers(-exp, exp), st.integers(-exp, exp)),
        st.integers(-coeff, coeff),
        min_size=1 if nonzero else 0,
        max_size=max_terms,
    )
    s = terms.map(LaurentPoly2)
    return s.filter(bool) if nonzero else s


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
