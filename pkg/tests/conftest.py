from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quaddec.algebra import Poly

# Seeded and reproducible: every property runs the same 100+ instances.
settings.register_profile(
    "repo",
    max_examples=100,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=6))
nonzero_rationals = rationals.filter(lambda v: v != 0)


def polys(max_degree=6, elements=rationals):
    return st.lists(elements, max_size=max_degree + 1).map(Poly)


@st.composite
def recurrences(draw, depth=12, positive_gamma=False):
    """Finite (betas, gammas) with nonzero gammas, long enough for ``depth``."""
    g = nonzero_rationals.map(abs) if positive_gamma else nonzero_rationals
    betas = draw(st.lists(rationals, min_size=depth, max_size=depth))
    gammas = draw(st.lists(g, min_size=depth, max_size=depth))
    return betas, gammas


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
