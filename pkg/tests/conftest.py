import os

from hypothesis import settings, strategies as st

from opimage import QQ, QQI, GaussianRational, PrimeField, Poly

settings.register_profile("default", deadline=None, max_examples=60)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F2 = PrimeField(2)
F5 = PrimeField(5)
F101 = PrimeField(101)
FIELDS = [QQ, QQI, F5]

_small_frac = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def coeffs(field):
    if field is QQI:
        return st.builds(GaussianRational, _small_frac, _small_frac)
    if field.characteristic:
        return st.integers(0, field.characteristic - 1).map(field)
    return _small_frac.map(field)


def exps(n, max_deg):
    """Exponent vectors of total degree <= max_deg, built as a multiset of variables."""
    def count(picks):
        e = [0] * n
        for i in picks:
            e[i] += 1
        return tuple(e)
    return st.lists(st.integers(0, n - 1), max_size=max_deg).map(count)


@st.composite
def polys(draw, n=2, field=QQ, deg_z=3, deg_u=0, max_terms=5):
    terms = draw(st.lists(st.tuples(exps(n, deg_z), exps(n, deg_u), coeffs(field)),
                          max_size=max_terms))
    return Poly.from_terms(n, field, terms)


# acceptance summary --------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for name, value in report.user_properties:
        if name == "criterion":
            ACCEPTANCE_RESULTS.setdefault(value, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE_RESULTS, key=lambda c: int(c[1:])):
        outcomes = ACCEPTANCE_RESULTS[crit]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{crit}: {status}")
