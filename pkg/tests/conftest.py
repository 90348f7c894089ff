from fractions import Fraction

from hypothesis import settings, strategies as st

from ortholab.lattice import Vec
from ortholab.pl import PLFunc

settings.register_profile("ortholab", deadline=None, max_examples=100)
settings.load_profile("ortholab")

rats = st.fractions(min_value=-10, max_value=10, max_denominator=12)
unit_points = st.fractions(min_value=0, max_value=1, max_denominator=24)


def vecs(d=None, min_dim=1, max_dim=5):
    if d is not None:
        return st.lists(rats, min_size=d, max_size=d).map(Vec)
    return st.integers(min_dim, max_dim).flatmap(lambda k: st.lists(rats, min_size=k, max_size=k).map(Vec))


@st.composite
def vec_pairs(draw, max_dim=5):
    d = draw(st.integers(1, max_dim))
    return draw(vecs(d)), draw(vecs(d))


@st.composite
def pl_funcs(draw, max_breaks=5):
    inner = draw(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=24), max_size=max_breaks, unique=True))
    ts = sorted({Fraction(0), Fraction(1), *inner})
    vs = draw(st.lists(rats, min_size=len(ts), max_size=len(ts)))
    return PLFunc(ts, vs)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
