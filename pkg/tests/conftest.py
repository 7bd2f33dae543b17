import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ffproj.project import PointSet  # noqa: E402
from ffproj.subspace import from_vectors  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_PRIMES = (2, 3, 5, 7)


@st.composite
def spaces(draw, primes=SMALL_PRIMES, max_n=4):
    return draw(st.sampled_from(primes)), draw(st.integers(1, max_n))


def vectors(p, n):
    return st.tuples(*[st.integers(0, p - 1)] * n)


@st.composite
def subspaces(draw, p, n, max_gens=None):
    k = draw(st.integers(0, max_gens if max_gens is not None else n))
    return from_vectors(draw(st.lists(vectors(p, n), min_size=k, max_size=k)), p, n)


@st.composite
def pointsets(draw, p, n, max_size=30, min_size=0):
    return PointSet(p, n, draw(st.lists(vectors(p, n), min_size=min_size, max_size=max_size)))


@st.composite
def setups(draw, primes=SMALL_PRIMES, max_n=4, n_subspaces=1, min_points=0):
    """(K, [W...]) sharing a random ambient space."""
    p, n = draw(spaces(primes, max_n))
    K = draw(pointsets(p, n, min_size=min_points))
    Ws = [draw(subspaces(p, n)) for _ in range(n_subspaces)]
    return K, Ws


# lines recorded by test_acceptance.py, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
