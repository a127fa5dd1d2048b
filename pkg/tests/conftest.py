import random

import pytest

from realzk.complexes import polygon, random_complex
from realzk.fixtures import load_fixture

from helpers import downward_closed_complexes, random_corpus_schedule


@pytest.fixture(scope="session")
def pentagon():
    return polygon(5)


@pytest.fixture(scope="session")
def rp2():
    return load_fixture("rp2_6")


@pytest.fixture(scope="session")
def exhaustive_small_corpus():
    """All complexes on m <= 4 (1 + 2 + 5 + 19 + 167 of them)."""
    out = []
    for m in range(5):
        out.extend(downward_closed_complexes(m))
    return out


@pytest.fixture(scope="session")
def random_corpus():
    """The seeded 200-complex corpus on m in {5, 6, 7}."""
    return [random_complex(m, d, s) for (m, d, s) in random_corpus_schedule()]


@pytest.fixture(scope="session")
def small_random_corpus():
    """A lighter corpus for module-level property tests."""
    out = []
    rng = random.Random(7)
    for m in (3, 4, 5, 6, 7):
        for _ in range(6):
            out.append(random_complex(m, rng.uniform(0.2, 0.8), rng.randrange(10**9)))
    return out
