import numpy as np
import pytest

from boomtab.field import make_field


@pytest.fixture(scope="session")
def ctx3():
    return make_field(3)


@pytest.fixture(scope="session")
def ctx4():
    return make_field(4)


@pytest.fixture(scope="session")
def ctx5():
    return make_field(5)


@pytest.fixture(scope="session")
def ctx6():
    return make_field(6)


@pytest.fixture(scope="session")
def ctx8():
    return make_field(8)


def random_luts(n, count, seed=0, include_permutations=True):
    """Deterministic mixed corpus of LUTs for differential tests."""
    rng = np.random.default_rng(seed)
    q = 1 << n
    out = []
    for i in range(count):
        if include_permutations and i % 2 == 0:
            out.append(rng.permutation(q).astype(np.uint32))
        else:
            out.append(rng.integers(0, q, q, dtype=np.uint32))
    return out
