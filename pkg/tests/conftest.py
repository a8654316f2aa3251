import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from unitshiha import UShParams, load_dataset


import zlib


@pytest.fixture
def rng(request):
    """Fresh generator per test, seeded from the test id: deterministic and
    independent of test execution order."""
    return np.random.default_rng(zlib.adler32(request.node.nodeid.encode()))


@pytest.fixture(scope="session")
def random_params():
    """50 parameter points drawn uniformly from (0.05, 10)^2."""
    pts = np.random.default_rng(20240817).uniform(0.05, 10.0, size=(50, 2))
    return [UShParams(w, e) for w, e in pts]


@pytest.fixture(scope="session")
def data1():
    return load_dataset("data1")


@pytest.fixture(scope="session")
def data2():
    return load_dataset("data2")


@pytest.fixture(scope="session")
def data3():
    return load_dataset("data3")


@pytest.fixture(scope="session")
def data4():
    return load_dataset("data4")
