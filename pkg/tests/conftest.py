import json

import numpy as np
import pytest

from malcevap.algebra import builtin
from malcevap.utils import DEFAULT_SEED


@pytest.fixture(scope="session")
def octonion():
    return builtin("octonion")


@pytest.fixture(scope="session")
def sl2():
    return builtin("sl2")


@pytest.fixture(scope="function")
def rng():
    return np.random.default_rng(DEFAULT_SEED)


@pytest.fixture(scope="function")
def broken_algebra_path(tmp_path):
    path = tmp_path / "broken.json"
    # [e0, e1] = e2 without the matching [e1, e0] = -e2
    data = {"name": "broken", "dim": 3, "bracket": [[0, 1, 2, 1.0]]}
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture(scope="function")
def heisenberg_path(tmp_path):
    path = tmp_path / "heisenberg.json"
    data = {"name": "heisenberg", "dim": 3, "bracket": [[0, 1, 2, 1.0], [1, 0, 2, -1.0]]}
    path.write_text(json.dumps(data))
    return str(path)
