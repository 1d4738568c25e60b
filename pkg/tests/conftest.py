import numpy as np
import pytest

from rank1gen import WeightSequence


@pytest.fixture
def fig_weights() -> WeightSequence:
    # the five-vertex example sequence used across the statistical tests
    return WeightSequence.from_values([4.0, 1.0, 6.0, 7.0, 2.0])


@pytest.fixture
def rand_weights():
    def make(n: int, seed: int) -> WeightSequence:
        rng = np.random.default_rng(seed)
        return WeightSequence.from_values(rng.uniform(0.1, 5.0, size=n))

    return make
