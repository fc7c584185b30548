import numpy as np
import pytest

from fracineq import DomainSpec, RandomBandLimited, sample


@pytest.fixture
def dom1():
    return DomainSpec(1, 16.0, 64)


@pytest.fixture
def dom2():
    return DomainSpec(2, 16.0, 32)


@pytest.fixture
def rand_field(dom1):
    return sample(dom1, RandomBandLimited(seed=3, max_band=8)).project_mean_zero()


def random_fields(domain, count, seed0=100, max_band=8):
    return [
        sample(domain, RandomBandLimited(seed=seed0 + i, max_band=max_band)).project_mean_zero()
        for i in range(count)
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(0)
