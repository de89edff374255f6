import numpy as np
import pytest

from zonolab.rng import make_generator
from zonolab.zonotope import GeneratorSet
from zonolab.zonotope import make_cube


@pytest.fixture
def rng() -> np.random.Generator:
    return make_generator(20240229)


@pytest.fixture
def cube3() -> GeneratorSet:
    return make_cube(3, 1.0)


@pytest.fixture
def unit_square() -> GeneratorSet:
    return make_cube(2, 1.0)


@pytest.fixture
def three_planar() -> GeneratorSet:
    return GeneratorSet(np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]), "three-planar")


def random_rotation(generator: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(generator.standard_normal((d, d)))

    return q * np.sign(np.diagonal(r))
