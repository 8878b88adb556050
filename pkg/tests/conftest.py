import pytest

from gptgame.spaces import classical_simplex, direct_sum, polygon, tensor_with_classical


@pytest.fixture(scope="session")
def cl2():
    return classical_simplex(2)


@pytest.fixture(scope="session")
def cl3():
    return classical_simplex(3)


@pytest.fixture(scope="session")
def cl4():
    return classical_simplex(4)


@pytest.fixture(scope="session")
def square():
    return polygon(4)


@pytest.fixture(scope="session")
def pentagon():
    return polygon(5)


@pytest.fixture(scope="session")
def pentagon_bit():
    return tensor_with_classical(polygon(5), 2)


@pytest.fixture(scope="session")
def pentagon_heptagon():
    return direct_sum(polygon(5), polygon(7))
