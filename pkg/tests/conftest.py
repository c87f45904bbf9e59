import pytest

from rellich_cone import Config, full_sphere_spectrum, load_corpus


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture()
def sphere3():
    return full_sphere_spectrum(3)


@pytest.fixture()
def sphere2():
    return full_sphere_spectrum(2)
