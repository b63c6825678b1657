import pytest

from descent3 import enumerate_classes, make_seed


@pytest.fixture(scope="session")
def seed_m34_419():
    return make_seed(-34, 419)


@pytest.fixture(scope="session")
def seed_229_3():
    return make_seed(229, 3)


@pytest.fixture(scope="session")
def classes_4897363(seed_m34_419):
    return enumerate_classes(seed_m34_419.D)


@pytest.fixture(scope="session")
def classes_48035713(seed_229_3):
    return enumerate_classes(seed_229_3.D)
