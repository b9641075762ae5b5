import pytest

from fusionsys import corpus


@pytest.fixture(scope="session")
def built():
    """Shared access to corpus builds; the module cache makes every
    entry a one-time cost per test session."""
    return corpus.build


@pytest.fixture(scope="session")
def wreath(built):
    return built("wreath_a5")


@pytest.fixture(scope="session")
def a5_v4(built):
    return built("a5_v4")


@pytest.fixture(scope="session")
def s4_d8(built):
    return built("s4_d8")


@pytest.fixture(scope="session")
def a6_d8(built):
    return built("a6_d8")


@pytest.fixture(scope="session")
def a6xa6(built):
    return built("a6xa6")


@pytest.fixture(scope="session")
def a5xa5(built):
    return built("a5xa5")


@pytest.fixture(scope="session")
def cube(built):
    return built("cube_a5_c3")


@pytest.fixture(scope="session")
def sl23(built):
    return built("q8_sl23")


@pytest.fixture(scope="session")
def sl23_c2(built):
    return built("sl23_c2")
