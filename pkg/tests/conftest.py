import pytest

from superpl.supermatrix import BlockShape


@pytest.fixture
def s21():
    return BlockShape(2, 1)


@pytest.fixture
def s12():
    return BlockShape(1, 2)
