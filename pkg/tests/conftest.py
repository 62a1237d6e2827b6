from pathlib import Path

import pytest

from hqft.group import build_cyclic, dihedral_group_4, klein_four, symmetric_group_3

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def klein():
    return klein_four()


@pytest.fixture(scope="session")
def s3():
    return symmetric_group_3()


@pytest.fixture(scope="session")
def d4():
    return dihedral_group_4()


@pytest.fixture(scope="session")
def z2():
    return build_cyclic(2)
