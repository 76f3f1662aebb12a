import pathlib

import pytest

from gkgraph.catalog import build_catalog

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "gkgraph" / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def sz8_catalog():
    return build_catalog("sz8")


@pytest.fixture(scope="session")
def psl232_catalog():
    return build_catalog("psl232")


@pytest.fixture(scope="session")
def sz32_catalog():
    return build_catalog("sz32")
