import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qpmut.corpus import load_fixture
from qpmut.serialize import qp_from_json


def fixture_qp(name, N=None):
    return qp_from_json(load_fixture(name), N)


@pytest.fixture
def a3():
    return fixture_qp("a3")


@pytest.fixture
def tri():
    return fixture_qp("tri")


@pytest.fixture
def tri0():
    return fixture_qp("tri0")


@pytest.fixture
def reduction_qp():
    return fixture_qp("reduction", 8)
