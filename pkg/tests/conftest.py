import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from thetaconj import Alphabet, parse_involution_spec  # noqa: E402


@pytest.fixture
def theta_abcd():
    # a <-> b, c <-> d
    return parse_involution_spec("a:b,c:d", Alphabet("abcd"))


@pytest.fixture
def theta_abc():
    # a <-> b, c fixed
    return parse_involution_spec("a:b", Alphabet("abc"))
