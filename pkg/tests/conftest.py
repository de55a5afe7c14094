import random
import sys

import pytest

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
