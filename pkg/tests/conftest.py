import random

import pytest
from hypothesis import settings, strategies as st

from ncsurf.eulerform import GramMatrix

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def gram_matrices(n=4, bound=6):
    return st.lists(st.integers(-bound, bound), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
        lambda xs: GramMatrix.from_upper(n, xs)
    )


def int_matrices(n, bound=5):
    return st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n)


@pytest.fixture
def rng():
    return random.Random(1234)
