import numpy as np
import pytest

from nandlab.complexity import choice_complexity
from nandlab.errors import GenerateError
from nandlab.generators import all_ones, generate, kfault, planted_path, random_p
from nandlab.tree import evaluate


def test_fixed_families():
    assert choice_complexity(all_ones(4)).c == 1
    assert choice_complexity(planted_path(2)).c_A == 2
    assert str(planted_path(2)) == "2:1100"


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("depth", [2, 4, 6])
def test_kfault_budget(k, depth):
    gen = np.random.default_rng(k * 10 + depth)
    for _ in range(10):
        x = kfault(depth, k, gen)
        rep = choice_complexity(x)
        assert evaluate(x) == 1
        assert rep.f <= 2**k
        if k == 0:
            assert rep.f == 1 and rep.c == 1


def test_kfault_errors():
    with pytest.raises(GenerateError):
        kfault(4, -1, np.random.default_rng())
    with pytest.raises(GenerateError):
        kfault(3, 1, np.random.default_rng())


def test_random_p_extremes():
    gen = np.random.default_rng(0)
    assert random_p(4, 1.0, gen) == all_ones(4)
    assert sum(random_p(4, 0.0, gen).bits) == 0
    with pytest.raises(ValueError):
        random_p(2, 2.0, gen)


def test_generate_is_seeded():
    assert generate("random-p", 6, 5) == generate("random-p", 6, 5)
    assert generate("kfault", 6, 5, k=2) == generate("kfault", 6, 5, k=2)
    with pytest.raises(ValueError):
        generate("bogus", 2, 0)
