import pytest

from matchgame import make_game


@pytest.fixture
def five_cycle():
    """Cycle 1-2-3-4-5-1 with weights (2,1,1,1,2): empty core, known nucleolus."""
    return make_game(5, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 2)])


@pytest.fixture
def k2():
    return make_game(2, [(0, 1, 1)])


@pytest.fixture
def triangle():
    return make_game(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def two_triangles():
    return make_game(
        6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
    )


@pytest.fixture
def path3():
    return make_game(3, [(0, 1, 1), (1, 2, 1)])


@pytest.fixture
def four_cycle():
    return make_game(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
