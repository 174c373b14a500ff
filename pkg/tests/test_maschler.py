import pytest

from matchgame import (
    Allocation,
    MaschlerState,
    advance_round,
    brute_nucleolus,
    build_decomposition,
    compact_p1,
    make_game,
    nucleolus,
    run_compact,
    run_nonempty_core,
    solve_leastcore,
)
from matchgame._rational import Q
from matchgame.maschler import _compact_items, _hull


def test_five_cycle_golden(five_cycle):
    res = run_compact(five_cycle)
    assert res.allocation == Allocation(
        (Q(7) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5)
    )
    assert res.epsilons[0] == Q(-2) / 5
    assert res.method == "compact"


def test_compact_p1_reproduces_leastcore(five_cycle, two_triangles):
    for game in (five_cycle, two_triangles):
        lc = solve_leastcore(game)
        dec = build_decomposition(game, lc)
        eps1, cons = compact_p1(game, dec)
        assert eps1 == lc.epsilon
        assert cons


def test_two_triangles(two_triangles):
    res = run_compact(two_triangles)
    assert res.allocation == Allocation((Q(1) / 3,) * 6)
    assert res.epsilons == (Q(-2) / 3, Q(-1) / 3)
    assert res.rounds == 2


def test_k2_equal_split(k2):
    res = run_nonempty_core(k2)
    assert res.allocation == Allocation((Q(1) / 2, Q(1) / 2))
    assert res.method == "nonempty-core"


def test_path3(path3):
    res = nucleolus(path3)
    assert res.allocation == Allocation((Q(0), Q(1), Q(0)))


def test_four_cycle(four_cycle):
    res = nucleolus(four_cycle)
    assert res.allocation == Allocation((Q(1) / 2,) * 4)
    assert res.epsilons == (Q(0), Q(1) / 2)


def test_dispatch_picks_the_right_engine(five_cycle, four_cycle):
    assert nucleolus(five_cycle).method == "compact"
    assert nucleolus(four_cycle).method == "nonempty-core"


def test_trivial_games():
    single = make_game(1, [])
    res = nucleolus(single)
    assert res.allocation == Allocation((Q(0),)) and res.rounds == 0
    isolated = make_game(3, [])
    assert nucleolus(isolated).allocation == Allocation((Q(0),) * 3)


def test_round_values_strictly_increase(five_cycle, two_triangles, four_cycle):
    for game in (five_cycle, two_triangles, four_cycle):
        res = nucleolus(game)
        assert all(a < b for a, b in zip(res.epsilons, res.epsilons[1:]))
        assert res.rounds <= game.n


def test_unfixed_counts_strictly_decrease(two_triangles):
    res = run_compact(two_triangles)
    counts = [r.unfixed_nodes for r in res.records]
    assert all(a > b for a, b in zip(counts, counts[1:]))
    assert counts[-1] == 0
    items = [r.unfixed_items for r in res.records]
    assert items[-1] == 0


def test_advance_round_state_transitions(five_cycle):
    lc = solve_leastcore(five_cycle)
    dec = build_decomposition(five_cycle, lc)
    eps1, cons = compact_p1(five_cycle, dec)
    state = MaschlerState(
        game=five_cycle,
        constraints=cons,
        items=_compact_items(five_cycle, dec),
        epsilons=(eps1,),
        records=(),
        hull=_hull(five_cycle, cons),
    )
    # the compact leastcore of the 5-cycle is already a single point
    final = advance_round(state)
    assert final.done
    assert final.point == Allocation((Q(7) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5))


def test_per_round_values_match_exhaustive(five_cycle, two_triangles, path3, four_cycle, k2):
    for game in (five_cycle, two_triangles, path3, four_cycle, k2):
        fast = nucleolus(game)
        slow = brute_nucleolus(game)
        assert fast.allocation == slow.allocation
        assert fast.epsilons == slow.epsilons


def test_run_compact_requires_empty_core(four_cycle):
    with pytest.raises(AssertionError):
        run_compact(four_cycle)


def test_run_nonempty_core_requires_nonempty_core(five_cycle):
    with pytest.raises(AssertionError):
        run_nonempty_core(five_cycle)
