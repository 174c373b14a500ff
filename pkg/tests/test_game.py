import json

import pytest

from matchgame import (
    Allocation,
    GameFormatError,
    coalition_excess,
    coalition_value,
    excess,
    load_game,
    make_game,
    rat,
    save_game,
    sym,
)
from matchgame._rational import Q

FIVE_EDGELIST = """5 5
1 2 2
2 3 1
3 4 1
4 5 1
1 5 2
"""

K2_JSON = '{"nodes": ["a", "b"], "edges": [{"u": 0, "v": 1, "w": "3/2"}]}'


def test_edgelist_parsing():
    g = load_game(FIVE_EDGELIST, "edgelist")
    assert g.n == 5
    assert g.edges == ((0, 1), (0, 4), (1, 2), (2, 3), (3, 4))
    assert g.weights[(0, 1)] == 2
    assert g.labels == ("1", "2", "3", "4", "5")


def test_json_parsing_with_rational_weight():
    g = load_game(K2_JSON, "json")
    assert g.labels == ("a", "b")
    assert g.weights[(0, 1)] == Q(3) / 2


def test_format_sniffing_not_needed_for_bytes():
    g = load_game(K2_JSON.encode(), "json")
    assert g.n == 2


def test_round_trip_is_canonical():
    g = load_game(K2_JSON, "json")
    text = save_game(g)
    again = load_game(text, "json")
    assert save_game(again) == text
    assert again == g


@pytest.mark.parametrize(
    "bad",
    [
        "5 5\n1 2 2\n",  # wrong edge count
        "x y\n",  # bad header
        "2 1\n1 1 3\n",  # self loop
        "2 1\n1 3 1\n",  # out of range
        "2 1\n1 2 abc\n",  # unparsable weight
        "2 1\n1 2 -1\n",  # negative weight
        "",
    ],
)
def test_edgelist_errors(bad):
    with pytest.raises(GameFormatError):
        load_game(bad, "edgelist")


@pytest.mark.parametrize(
    "bad",
    [
        '{"nodes": ["a"], "edges": [{"u": 0, "v": 0, "w": 1}]}',
        '{"nodes": ["a", "b"], "edges": [{"u": 0, "v": 2, "w": 1}]}',
        '{"nodes": ["a", "b"], "edges": [{"u": 0, "v": 1, "w": 0.5}]}',
        '{"edges": []}',
        '{"nodes": ["a", "b"], "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 0}]}',
        "not json",
    ],
)
def test_json_errors(bad):
    with pytest.raises(GameFormatError):
        load_game(bad, "json")


def test_float_weight_rejected_everywhere():
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        make_game(2, [(0, 1, 0.5)])


def test_decimal_string_weight_is_exact():
    assert rat("1.25") == Q(5) / 4
    assert rat("7/5") == Q(7) / 5


def test_duplicate_edge_rejected():
    with pytest.raises(GameFormatError):
        make_game(3, [(0, 1, 1), (1, 0, 2)])


def test_excess_on_matchings(five_cycle):
    x = Allocation.of([Q(7) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5])
    m = frozenset({(1, 2), (3, 4)})
    assert excess(five_cycle, x, m) == Q(-2) / 5
    assert excess(five_cycle, x, frozenset()) == 0


def test_coalition_excess_examples(five_cycle, triangle):
    x = Allocation.of([Q(7) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5])
    s = frozenset({1, 2, 3, 4})
    assert coalition_excess(five_cycle, x, s, coalition_value(five_cycle, s)) == Q(-2) / 5
    y = Allocation.of([Q(1) / 3] * 3)
    t = frozenset({0, 1})
    assert coalition_excess(triangle, y, t, coalition_value(triangle, t)) == Q(-1) / 3
    assert coalition_excess(triangle, y, frozenset(), 0) == 0


def test_sym_functional(five_cycle):
    x = Allocation.of([1, 1, 0, 0, 1])
    x_star = Allocation.of([Q(7) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5, Q(2) / 5])
    assert sym(x, x_star, {0}) == Q(-2) / 5
    assert sym(x_star, x_star, {0, 3}) == 0
    with pytest.raises(ValueError):
        sym(x, Allocation.of([1, 1]), {0})


def test_allocation_helpers():
    x = Allocation.of([1, 2, 3])
    assert x.total() == 6
    assert x.on([0, 2]) == 4
    assert x.on_edge((1, 2)) == 5
    assert len(x) == 3


def test_labels_in_serialized_output():
    g = load_game(K2_JSON, "json")
    x = Allocation.of([Q(1) / 2, 1])
    assert x.to_labelled(g) == {"a": "1/2", "b": "1"}


def test_json_weight_defaults_to_one():
    g = load_game('{"nodes": ["a", "b"], "edges": [{"u": 0, "v": 1}]}', "json")
    assert g.weights[(0, 1)] == 1
