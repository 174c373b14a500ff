"""Game instances, matchings, coalitions, allocations, and the excess algebra.

A weighted matching game is an undirected graph with nonnegative rational
edge weights.  The players are the nodes; a coalition's worth is the value
of a maximum weight matching inside it.  Everything here is an immutable
value with exact rational arithmetic throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._rational import Q, ZERO, rat, rat_str

Edge = tuple  # canonical (u, v) with u < v
Coalition = frozenset  # of node ids
Matching = frozenset  # of edges


class GameFormatError(ValueError):
    """Raised when a game file cannot be parsed into a valid instance."""


@dataclass(frozen=True)
class GameInstance:
    """An undirected graph with exact rational edge weights.

    Nodes are dense 0-based ids; `labels` keeps the public names.
    Edges are canonical (u, v) tuples with u < v.
    """

    n: int
    labels: tuple
    edges: tuple
    weights: Mapping

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GameFormatError(f"self-loop at node {self.labels[u]!r}")
            if not (0 <= u < v < self.n):
                raise GameFormatError(f"edge ({u}, {v}) out of range or not canonical")
            if (u, v) in seen:
                raise GameFormatError(f"duplicate edge ({self.labels[u]!r}, {self.labels[v]!r})")
            seen.add((u, v))
            if self.weights[(u, v)] < 0:
                raise GameFormatError(
                    f"negative weight on edge ({self.labels[u]!r}, {self.labels[v]!r})"
                )

    @property
    def nodes(self) -> range:
        return range(self.n)

    def w(self, e: Edge):
        return self.weights[e]

    def weight_of(self, edges: Iterable[Edge]):
        return sum((self.weights[e] for e in edges), ZERO)

    def incident(self, v: int):
        return [e for e in self.edges if v in e]

    def induced_edges(self, coalition) -> list:
        s = set(coalition)
        return [e for e in self.edges if e[0] in s and e[1] in s]


def make_game(n: int, weighted_edges, labels=None) -> GameInstance:
    """Build a canonical GameInstance from (u, v, w) triples (0-based ids)."""
    if labels is None:
        labels = tuple(str(i + 1) for i in range(n))
    edges = []
    weights = {}
    for u, v, w in weighted_edges:
        if u == v:
            raise GameFormatError(f"self-loop at node {u}")
        e = (u, v) if u < v else (v, u)
        if e in weights:
            raise GameFormatError(f"duplicate edge {e}")
        edges.append(e)
        weights[e] = rat(w)
    edges.sort()
    return GameInstance(n=n, labels=tuple(labels), edges=tuple(edges), weights=weights)


def _parse_weight(raw, where: str):
    if isinstance(raw, bool) or isinstance(raw, float):
        raise GameFormatError(f"{where}: weight must be an integer or exact string, got {raw!r}")
    try:
        return rat(raw)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise GameFormatError(f"{where}: cannot parse weight {raw!r}") from exc


def load_game(data, fmt: str = "json") -> GameInstance:
    """Parse a game from bytes/str in "json" or "edgelist" format.

    JSON: {"nodes": ["a", ...], "edges": [{"u": 0, "v": 1, "w": "2"}, ...]}
    with weights given as integers, "p/q" strings, or decimal strings.

    Edgelist: first line "n m", then m lines "u v w" with 1-based nodes.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "json":
        return _load_json(data)
    if fmt == "edgelist":
        return _load_edgelist(data)
    raise GameFormatError(f"unknown format {fmt!r}")


def _load_json(text: str) -> GameInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "nodes" not in obj or "edges" not in obj:
        raise GameFormatError('JSON game needs "nodes" and "edges" keys')
    labels = [str(x) for x in obj["nodes"]]
    n = len(labels)
    triples = []
    for i, e in enumerate(obj["edges"]):
        where = f"edge #{i}"
        try:
            u, v = int(e["u"]), int(e["v"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GameFormatError(f"{where}: needs integer u and v") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GameFormatError(f"{where}: node id out of range")
        triples.append((u, v, _parse_weight(e.get("w", 1), where)))
    return make_game(n, triples, labels)


def _load_edgelist(text: str) -> GameInstance:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise GameFormatError("empty edgelist")
    head = lines[0].split()
    if len(head) != 2:
        raise GameFormatError('edgelist header must be "n m"')
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GameFormatError('edgelist header must be "n m"') from exc
    if len(lines) - 1 != m:
        raise GameFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    triples = []
    for i, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 3:
            raise GameFormatError(f'edge line {i + 1}: expected "u v w"')
        try:
            u, v = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError as exc:
            raise GameFormatError(f"edge line {i + 1}: nodes must be integers") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GameFormatError(f"edge line {i + 1}: node id out of range")
        triples.append((u, v, _parse_weight(parts[2], f"edge line {i + 1}")))
    return make_game(n, triples)


def save_game(game: GameInstance) -> str:
    """Serialize to the canonical JSON form; load_game round-trips it."""
    return json.dumps(
        {
            "nodes": list(game.labels),
            "edges": [
                {"u": u, "v": v, "w": rat_str(game.weights[(u, v)])} for u, v in game.edges
            ],
        }
    )


@dataclass(frozen=True)
class Allocation:
    """A payoff vector indexed by node id."""

    values: tuple

    @staticmethod
    def of(values) -> "Allocation":
        return Allocation(tuple(Q(v) for v in values))

    def __getitem__(self, v: int):
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def total(self):
        return sum(self.values, ZERO)

    def on(self, nodes) -> Q:
        return sum((self.values[v] for v in nodes), ZERO)

    def on_edge(self, e: Edge):
        return self.values[e[0]] + self.values[e[1]]

    def to_labelled(self, game: GameInstance) -> dict:
        return {game.labels[v]: rat_str(self.values[v]) for v in game.nodes}


def matched_nodes(matching) -> frozenset:
    return frozenset(v for e in matching for v in e)


def excess(game: GameInstance, x: Allocation, matching):
    """ex(x, M): allocation mass on the matched nodes minus matching weight."""
    return x.on(matched_nodes(matching)) - game.weight_of(matching)


def edge_excess(game: GameInstance, x: Allocation, e: Edge):
    return x.on_edge(e) - game.weights[e]


def coalition_excess(game: GameInstance, x: Allocation, coalition, nu_s):
    """x(S) minus the coalition's worth (worth supplied by the caller)."""
    return x.on(coalition) - Q(nu_s)


def sym(x: Allocation, x_star: Allocation, coalition):
    """Symmetric difference functional x(S) - x*(S)."""
    if len(x) != len(x_star):
        raise ValueError("allocations over different node sets")
    return x.on(coalition) - x_star.on(coalition)
