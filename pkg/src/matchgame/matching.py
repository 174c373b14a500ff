"""Maximum weight matching queries and matching-polytope duals.

All queries take an explicit edge list and an exact rational cost map, so
callers can reuse them with reduced costs (for example w - x during
separation).  Costs may be negative; the empty matching always competes,
so the optimum value is never below zero.

`optimal_duals` produces an exact optimal solution (y, z) of the dual of
the fractional matching LP with odd-set constraints, and `uncross` turns
any such z into one supported on a laminar family without changing the
objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from ._rational import Q, ZERO
from .game import Edge, GameInstance, Matching
from .lp import EQ, GE, LE, LPProblem, LinearFunctional, lf, minimize_lp, solve_lp

ENUMERATION_EDGE_LIMIT = 24
DUAL_NODE_LIMIT = 16


class EnumerationLimitError(ValueError):
    """Raised when an enumeration routine is asked to exceed its bound."""


@dataclass(frozen=True)
class MatchingResult:
    matching: Matching
    value: object  # exact rational


def _canonical(pairs) -> Matching:
    return frozenset((u, v) if u < v else (v, u) for u, v in pairs)


def max_weight_matching(edges, cost) -> MatchingResult:
    """Best matching under the given costs (the empty matching counts).

    Edges with nonpositive cost cannot improve the optimum and are
    dropped before the search.
    """
    g = nx.Graph()
    for e in edges:
        c = cost[e]
        if c > 0:
            g.add_edge(e[0], e[1], weight=c)
    m = _canonical(nx.max_weight_matching(g, maxcardinality=False))
    return MatchingResult(m, sum((cost[e] for e in m), ZERO))


def max_weight_matching_forcing_edge(edges, cost, e: Edge) -> MatchingResult:
    """Best matching among those containing edge e."""
    u, v = e
    rest = [f for f in edges if u not in f and v not in f]
    inner = max_weight_matching(rest, cost)
    return MatchingResult(inner.matching | {e}, inner.value + cost[e])


def max_weight_matching_exposing(edges, cost, v: int) -> MatchingResult:
    """Best matching among those leaving node v unmatched."""
    return max_weight_matching([f for f in edges if v not in f], cost)


def enumerate_matchings(edges, limit: int = None):
    """Every matching of the edge list, including the empty one."""
    edges = list(edges)
    if limit is None:
        limit = ENUMERATION_EDGE_LIMIT
    if len(edges) > limit:
        raise EnumerationLimitError(f"{len(edges)} edges exceeds enumeration limit {limit}")
    out = [frozenset()]
    for e in edges:
        u, v = e
        out.extend(m | {e} for m in list(out) if all(u not in f and v not in f for f in m))
    return out


def coalition_value(game: GameInstance, coalition) -> object:
    """Worth of a coalition: max weight matching inside it."""
    edges = game.induced_edges(coalition)
    return max_weight_matching(edges, game.weights).value


def game_value(game: GameInstance) -> object:
    return max_weight_matching(game.edges, game.weights).value


# ---------------------------------------------------------------------------
# matching polytope duals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatchingDual:
    """Optimal duals of the odd-set matching LP.

    y maps node -> value, z maps frozenset (odd, size >= 3) -> value;
    only strictly positive z entries are kept.
    """

    y: dict
    z: dict

    def value(self):
        return sum(self.y.values(), ZERO) + sum(
            (v * Q(len(s) - 1) / 2 for s, v in self.z.items()), ZERO
        )

    def covers(self, e: Edge):
        u, v = e
        return self.y[u] + self.y[v] + sum((zv for s, zv in self.z.items() if u in s and v in s), ZERO)


def _violated_odd_set(nodes, edges, xval):
    """An odd set S (|S| >= 3) with x(E(S)) > (|S|-1)/2, or None."""
    for size in range(3, len(nodes) + 1, 2):
        for S in combinations(nodes, size):
            sset = frozenset(S)
            total = sum((xval[e] for e in edges if e[0] in sset and e[1] in sset), ZERO)
            if total > Q(size - 1) / 2:
                return sset
    return None


def optimal_duals(nodes, edges, cost) -> MatchingDual:
    """Exact optimal (y, z) for the odd-set matching LP dual.

    Costs may be negative.  Odd-set rows are generated lazily on the
    primal; the dual restricted to the generated rows is then solved and
    certified against the true matching value.
    """
    nodes = list(nodes)
    edges = list(edges)
    if len(nodes) > DUAL_NODE_LIMIT:
        raise EnumerationLimitError(f"{len(nodes)} nodes exceeds dual computation limit")
    odd_sets = []
    base = []
    for v in nodes:
        inc = [e for e in edges if v in e]
        if inc:
            base.append((lf({e: 1 for e in inc}), LE, 1))
    base += [(lf({e: 1}), GE, 0) for e in edges]
    obj = LinearFunctional({e: cost[e] for e in edges})
    while True:
        rows = list(base)
        for s in odd_sets:
            inner = [e for e in edges if e[0] in s and e[1] in s]
            rows.append((lf({e: 1 for e in inner}), LE, Q(len(s) - 1) / 2))
        sol = solve_lp(LPProblem(edges, obj, rows, set(edges)))
        assert sol.optimal
        bad = _violated_odd_set(nodes, edges, sol.point)
        if bad is None:
            break
        odd_sets.append(bad)

    opt = max_weight_matching(edges, cost).value
    assert sol.value == opt, "fractional matching LP value must equal the matching value"

    yvars = [("y", v) for v in nodes]
    zvars = [("z", s) for s in odd_sets]
    dual_obj = LinearFunctional(
        {("y", v): Q(-1) for v in nodes}
        | {("z", s): -Q(len(s) - 1) / 2 for s in odd_sets}
    )
    cons = []
    for u, v in edges:
        coeffs = {("y", u): Q(1), ("y", v): Q(1)}
        for s in odd_sets:
            if u in s and v in s:
                coeffs[("z", s)] = Q(1)
        cons.append((LinearFunctional(coeffs), GE, cost[(u, v)]))
    cons += [(lf({w: 1}), GE, 0) for w in yvars + zvars]
    dsol = solve_lp(LPProblem(yvars + zvars, dual_obj, cons))
    assert dsol.optimal and -dsol.value == opt, "strong duality must hold exactly"
    y = {v: dsol.point[("y", v)] for v in nodes}
    z = {s: dsol.point[("z", s)] for s in odd_sets if dsol.point[("z", s)] > 0}
    return MatchingDual(y, z)


def _properly_crossing(z):
    sets = list(z)
    for a, b in combinations(sets, 2):
        if a & b and a - b and b - a:
            return a, b
    return None


def is_laminar(sets) -> bool:
    return _properly_crossing({s: None for s in sets}) is None


def uncross(dual: MatchingDual) -> MatchingDual:
    """Equivalent optimal dual whose z-support is laminar.

    Each crossing pair is resolved without changing feasibility or the
    objective; newly formed singletons are dropped (their objective
    coefficient is zero and they cover no edge).
    """
    y = dict(dual.y)
    z = dict(dual.z)
    target = dual.value()
    guard = 0
    while True:
        pair = _properly_crossing(z)
        if pair is None:
            break
        guard += 1
        if guard > 10000:
            raise RuntimeError("uncrossing failed to terminate")
        s, t = pair
        m = min(z[s], z[t])
        for k in (s, t):
            z[k] -= m
            if z[k] == 0:
                del z[k]
        inter, union = s & t, s | t
        if len(inter) % 2 == 1:
            if len(inter) >= 3:
                z[inter] = z.get(inter, ZERO) + m
            z[union] = z.get(union, ZERO) + m
        else:
            for part in (s - t, t - s):
                if len(part) >= 3:
                    z[part] = z.get(part, ZERO) + m
            for v in inter:
                y[v] += m
    out = MatchingDual(y, {s: v for s, v in z.items() if v > 0})
    assert out.value() == target, "uncrossing must preserve the dual objective"
    return out
