"""Leastcore computation, universal allocations, and the graph decomposition
that powers the compact nucleolus scheme.

The leastcore maximizes the minimum excess ex(x, M) = x(M) - w(M) over all
nonempty matchings (with the empty matching contributing the cap eps <= 0).
A universal matching is tight at every leastcore point; a universal
allocation is a leastcore point whose tight matchings are exactly the
universal ones.  From a universal allocation we extract, via exact
matching-polytope duals for the reduced costs w - x, a laminar family of
odd node sets whose maximal members, together with the edge sets E+ and
E' (edges on no / on some universal matching) and one reference universal
matching, describe the whole leastcore by polynomially many constraints.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rational import Q, ZERO
from .game import Allocation, GameInstance, Matching, excess, matched_nodes
from .lp import (
    EQ,
    GE,
    LE,
    LPProblem,
    LinearFunctional,
    lf,
    solve_lp,
    solve_with_generation,
)
from .matching import (
    MatchingDual,
    enumerate_matchings,
    game_value,
    is_laminar,
    max_weight_matching,
    max_weight_matching_exposing,
    max_weight_matching_forcing_edge,
    optimal_duals,
    uncross,
)

EPS = ("eps",)


@dataclass(frozen=True)
class LeastcoreResult:
    epsilon: object  # optimal eps1
    allocation: Allocation  # a witness leastcore point
    value: object  # nu(G)


@dataclass(frozen=True)
class Decomposition:
    """Structure of the leastcore of an empty-core instance.

    blossoms are the maximal odd sets of the laminar dual family, each
    with its smallest node as representative.  e_plus holds the edges
    inside no blossom, e_star the edges used by some universal matching,
    and m_star a universal matching covering every blossom except its
    representative.
    """

    x_star: Allocation
    epsilon: object
    laminar: tuple  # all dual support sets
    blossoms: tuple  # maximal laminar sets S_i
    representatives: tuple  # min node of each blossom
    e_plus: tuple
    e_star: tuple
    f_edges: frozenset  # edges excluded from every universal matching
    m_star: Matching
    universal: tuple  # all universal matchings
    dual: MatchingDual


def _allocation_of(game: GameInstance, point) -> Allocation:
    return Allocation(tuple(point[v] for v in game.nodes))


def _matching_cut(game: GameInstance, matching, eps_coeff, eps_value=None):
    """Constraint ex(x, M) >= eps, with eps either a variable or a value."""
    coeffs = {v: Q(1) for v in matched_nodes(matching)}
    rhs = game.weight_of(matching)
    if eps_coeff:
        coeffs[EPS] = Q(-1)
    else:
        rhs += eps_value
    return (LinearFunctional(coeffs), GE, rhs)


def _leastcore_separator(game: GameInstance, with_eps: bool, eps_value=None):
    """Return a separation callback for x(M) - w(M) >= eps over matchings."""

    def separate(point):
        cost = {e: game.weights[e] - point[e[0]] - point[e[1]] for e in game.edges}
        best = max_weight_matching(game.edges, cost)
        eps = point[EPS] if with_eps else eps_value
        if best.matching and best.value > -eps:
            return _matching_cut(game, best.matching, with_eps, eps_value)
        return None

    return separate


def _base_constraints(game: GameInstance, nu):
    cons = [(lf({v: 1 for v in game.nodes}), EQ, nu)]
    cons += [(lf({v: 1}), GE, 0) for v in game.nodes]
    return cons


def solve_leastcore(game: GameInstance) -> LeastcoreResult:
    """Exact leastcore value and a witness allocation."""
    nu = game_value(game)
    cons = _base_constraints(game, nu) + [(lf({EPS: 1}), LE, 0)]
    prob = LPProblem(list(game.nodes) + [EPS], lf({EPS: 1}), cons)
    sol, _ = solve_with_generation(prob, _leastcore_separator(game, with_eps=True))
    assert sol.optimal, "the leastcore program is always feasible and bounded"
    return LeastcoreResult(sol.value, _allocation_of(game, sol.point), nu)


def core_is_empty(game: GameInstance) -> bool:
    return solve_leastcore(game).epsilon < 0


def _maximize_over_leastcore(game: GameInstance, lc: LeastcoreResult, objective):
    """Maximize a functional over the leastcore, with matching cuts on demand."""
    cons = _base_constraints(game, lc.value)
    prob = LPProblem(list(game.nodes), objective, cons)
    sol, _ = solve_with_generation(
        prob, _leastcore_separator(game, with_eps=False, eps_value=lc.epsilon)
    )
    assert sol.optimal
    return sol


def universal_allocation(game: GameInstance, lc: LeastcoreResult):
    """A leastcore point tight exactly on the universal matchings.

    Starting from the witness point, every tight matching whose excess
    can be pushed above eps1 somewhere in the leastcore contributes a
    maximizer; averaging the witness with these maximizers kills every
    non-universal tightness at once while keeping the universal ones.
    Returns (x_star, universal matchings).
    """
    x0 = lc.allocation
    all_matchings = [m for m in enumerate_matchings(game.edges) if m]
    tight = [m for m in all_matchings if excess(game, x0, m) == lc.epsilon]
    assert tight or lc.epsilon == 0, "some nonempty matching is tight when the core is empty"
    points = [ {v: x0[v] for v in game.nodes} ]
    universal = []
    for m in tight:
        obj = LinearFunctional({v: Q(1) for v in matched_nodes(m)}, -game.weight_of(m))
        sol = _maximize_over_leastcore(game, lc, obj)
        assert sol.value >= lc.epsilon
        if sol.value > lc.epsilon:
            points.append(sol.point)
        else:
            universal.append(m)
    k = Q(len(points))
    x_star = Allocation(
        tuple(sum((p[v] for p in points), ZERO) / k for v in game.nodes)
    )
    # certify: the tight set of the average is exactly the universal set
    for m in all_matchings:
        if excess(game, x_star, m) == lc.epsilon:
            assert m in universal, "averaged point still tight on a non-universal matching"
        else:
            assert m not in universal, "averaged point lost a universal matching"
    assert min(excess(game, x_star, m) for m in all_matchings) >= lc.epsilon
    return x_star, universal


def universal_matchings(game: GameInstance, x_star: Allocation, epsilon1) -> list:
    """All matchings tight at a universal allocation (the universal set)."""
    return [
        m
        for m in enumerate_matchings(game.edges)
        if excess(game, x_star, m) == epsilon1 and (m or epsilon1 == 0)
    ]


def build_face_description(game: GameInstance, x_star: Allocation, epsilon1):
    """Exposed-node set W, laminar family, and forbidden edges F describing
    the matchings tight at every leastcore point.

    A matching is universal iff it covers all of W, meets E(S) in
    (|S| - 1)/2 edges for every laminar S, and avoids F.  On empty-core
    instances W is empty (every node is exposed by some universal
    matching); a nonempty W there is a hard error.
    """
    cost = {e: game.weights[e] - x_star[e[0]] - x_star[e[1]] for e in game.edges}
    dual = uncross(optimal_duals(game.nodes, game.edges, cost))
    w_set = frozenset(v for v, yv in dual.y.items() if yv > 0)
    if epsilon1 < 0 and w_set:
        raise AssertionError(
            "every node is exposed by some universal matching, so all y duals vanish"
        )
    assert all(dual.covers(e) >= cost[e] for e in game.edges)
    laminar = sorted(dual.z, key=lambda s: (len(s), sorted(s)))
    assert is_laminar(laminar)
    f_edges = frozenset(e for e in game.edges if dual.covers(e) > cost[e])
    return w_set, tuple(laminar), f_edges, dual


def build_decomposition(game: GameInstance, lc: LeastcoreResult) -> Decomposition:
    """Full leastcore structure for an empty-core instance."""
    assert lc.epsilon < 0, "the decomposition is defined for empty-core instances"
    x_star, universal = universal_allocation(game, lc)
    assert universal, "an empty-core instance has universal matchings"
    cost = {e: game.weights[e] - x_star[e[0]] - x_star[e[1]] for e in game.edges}
    opt = -lc.epsilon  # best reduced-cost matching value

    w_set, laminar, f_edges, dual = build_face_description(game, x_star, lc.epsilon)
    blossoms = [s for s in laminar if not any(s < t for t in laminar)]
    blossoms.sort(key=min)
    assert blossoms, "an empty-core instance yields at least one blossom"
    reps = tuple(min(s) for s in blossoms)

    # the dual support describes the universal matchings exactly
    for m in enumerate_matchings(game.edges):
        face = all(
            len([e for e in m if e[0] in s and e[1] in s]) == (len(s) - 1) // 2
            for s in laminar
        ) and not (m & f_edges)
        assert face == (m in universal), "face description must match the universal set"

    covered = set().union(*blossoms)
    e_plus = tuple(e for e in game.edges if not any(e[0] in s and e[1] in s for s in blossoms))
    e_star = tuple(sorted(set().union(*universal)))
    for e in e_star:
        forced = max_weight_matching_forcing_edge(game.edges, cost, e)
        assert forced.value == opt
    m_star = set()
    for s, rep in zip(blossoms, reps):
        exposing = max_weight_matching_exposing(game.edges, cost, rep)
        assert exposing.value == opt, "every node is exposed by some universal matching"
        m_star |= {e for e in exposing.matching if e[0] in s and e[1] in s}
    m_star = frozenset(m_star)
    assert frozenset(m_star) in set(universal), "the reference matching is universal"
    assert matched_nodes(m_star) == covered - set(reps)

    return Decomposition(
        x_star=x_star,
        epsilon=lc.epsilon,
        laminar=tuple(laminar),
        blossoms=tuple(blossoms),
        representatives=reps,
        e_plus=e_plus,
        e_star=e_star,
        f_edges=f_edges,
        m_star=m_star,
        universal=tuple(universal),
        dual=dual,
    )
