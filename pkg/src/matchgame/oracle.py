"""Ground-truth reference implementations by exhaustive enumeration.

Everything here recomputes from first principles: coalition worths by a
bitmask recursion over induced subgraphs, the nucleolus by running the
narrowing scheme over every proper nonempty coalition, and the solution
concepts (theta vectors, prekernel) straight from their definitions.
These routines certify the compact pipeline on small instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from ._rational import Q, ZERO, rat
from .game import Allocation, GameInstance, excess
from .leastcore import Decomposition
from .lp import EQ, GE, LE, LPProblem, LinearFunctional, lf, solve_lp
from .maschler import Item, MaschlerState, NucleolusResult, _run
from .matching import EnumerationLimitError, MatchingDual, enumerate_matchings, uncross

BRUTE_NODE_LIMIT = 12


def coalition_values_table(game: GameInstance):
    """nu(S) for every node subset, indexed by bitmask."""
    if game.n > BRUTE_NODE_LIMIT:
        raise EnumerationLimitError(f"{game.n} nodes exceeds oracle limit {BRUTE_NODE_LIMIT}")
    edge_bits = [(1 << u | 1 << v, game.weights[(u, v)]) for u, v in game.edges]
    nu = [ZERO] * (1 << game.n)
    for mask in range(1, 1 << game.n):
        low = mask & -mask
        best = nu[mask ^ low]
        for ebits, w in edge_bits:
            if ebits & low and ebits & mask == ebits:
                cand = w + nu[mask ^ ebits]
                if cand > best:
                    best = cand
        nu[mask] = best
    return nu


def _members(mask: int):
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def brute_nucleolus(game: GameInstance) -> NucleolusResult:
    """The nucleolus via the scheme over all proper nonempty coalitions."""
    nu = coalition_values_table(game)
    full = (1 << game.n) - 1
    cons = [(lf({v: 1 for v in game.nodes}), EQ, nu[full])]
    cons += [(lf({v: 1}), GE, 0) for v in game.nodes]
    items = tuple(
        Item(("coal", mask), {v: Q(1) for v in _members(mask)}, GE, nu[mask])
        for mask in range(1, full)
    )
    state = MaschlerState(
        game=game, constraints=tuple(cons), items=items, epsilons=(), records=()
    )
    return _run(state, "bruteforce")


# ---------------------------------------------------------------------------
# solution-concept predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaVector:
    """All proper-coalition excesses of an allocation, sorted ascending."""

    sorted_excesses: tuple

    def compare(self, other: "ThetaVector") -> str:
        """Lexicographic ordering: 'greater' means self dominates."""
        assert len(self.sorted_excesses) == len(other.sorted_excesses)
        for a, b in zip(self.sorted_excesses, other.sorted_excesses):
            if a > b:
                return "greater"
            if a < b:
                return "less"
        return "equal"


def theta_vector(game: GameInstance, x: Allocation, nu=None) -> ThetaVector:
    if nu is None:
        nu = coalition_values_table(game)
    full = (1 << game.n) - 1
    excesses = []
    for mask in range(1, full):
        xs = sum((x[v] for v in _members(mask)), ZERO)
        excesses.append(xs - nu[mask])
    excesses.sort()
    return ThetaVector(tuple(excesses))


def theta_compare(game: GameInstance, x: Allocation, y: Allocation) -> str:
    """'greater' iff x lexicographically dominates y, etc."""
    nu = coalition_values_table(game)
    assert x.total() == nu[(1 << game.n) - 1] == y.total()
    return theta_vector(game, x, nu).compare(theta_vector(game, y, nu))


def prekernel_check(game: GameInstance, x: Allocation) -> bool:
    """Pairwise balance of the extreme separating-coalition excesses.

    For each ordered pair (i, j) the decisive quantity is the minimum
    excess x(S) - nu(S) over coalitions containing i but not j; the
    predicate holds when it is symmetric in i and j for every pair.
    """
    nu = coalition_values_table(game)
    best = {}
    for mask in range(1, 1 << game.n):
        members = _members(mask)
        xs = sum((x[v] for v in members), ZERO)
        e = xs - nu[mask]
        for i in members:
            for j in game.nodes:
                if not (mask >> j) & 1:
                    key = (i, j)
                    if key not in best or e < best[key]:
                        best[key] = e
    return all(
        best[(i, j)] == best[(j, i)]
        for i in game.nodes
        for j in game.nodes
        if i < j
    )


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_game(n: int, seed: int) -> GameInstance:
    """Seeded instance: each pair is an edge with probability 1/2,
    integer weights uniform in [1, 10]."""
    rng = random.Random(seed)
    triples = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.5:
                triples.append((u, v, rng.randint(1, 10)))
    return GameInstance(
        n=n,
        labels=tuple(str(i + 1) for i in range(n)),
        edges=tuple((u, v) for u, v, _ in triples),
        weights={(u, v): rat(w) for u, v, w in triples},
    )


def random_allocation(game: GameInstance, rng: random.Random, nu_total) -> Allocation:
    """A random feasible allocation: nonnegative, summing to nu(G)."""
    while True:
        draws = [rng.randint(0, 10) for _ in game.nodes]
        total = sum(draws)
        if total:
            return Allocation(tuple(Q(nu_total) * d / total for d in draws))


# ---------------------------------------------------------------------------
# structural property checks
# ---------------------------------------------------------------------------


def verify_cardinality_lemma(game: GameInstance, dec: Decomposition, x: Allocation, m) -> bool:
    """Some subset of the reference matching has the same per-blossom
    cardinalities as m and excess at most ex(x, m)."""
    blossoms = dec.blossoms
    inside = lambda e, s: e[0] in s and e[1] in s
    assert all(any(inside(e, s) for s in blossoms) for e in m), "m must live inside the blossoms"
    target = tuple(sum(1 for e in m if inside(e, s)) for s in blossoms)
    bound = excess(game, x, m)
    m_star = sorted(dec.m_star)
    for r in range(len(m_star) + 1):
        for sub in combinations(m_star, r):
            cards = tuple(sum(1 for e in sub if inside(e, s)) for s in blossoms)
            if cards == target and excess(game, x, frozenset(sub)) <= bound:
                return True
    return False


def _t_matchings(edges, t):
    return [m for m in enumerate_matchings(edges) if len(m) == t]


def verify_restricted_cardinality_polytope(nodes, edges, cost, t) -> bool:
    """The exact-cardinality matching LP agrees with enumeration, and the
    peel-one-edge step works whenever its laminar zero-y hypothesis holds.
    """
    nodes = list(nodes)
    edges = list(edges)
    if len(edges) > 16:
        raise EnumerationLimitError(f"{len(edges)} edges exceeds the verification bound")
    candidates = _t_matchings(edges, t)
    best = max((sum((cost[e] for e in m), ZERO) for m in candidates), default=None)

    odd_sets = [
        frozenset(s) for size in range(3, len(nodes) + 1, 2) for s in combinations(nodes, size)
    ]
    cons = []
    for v in nodes:
        inc = [e for e in edges if v in e]
        if inc:
            cons.append((lf({e: 1 for e in inc}), LE, 1))
    for s in odd_sets:
        inner = [e for e in edges if e[0] in s and e[1] in s]
        if inner:
            cons.append((lf({e: 1 for e in inner}), LE, Q(len(s) - 1) / 2))
    cons.append((lf({e: 1 for e in edges}), EQ, t))
    prob = LPProblem(edges, LinearFunctional({e: cost[e] for e in edges}), cons, set(edges))
    sol = solve_lp(prob)
    if best is None:
        return sol.status == "infeasible"
    if not (sol.optimal and sol.value == best):
        return False
    if t <= 1:
        return True

    # dual with a free cardinality multiplier, then uncross (y, z)
    GAMMA = ("gamma",)
    yvars = [("y", v) for v in nodes]
    zvars = [("z", s) for s in odd_sets]
    dobj = LinearFunctional(
        {("y", v): Q(-1) for v in nodes}
        | {("z", s): -Q(len(s) - 1) / 2 for s in odd_sets}
        | {GAMMA: Q(-t)}
    )
    dcons = []
    for u, v in edges:
        coeffs = {("y", u): Q(1), ("y", v): Q(1), GAMMA: Q(1)}
        for s in odd_sets:
            if u in s and v in s:
                coeffs[("z", s)] = Q(1)
        dcons.append((LinearFunctional(coeffs), GE, cost[(u, v)]))
    dcons += [(lf({w: 1}), GE, 0) for w in yvars + zvars]
    dsol = solve_lp(LPProblem(yvars + zvars + [GAMMA], dobj, dcons))
    if not (dsol.optimal and -dsol.value == best):
        return False
    dual = uncross(
        MatchingDual(
            {v: dsol.point[("y", v)] for v in nodes},
            {s: dsol.point[("z", s)] for s in odd_sets if dsol.point[("z", s)] > 0},
        )
    )
    if any(yv != 0 for yv in dual.y.values()):
        return True  # hypothesis of the peel step not met; nothing to verify
    prev = max(
        (sum((cost[e] for e in m), ZERO) for m in _t_matchings(edges, t - 1)), default=None
    )
    assert prev is not None  # a t-matching contains (t-1)-matchings
    for m in candidates:
        if sum((cost[e] for e in m), ZERO) != best:
            continue
        if not any(best - cost[e] == prev for e in m):
            return False
    return True
