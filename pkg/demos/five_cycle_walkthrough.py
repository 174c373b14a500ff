"""
A five-player matching game, start to finish
============================================

Five players sit on a cycle; adjacent players can pair up for a joint
profit.  The two edges touching player 1 are worth 2, the rest 1.  The
best the whole group can do is 3 (one heavy edge plus one light edge),
but every two-edge matching leaves someone out, so the core is empty.
This script walks through what the solver does about it.
"""

from matchgame import (
    Allocation,
    build_decomposition,
    excess,
    make_game,
    nucleolus,
    rat_str,
    solve_leastcore,
)

# players are 0..4 around the cycle; weights (2, 1, 1, 1, 2)
game = make_game(5, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 2)])

# Step 1: the leastcore.  Maximize the worst matching excess; the
# optimum is negative exactly because the core is empty.
lc = solve_leastcore(game)
print("total value:", rat_str(lc.value))
print("leastcore value eps1:", rat_str(lc.epsilon))

# Step 2: the structure of the leastcore.  A single blossom (all five
# players), every edge on some tight matching, and a reference matching
# that exposes only the representative.
dec = build_decomposition(game, lc)
print("blossoms:", [sorted(s) for s in dec.blossoms])
print("representatives:", dec.representatives)
print("reference matching:", sorted(dec.m_star))
print("tight-everywhere matchings:", len(dec.universal))

# Step 3: the nucleolus.  Here one round suffices: pinning the worst
# excess at eps1 already leaves a single point.
res = nucleolus(game)
print("nucleolus:", [rat_str(v) for v in res.allocation.values])
print("rounds:", res.rounds, " method:", res.method)

# Player 1 (node 0) holds both heavy edges and is paid 7/5; everyone
# else gets 2/5.  No two-edge matching can complain by more than 2/5:
worst = min(
    excess(game, res.allocation, m) for m in dec.universal
)
print("worst excess at the nucleolus:", rat_str(worst))

# Sanity: handing out equal shares of 3/5 is feasible but strictly
# worse for the unhappiest coalition, which is why it is not the answer.
uniform = Allocation.of(["3/5"] * 5)
print(
    "worst excess at the uniform split:",
    rat_str(min(excess(game, uniform, m) for m in dec.universal)),
)
