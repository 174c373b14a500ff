"""
Inside the leastcore: blossoms, tight matchings, and symmetry
=============================================================

Two disjoint triangles of unit-weight edges make a nicely structured
empty-core game: each triangle can only pair two of its three members,
so somebody always loses out.  The leastcore decomposition makes the
structure explicit, and the narrowing scheme needs a second round to
finish, which makes the round bookkeeping visible.
"""

from matchgame import (
    build_decomposition,
    excess,
    make_game,
    nucleolus,
    rat_str,
    solve_leastcore,
    sym,
)

triangles = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
game = make_game(6, triangles)

lc = solve_leastcore(game)
print("eps1:", rat_str(lc.epsilon))

dec = build_decomposition(game, lc)

# two blossoms, one per triangle, each represented by its smallest node
print("blossoms:", [sorted(s) for s in dec.blossoms])
print("representatives:", dec.representatives)

# every edge lies inside a blossom, so nothing is left outside
print("edges outside all blossoms:", list(dec.e_plus))

# the reference matching picks one edge per triangle, exposing the reps
print("reference matching:", sorted(dec.m_star))

# a universal matching is tight at *every* leastcore point; here that
# means exactly one edge per triangle, nine combinations in total
print("universal matchings:", len(dec.universal))
for m in dec.universal:
    assert excess(game, dec.x_star, m) == lc.epsilon

# symmetry: within a blossom, every leastcore point moves all members
# by the same offset from the reference point x_star
for blossom, rep in zip(dec.blossoms, dec.representatives):
    offsets = {rat_str(sym(dec.x_star, dec.x_star, {u})) for u in blossom}
    assert offsets == {"0"}

# the scheme itself: round one pins the worst level at -2/3, round two
# finishes at -1/3, landing on the uniform split 1/3 per player
res = nucleolus(game)
print("round values:", [rat_str(e) for e in res.epsilons])
for record in res.records:
    print(
        f"  round {record.index}: free coordinates after = {record.unfixed_nodes}, "
        f"free families after = {record.unfixed_items}"
    )
print("nucleolus:", [rat_str(v) for v in res.allocation.values])
