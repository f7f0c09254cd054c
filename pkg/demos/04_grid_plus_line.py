"""A grid of lines plus one more line: free iff the line meets n grid points."""

import random

from freemult import GF, GridLineSpec, char_poly, grid_line_arrangement, grid_line_free, yoshinaga3_free
from freemult.restriction import grid_points_on_line

F = GF(11)
rng = random.Random(0)
for _ in range(8):
    n = rng.randint(1, 3)
    G = GridLineSpec(rng.sample(range(11), n), rng.sample(range(11), n),
                     (rng.randrange(1, 11), rng.randrange(1, 11), rng.randrange(11)), F)
    A = grid_line_arrangement(G)
    q = len(grid_points_on_line(G))
    print(f"n={n} q={q} free={grid_line_free(G)} rank-3 test={yoshinaga3_free(A, len(A) - 1)} chi={char_poly(A)}")

# a free one on purpose: the diagonal x + y = 0 through (1,-1), (2,-2)
G = GridLineSpec((1, 2), (-1, -2), (1, 1, 0))
print(grid_line_free(G), char_poly(grid_line_arrangement(G)).factorization())
