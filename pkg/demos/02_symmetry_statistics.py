"""From cell probabilities to symmetry statistics.

The Hadamard transform re-expresses a cell-probability vector as one
constant coordinate (always 1) plus 2**d - 1 orthogonal contrasts.  Each
contrast row compares a +1 group of cells against a -1 group, so each
symmetry statistic isolates one interpretable mode of non-uniformity:
left/right imbalance, center vs tails, finer alternations, and so on.
"""

import numpy as np

from august import CellProbabilities, fwht, row_label, symmetry_statistics, sylvester

depth = 2
print(f"Sylvester Hadamard matrix at depth {depth}:")
print(sylvester(depth))
print()

probs = CellProbabilities(np.array([0.35, 0.40, 0.15, 0.10]), depth)
sv = symmetry_statistics(probs)
print(f"cell probabilities: {probs.probs}")
print(f"symmetry statistics: {sv.stats}")
print()
for i, value in enumerate(sv.stats):
    row = i + 2
    print(f"  row {row}: {value:+.2f}   {row_label(depth, row)}")
print()
print("The 0.50 on row 3 says: the first half of the cells holds far more")
print("mass than the second half, a strong left/right (location) signal.")
print()

# fwht is the fast version of multiplying by the matrix.
v = np.array([0.35, 0.40, 0.15, 0.10])
print(f"fwht(v)        = {fwht(v)}")
print(f"H @ v          = {sylvester(depth) @ v}")

# Uniform cells carry no signal at all.
uniform = CellProbabilities(np.full(4, 0.25), depth)
print(f"uniform cells -> {symmetry_statistics(uniform).stats}")
