"""Explaining a rejection: ranked rows and shaded regions.

After a rejection, the largest symmetry statistics name the dominant
asymmetries.  For each top row we cut the reference sample into 2**d
equal-count intervals and shade the intervals where the row pattern says
the other sample is over-represented.  The emitted JSON file contains
everything a plotting layer needs: histogram bins plus shaded intervals.
"""

import numpy as np

from august import (
    august_plus,
    emit_plot_data,
    rank_symmetries,
    read_plot_data,
    region_report,
    row_label,
)

rng = np.random.default_rng(11)
m, n, depth = 400, 400, 3

# x is centrally concentrated relative to y.
x = 0.45 * rng.standard_normal(m)
y = rng.standard_normal(n)

result = august_plus(x, y, depth)
print(f"S = {result.statistic:.4f}")
print()
print("rows of s_x ranked by |value| (reference sample: y):")
for row_index, pattern, value in rank_symmetries(result, reference="y"):
    print(f"  row {row_index}: {value:+.4f}  pattern {pattern}  "
          f"[{row_label(depth, row_index)}]")
print()

reports = region_report(result, x, y, reference="y", top_k=2)
top = reports[0]
print(f"strongest contrast: row {top.row_index} ({row_label(depth, top.row_index)})")
print("reference-quantile regions (shaded = excess of x):")
for (lo, hi), shaded in zip(top.intervals, top.shaded):
    marker = "##" if shaded else "  "
    print(f"  [{lo:+8.3f}, {hi:+8.3f}) {marker}")

path = "plot-data.json"
emit_plot_data(reports, y, path, histogram_bins=24)
parsed = read_plot_data(path)
print()
print(f"wrote {path}: histogram with {len(parsed['histogram']['counts'])} bins, "
      f"{len(parsed['reports'])} region reports (round-trips losslessly)")
