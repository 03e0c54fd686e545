"""
Average depth at desk scale: exact averages for small n, then seeded Monte
Carlo estimates at n = 400 for sd', revstack and Pop depths, and the largest
right-to-left-maxima block.

Run: python demos/04_average_depth_estimates.py [--samples K] [--workers W]
"""

import argparse

from stacksort import estimate, exact_depth_average

parser = argparse.ArgumentParser()
parser.add_argument("--samples", type=int, default=1000)
parser.add_argument("--workers", type=int, default=1)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

print("Exact averages over S_n (divided by n):")
for n in range(1, 9):
    d, dp = exact_depth_average(n), exact_depth_average(n, prime=True)
    print(f"  n = {n}: sd {float(d) / n:.4f}   sd' {float(dp) / n:.4f}")

print(f"\nMonte Carlo at n = 400, {args.samples} samples, seed {args.seed}:")
for stat in ("sd_prime", "revstack_depth", "pop_depth", "max_block"):
    r = estimate(stat, 400, args.samples, args.seed, args.workers)
    print(f"  {stat:<15} mean {r.mean:.4f}  stddev {r.stddev:.4f}  "
          f"95% CI [{r.ci95[0]:.4f}, {r.ci95[1]:.4f}]")
print("Generator:", r.generator)

print("\nsd'/n across sizes (the conjectured limit lies in (0.77, 0.81)):")
for n in (100, 200, 400):
    r = estimate("sd_prime", n, args.samples, args.seed, args.workers)
    print(f"  n = {n:>3}: {r.mean:.4f} +/- {1.96 * r.stderr:.4f}")
