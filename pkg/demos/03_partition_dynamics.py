"""
sd' through ordered set partitions: each step strips block maxima and merges
what is left. The number of steps equals the number of stack passes needed
before an appended 0 reaches the front.

Run: python demos/03_partition_dynamics.py
"""

from stacksort import ballot_lower_bound, ballot_probability, format_perm, parse_perm, run_dynamics, sd_prime

p = parse_perm("9 12 6 11 4 1 10 7 8 2 5 3")
trace = run_dynamics(p)
print("Permutation:", format_perm(p))
for step, (B, M) in enumerate(zip(trace.partitions, trace.maxima_sets), start=1):
    blocks = " ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in B)
    print(f"  step {step}: {blocks:<42} maxima {sorted(M)}")
print(f"Dynamics halt after {trace.halted_at} steps; sentinel simulation gives sd' = {sd_prime(p)}")

print("\nQuarantine probability for a block of size k followed by q smaller entries (n = 12):")
print("  i_prev  i_m  exact    lower bound")
for i_prev, i_m in [(0, 6), (2, 8), (4, 10), (6, 9)]:
    exact = ballot_probability(12, i_prev, i_m)
    bound = ballot_lower_bound(12, i_prev, i_m)
    print(f"  {i_prev:>6}  {i_m:>3}  {str(exact):<7}  {float(bound):.3f}")
