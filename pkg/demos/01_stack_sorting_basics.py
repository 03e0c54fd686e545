"""
Stack-sorting basics: one pass through a stack, its iterates, and how many
passes a permutation needs.

Run: python demos/01_stack_sorting_basics.py
"""

from collections import Counter

from stacksort import all_perms, format_perm, iterate, parse_perm, pop_stack, revstack, sd, stack_sort
from stacksort.sorting_maps import stack_sort_recursive

p = parse_perm("4162")
print("One pass of the stack sends", format_perm(p), "to", format_perm(stack_sort(p)))
print("The recursive rule s(LmR) = s(L)s(R)m agrees:", format_perm(stack_sort_recursive(p)))

print("\nIterating until sorted:")
for t in range(sd(p) + 1):
    print(f"  s^{t} = {format_perm(iterate(p, t))}")

q = parse_perm("5273614")
print(f"\nsd({format_perm(q)}) = {sd(q)}; the image always ends with the maximum:",
      format_perm(stack_sort(q)))

print("\nDistribution of sd over S_7 (permutations needing t passes):")
hist = Counter(sd(x) for x in all_perms(7))
for t in sorted(hist):
    print(f"  t = {t}: {hist[t]}")
print("Only permutations ending in '7 1' need the full n - 1 = 6 passes:", hist[6])

r = parse_perm("7634512")
print("\nPop reverses descending runs:", format_perm(r), "->", format_perm(pop_stack(r)))
print("revstack applies s to the reversal:", format_perm(r), "->", format_perm(revstack(r)))
