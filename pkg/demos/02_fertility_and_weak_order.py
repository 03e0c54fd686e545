"""
Fertility (number of preimages under s), computed two ways, and how it moves
along the left and right weak orders.

Run: python demos/02_fertility_and_weak_order.py
"""

from stacksort import FertilityCache, catalan, fertility, format_perm, image_counts, leq_left, leq_right, parse_perm
from stacksort.core_perm import all_perms, split_by_hook, Hook, tail_bound_descents
from stacksort.fertility import preimages_brute

p = parse_perm("426315789")
print("Tail-bound descents of", format_perm(p), "=", tail_bound_descents(p))
u, s = split_by_hook(p, Hook(3, 8))
print("The hook from position 3 to 8 splits it into", format_perm(u), "and", format_perm(s))

cache = FertilityCache()
print("\nFertility of the identity is a Catalan number:")
for n in range(1, 9):
    print(f"  n = {n}: {fertility(tuple(range(1, n + 1)), cache)} (C_n = {catalan(n)})")

target = parse_perm("34125")
print(f"\nPreimages of {format_perm(target)} found by brute force:",
      sorted(format_perm(x) for x in preimages_brute(target)))

n = 7
counts = image_counts(n)
agree = all(fertility(x, cache) == counts.get(x, 0) for x in all_perms(n))
print(f"Recursive fertility equals brute-force counts on all of S_{n}: {agree}")

low, high = parse_perm("31425"), parse_perm("34125")
print(f"\n{format_perm(low)} <=R {format_perm(high)}: {leq_right(low, high)}, "
      f"yet fertilities are {fertility(low)} and {fertility(high)}:")
print("fertility is not antitone on the right weak order.")
a, b = parse_perm("2134"), parse_perm("3124")
print(f"On the left weak order it is: {format_perm(a)} <=L {format_perm(b)} is "
      f"{leq_left(a, b)}, fertilities {fertility(a)} >= {fertility(b)}")
