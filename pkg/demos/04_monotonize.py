"""
Making a strategy monotone
==========================

A strategy is monotone when the Robber's space never grows back.  The
brute solver can be told to prefer leaky moves.  ``monotonize`` repairs
such a strategy and the result is strictly smaller.
"""

from treeproj import Hypergraph, brute_solve, is_monotone, monotonize, strategy_size, verify_strategy

h1 = Hypergraph(["AB", "AC", "AD", "BC", "BD"])
h2 = Hypergraph(["ABC", "ABD", "CD"])

leaky = None
for seed in range(50):
    t = brute_solve(h1, h2, bias="nonmonotone", seed=seed)
    if not is_monotone(t, h1):
        leaky = t
        print("seed", seed, "gives a winning but leaky strategy")
        break


def walk(v, depth=0):
    print("  " * depth + "".join(sorted(v.cops)) + " | " + "".join(sorted(v.component)))
    for c in v.children:
        walk(c, depth + 1)


walk(leaky.root)
print("winning:", verify_strategy(leaky, h1, h2), " size:", strategy_size(leaky))

fixed = monotonize(leaky, h1, h2)
print()
walk(fixed.root)
print("monotone:", is_monotone(fixed, h1), " winning:", verify_strategy(fixed, h1, h2),
      " size:", strategy_size(fixed))
