"""How fast the weighted node product decays with N, for several r.

max_s s^r prod |(s - a_k)/(s + a_k)| should fall like exp(-pi sqrt(N r)).
The fitted slope in sqrt(N) lands within a few percent of -pi sqrt(r) for
every r tried, r >= 1 included.  The constant in front is another story:
it grows with r, to roughly 1e2 by r = 3.
"""
import math

from ganelius.verify import decay_fit, ganelius_lhs

Ns = [m * m for m in range(2, 13)]
for r in (0.25, 0.5, 1.0, 1.5, 3.0):
    vals = [ganelius_lhs(N, r) for N in Ns]
    scaled = [v * math.exp(math.pi * math.sqrt(N * r)) for N, v in zip(Ns, vals)]
    print(f"r = {r:4}: slope {decay_fit(Ns, vals):7.3f} (target {-math.pi * math.sqrt(r):7.3f}), "
          f"scaled in [{min(scaled):6.1f}, {max(scaled):6.1f}]")
