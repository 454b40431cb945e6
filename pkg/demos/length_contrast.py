"""How object length affects each event for one fixed Tx/Rx pair.

The same-side event does not depend on the object at all beyond its line, so
its probability stays flat.  The specular event needs the mid-perpendicular to
actually cross the segment, so longer objects catch it more often.
"""

from metareflect import analytic, montecarlo
from metareflect.experiments import REFERENCE_CONFIG

cfg = REFERENCE_CONFIG
print(f"network radius {cfg.r_net:g} m, Tx {tuple(cfg.tx)}, Rx {tuple(cfg.rx)}\n")

p1 = analytic.pr_event1_approach2(cfg)
print(f"Pr[same side] = {p1:.6f} for every length\n")

print(f"{'L':>5}  {'Pr[specular]':>12}  {'MC':>9}  {'upper bound, both':>18}")
for length in (1, 5, 10, 15, 20, 25, 30):
    p2 = analytic.pr_event2(cfg, length)
    mc = montecarlo.estimate(cfg, length, montecarlo.SampleSpec(200_000, seed=length))
    print(f"{length:5g}  {p2:12.6f}  {mc.e2.value:9.5f}  {min(p1, p2):18.6f}")
