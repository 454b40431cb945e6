"""The same-side probability computed two independent ways.

One integrates over the orientation of the object in the frame of the Tx-Rx
line, the other over orientation using only the projections of Tx and Rx.
They should agree to quadrature accuracy for any pair of points.
"""

import time

from metareflect import analytic
from metareflect.experiments import random_configs

configs = random_configs(30.0, 20, seed=3)
start = time.perf_counter()
worst = 0.0
for cfg in configs:
    a1 = analytic.pr_event1_approach1(cfg)
    a2 = analytic.pr_event1_approach2(cfg)
    worst = max(worst, abs(a1 - a2))
    print(f"tx=({cfg.tx.x:7.3f},{cfg.tx.y:7.3f})  rx=({cfg.rx.x:7.3f},{cfg.rx.y:7.3f})  "
          f"{a1:.10f}  {a2:.10f}")
print(f"\nworst disagreement {worst:.2e} in {time.perf_counter() - start:.2f}s")
