"""Simulated frequencies converge on the analytic values.

The simulation is reproducible: a seed fixes every draw, and splitting the
work across threads gives identical counts.
"""

from metareflect import analytic, montecarlo
from metareflect.experiments import REFERENCE_CONFIG

cfg, length = REFERENCE_CONFIG, 10.0
exact1 = analytic.pr_event1_approach2(cfg)
exact2 = analytic.pr_event2(cfg, length)

for n in (10**3, 10**4, 10**5, 10**6):
    rep = montecarlo.estimate(cfg, length, montecarlo.SampleSpec(n, seed=5))
    print(f"n={n:>8}  same side {rep.e1.value:.5f} ({(rep.e1.value - exact1) / rep.e1.std_err:+.2f} se)  "
          f"specular {rep.e2.value:.5f} ({(rep.e2.value - exact2) / rep.e2.std_err:+.2f} se)")

single = montecarlo.estimate(cfg, length, montecarlo.SampleSpec(10**6, seed=5, workers=1))
multi = montecarlo.estimate(cfg, length, montecarlo.SampleSpec(10**6, seed=5, workers=4))
print("\nthread count changes the counts:", single.counts != multi.counts)
