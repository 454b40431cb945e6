"""Slide the transmitter along y = 3 with the receiver at the origin.

Prints the analytic bound on the joint event next to the simulated joint
frequency for a short object and a long one.
"""

from metareflect import experiments as ex
from metareflect.montecarlo import SampleSpec

for length in (5.0, 20.0):
    spec = ex.ExperimentSpec(ex.Mode.SWEEP_TX, cfg=ex.REFERENCE_CONFIG, length=length,
                             sample_spec=SampleSpec(200_000, seed=11))
    print(f"object length {length:g} m")
    print(f"{'x_Tx':>5}  {'Pr[same side]':>13}  {'Pr[specular]':>12}  {'bound':>8}  {'MC joint':>8}")
    for row in ex.run_sweep_tx(spec):
        print(f"{row.sweep_value:5g}  {row.pr_e1_a2:13.5f}  {row.pr_e2:12.5f}  "
              f"{row.pr_e3_upper:8.5f}  {row.mc_e3:8.5f}")
    print()
