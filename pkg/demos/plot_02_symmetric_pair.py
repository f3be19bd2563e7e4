"""
The symmetric pair {|gamma>, |-gamma>}
======================================

When theta0 = -theta1 the reduced Erf arguments contain no l, so every batch
size gives the same success probability. A simulation at two batch sizes
agrees within its error bars.
"""
import numpy as np

from sprt_coherent import BatchProblem, ErrorBudget, SimulationConfig, estimate_horizon_prob, success_curve

prob = BatchProblem(100, 0.1, -0.1, ErrorBudget(0.01, 0.05))
curve = success_curve(prob)
print("p_s over l = 1..100: min %.15f  max %.15f" % (curve.min(), curve.max()))

for l in (1, 10):
    est = estimate_horizon_prob(SimulationConfig(7, 20000, 0, prob, l))
    print(f"l={l:>2}: simulated P0 = {est.point:.4f} +- {est.stderr:.4f}")
print("spread:", np.ptp(curve))
