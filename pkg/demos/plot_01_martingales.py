"""
SPRT martingales for batched coherent states
============================================

N = 100 copies, theta0 = 0.1, theta1 = -0.1, alpha = 0.01, beta = 0.05, and
the data generated under hypothesis 0. For batch sizes l = 1..4 we draw
1000 trajectories of Z_n over floor(N/l) batches and compare three numbers:

* the closed-form probability that Z at the horizon is above log A,
* the simulated fraction of paths with Z at the horizon above log A,
* the simulated fraction whose *first* boundary hit is log A (what a
  sequential test that stops on crossing actually does).
"""
import numpy as np

from _plotting import get_pyplot, save
from sprt_coherent import BatchProblem, ErrorBudget, SimulationConfig, run_simulation
from sprt_coherent.montecarlo import closed_form_prediction, drift_per_step

prob = BatchProblem(100, 0.1, -0.1, ErrorBudget(0.01, 0.05))

# %%
# Simulate and tabulate.
results = {}
print(f"{'l':>2} {'closed':>8} {'horizon':>8} {'first-hit':>9} {'slope':>7} {'E0[z]':>7}")
for l in (1, 2, 3, 4):
    cfg = SimulationConfig(seed=2024, trajectories=1000, truth=0, prob=prob, l=l)
    res = run_simulation(cfg, keep_paths=True)
    results[l] = res
    slope = np.polyfit(np.arange(1, cfg.horizon + 1), res.mean_path, 1)[0]
    print(f"{l:>2} {closed_form_prediction(cfg):8.4f} {res.horizon_estimate.point:8.4f} "
          f"{res.first_crossing_estimate.point:9.4f} {slope:7.4f} {drift_per_step(cfg):7.4f}")

# %%
# The paths drift upwards at E0[z] per batch; the mean path is nearly straight.
plt = get_pyplot()
if plt is not None:
    fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharey=True)
    for ax, (l, res) in zip(axes.ravel(), results.items()):
        n = np.arange(1, res.paths.shape[1] + 1)
        ax.plot(n, res.paths[:200].T, color="lightsteelblue", lw=0.4)
        ax.plot(n, res.mean_path, color="navy", lw=2)
        ax.axhline(prob.log_a, color="k", ls="--")
        ax.axhline(prob.log_b, color="k", ls=":")
        ax.set_title(f"l = {l}")
    save(fig, "martingales.png")
