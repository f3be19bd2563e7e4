"""
Optimal batch size for an asymmetric pair
=========================================

alpha = 0.00005, beta = 0.2, theta0 = 0.2, theta1 = -0.1, N = 100. The
closed-form success probability peaks at an interior l, and the
zeroth-order estimate l_opt = N + (log A + log B) / (4 (theta1^2 - theta0^2))
lands next to the grid maximum.

The closed form treats theta1^2 - theta0^2 as a per-run constant. The exact
law of Z after N/l batches, shown for contrast, does not depend on l.
"""
import numpy as np

from _plotting import get_pyplot, save
from sprt_coherent import BatchProblem, ErrorBudget, analyze, batch_hypotheses
from sprt_coherent.gaussian_hypotheses import stop_prob_h0_exact, stop_prob_h1_exact

prob = BatchProblem(100, 0.2, -0.1, ErrorBudget(0.00005, 0.2))
an = analyze(prob)
print(f"case {an.best.case.value}: argmax l = {an.best.l}, p_s = {an.best.p_s:.6f}, "
      f"l_opt = {an.l_opt:.3f}")

ls = np.arange(1, prob.n_total + 1)
exact = [0.5 * stop_prob_h0_exact(batch_hypotheses(0.2, -0.1, l), prob.n_total / l, prob.log_a)
         + 0.5 * stop_prob_h1_exact(batch_hypotheses(0.2, -0.1, l), prob.n_total / l, prob.log_b)
         for l in ls]
print("exact-law p_s spread over l:", np.ptp(exact))

plt = get_pyplot()
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ls, an.curve, label="closed form")
    ax.plot(ls, exact, ls="--", label="exact law of Z")
    ax.axvline(an.l_opt, color="gray", ls=":", label="l_opt")
    ax.set_xlabel("l")
    ax.set_ylabel("P_S")
    ax.legend()
    save(fig, "optimal_batch.png")
