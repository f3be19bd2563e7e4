"""
Three regimes of P_S(l)
=======================

Case I never beats a coin flip, case II has a single interior maximum, and
case III saturates between l_min and l_max. The case III instance needs a
very small alpha: the saturated band only fits inside [0, N] when
N (theta0 - theta1)^2 stays below roughly (log A + log B) / 4.
"""
from _plotting import get_pyplot, save
from sprt_coherent import BatchProblem, ErrorBudget, analyze

examples = {
    "I": BatchProblem(10, 0.01, 0.0, ErrorBudget(0.01, 0.01)),
    "II": BatchProblem(100, 0.2, -0.1, ErrorBudget(0.00005, 0.2)),
    "III": BatchProblem(1000, 1.0, 0.8, ErrorBudget(1e-28, 0.02)),
}
analyses = {}
for name, prob in examples.items():
    an = analyses[name] = analyze(prob)
    print(f"{name:>3}: classified {an.best.case.value:>3}, best l = {an.best.l:>4}, "
          f"p_s = {an.best.p_s:.5f}, l_opt = {an.l_opt}, l_min = {an.l_min}, l_max = {an.l_max}")

plt = get_pyplot()
if plt is not None:
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
    for ax, (name, an) in zip(axes, analyses.items()):
        ax.plot(range(1, len(an.curve) + 1), an.curve)
        for edge in (an.l_min, an.l_max):
            if edge is not None:
                ax.axvline(edge, color="gray", ls=":")
        ax.set_title(f"case {name}")
        ax.set_xlabel("l")
    save(fig, "regimes.png")
