"""
Concentrating l copies into one mode
====================================

A chain of beam splitters with T_j = j/(j+1) folds l copies of |gamma> into
|sqrt(l) gamma> and leaves vacuum everywhere else. Homodyne detection of the
concentrated mode sees mean sqrt(l) q_gamma and the same variance 1/4.
"""
import math

from sprt_coherent import CoherentAmplitude, accumulate, accumulation_chain, homodyne_model_for

gamma = CoherentAmplitude(0.1, 0.05)
for l in (1, 2, 4, 9, 16):
    acc, residual = accumulate(gamma, l)
    worst = max((abs(r) for r in residual), default=0.0)
    hm = homodyne_model_for(acc)
    print(f"l={l:>2}: mode = ({acc.q:.6f}, {acc.p:.6f})  sqrt(l)*q = {math.sqrt(l) * gamma.q:.6f}  "
          f"max residual = {worst:.1e}  homodyne var = {hm.variance}")

print([(round(s.transmissivity, 4), round(s.reflectivity, 4)) for s in accumulation_chain(5)])
