"""
Batching does not help unambiguous discrimination
=================================================

For two pure qubit states with overlap c, grouping N copies into batches of l
changes the overlap to c**l and the count to N/l, and 1 - c**N is unchanged.
"""
import numpy as np

from sprt_coherent import QubitPair, batched_success_unambiguous, success_unambiguous

n = 12
for theta in np.linspace(0.05, np.pi / 4, 4):
    c = QubitPair(theta).overlap
    row = [batched_success_unambiguous(c, n, l) for l in (1, 2, 3, 4, 6, 12)]
    print(f"c = {c:.4f}: 1 - c^N = {success_unambiguous(c, n):.12f}, batched all equal: {len(set(row)) == 1}")
