"""
Random points as approximate designs
====================================

M Haar-random points are an eps-approximate t-design with probability at
least 1 - delta once M >= (G_{n-1}(t) - 1) / (2 delta eps^2).  The bound is
loose: observed success rates sit well above 1 - delta.
"""

import numpy as np

from toricdesigns import ApproxExperiment, max_deviation, required_M, run_experiment, sample_uniform
from toricdesigns.approx_designs import squared_deviation_stats

C = sample_uniform(3, 200, seed=0)
print("one sample, 200 points:", max_deviation(C, 2))

for n, t in ((2, 1), (3, 2), (4, 2)):
    for eps, delta in ((0.3, 0.1), (0.5, 0.2)):
        M = required_M(n, t, eps, delta)
        res = run_experiment(ApproxExperiment(n, t, eps, delta, M, trials=300, seed=1))
        print(f"n={n} t={t} eps={eps} delta={delta}: M={M:5}  success {res.success_rate:.3f}  (need {1 - delta})")

# Each |mean f_p|^2 has expectation exactly 1/M
stats = squared_deviation_stats(3, 2, 50, trials=2000, seed=2)
print("mean |.|^2 * M:", np.round(stats.mean * 50, 3))
