"""Small-scale Monte Carlo study of the maximum-likelihood estimator.

Runs a reduced version of the estimator-quality protocol (sample, fit,
bootstrap interval, repeat) on two parameter points and prints the
bias/MSE/MRE/coverage/convergence table.  The full desk-scale grid lives in
the acceptance suite; the publication-scale preset is available through
the library and the `unitshiha simulate` command.
"""

import time

from unitshiha import SimConfig, UShParams, run_study
from unitshiha.report import render_simulation_table

config = SimConfig(
    true_params=(UShParams(0.6, 0.2), UShParams(2.0, 1.4)),
    sample_sizes=(30, 100, 200),
    replications=100,
    bootstrap_resamples=50,
    seed=12345,
)

t0 = time.time()
results = run_study(config)
print(render_simulation_table(results))
print(f"\n[{len(results)} cells, {config.replications} replications each, "
      f"{time.time() - t0:.0f}s]")

print("""
Reading the table: the omega estimator is nearly unbiased and its MSE
shrinks roughly like 1/n.  The eta estimator is weakly identified -- for a
noticeable fraction of samples the likelihood keeps rising along the
large-eta ridge and the fit pins the box bound, which dominates its bias
and MSE columns and drags the bootstrap coverage below nominal.  That is a
genuine feature of this model at these sample sizes, not an optimizer
artifact: the profile likelihood is monotone in eta for those samples.
""")
