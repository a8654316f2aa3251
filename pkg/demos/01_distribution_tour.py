"""A tour of the unit Shiha distribution.

Walks through density/CDF/hazard evaluation, moments and shape measures,
quantiles, entropy, stress-strength reliability, and random variates, and
writes plot-ready CSV columns for each curve into ``demo_output/``.
"""

import csv
from pathlib import Path

import numpy as np

from unitshiha import (
    MomentSummary,
    StressStrengthInput,
    UShParams,
    ush_cdf,
    ush_entropy,
    ush_hazard,
    ush_moment_summary,
    ush_pdf,
    ush_quantile,
    ush_sample,
    ush_stress_strength,
)

OUT = Path(__file__).parent / "demo_output"
OUT.mkdir(exist_ok=True)


def save_columns(name, header, columns):
    with open(OUT / name, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(zip(*columns))
    print(f"  wrote {OUT / name}")


print("= Shapes =")
print("The two shape parameters control skew and dispersion: omega < 1 gives")
print("right-skewed densities, omega > 1 left-skewed, and larger eta")
print("concentrates the mass while thickening the tails.\n")

grid = np.linspace(0.002, 0.998, 400)
shape_sets = [(0.5, 0.4), (1.0, 0.4), (1.5, 0.4), (3.0, 2.0)]
pdf_cols, haz_cols = [grid], [grid]
for w, e in shape_sets:
    p = UShParams(w, e)
    pdf_cols.append(ush_pdf(grid, p))
    haz_cols.append(ush_hazard(grid, p))
    s = ush_moment_summary(p)
    print(f"omega={w:<4} eta={e:<4} mean={s.mean:.3f} var={s.variance:.3f} "
          f"skew={s.skewness:+.3f} kurt={s.kurtosis:.3f} "
          f"entropy={ush_entropy(p):+.4f}")

labels = [f"w{w}_e{e}" for w, e in shape_sets]
save_columns("tour_pdf.csv", ["x"] + labels, pdf_cols)
save_columns("tour_hazard.csv", ["x"] + labels, haz_cols)

print("\n= Quantiles =")
p = UShParams(1.0, 0.4)
for prob in (0.01, 0.25, 0.5, 0.75, 0.99):
    x = ush_quantile(prob, p)
    print(f"  Q({prob:.2f}) = {x:.4f}   (round trip F(Q) = {ush_cdf(x, p):.6f})")

print("\n= Stress-strength reliability =")
strength = UShParams(1.2, 0.5)
stress = UShParams(0.7, 1.1)
r = ush_stress_strength(StressStrengthInput(strength=strength, stress=stress))
print(f"  P(stress < strength) = {r:.4f}")
print(f"  swapped arguments    = {1 - r:.4f}  (antisymmetry)")

print("\n= Sampling =")
sample = ush_sample(50_000, p, seed=42)
s = ush_moment_summary(p)
print(f"  50k draws: mean {sample.values.mean():.4f} (theory {s.mean:.4f}), "
      f"var {sample.values.var():.4f} (theory {s.variance:.4f})")
save_columns("tour_sample.csv", ["draw"], [sample.values[:2000]])
