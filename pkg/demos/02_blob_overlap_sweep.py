"""
Sweeping class overlap with one knob
====================================

The blobsd shape pins two Gaussian clusters 10 apart and exposes their
standard deviation as ``cluster_sd``.  Small sd means two tight distant
clouds; large sd makes the clouds swallow each other.  Sweeping sd from
1 to 9 walks the dataset from trivially separable to thoroughly mixed,
which is a good stress test for any separability score.

The index supports two, two-sample statistics for comparing the
within-class and between-class distance distributions:

* ks          the largest vertical gap between the two empirical CDFs
* wasserstein the area between the CDFs, normalized by the value range

Both must fall as overlap grows.  The KS variant reacts over a wider
range, which makes it the better default for ranking datasets.
"""

from separability import GeneratorSpec, dsi, generate

N_PER_CLASS = 300

print(f"{'cluster_sd':>10} {'dsi (ks)':>10} {'dsi (wasserstein)':>18}")
print("-" * 42)

ks_values = []
w_values = []
for sd in range(1, 10):
    ds = generate(GeneratorSpec("blobsd", N_PER_CLASS, seed=0, cluster_sd=float(sd)))
    ks = dsi(ds, stat="ks").dsi
    w = dsi(ds, stat="wasserstein").dsi
    ks_values.append(ks)
    w_values.append(w)
    print(f"{sd:>10} {ks:>10.4f} {w:>18.4f}")

print()
print(f"KS spans          {max(ks_values) - min(ks_values):.3f}")
print(f"Wasserstein spans {max(w_values) - min(w_values):.3f}")
# The KS column drops from ~1 toward ~0.1 while the normalized
# Wasserstein column compresses into a narrower band: same ordering,
# less resolution.
