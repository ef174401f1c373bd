"""Normal and anomalous averages.

An average over nonnegative probabilities can never leave the range of the
values being averaged.  Allow one weight to go negative, keep the sum at one,
and the mean can land anywhere.
"""
import numpy as np

from weakmeas import SignedDistribution, classify_average

# Two outcomes +1 and -1, weights 1001 and -1000.
d = SignedDistribution((1.0, -1.0), (1001.0, -1000.0))
c = classify_average(d)
print(f"weights {d.weights} -> mean {c.mean:g} ({c.kind.value})")

# The bigger the cancelling weights, the further the mean runs away.
for big in (1, 10, 100, 1000, 10_000):
    c = classify_average(SignedDistribution((1.0, -1.0), (big + 1.0, -float(big))))
    print(f"  P1 = {big + 1:>6}, P2 = {-big:>7}: mean = {c.mean:>8g}  {c.kind.value}")

# Random nonnegative weights: always normal.
rng = np.random.default_rng(0)
values = (3.0, 1.0, -0.5, -2.0)
kinds = set()
for _ in range(1000):
    w = rng.random(4)
    kinds.add(classify_average(SignedDistribution(values, tuple(w / w.sum()))).kind.value)
print("1000 random nonnegative weightings ->", kinds)
