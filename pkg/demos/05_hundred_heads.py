"""The classical coin protocol that reports "100 heads".

Recording +-200 instead of +-1 for each coin produces a mean of 100.  That is
an ordinary average of a variable taking the values +-200, far inside its
own range.
"""
from weakmeas import (
    AmplitudePair,
    ClassicalModelParams,
    binomial_sigma,
    classify_weak,
    fc_monte_carlo,
    fc_rescaled_average,
    fc_route_probabilities,
    normality_audit,
)

params = ClassicalModelParams(lam=1 / 200, delta=0.99)
p1, p2 = fc_route_probabilities(params)
print(f"route probabilities P1 = {p1:.4f}, P2 = {p2:.4f}")
print(f"exact mean of s/lam  = {fc_rescaled_average(params):.6f}")

report = fc_monte_carlo(params, 10**6, seed=42)
print(f"Monte Carlo (1e6)    = {report.sample_mean_rescaled:.4f} "
      f"+- {binomial_sigma(params, 10**6):.4f}, bound +-{report.bound:g}")

raw = fc_monte_carlo(params, 10**6, seed=42, raw=True)
print(f"same coins, recorded as +-1: {raw.sample_mean_rescaled:.4f}")

audit = normality_audit(params)
quantum = classify_weak(AmplitudePair(101j, -99j))
print(f"\nclassical audit: mean {audit.mean:.3f} over values +-{params.bound:g} -> {audit.kind.value}")
print(f"quantum weak value: mean {quantum.mean:.3f} over values +-1 -> {quantum.kind.value}")
