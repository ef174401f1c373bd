"""Classical uncertainty in the pointer setting.

An accurate pointer whose initial position is only known up to a symmetric
spread W gives widely scattered readings, but their mean is still the
strong average.
"""
from weakmeas import AmplitudePair, MixtureSpec, PointerConfig, mixed_reading_density, strong_average

amps = AmplitudePair(101j, -99j)
cfg = PointerConfig.auto(0.01)
print(f"strong average: {strong_average(amps):.6f}")
for form in ("gaussian", "uniform"):
    for width in (0.0, 1.0, 5.0, 20.0):
        d = mixed_reading_density(amps, cfg, MixtureSpec(width, form))
        print(f"  {form:8} width {width:5.1f}: mean {d.mean():+.6f}, variance {d.variance():9.3f}")
