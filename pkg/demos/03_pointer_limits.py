"""A von Neumann pointer between the strong and weak regimes.

The mean pointer reading slides from the strong average (narrow pointer) to
the weak value (wide pointer).  For the -99/101 amplitudes the slide is slow:
the routes nearly cancel, so the pointer has to be very wide before the
mean reaches 100.
"""
import numpy as np

from weakmeas import AmplitudePair, PointerConfig, mean_reading, pure_reading_density, sample_readings

amps = AmplitudePair(101j, -99j)
print(f"{'width':>10} {'mean reading':>14}")
for df in np.geomspace(0.01, 3000, 12):
    print(f"{df:10.3g} {mean_reading(amps, PointerConfig.auto(df)):14.6f}")

# The density is an ordinary nonnegative density throughout.
dens = pure_reading_density(amps, PointerConfig.auto(100.0))
print(f"\nwidth 100: min p = {dens.density.min():.3g}, integral = {dens.integral():.12f}, "
      f"std = {np.sqrt(dens.variance()):.1f}")

# Single readings are all over the place; only the mean is 80-ish.
x = sample_readings(amps, PointerConfig.auto(100.0), n=100_000, seed=1)
print(f"100000 readings: first five {np.round(x[:5], 1)}, sample mean {x.mean():.2f} "
      f"+- {x.std() / np.sqrt(x.size):.2f}")
