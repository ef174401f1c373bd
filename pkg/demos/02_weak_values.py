"""Route amplitudes, strong averages and weak values of a qubit.

Between preparation in psi and post-selection in phi the spin can pass
through |up> (S = +1) or |down> (S = -1).  An accurate meter sees
probabilities |A_i|^2; an inaccurate one sees the amplitudes themselves.
"""
import math

from weakmeas import (
    AmplitudePair,
    QubitState,
    classify_weak,
    strong_average,
    transition_amplitudes,
    weak_value,
)

r = 1 / math.sqrt(2)
psi = QubitState(r, r)
print("phi = psi:")
amps = transition_amplitudes(psi, psi)
print(f"  A = ({amps.a1:.3f}, {amps.a2:.3f}); strong {strong_average(amps):+.4f}, "
      f"weak {weak_value(amps).weak_value:+.4f} ({classify_weak(amps).kind.value})")

print("\nA_2/A_1 = -99/101, both imaginary:")
amps = AmplitudePair(101j, -99j)
wv = weak_value(amps)
print(f"  strong average    {strong_average(amps):+.6f}")
print(f"  weak value        {wv.weak_value:+.6f}")
print(f"  quasi-probs       P1 = {wv.quasi_p1:+g}, P2 = {wv.quasi_p2:+g}")
print(f"  classification    {classify_weak(amps).kind.value}")

print("\nSweeping post-selection towards the state orthogonal to psi:")
for eps in (0.5, 0.1, 0.02, 0.005):
    phi = QubitState.normalized(r + eps, -r)
    amps = transition_amplitudes(psi, phi)
    print(f"  eps={eps:<6} strong {strong_average(amps):+.4f}   weak {weak_value(amps).weak_value:+10.3f}")
