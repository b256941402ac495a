# Tour of the finite-field layer: towers, traces, dual bases, linearized maps.
#
# Elements are plain integer codes; the integer's base-p digits are the
# coordinates over the base subfield, least-significant first.

import numpy as np

from agrepair.gf import LinearizedMap, tower, trace_reconstruct

# GF(64) presented as a quadratic extension of GF(8): codes below 8 *are* GF(8)
f64 = tower(8, 2)
print(f64, "modulus:", f64.modulus)
print("generator of the multiplicative group:", f64.generator)

x = f64.element(8)  # the adjoined root
print("x * x =", (x * x).code, "(reduction by the modulus)")
print("digits of code 34:", f64.digits(34), "(= 2 + 4*8, least-significant first)")

# the trace lands in the base subfield
traces = sorted({f64.trace(a) for a in range(64)})
print("trace values:", traces, "-- all below p =", f64.p)

# dual basis: trace(zeta_i * theta_j) is the identity pattern
print("polynomial basis:", f64.zeta, "trace-dual basis:", f64.theta)
for i, zi in enumerate(f64.zeta):
    row = [f64.trace(f64.mul(zi, tj)) for tj in f64.theta]
    print(f"  trace(zeta_{i+1} * theta_j) = {row}")

# the trace representation rebuilds any element from t subfield symbols
alpha = 53
coords = [f64.trace(f64.mul(alpha, z)) for z in f64.zeta]
print(f"alpha={alpha} -> trace coordinates {coords} -> ",
      trace_reconstruct(coords, f64).code)

# linearized maps: kernel V, image of codimension dim(V)
lin = LinearizedMap(f64, [f64.theta[0]])
print("kernel size:", len(lin.kernel), " image size:", len(lin.image()),
      " normaliser c:", lin.c)
assert all(lin(v) == 0 for v in lin.kernel)

# the map is linear over GF(8): L(a*x + y) = a*L(x) + L(y) for a in GF(8)
rng = np.random.default_rng(0)
for _ in range(100):
    a = int(rng.integers(8))
    u, v = (int(z) for z in rng.integers(0, 64, size=2))
    lhs = lin(f64.add(f64.mul(a, u), v))
    rhs = f64.add(f64.mul(a, lin(u)), lin(v))
    assert lhs == rhs
print("subfield-linearity spot-checked on 100 random samples")
