# Proximal compositions and cocompositions of a function with a linear
# operator: worked values, exact prox formulas, orderings and parameter
# sweeps.

import numpy as np

import proxmix as pm

print("=" * 70)
print("The running scalar example: L = [[0.5]], g = |.|, gamma = 1")
print("=" * 70)

spec = pm.CompositionSpec(pm.DenseMap([[0.5]]), pm.L1Norm(1), 1.0)

co = pm.eval_cocomposition(spec, [1.0])
print(f"\ncocomposition at x=1:  {co.value:.9f}   (exact value 1/6)")
comp = pm.eval_composition(spec, [0.5])
print(f"composition at x=0.5:  {comp.value:.9f}   (exact value 1.375)")

print(f"\nprox of the scaled composition at x=4:    {pm.prox_composition(spec, [4.0])}")
print(f"prox of the scaled cocomposition at x=2:  {pm.prox_cocomposition(spec, [2.0])}")
p, s = pm.subgradient_witness_cocomposition(spec, [2.0])
print(f"subgradient witness at x=2: point {p}, slope {s}")

print("\n" + "=" * 70)
print("Projection operators: the two compositions split cleanly")
print("=" * 70)
proj = pm.DenseMap([[1.0, 0.0], [0.0, 0.0]])
pspec = pm.CompositionSpec(proj, pm.EuclideanNorm(2), 1.0)
print(f"cocomposition at (3,4): {pm.eval_cocomposition(pspec, [3.0, 4.0]).value:.6f}"
      "  -> the norm of the projected point")
print(f"composition at (3,0):   {pm.eval_composition(pspec, [3.0, 0.0]).value:.6f}"
      "  -> finite on the subspace")
print(f"composition at (3,4):   {pm.eval_composition(pspec, [3.0, 4.0]).value}"
      "      -> infinite off it")

print("\n" + "=" * 70)
print("Ordering: envelope(g)(Lx) <= cocomposition <= g(Lx) <= ... <= composition")
print("=" * 70)
x = np.array([1.0])
w = spec.operator.apply(x)
print(f"envelope collapse : {pm.envelope(spec.fn, 1.0, w):.6f}")
print(f"cocomposition     : {pm.eval_cocomposition(spec, x).value:.6f}")
print(f"composed value    : {float(spec.fn(w)):.6f}")
print(f"composition       : {pm.eval_composition(spec, x).value:.6f}")

print("\n" + "=" * 70)
print("Both values shrink as the parameter grows, toward known limits")
print("=" * 70)
sweep = pm.gamma_sweep(spec.operator, spec.fn, [1.0], [2.0**k for k in range(-4, 9, 2)])
print(f"{'gamma':>10} {'composition':>14} {'cocomposition':>14}")
for gamma, c, cc in zip(sweep.gammas, sweep.composition, sweep.cocomposition):
    print(f"{gamma:>10.4g} {c:>14.6f} {cc:>14.6f}")
print(f"monotone flags: composition={sweep.composition_monotone}, "
      f"cocomposition={sweep.cocomposition_monotone}")

large = pm.limit_large_gamma(
    spec.operator, spec.fn, [0.5], [2.0**k for k in range(0, 11, 2)],
    which="composition",
)
print(f"\ncomposition tail -> fiber infimum {large.target:.4f} "
      f"(final gap {large.final_gap:.2e})")
small = pm.limit_small_gamma(spec.operator, spec.fn, [1.0], [2.0**-k for k in range(0, 11, 2)])
print(f"cocomposition gaps to g(Lx) stay within gamma/2: {small.within_bounds}")

print("\n" + "=" * 70)
print("Minimizing the cocomposition through its smooth collapse")
print("=" * 70)
shifted = pm.CompositionSpec(pm.DenseMap([[0.5]]), pm.L1Norm(1).translate([1.0]), 0.5)
rep = pm.argmin_cocomposition(shifted)
print(f"argmin of the shifted example: {rep.argpoint} (expected 2), "
      f"value {rep.value:.2e}")
seq = pm.argmin_gamma_sequence(
    shifted.operator, shifted.fn, [2.0**-n for n in range(13)], reference=0.0
)
print(f"infima along a shrinking parameter sequence converge: "
      f"final gap {seq.final_gap:.2e}")
