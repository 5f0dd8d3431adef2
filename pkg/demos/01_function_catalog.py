# A tour of the convex function catalog: values, proximity operators,
# conjugates and the identities tying them together.

import numpy as np

import proxmix as pm

print("=" * 70)
print("Catalog atoms and their exact first-order oracles")
print("=" * 70)

x = np.array([2.0, -0.5])

l1 = pm.L1Norm(2)
print(f"\nl1 norm at {x}: {l1(x)}")
print(f"prox with parameter 1 (soft threshold): {l1.prox(1.0, x)}")
print(f"conjugate at (0.5, -0.9) [inside the box]: {l1.conjugate([0.5, -0.9])}")
print(f"conjugate at (1.2, 0.0) [outside]:        {l1.conjugate([1.2, 0.0])}")

dist = pm.BallDistance([0.0], 2.0)
print(f"\ndistance to the radius-2 ball at 4: {dist(np.array([4.0]))}")
print(f"its prox shrinks toward the projection: {dist.prox(1.0, np.array([4.0]))}")

# Transforms compose exactly: translate, rescale, perturb.
shifted = pm.EuclideanNorm(2).translate([1.0, -2.0]).scale_val(1.5)
print(f"\n1.5 * ||x - (1,-2)|| at the shift point: {shifted(np.array([1.0, -2.0]))}")
print(f"prox at the origin: {shifted.prox(0.5, np.zeros(2))}")

print("\n" + "=" * 70)
print("The Moreau decomposition: prox_f + prox_f* is the identity")
print("=" * 70)
rng = np.random.default_rng(0)
worst = 0.0
for fn in [l1, pm.quadratic_kernel(2), pm.BallIndicator(np.zeros(2), 1.0)]:
    for _ in range(200):
        z = rng.normal(size=2) * 3
        err = np.linalg.norm(fn.prox(1.0, z) + fn.prox_conjugate(1.0, z) - z)
        worst = max(worst, err)
print(f"worst identity violation over 600 random points: {worst:.2e}")

print("\n" + "=" * 70)
print("Moreau envelopes: smooth lower models with exact gradients")
print("=" * 70)
fn = pm.EuclideanNorm(1)
for point in [0.0, 0.5, 2.0]:
    val = pm.envelope(fn, 1.0, np.array([point]))
    grad = pm.envelope_gradient(fn, 1.0, np.array([point]))
    print(f"envelope of |.| at {point}: value {val:.4f}, gradient {grad[0]:+.4f}")
print("(the quadratic branch below 1, the linear branch above)")

print("\n" + "=" * 70)
print("A numeric conjugate when no closed form is at hand")
print("=" * 70)
rep = pm.conjugate_numeric(pm.quadratic_kernel(1), np.array([3.0]))
print(f"conjugate of the quadratic kernel at 3: {rep.value:.6f} "
      f"({rep.status} in {rep.iterations} iterations)")
rep = pm.conjugate_numeric(pm.L1Norm(2), np.array([1.5, 0.0]))
print(f"outside the dual box the sup blows up:  {rep.value} ({rep.status})")
