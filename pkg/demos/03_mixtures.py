# Finite proximal mixtures, comixtures, averages and sampled expectations.

import numpy as np

import proxmix as pm

print("=" * 70)
print("The proximal average of |.| and the quadratic kernel")
print("=" * 70)
avg = pm.proximal_average([pm.L1Norm(1), pm.quadratic_kernel(1)], [0.5, 0.5], 1.0)
x = np.array([2.0])
print(f"\nprox at x=2: {pm.mixture_prox(avg, x)}  (the average of the two proxes)")
mix = pm.mixture_eval(avg, x)
comix = pm.comixture_eval(avg, x)
print(f"mixture value:   {mix.value:.9f}")
print(f"comixture value: {comix.value:.9f}")
print("identity operators with probability weights collapse the pair "
      f"(difference {abs(mix.value - comix.value):.2e})")

print("\n" + "=" * 70)
print("Every mixture is a single composition on a weighted direct sum")
print("=" * 70)
spec = pm.MixtureSpec(
    [
        pm.MixtureTerm(0.5, pm.DenseMap([[0.8]]), pm.L1Norm(1)),
        pm.MixtureTerm(0.5, pm.DenseMap([[0.6]]), pm.quadratic_kernel(1)),
    ],
    1.0,
)
emb = pm.embed(spec)
print(f"\nstacked operator rows (sqrt-weighted):\n{emb.stacked_map.entries}")
res = pm.mixture_eval(spec, [0.4])
print(f"mixture value via the embedding: {res.value:.8f}")
print(f"same value from the defining per-term sums: {res.direct.value:.8f}"
      f" (gap {res.paths_gap:.2e})")
print(f"per-term prox sum equals the embedding prox exactly: "
      f"{np.allclose(pm.mixture_prox(spec, [0.4]), pm.prox_composition(emb.composition, [0.4]))}")

print("\n" + "=" * 70)
print("Minimizing a comixture and chasing its small-parameter limit")
print("=" * 70)
terms = [
    pm.MixtureTerm(0.5, pm.DenseMap.identity(1), pm.L1Norm(1).translate([1.0])),
    pm.MixtureTerm(0.5, pm.DenseMap.identity(1), pm.L1Norm(1).translate([-1.0])),
]
rep = pm.comixture_argmin(pm.MixtureSpec(terms, 1.0))
print(f"\nargmin of the averaged two-kink objective: {rep.argpoint} "
      f"(any point of [-1, 1] is optimal), value {rep.value:.6f}")
seq = pm.comixture_argmin_sequence(terms, [2.0**-n for n in range(13)], reference=1.0)
print(f"infima converge to the averaged plain minimum 1: final gap {seq.final_gap:.2e}")

print("\n" + "=" * 70)
print("Growing-parameter limit: the constrained infimum over dual families")
print("=" * 70)
pcm = pm.pcm_estimate(spec, [0.4], [2.0**k for k in range(0, 11, 2)])
print(f"\nmixture tail: {np.round(pcm.values, 5)}")
print(f"constrained-infimum oracle: {pcm.oracle:.6f} (final gap {pcm.final_gap:.2e})")
print(f"monotone decrease along the tail: {pcm.monotone}")

print("\n" + "=" * 70)
print("Sampled proximal expectations: Monte Carlo meets enumeration")
print("=" * 70)
fns = [pm.L1Norm(1).translate([w]) for w in (-1.0, 0.0, 1.0)]
x_mc = np.array([0.5])
exact = pm.mixture_prox(pm.proximal_average(fns, np.ones(3) / 3, 1.0), x_mc)
est = pm.sampled_expectation_prox(
    lambda rng: fns[int(rng.integers(0, 3))], seed=42, n_samples=10_000,
    gamma=1.0, x=x_mc,
)
print(f"\nenumerated prox of the three-translate family: {exact}")
print(f"Monte Carlo estimate: {est.mean} +- {est.stderr} (n={est.n_samples})")
print(f"within three standard errors: {np.all(np.abs(est.mean - exact) <= 3 * est.stderr)}")
