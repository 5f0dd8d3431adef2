"""Acceptance harness: one test per criterion, each printing a summary line.

Every tolerance here is pinned; independent oracles (grids, enumeration,
closed-form targets) are computed inside the tests.
"""

import json
import time

import numpy as np

import proxmix as pm
from proxmix import verify
from proxmix.cli import EXIT_OK, main
from proxmix.moreau import CONVERGED
from proxmix.verify import OPTS, _two_stage_grid_prox


def _report(name, elapsed, limit):
    print(f"PASS {name}: elapsed {elapsed:.1f}s (limit {limit:.0f}s)")
    assert elapsed < limit


def moreau_atoms():
    return [
        pm.L1Norm(2),
        pm.EuclideanNorm(3),
        pm.Quadratic(np.diag([0.5, 2.0])),
        pm.Affine([1.0, -2.0], 0.3),
        pm.BallIndicator([0.5, 0.0], 1.5),
        pm.SubspaceIndicator(np.eye(3)[:, :2]),
        pm.BallDistance([0.0, 1.0], 0.8),
        pm.BallSupport([0.2, -0.1], 0.6),
        pm.SeparableSum([(1.5, pm.L1Norm(1), 0), (1.0, pm.EuclideanNorm(2), 1)]),
    ]


def test_criterion_1_exact_identities():
    start = time.perf_counter()
    rng = np.random.default_rng(100)

    # Moreau decomposition on 100 random points per atom
    for fn in moreau_atoms():
        X = rng.normal(size=(100, fn.dim)) * 2
        recombined = fn.prox(1.0, X) + fn.prox_conjugate(1.0, X)
        assert np.max(np.linalg.norm(recombined - X, axis=-1)) <= 1e-9

    # prox formulas vs definitional grid argmins, one-dimensional instances
    for k in range(12):
        c = rng.uniform(0.3, 1.0) * (-1.0 if k % 2 else 1.0)
        op = pm.DenseMap([[c]])
        fn = [pm.L1Norm(1), pm.EuclideanNorm(1).translate([0.5]),
              pm.BallDistance([0.0], 1.0)][k % 3]
        gamma = rng.uniform(0.4, 1.0)
        spec = pm.CompositionSpec(op, fn, gamma)
        x = np.atleast_1d(rng.normal() * 1.5)
        halfwidth = abs(float(x[0])) + 3.0

        def comp_val(Y):
            u = Y / c
            return np.asarray(fn(u)).reshape(-1) + (1 - c * c) * (
                u.reshape(-1) ** 2
            ) / (2 * gamma)

        target, h = _two_stage_grid_prox(lambda Y: gamma * comp_val(Y), x, halfwidth)
        assert h <= 1.05e-3
        assert abs(pm.prox_composition(spec, x)[0] - target[0]) <= 2 * h

        def co_val(Y):
            return pm.eval_cocomposition_batch(spec, Y, OPTS)[0]

        target, h = _two_stage_grid_prox(lambda Y: gamma * co_val(Y), x, halfwidth)
        assert abs(pm.prox_cocomposition(spec, x)[0] - target[0]) <= 2 * h

    # projection identities on 50 points
    proj = pm.DenseMap([[1.0, 0.0], [0.0, 0.0]])
    spec = pm.CompositionSpec(proj, pm.EuclideanNorm(2), 1.3)
    for _ in range(50):
        x = rng.normal(size=2) * 2
        co = pm.eval_cocomposition(spec, x, OPTS).value
        assert abs(co - np.linalg.norm(proj.apply(x))) <= 1e-8
        inside = proj.apply(x)
        comp_in = pm.eval_composition(spec, inside, OPTS).value
        assert abs(comp_in - np.linalg.norm(inside)) <= 1e-6
        if abs(x[1]) > 1e-6:
            assert pm.eval_composition(spec, x, OPTS).value == np.inf

    # mixture prox sums equal the embedding formulas to 1e-10
    for _ in range(25):
        spec = verify._random_mixture(rng, lipschitz=True)
        emb = pm.embed(spec)
        x = rng.normal(size=spec.base_dim) * 2
        assert np.linalg.norm(
            pm.mixture_prox(spec, x) - pm.prox_composition(emb.composition, x)
        ) <= 1e-10
        assert np.linalg.norm(
            pm.comixture_prox(spec, x) - pm.prox_cocomposition(emb.composition, x)
        ) <= 1e-10

    _report("criterion-1 exact identities", time.perf_counter() - start, 30)


def test_criterion_2_worked_scalar_values():
    start = time.perf_counter()
    spec = pm.CompositionSpec(pm.DenseMap([[0.5]]), pm.L1Norm(1), 1.0)

    # grid oracles first
    y = np.linspace(-1.0, 1.0, 2001)
    co_oracle = float(np.max(0.5 * y - 0.375 * y * y))
    assert abs(co_oracle - 1.0 / 6.0) <= 1e-6
    comp_oracle = 1.0 + 0.375  # unique feasible dual point of the fiber
    z = np.linspace(-20, 20, 400001)
    dual_oracle = float(np.max(0.5 * z - np.maximum(np.abs(0.5 * z) - 1, 0) ** 2 / 2)) - 0.125
    assert abs(dual_oracle - comp_oracle) <= 1e-6

    got_co = pm.eval_cocomposition(spec, [1.0], OPTS)
    got_comp = pm.eval_composition(spec, [0.5], OPTS)
    assert got_co.status == CONVERGED and got_comp.status == CONVERGED
    assert abs(got_co.value - 1.0 / 6.0) <= 1e-6
    assert abs(got_comp.value - 1.375) <= 1e-6
    _report("criterion-2 worked scalar values", time.perf_counter() - start, 5)


def test_criterion_3_inequality_suites():
    start = time.perf_counter()
    chain = verify.run_suite("prop20", seed=31, scale="default")
    assert chain.all_pass and len(chain.cases) >= 200
    gaps = verify.run_suite("prop30-i", seed=32, scale="default")
    assert gaps.all_pass
    zero_gap = verify.run_suite("prop25", seed=33, scale="default")
    assert zero_gap.all_pass
    _report("criterion-3 inequality suites", time.perf_counter() - start, 120)


def test_criterion_4_asymptotics():
    start = time.perf_counter()
    op = pm.DenseMap([[0.5]])
    fn = pm.L1Norm(1)
    x = np.array([1.0])

    sweep = pm.gamma_sweep(op, fn, x, [2.0**k for k in range(-8, 9)], OPTS,
                           slack=1e-7)
    assert sweep.composition_monotone and sweep.cocomposition_monotone

    small = pm.limit_small_gamma(op, fn, x, [2.0**-10], OPTS)
    assert -1e-8 <= small.gaps[-1] <= 2.0**-10 / 2 + 1e-6

    # shrinking-norm family: limit is the global infimum of the target
    big = pm.eval_cocomposition(
        pm.CompositionSpec(op, fn, 2.0**10), x, OPTS
    ).value
    assert abs(big - 0.0) <= 1e-3

    # norm-one projection family: limit is the fiber infimum
    proj = pm.DenseMap([[1.0, 0.0], [0.0, 0.0]])
    fn2 = pm.EuclideanNorm(2).translate([0.0, 0.3])
    x2 = np.array([0.4, 0.2])
    target = 0.4  # inf over {(0.4, t)} of ||y - (0, 0.3)||
    big2 = pm.eval_cocomposition(
        pm.CompositionSpec(proj, fn2, 2.0**10), x2, OPTS
    ).value
    assert abs(big2 - target) <= 1e-3
    _report("criterion-4 asymptotics", time.perf_counter() - start, 120)


def test_criterion_5_calculus_suites():
    start = time.perf_counter()
    for sid in ["prop1", "prop5", "prop10", "cor11", "prop13", "prop16",
                "cor19", "prop18"]:
        rep = verify.run_suite(sid, seed=50, scale="default")
        assert rep.all_pass, f"{sid} failed"
        assert len(rep.cases) >= 100, f"{sid} has too few cases"
    _report("criterion-5 calculus suites", time.perf_counter() - start, 180)


def test_criterion_6_mixtures_and_expectations():
    start = time.perf_counter()
    rng = np.random.default_rng(60)

    # reduction consistency on 100 random specs
    for _ in range(100):
        spec = verify._random_mixture(rng)
        x = rng.normal(size=spec.base_dim)
        res = pm.comixture_eval(spec, x, OPTS)
        assert res.paths_gap <= 2e-6
        mres = pm.mixture_eval(spec, x, OPTS)
        if np.isfinite(mres.value):
            assert mres.paths_gap <= 2e-6

    # the proximal-average prox example is exact
    avg = pm.proximal_average([pm.L1Norm(1), pm.quadratic_kernel(1)], [0.5, 0.5], 1.0)
    assert np.allclose(pm.mixture_prox(avg, [2.0]), [1.0])

    # expectation consistency suites
    assert verify.run_suite("prop75", seed=61, scale="small").all_pass
    assert verify.run_suite("prop79", seed=62, scale="small").all_pass

    # Monte Carlo estimate within three standard errors of the enumeration
    fns = [pm.L1Norm(1).translate([w]) for w in (-1.0, 0.0, 1.0)]
    exact = pm.mixture_prox(pm.proximal_average(fns, np.ones(3) / 3, 1.0),
                            np.array([0.5]))
    est = pm.sampled_expectation_prox(
        lambda r: fns[int(r.integers(0, 3))], seed=63, n_samples=10_000,
        gamma=1.0, x=np.array([0.5]),
    )
    assert np.all(np.abs(est.mean - exact) <= 3 * est.stderr)
    _report("criterion-6 mixtures/expectations", time.perf_counter() - start, 60)


def test_criterion_7_minimizer_convergence():
    start = time.perf_counter()
    gammas = [2.0**-n for n in range(0, 13)]
    instances = [
        (pm.DenseMap([[0.5]]), pm.L1Norm(1).translate([1.0]), [-6.0], [6.0]),
        (
            pm.DenseMap([[0.6], [0.0]]),
            pm.quadratic_kernel(2).translate([0.0, 0.8]),
            [-4.0],
            [4.0],
        ),
        (
            pm.DenseMap([[0.6], [0.0]]),
            pm.BallDistance([0.0, 2.0], 1.0).scale_val(0.5),
            [-4.0],
            [4.0],
        ),
    ]
    for op, fn, lo, hi in instances:
        ref, _ = pm.refined_grid_min(
            lambda Z: np.asarray(fn(op.apply(Z))).reshape(len(Z)), lo, hi, 2001
        )
        rep = pm.argmin_gamma_sequence(op, fn, gammas, OPTS, reference=ref)
        assert abs(rep.infima[-1] - ref) <= 1e-4
    _report("criterion-7 minimizer convergence", time.perf_counter() - start, 30)


def test_criterion_8_figure_reproduction(tmp_path):
    start = time.perf_counter()
    for preset in ["example1", "example2"]:
        cfg = tmp_path / f"{preset}.json"
        cfg.write_text(json.dumps({"preset": preset, "gammas": [0.5, 2.0, 8.0]}))
        out = tmp_path / f"{preset}.csv"
        t0 = time.perf_counter()
        assert main(
            ["figure", "--config", str(cfg), "--out", str(out), "--format", "csv"]
        ) == EXIT_OK
        assert time.perf_counter() - t0 < 60
        lines = out.read_text().splitlines()
        data = np.array([[float(v) for v in l.split(",")] for l in lines[1:]])
        assert data.shape == (101 * 101, 6)
        # pointwise domination and monotone shrink across the gamma columns
        assert np.all(data[:, 3] <= data[:, 2] + 1e-6)
        assert np.all(np.diff(data[:, 3:], axis=1) <= 1e-6)
        if preset == "example1":
            origin = data[np.all(np.abs(data[:, :2]) < 1e-9, axis=1)]
            assert abs(origin[0, 2] - np.sqrt(5.0)) <= 1e-6
    _report("criterion-8 figure reproduction", time.perf_counter() - start, 120)


def test_criterion_9_full_verification(tmp_path):
    start = time.perf_counter()
    cfg = tmp_path / "verify.json"
    cfg.write_text(json.dumps({"suites": "all", "seed": 7, "scale": "default"}))
    out = tmp_path / "report.json"
    rc = main(["verify", "--config", str(cfg), "--out", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["all_pass"]
    assert len(payload["suites"]) == len(verify.TOP_LEVEL_SUITES)
    _report("criterion-9 full verification", time.perf_counter() - start, 300)
