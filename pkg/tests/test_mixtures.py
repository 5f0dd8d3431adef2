import numpy as np
import pytest

from proxmix import (
    BallDistance,
    DenseMap,
    EuclideanNorm,
    L1Norm,
    MixtureSpec,
    MixtureTerm,
    comixture_argmin,
    comixture_argmin_sequence,
    comixture_envelope,
    comixture_eval,
    comixture_prox,
    comixture_recession,
    embed,
    envelope,
    eval_cocomposition_batch,
    mixture_eval,
    mixture_prox,
    pcm_estimate,
    proximal_average,
    prox_cocomposition,
    prox_composition,
    quadratic_kernel,
    sampled_expectation_prox,
)
from proxmix.errors import AdmissibilityError, ParameterError
from proxmix.moreau import CONVERGED, grid_min, grid_prox


def average_spec(gamma=1.0):
    return proximal_average([L1Norm(1), quadratic_kernel(1)], [0.5, 0.5], gamma)


def random_mixture(rng, base=1, p=2):
    terms = []
    raw = rng.uniform(0.3, 1.0, size=p)
    ops = []
    for _ in range(p):
        rows = int(rng.integers(1, 3))
        m = rng.normal(size=(rows, base))
        ops.append(DenseMap(m * (rng.uniform(0.3, 0.9) / np.linalg.svd(m, compute_uv=False)[0])))
    budget = sum(a * op.norm_estimate**2 for a, op in zip(raw, ops))
    alphas = raw / budget * rng.uniform(0.6, 1.0)
    for a, op in zip(alphas, ops):
        fn = EuclideanNorm(op.rows).translate(rng.normal(size=op.rows))
        terms.append(MixtureTerm(float(a), op, fn))
    return MixtureSpec(terms, float(rng.uniform(0.4, 2.0)))


# -- spec validation -----------------------------------------------------------


def test_weight_budget_guard():
    with pytest.raises(AdmissibilityError):
        MixtureSpec(
            [
                MixtureTerm(1.0, DenseMap.identity(1), L1Norm(1)),
                MixtureTerm(1.0, DenseMap.identity(1), L1Norm(1)),
            ],
            1.0,
        )


def test_probability_weights_with_isometries_accepted():
    spec = average_spec()
    assert spec.gamma == 1.0


def test_terms_must_share_base_dimension():
    with pytest.raises(ParameterError):
        MixtureSpec(
            [
                MixtureTerm(0.4, DenseMap.identity(1), L1Norm(1)),
                MixtureTerm(0.4, DenseMap.identity(2), L1Norm(2)),
            ],
            1.0,
        )


def test_json_round_trip():
    spec = average_spec(0.7)
    again = MixtureSpec.from_json(spec.to_json())
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = rng.normal(size=1)
        assert np.allclose(mixture_prox(spec, x), mixture_prox(again, x))


# -- embedding ------------------------------------------------------------------


def test_embed_single_identity_term():
    spec = MixtureSpec([MixtureTerm(1.0, DenseMap.identity(1), L1Norm(1))], 1.0)
    emb = embed(spec)
    assert np.allclose(emb.stacked_map.entries, np.eye(1))
    x = np.array([2.0])
    assert mixture_eval(spec, x).value == pytest.approx(
        float(np.abs(x).sum()), abs=1e-8
    )


def test_embed_two_terms_stacks_scaled_rows():
    emb = embed(average_spec())
    assert np.allclose(emb.stacked_map.entries, [[np.sqrt(0.5)], [np.sqrt(0.5)]])


def test_embed_norm_inequality():
    rng = np.random.default_rng(1)
    for _ in range(20):
        spec = random_mixture(rng, base=int(rng.integers(1, 3)), p=int(rng.integers(1, 4)))
        emb = embed(spec)
        budget = sum(t.alpha * t.operator.norm_estimate**2 for t in spec.terms)
        assert emb.stacked_map.norm_estimate**2 <= budget + 1e-9


# -- evaluation -------------------------------------------------------------------


def test_proximal_average_mixture_equals_comixture():
    spec = average_spec()
    x = np.array([2.0])
    assert mixture_eval(spec, x).value == pytest.approx(
        comixture_eval(spec, x).value, abs=1e-6
    )


def test_reduction_consistency_both_paths():
    rng = np.random.default_rng(2)
    for _ in range(25):
        spec = random_mixture(rng)
        x = rng.normal(size=spec.base_dim)
        res = mixture_eval(spec, x)
        if np.isfinite(res.value):
            assert res.paths_gap <= 2e-6
        cres = comixture_eval(spec, x)
        assert cres.paths_gap <= 2e-6


def test_two_term_scalar_vs_constrained_grid():
    # independent oracle through the embedding fiber
    spec = MixtureSpec(
        [
            MixtureTerm(0.5, DenseMap([[0.8]]), L1Norm(1)),
            MixtureTerm(0.5, DenseMap([[0.6]]), quadratic_kernel(1)),
        ],
        1.0,
    )
    emb = embed(spec)
    x = np.array([0.4])

    def stacked_obj(Y):
        return np.asarray(emb.stacked_fn(Y)) + emb.composition.defect(Y) / spec.gamma

    # search the one-dimensional fiber of the stacked adjoint
    adj = emb.stacked_map.entries.T
    y0, *_ = np.linalg.lstsq(adj, x, rcond=None)
    _, _, vh = np.linalg.svd(adj, full_matrices=True)
    null = vh[1:].T
    ts = np.linspace(-8, 8, 200001)
    ys = y0[None, :] + ts[:, None] @ null.T
    oracle = float(np.min(stacked_obj(ys)))
    assert mixture_eval(spec, x).value == pytest.approx(oracle, abs=1e-4)


# -- prox decompositions -----------------------------------------------------------


def test_proximal_average_prox_worked_value():
    spec = average_spec()
    assert np.allclose(mixture_prox(spec, [2.0]), [1.0])


def test_prox_sums_match_embedding_exactly():
    rng = np.random.default_rng(3)
    for _ in range(25):
        spec = random_mixture(rng, base=int(rng.integers(1, 3)))
        emb = embed(spec)
        x = rng.normal(size=spec.base_dim) * 2
        assert np.linalg.norm(
            mixture_prox(spec, x) - prox_composition(emb.composition, x)
        ) <= 1e-10
        assert np.linalg.norm(
            comixture_prox(spec, x) - prox_cocomposition(emb.composition, x)
        ) <= 1e-10


def test_comixture_prox_grid_oracle():
    spec = MixtureSpec(
        [
            MixtureTerm(0.5, DenseMap([[0.7]]), L1Norm(1)),
            MixtureTerm(0.5, DenseMap([[0.9]]), EuclideanNorm(1).translate([1.0])),
        ],
        1.0,
    )
    emb = embed(spec)
    x = np.array([1.5])
    got = comixture_prox(spec, x)

    def covals(Y):
        return eval_cocomposition_batch(emb.composition, Y)[0]

    oracle = grid_prox(lambda Y: covals(Y), 1.0, x, [0.0], [3.0], 2001)
    assert abs(got[0] - oracle[0]) <= 3e-3


# -- envelopes, recession, argmin ---------------------------------------------------


def test_comixture_envelope_single_term_reduction():
    spec = MixtureSpec([MixtureTerm(1.0, DenseMap.identity(1), L1Norm(1))], 0.9)
    x = np.array([1.4])
    assert comixture_envelope(spec, x) == pytest.approx(
        float(envelope(L1Norm(1), 0.9, x)), abs=1e-12
    )


def test_comixture_envelope_huber_sum_vs_grid():
    spec = average_spec()
    emb = embed(spec)
    x = np.array([1.2])
    got = comixture_envelope(spec, x)
    assert got == pytest.approx(
        float(envelope(emb.stacked_fn, 1.0, emb.stacked_map.apply(x))), abs=1e-12
    )
    ys = np.linspace(-5, 5, 200001)[:, None]
    vals, _, _ = eval_cocomposition_batch(emb.composition, ys)
    oracle = float(np.min(vals + (ys[:, 0] - x[0]) ** 2 / 2.0))
    assert got == pytest.approx(oracle, abs=1e-4)


def test_comixture_recession_sums():
    spec = MixtureSpec(
        [
            MixtureTerm(0.5, DenseMap([[0.8]]), EuclideanNorm(1)),
            MixtureTerm(0.5, DenseMap([[0.5]]), EuclideanNorm(1)),
        ],
        1.0,
    )
    assert comixture_recession(spec, [2.0]) == pytest.approx(
        0.5 * 1.6 + 0.5 * 1.0
    )


def test_comixture_recession_proximal_average_case():
    spec = average_spec()
    # weighted sum of the recession functions; the quadratic contributes
    # the kernel indicator, so nonzero points blow up
    assert comixture_recession(spec, [1.0]) == np.inf
    assert comixture_recession(spec, [0.0]) == 0.0


def test_comixture_argmin_single_quadratic():
    spec = MixtureSpec(
        [MixtureTerm(1.0, DenseMap.identity(1), quadratic_kernel(1).translate([0.7]))],
        1.0,
    )
    rep = comixture_argmin(spec)
    assert rep.status == CONVERGED
    assert np.allclose(rep.argpoint, [0.7], atol=1e-7)


def test_comixture_argmin_two_kinks():
    terms = [
        MixtureTerm(0.5, DenseMap.identity(1), L1Norm(1).translate([1.0])),
        MixtureTerm(0.5, DenseMap.identity(1), L1Norm(1).translate([-1.0])),
    ]
    spec = MixtureSpec(terms, 1.0)
    rep = comixture_argmin(spec)
    ref, _ = grid_min(
        lambda Z: 0.5 * np.abs(Z - 1.0).reshape(-1) + 0.5 * np.abs(Z + 1.0).reshape(-1),
        [-4.0],
        [4.0],
        2001,
    )
    # the envelope-sum infimum sits within the average-objective minimum
    assert rep.value <= ref + 1e-6
    obj = 0.5 * abs(rep.argpoint[0] - 1) + 0.5 * abs(rep.argpoint[0] + 1)
    assert obj <= ref + 1e-6


def test_comixture_argmin_sequence_reaches_average_min():
    terms = [
        MixtureTerm(0.5, DenseMap.identity(1), L1Norm(1).translate([1.0])),
        MixtureTerm(0.5, DenseMap.identity(1), L1Norm(1).translate([1.0]).scale_val(2.0)),
    ]
    ref = 0.0
    rep = comixture_argmin_sequence(
        terms, [2.0**-n for n in range(13)], reference=ref
    )
    assert abs(rep.infima[-1] - ref) <= 1e-4


# -- pcm and sampling ---------------------------------------------------------------


def test_pcm_single_invertible_term():
    spec = MixtureSpec([MixtureTerm(1.0, DenseMap([[0.5]]), L1Norm(1))], 1.0)
    rep = pcm_estimate(spec, [0.5], [2.0**k for k in range(0, 11, 2)])
    # unique feasible point of the weighted constraint: y = x / 0.5 = 1
    assert rep.oracle == pytest.approx(1.0, abs=1e-9)
    assert rep.monotone
    assert abs(rep.final_gap) <= 1e-3


def test_pcm_two_term_instance():
    spec = MixtureSpec(
        [
            MixtureTerm(0.6, DenseMap([[0.7]]), EuclideanNorm(1).translate([0.4])),
            MixtureTerm(0.4, DenseMap([[0.5]]), BallDistance([0.2], 0.3)),
        ],
        1.0,
    )
    rep = pcm_estimate(spec, [0.3], [2.0**k for k in range(0, 13, 2)])
    assert rep.monotone
    assert rep.oracle is not None
    assert -1e-3 <= rep.final_gap <= 2e-3


def test_sampled_expectation_degenerate():
    fn = L1Norm(1).translate([0.5])
    est = sampled_expectation_prox(lambda rng: fn, seed=1, n_samples=10,
                                   gamma=1.0, x=np.array([2.0]))
    assert np.allclose(est.mean, fn.prox(1.0, np.array([2.0])))
    assert np.allclose(est.stderr, 0.0)


def test_sampled_expectation_matches_enumeration():
    fns = [L1Norm(1).translate([w]) for w in (-1.0, 0.0, 1.0)]
    x = np.array([0.5])  # the three proxes genuinely differ here
    gamma = 1.0
    exact = mixture_prox(proximal_average(fns, np.ones(3) / 3, gamma), x)
    # enumeration: mean of the three proxes
    manual = np.mean([f.prox(gamma, x) for f in fns], axis=0)
    assert np.allclose(exact, manual, atol=1e-14)

    def draw(rng):
        return fns[int(rng.integers(0, 3))]

    est = sampled_expectation_prox(draw, seed=7, n_samples=10_000, gamma=gamma, x=x)
    assert np.all(np.abs(est.mean - exact) <= 3 * est.stderr + 1e-12)


def test_sampled_expectation_needs_two_samples():
    with pytest.raises(ParameterError):
        sampled_expectation_prox(lambda rng: L1Norm(1), 0, 1, 1.0, np.zeros(1))
