"""Finite proximal mixtures, comixtures, averages and expectations.

A mixture combines weighted pairs ``(alpha_k, L_k, g_k)`` sharing a base
space so that the proximity operator of the combined function splits into
the individual proxes.  Everything reduces to a single composition on a
weighted direct sum: stacking ``sqrt(alpha_k) L_k`` and rescaling the
block functions flattens the weighted inner product into a standard one.
Each evaluation is also carried out a second time directly from the
defining per-term sums, giving an independent cross-check of the
reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AdmissibilityError, ParameterError, UnsupportedDimension
from .compositions import (
    CompositionSpec,
    eval_cocomposition,
    eval_composition,
    pushforward_infimum,
)
from .functions import ConvexFunction, SeparableSum
from .linalg import DenseMap, as_vector
from .moreau import (
    CONVERGED,
    DEFAULT_OPTS,
    DIVERGED,
    MAX_ITER,
    SolveReport,
    SolverOpts,
    envelope,
    envelope_gradient,
    minimize_smooth,
)

__all__ = [
    "MixtureTerm",
    "MixtureSpec",
    "DirectSumEmbedding",
    "embed",
    "MixtureEvalResult",
    "mixture_eval",
    "comixture_eval",
    "mixture_prox",
    "comixture_prox",
    "comixture_envelope",
    "comixture_argmin",
    "comixture_argmin_sequence",
    "comixture_recession",
    "pcm_estimate",
    "PcmReport",
    "sampled_expectation_prox",
    "SampledProxEstimate",
    "proximal_average",
]

WEIGHT_BUDGET_TOL = 1e-9


@dataclass(frozen=True)
class MixtureTerm:
    alpha: float
    operator: DenseMap
    fn: ConvexFunction

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError("mixture weights must be positive")
        if self.fn.dim != self.operator.rows:
            raise ParameterError(
                "term function dimension does not match operator rows"
            )


class MixtureSpec:
    """Weighted family ``(alpha_k, L_k, g_k)`` with parameter ``gamma``.

    Validates the norm budget ``0 < sum alpha_k ||L_k||^2 <= 1`` and that
    every operator shares the same base space.
    """

    def __init__(self, terms: Sequence[MixtureTerm], gamma: float):
        terms = tuple(
            t if isinstance(t, MixtureTerm) else MixtureTerm(*t) for t in terms
        )
        if not terms:
            raise ParameterError("a mixture needs at least one term")
        if not gamma > 0:
            raise ParameterError("gamma must be positive")
        base = terms[0].operator.cols
        if any(t.operator.cols != base for t in terms):
            raise ParameterError("all operators must share the base dimension")
        # The tight estimate avoids double-counting the per-term certificate
        # inflation; the 1e-9 slack below is the acceptance tolerance.
        budget = sum(t.alpha * t.operator.norm_estimate**2 for t in terms)
        if not 0.0 < budget <= 1.0 + WEIGHT_BUDGET_TOL:
            raise AdmissibilityError(
                f"weight budget sum alpha ||L||^2 = {budget:.6g} outside (0, 1]"
            )
        self.terms = terms
        self.gamma = float(gamma)
        self.base_dim = base

    def with_gamma(self, gamma):
        return MixtureSpec(self.terms, gamma)

    def to_json(self):
        from .functions import function_to_spec

        return {
            "gamma": self.gamma,
            "terms": [
                {
                    "alpha": t.alpha,
                    "L": t.operator.to_json(),
                    "g": function_to_spec(t.fn),
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, obj):
        from .functions import function_from_spec

        return cls(
            [
                MixtureTerm(
                    float(t["alpha"]),
                    DenseMap.from_json(t["L"]),
                    function_from_spec(t["g"]),
                )
                for t in obj["terms"]
            ],
            float(obj["gamma"]),
        )


def proximal_average(fns, weights, gamma):
    """Mixture with identity operators and probability weights."""
    weights = np.asarray(weights, dtype=float)
    if not np.isclose(weights.sum(), 1.0, atol=1e-12):
        raise ParameterError("proximal average weights must sum to one")
    dim = fns[0].dim
    return MixtureSpec(
        [MixtureTerm(float(w), DenseMap.identity(dim), f) for w, f in zip(weights, fns)],
        gamma,
    )


# ---------------------------------------------------------------------------
# direct-sum reduction
# ---------------------------------------------------------------------------


@dataclass
class DirectSumEmbedding:
    """Single-composition realization of a mixture.

    ``stacked_map`` stacks ``sqrt(alpha_k) L_k``; ``stacked_fn`` is the
    separable sum whose block ``k`` evaluates
    ``alpha_k g_k(. / sqrt(alpha_k))``.  The mixture and comixture of the
    original family equal the composition and cocomposition of this pair.
    """

    stacked_map: DenseMap
    stacked_fn: ConvexFunction
    composition: CompositionSpec


def embed(spec: MixtureSpec) -> DirectSumEmbedding:
    """Build the weighted direct-sum composition of a mixture."""
    rows = []
    blocks = []
    offset = 0
    for t in spec.terms:
        root = np.sqrt(t.alpha)
        rows.append(root * t.operator.entries)
        blocks.append((t.alpha, t.fn.scale_arg(1.0 / root), offset))
        offset += t.fn.dim
    stacked_map = DenseMap(np.vstack(rows))
    stacked_fn = SeparableSum(blocks)
    comp = CompositionSpec(stacked_map, stacked_fn, spec.gamma)
    return DirectSumEmbedding(stacked_map, stacked_fn, comp)


# ---------------------------------------------------------------------------
# evaluation (embedding path + defining-sum path)
# ---------------------------------------------------------------------------


@dataclass
class MixtureEvalResult:
    """Both evaluation paths of a mixture value.

    ``value`` is the embedding-path result; ``paths_gap`` measures the
    agreement with the independent per-term path.
    """

    embedding: SolveReport
    direct: SolveReport
    value: float
    paths_gap: float


def _per_term_conjugate_prox(term, gamma, v):
    """Prox of ``(1/gamma) g_k*`` at ``v`` through the Moreau identity."""
    return v - (1.0 / gamma) * term.fn.prox(gamma, gamma * v)


def _mixture_direct(spec, x, opts):
    """Defining-sum evaluation of the mixture.

    Maximizes ``<z, x> - sum_k alpha_k env_{1/gamma}(g_k*)(L_k z)`` by
    accelerated gradient ascent with the certified step, then subtracts
    the quadratic correction.
    """
    gamma = spec.gamma
    lip = gamma * sum(t.alpha * t.operator.norm_bound**2 for t in spec.terms)
    step = 1.0 / max(lip, 1e-12)

    def gradient(z):
        grad = x.copy()
        for t in spec.terms:
            w = t.operator.apply(z)
            p = _per_term_conjugate_prox(t, gamma, w)
            grad -= gamma * t.alpha * t.operator.adjoint_apply(w - p)
        return grad

    z = np.zeros(spec.base_dim)
    momentum = z.copy()
    t_acc = 1.0
    status, it, gnorm = MAX_ITER, 0, np.inf
    for it in range(1, opts.max_iter + 1):
        grad = gradient(momentum)
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= opts.tol:
            z = momentum
            status = CONVERGED
            break
        z_new = momentum + step * grad
        delta = z_new - z
        if float(np.dot(momentum - z_new, delta)) > 0.0:
            t_acc = 1.0
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t_acc**2))
        momentum = z_new + (t_acc - 1.0) / t_next * delta
        z, t_acc = z_new, t_next
        if np.linalg.norm(z) > opts.divergence_radius:
            status = DIVERGED
            break
    if status == DIVERGED:
        return SolveReport(np.inf, z, it, status, gnorm)
    h = 0.0
    for t in spec.terms:
        w = t.operator.apply(z)
        p = _per_term_conjugate_prox(t, gamma, w)
        h += t.alpha * (
            float(np.asarray(t.fn.conjugate(p)))
            + 0.5 * gamma * float(np.linalg.norm(w - p) ** 2)
        )
    value = float(np.dot(z, x)) - h - float(np.linalg.norm(x) ** 2) / (2 * gamma)
    return SolveReport(value, z, it, status, gnorm)


def _comixture_direct(spec, x, opts):
    """Defining-sum evaluation of the comixture.

    Proximal-gradient ascent in the weighted dual space, one block per
    term; the block prox is the plain per-term conjugate prox because the
    weighted metric absorbs the weights.
    """
    gamma = spec.gamma
    t_step = 1.0 / gamma
    lx = [t.operator.apply(x) for t in spec.terms]
    ys = [np.zeros(t.fn.dim) for t in spec.terms]
    mom = [y.copy() for y in ys]
    t_acc = 1.0
    status, it, res = MAX_ITER, 0, np.inf
    for it in range(1, opts.max_iter + 1):
        m = sum(
            t.alpha * t.operator.adjoint_apply(v) for t, v in zip(spec.terms, mom)
        )
        new = []
        step_sq = 0.0
        restart_dot = 0.0
        for t, y, v, w in zip(spec.terms, ys, mom, lx):
            grad = w - gamma * (v - t.operator.apply(m))
            y_new = _per_term_conjugate_prox(t, gamma, v + t_step * grad)
            step_sq += t.alpha * float(np.linalg.norm(y_new - y) ** 2)
            restart_dot += t.alpha * float(np.dot(v - y_new, y_new - y))
            new.append(y_new)
        res = np.sqrt(step_sq) / t_step
        if restart_dot > 0.0:
            t_acc = 1.0
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t_acc**2))
        beta = (t_acc - 1.0) / t_next
        mom = [yn + beta * (yn - y) for yn, y in zip(new, ys)]
        ys, t_acc = new, t_next
        if res <= opts.tol:
            status = CONVERGED
            break
        if max(float(np.linalg.norm(y)) for y in ys) > opts.divergence_radius:
            status = DIVERGED
            break
    if status == DIVERGED:
        return SolveReport(np.inf, None, it, status, res)
    m = sum(t.alpha * t.operator.adjoint_apply(y) for t, y in zip(spec.terms, ys))
    defect = 0.5 * (
        sum(t.alpha * float(np.linalg.norm(y) ** 2) for t, y in zip(spec.terms, ys))
        - float(np.linalg.norm(m) ** 2)
    )
    value = sum(
        t.alpha
        * (float(np.dot(w, y)) - float(np.asarray(t.fn.conjugate(y))))
        for t, y, w in zip(spec.terms, ys, lx)
    ) - gamma * defect
    return SolveReport(float(value), None, it, status, res)


def mixture_eval(spec, x, opts: SolverOpts = DEFAULT_OPTS):
    """Mixture value at ``x`` along both evaluation paths."""
    x = as_vector(x, spec.base_dim)
    emb = eval_composition(embed(spec).composition, x, opts)
    direct = _mixture_direct(spec, x, opts)
    gap = abs(emb.value - direct.value) if np.isfinite(emb.value) else 0.0
    return MixtureEvalResult(emb, direct, emb.value, float(gap))


def comixture_eval(spec, x, opts: SolverOpts = DEFAULT_OPTS):
    """Comixture value at ``x`` along both evaluation paths."""
    x = as_vector(x, spec.base_dim)
    emb = eval_cocomposition(embed(spec).composition, x, opts)
    direct = _comixture_direct(spec, x, opts)
    gap = abs(emb.value - direct.value) if np.isfinite(emb.value) else 0.0
    return MixtureEvalResult(emb, direct, emb.value, float(gap))


# ---------------------------------------------------------------------------
# exact per-term operations
# ---------------------------------------------------------------------------


def mixture_prox(spec, x):
    """Prox of the scaled mixture: ``sum_k alpha_k L_k* prox_{gamma g_k}(L_k x)``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for t in spec.terms:
        w = t.operator.apply(x)
        out = out + t.alpha * t.operator.adjoint_apply(t.fn.prox(spec.gamma, w))
    return out


def comixture_prox(spec, x):
    """Prox of the scaled comixture: identity minus the per-term residuals."""
    x = np.asarray(x, dtype=float)
    out = x.copy()
    for t in spec.terms:
        w = t.operator.apply(x)
        out = out - t.alpha * t.operator.adjoint_apply(
            w - t.fn.prox(spec.gamma, w)
        )
    return out


def comixture_envelope(spec, x):
    """Envelope of the comixture: ``sum_k alpha_k env_gamma(g_k)(L_k x)``; exact."""
    x = np.asarray(x, dtype=float)
    total = 0.0
    for t in spec.terms:
        total = total + t.alpha * np.asarray(
            envelope(t.fn, spec.gamma, t.operator.apply(x))
        )
    return float(total) if np.ndim(total) == 0 else total


def comixture_recession(spec, x):
    """Recession of the comixture: weighted per-term recession sum."""
    x = np.asarray(x, dtype=float)
    total = 0.0
    for t in spec.terms:
        total = total + t.alpha * np.asarray(t.fn.recession(t.operator.apply(x)))
    return float(total) if np.ndim(total) == 0 else total


def comixture_argmin(spec, opts: SolverOpts = DEFAULT_OPTS, x0=None):
    """Minimize the comixture through its smooth envelope sum."""
    lip = sum(t.alpha * t.operator.norm_bound**2 for t in spec.terms) / spec.gamma
    x0 = np.zeros(spec.base_dim) if x0 is None else as_vector(x0, spec.base_dim)

    def value(z):
        return float(comixture_envelope(spec, z))

    def grad(z):
        out = np.zeros_like(z)
        for t in spec.terms:
            out += t.alpha * t.operator.adjoint_apply(
                envelope_gradient(t.fn, spec.gamma, t.operator.apply(z))
            )
        return out

    return minimize_smooth(value, grad, x0, max(lip, 1e-12), opts)


@dataclass
class MixtureMinimizerReport:
    gammas: np.ndarray
    infima: np.ndarray
    reference: float
    final_gap: float


def comixture_argmin_sequence(terms, gammas, opts: SolverOpts = DEFAULT_OPTS, reference=None):
    """Comixture infima along a shrinking parameter sequence.

    They converge to the minimum of the averaged plain composition
    ``sum alpha_k g_k(L_k x)``; a tiny-parameter run stands in for the
    reference when none is supplied.
    """
    gammas = np.asarray(sorted(gammas, reverse=True), dtype=float)
    infima = np.array(
        [
            comixture_argmin(MixtureSpec(terms, g_), opts).value
            for g_ in gammas
        ]
    )
    if reference is None:
        reference = comixture_argmin(MixtureSpec(terms, 2.0**-20), opts).value
    return MixtureMinimizerReport(
        gammas, infima, float(reference), float(infima[-1] - reference)
    )


# ---------------------------------------------------------------------------
# large-parameter limit of the mixture
# ---------------------------------------------------------------------------


@dataclass
class PcmReport:
    gammas: np.ndarray
    values: np.ndarray
    oracle: Optional[float]
    oracle_witness: Optional[np.ndarray]  # embedding-space fiber point
    final_gap: Optional[float]
    monotone: bool


def pcm_estimate(
    spec,
    x,
    gamma_tail,
    opts: SolverOpts = DEFAULT_OPTS,
    oracle_halfwidth=8.0,
    oracle_steps=801,
    slack=1e-6,
):
    """Growing-parameter tail of the mixture with its constrained-inf limit.

    The limit is the constrained infimum of the weighted value sum over
    families ``(y_k)`` with ``sum alpha_k L_k* y_k = x``, computed on the
    direct-sum embedding by searching the adjoint fiber (up to two free
    directions).
    """
    x = as_vector(x, spec.base_dim)
    gammas = np.asarray(sorted(gamma_tail), dtype=float)
    values = np.array(
        [
            mixture_eval(spec.with_gamma(g_), x, opts).value
            for g_ in gammas
        ]
    )
    emb = embed(spec)
    oracle = None
    witness = None
    gap = None
    try:
        oracle, witness = pushforward_infimum(
            emb.stacked_map, emb.stacked_fn, x, oracle_halfwidth, oracle_steps
        )
        finite = values[np.isfinite(values)]
        gap = float(finite[-1] - oracle) if finite.size else None
    except UnsupportedDimension:
        pass
    finite = values[np.isfinite(values)]
    monotone = bool(np.all(np.diff(finite) <= slack))
    return PcmReport(gammas, values, oracle, witness, gap, monotone)


# ---------------------------------------------------------------------------
# sampled proximal expectation
# ---------------------------------------------------------------------------


@dataclass
class SampledProxEstimate:
    """Monte Carlo estimate of an expected prox with its standard error."""

    mean: np.ndarray
    stderr: np.ndarray
    n_samples: int


def sampled_expectation_prox(draw: Callable, seed, n_samples, gamma, x):
    """Monte Carlo prox of a sampled proximal expectation.

    ``draw(rng)`` returns an independent catalog function each call; the
    estimate averages ``prox_{gamma f_i}(x)`` over ``n_samples`` draws
    from a generator seeded with the mandatory ``seed``.  For a finite
    family with explicit weights, ``mixture_prox`` on identity operators
    is the exact counterpart.
    """
    if n_samples < 2:
        raise ParameterError("need at least two samples for an error estimate")
    if not gamma > 0:
        raise ParameterError("gamma must be positive")
    rng = np.random.default_rng(seed)
    x = np.asarray(x, dtype=float)
    samples = np.empty((n_samples, x.shape[-1]))
    for i in range(n_samples):
        fn = draw(rng)
        samples[i] = fn.prox(gamma, x)
    mean = samples.mean(axis=0)
    stderr = samples.std(axis=0, ddof=1) / np.sqrt(n_samples)
    return SampledProxEstimate(mean, stderr, int(n_samples))
